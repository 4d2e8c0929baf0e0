//! WebSocket service: one session per connection, frames handled strictly
//! in arrival order by the connection's own thread.

use std::io;
use std::net::{TcpListener, TcpStream};
use std::path::PathBuf;
use std::sync::Arc;
use std::thread;
use std::time::Duration;

use braillepad_core::ports::Clock;
use braillepad_core::{Gesture, ScreenModel};
use tungstenite::error::ProtocolError;
use tungstenite::{Message, WebSocket};

use crate::config::RuntimeConfig;
use crate::runtime::{Input, Record, Runtime, RuntimeError};
use crate::store::{NoteStore, StoreError};
use crate::wire::{ErrorCode, ServerFrame, ServicePorts};

#[derive(Debug, Clone)]
pub struct ServeOptions {
    pub config: RuntimeConfig,
    pub notes_dir: PathBuf,
    /// Follow the wall clock instead of waiting for clock frames.
    pub real_clock: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum ServeError {
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("boot: {0}")]
    Boot(RuntimeError),
    #[error("websocket: {0}")]
    Socket(Box<tungstenite::Error>),
    #[error("handshake failed: {0}")]
    Handshake(String),
}

impl From<tungstenite::Error> for ServeError {
    fn from(e: tungstenite::Error) -> Self {
        ServeError::Socket(Box::new(e))
    }
}

/// A session as seen from the wire, independent of the socket.
pub struct Connection {
    runtime: Runtime<ServicePorts>,
    last_screen: Option<ScreenModel>,
    real_clock: bool,
}

impl Connection {
    /// Boots a session and returns the frames for its boot effects
    /// followed by the first screen.
    pub fn open(options: &ServeOptions) -> Result<(Connection, Vec<ServerFrame>), ServeError> {
        let mut config = options.config.clone();
        let mut ports = ServicePorts::new(&config, options.real_clock);
        if options.real_clock {
            config.start = ports.now();
        }
        let store = NoteStore::open(&options.notes_dir)?;
        let runtime = Runtime::boot(&config, store, ports).map_err(ServeError::Boot)?;
        let mut conn = Connection { runtime, last_screen: None, real_clock: options.real_clock };
        let frames = conn.collect(Ok(()), true);
        Ok((conn, frames))
    }

    /// Handles one text message from the client.
    pub fn handle_text(&mut self, text: &str) -> Vec<ServerFrame> {
        let input: Input = match serde_json::from_str(text) {
            Ok(i) => i,
            Err(e) => {
                return vec![ServerFrame::Error { code: ErrorCode::MalformedFrame, message: e.to_string() }]
            }
        };
        self.sync_clock();
        let result = self.runtime.apply(&input).map(|_| ());
        self.collect(result, false)
    }

    /// Wall-clock wakeup; fires anything due.
    pub fn tick(&mut self) -> Vec<ServerFrame> {
        self.sync_clock();
        self.collect(Ok(()), false)
    }

    pub fn runtime(&self) -> &Runtime<ServicePorts> {
        &self.runtime
    }

    fn sync_clock(&mut self) {
        if !self.real_clock {
            return;
        }
        let now = self.runtime.ports_mut().now();
        if now > self.runtime.scheduler().now() {
            // cannot regress: checked just above
            let _ = self.runtime.apply(&Input::Clock { now });
        }
    }

    fn collect(&mut self, result: Result<(), RuntimeError>, force_screen: bool) -> Vec<ServerFrame> {
        let mut frames = self.runtime.ports_mut().take_frames();
        let mut handled = force_screen;
        for record in self.runtime.log() {
            match record {
                Record::Fired(f) => frames.push(ServerFrame::Fired(f.clone())),
                Record::Gesture { gesture, ignored: false } if !matches!(gesture, Gesture::Explore { .. }) => {
                    handled = true
                }
                Record::TextInput { ignored: false, .. } => handled = true,
                _ => {}
            }
        }
        self.runtime.clear_log();
        if let Err(e) = result {
            let code = match e {
                RuntimeError::Gesture(_) => ErrorCode::InvalidTouch,
                RuntimeError::Clock(_) => ErrorCode::ClockRegression,
                _ => ErrorCode::Internal,
            };
            frames.push(ServerFrame::Error { code, message: e.to_string() });
        }
        let screen = self.runtime.snapshot();
        if handled || self.last_screen.as_ref() != Some(&screen) {
            self.last_screen = Some(screen.clone());
            frames.push(ServerFrame::Screen(screen));
        }
        frames
    }
}

fn send_all(ws: &mut WebSocket<TcpStream>, frames: Vec<ServerFrame>) -> Result<(), ServeError> {
    for f in frames {
        ws.send(Message::Text(f.to_text()))?;
    }
    Ok(())
}

/// Runs one client to completion.
pub fn handle_client(stream: TcpStream, options: &ServeOptions) -> Result<(), ServeError> {
    let mut ws = tungstenite::accept(stream).map_err(|e| ServeError::Handshake(e.to_string()))?;
    let (mut conn, frames) = match Connection::open(options) {
        Ok(c) => c,
        Err(e) => {
            let frame = ServerFrame::Error { code: ErrorCode::Internal, message: e.to_string() };
            let _ = ws.send(Message::Text(frame.to_text()));
            let _ = ws.close(None);
            return Err(e);
        }
    };
    send_all(&mut ws, frames)?;
    if options.real_clock {
        ws.get_ref().set_read_timeout(Some(Duration::from_secs(1))).map_err(tungstenite::Error::Io)?;
    }
    loop {
        let frames = match ws.read() {
            Ok(Message::Text(text)) => conn.handle_text(&text),
            Ok(Message::Binary(_)) => vec![ServerFrame::Error {
                code: ErrorCode::MalformedFrame,
                message: "frames are JSON text messages".into(),
            }],
            Ok(_) => continue,
            Err(tungstenite::Error::Io(e))
                if matches!(e.kind(), io::ErrorKind::WouldBlock | io::ErrorKind::TimedOut) =>
            {
                conn.tick()
            }
            Err(
                tungstenite::Error::ConnectionClosed
                | tungstenite::Error::AlreadyClosed
                | tungstenite::Error::Protocol(ProtocolError::ResetWithoutClosingHandshake),
            ) => return Ok(()),
            Err(e) => return Err(e.into()),
        };
        send_all(&mut ws, frames)?;
    }
}

/// Accepts connections forever, one thread each.
pub fn serve(listener: TcpListener, options: ServeOptions) -> io::Result<()> {
    let options = Arc::new(options);
    for stream in listener.incoming() {
        let stream = stream?;
        let options = Arc::clone(&options);
        thread::spawn(move || {
            let peer = stream.peer_addr().map(|a| a.to_string()).unwrap_or_default();
            if let Err(e) = handle_client(stream, &options) {
                eprintln!("braillepad: connection {peer}: {e}");
            }
        });
    }
    Ok(())
}
