#![allow(dead_code)]

use std::net::{SocketAddr, TcpListener};
use std::path::{Path, PathBuf};
use std::thread;

use braillepad::config::RuntimeConfig;
use braillepad::contacts::load_contacts;
use braillepad::replay::ReplayReport;
use braillepad::serve::{serve, ServeOptions};
use braillepad::{replay, Script};

pub struct GoldenCase {
    pub script: &'static str,
    pub log: &'static str,
    pub config: Option<&'static str>,
    pub contacts: bool,
}

pub const CASES: &[GoldenCase] = &[
    GoldenCase { script: "empty.jsonl", log: "empty.log", config: None, contacts: false },
    GoldenCase { script: "compose_hi.jsonl", log: "compose_hi.log", config: None, contacts: false },
    GoldenCase { script: "greeting.jsonl", log: "greeting.log", config: None, contacts: false },
    GoldenCase { script: "read_touch_h.jsonl", log: "read_touch_h.log", config: None, contacts: false },
    GoldenCase { script: "remind_pills.jsonl", log: "remind_pills.log", config: None, contacts: false },
    GoldenCase { script: "call_mom.jsonl", log: "call_mom.log", config: None, contacts: true },
    GoldenCase { script: "call_mom.jsonl", log: "call_mom_no_sim.log", config: Some("no_sim.conf"), contacts: true },
];

pub fn case(log: &str) -> &'static GoldenCase {
    CASES.iter().find(|c| c.log == log).expect("known golden case")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn golden(name: &str) -> String {
    std::fs::read_to_string(golden_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn script(name: &str) -> Script {
    Script::parse(&golden(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn config_for(case: &GoldenCase) -> RuntimeConfig {
    let mut config = match case.config {
        Some(c) => RuntimeConfig::load(&golden_dir().join(c)).unwrap(),
        None => RuntimeConfig::default(),
    };
    if case.contacts {
        config.contacts = load_contacts(&golden_dir().join("contacts.tsv")).unwrap();
    }
    config
}

pub fn run_case(case: &GoldenCase, notes_dir: &Path) -> ReplayReport {
    replay(&script(case.script), &config_for(case), notes_dir).unwrap_or_else(|e| panic!("{}: {e}", case.script))
}

/// Serves on an ephemeral local port for the rest of the process.
pub fn spawn_server(config: RuntimeConfig, notes_dir: &Path) -> SocketAddr {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let options = ServeOptions { config, notes_dir: notes_dir.to_path_buf(), real_clock: false };
    thread::spawn(move || serve(listener, options));
    addr
}

pub struct Client {
    ws: tungstenite::WebSocket<tungstenite::stream::MaybeTlsStream<std::net::TcpStream>>,
}

impl Client {
    pub fn connect(addr: SocketAddr) -> Client {
        let (ws, _) = tungstenite::connect(format!("ws://{addr}")).unwrap();
        if let tungstenite::stream::MaybeTlsStream::Plain(s) = ws.get_ref() {
            s.set_read_timeout(Some(std::time::Duration::from_secs(20))).unwrap();
        }
        Client { ws }
    }

    pub fn send(&mut self, text: &str) {
        self.ws.send(tungstenite::Message::Text(text.to_owned())).unwrap();
    }

    pub fn recv(&mut self) -> braillepad::wire::ServerFrame {
        loop {
            match self.ws.read().unwrap() {
                tungstenite::Message::Text(t) => return serde_json::from_str(&t).unwrap(),
                _ => continue,
            }
        }
    }

    /// Frames answer client frames in order, so everything before the reply
    /// to a malformed marker frame belongs to what was sent earlier.
    pub fn drain(&mut self) -> Vec<braillepad::wire::ServerFrame> {
        use braillepad::wire::{ErrorCode, ServerFrame};
        self.send("marker");
        let mut out = Vec::new();
        loop {
            match self.recv() {
                ServerFrame::Error { code: ErrorCode::MalformedFrame, .. } => return out,
                f => out.push(f),
            }
        }
    }
}

impl Drop for Client {
    fn drop(&mut self) {
        let _ = self.ws.close(None);
        let _ = self.ws.flush();
    }
}
