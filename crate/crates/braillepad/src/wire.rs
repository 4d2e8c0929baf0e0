//! Frames exchanged with the touch UI, one JSON object per WebSocket
//! message. Client frames are [`Input`]s.

use braillepad_core::ports::{Clock, Contacts, DialError, Speech, Telephony, Vibration, Notifier};
use braillepad_core::ScreenModel;
use chrono::NaiveDateTime;
use serde::{Deserialize, Serialize};

use crate::config::RuntimeConfig;
use crate::contacts::ContactTable;
use crate::runtime::FiredSummary;

pub use crate::runtime::Input as ClientFrame;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ServerFrame {
    Vibrate { ms: u32 },
    Speak { text: String },
    Screen(ScreenModel),
    Fired(FiredSummary),
    Error { code: ErrorCode, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    /// Not JSON, or not a known client frame.
    MalformedFrame,
    /// Well-formed touch that breaks the press grammar or time order.
    InvalidTouch,
    ClockRegression,
    Internal,
}

impl ServerFrame {
    pub fn to_text(&self) -> String {
        serde_json::to_string(self).expect("frames always serialize")
    }
}

/// Ports for a connected UI: speech and vibration become frames, the
/// telephone only records what it would dial.
#[derive(Debug, Clone)]
pub struct ServicePorts {
    speech_available: bool,
    sim_present: bool,
    contacts: ContactTable,
    real_clock: bool,
    virtual_now: NaiveDateTime,
    outbox: Vec<ServerFrame>,
    dialed: Vec<String>,
}

impl ServicePorts {
    pub fn new(config: &RuntimeConfig, real_clock: bool) -> Self {
        ServicePorts {
            speech_available: config.speech_available,
            sim_present: config.sim_present,
            contacts: config.contacts.clone(),
            real_clock,
            virtual_now: config.start,
            outbox: Vec::new(),
            dialed: Vec::new(),
        }
    }

    pub fn take_frames(&mut self) -> Vec<ServerFrame> {
        std::mem::take(&mut self.outbox)
    }

    pub fn dialed(&self) -> &[String] {
        &self.dialed
    }
}

impl Speech for ServicePorts {
    fn available(&mut self) -> bool {
        self.speech_available
    }

    fn speak(&mut self, text: &str) {
        self.outbox.push(ServerFrame::Speak { text: text.to_owned() });
    }
}

impl Vibration for ServicePorts {
    fn vibrate(&mut self, ms: u32) {
        self.outbox.push(ServerFrame::Vibrate { ms });
    }
}

impl Telephony for ServicePorts {
    fn sim_present(&mut self) -> bool {
        self.sim_present
    }

    fn dial(&mut self, number: &str) -> Result<(), DialError> {
        if !self.sim_present {
            return Err(DialError::NoSim);
        }
        self.dialed.push(number.to_owned());
        Ok(())
    }
}

impl Contacts for ServicePorts {
    fn resolve(&mut self, name: &str) -> Option<String> {
        self.contacts.get(name).cloned()
    }
}

impl Notifier for ServicePorts {
    // The fired frame that follows carries the message.
    fn notify(&mut self, _message: &str) {}
}

impl Clock for ServicePorts {
    fn now(&mut self) -> NaiveDateTime {
        if self.real_clock {
            chrono::Local::now().naive_local()
        } else {
            self.virtual_now
        }
    }
}
