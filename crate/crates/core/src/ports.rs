//! Device-facing ports and an in-memory recording implementation.
//!
//! Speech, vibration, telephony, contacts, notifications and the clock are
//! all reached through these traits so the engine never touches hardware.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use chrono::NaiveDateTime;

pub trait Speech {
    fn available(&mut self) -> bool;
    fn speak(&mut self, text: &str);
}

pub trait Vibration {
    fn vibrate(&mut self, ms: u32);
}

pub trait Telephony {
    fn sim_present(&mut self) -> bool;
    fn dial(&mut self, number: &str) -> Result<(), DialError>;
}

pub trait Contacts {
    fn resolve(&mut self, name: &str) -> Option<String>;
}

pub trait Notifier {
    fn notify(&mut self, message: &str);
}

pub trait Clock {
    fn now(&mut self) -> NaiveDateTime;
}

/// Everything the scheduler and runtime need from the device.
pub trait Ports: Speech + Vibration + Telephony + Contacts + Notifier + Clock {}

impl<T: Speech + Vibration + Telephony + Contacts + Notifier + Clock> Ports for T {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DialError {
    NoSim,
}

impl fmt::Display for DialError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DialError::NoSim => f.write_str("no sim"),
        }
    }
}

impl core::error::Error for DialError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PortCall {
    SpeechAvailable(bool),
    Speak(String),
    Vibrate(u32),
    SimPresent(bool),
    Dial(String),
    DialRejected(String),
    Resolve { name: String, number: Option<String> },
    Notify(String),
    Now(NaiveDateTime),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordingConfig {
    pub speech_available: bool,
    pub sim_present: bool,
    pub contacts: BTreeMap<String, String>,
    pub start: NaiveDateTime,
}

impl Default for RecordingConfig {
    fn default() -> Self {
        RecordingConfig {
            speech_available: true,
            sim_present: true,
            contacts: BTreeMap::new(),
            start: NaiveDateTime::default(),
        }
    }
}

impl RecordingConfig {
    pub fn with_contact(mut self, name: &str, number: &str) -> Self {
        self.contacts.insert(name.to_string(), number.to_string());
        self
    }
}

/// In-memory ports that append every call to one ordered log. The clock
/// is virtual and only moves through [`RecordingSuite::set_now`].
#[derive(Debug, Clone)]
pub struct RecordingSuite {
    config: RecordingConfig,
    now: NaiveDateTime,
    log: Vec<PortCall>,
}

pub fn make_recording_suite(config: RecordingConfig) -> RecordingSuite {
    RecordingSuite::new(config)
}

impl RecordingSuite {
    pub fn new(config: RecordingConfig) -> Self {
        RecordingSuite { now: config.start, config, log: Vec::new() }
    }

    pub fn set_now(&mut self, now: NaiveDateTime) {
        self.now = now;
    }

    pub fn log(&self) -> &[PortCall] {
        &self.log
    }

    pub fn spoken(&self) -> Vec<&str> {
        self.log
            .iter()
            .filter_map(|c| match c {
                PortCall::Speak(s) => Some(s.as_str()),
                _ => None,
            })
            .collect()
    }

    pub fn vibrations(&self) -> Vec<u32> {
        self.log
            .iter()
            .filter_map(|c| match c {
                PortCall::Vibrate(ms) => Some(*ms),
                _ => None,
            })
            .collect()
    }

    pub fn dialed(&self) -> Vec<&str> {
        self.log
            .iter()
            .filter_map(|c| match c {
                PortCall::Dial(n) => Some(n.as_str()),
                _ => None,
            })
            .collect()
    }

    pub fn notifications(&self) -> Vec<&str> {
        self.log
            .iter()
            .filter_map(|c| match c {
                PortCall::Notify(m) => Some(m.as_str()),
                _ => None,
            })
            .collect()
    }
}

impl Speech for RecordingSuite {
    fn available(&mut self) -> bool {
        let a = self.config.speech_available;
        self.log.push(PortCall::SpeechAvailable(a));
        a
    }

    fn speak(&mut self, text: &str) {
        self.log.push(PortCall::Speak(text.to_string()));
    }
}

impl Vibration for RecordingSuite {
    fn vibrate(&mut self, ms: u32) {
        self.log.push(PortCall::Vibrate(ms));
    }
}

impl Telephony for RecordingSuite {
    fn sim_present(&mut self) -> bool {
        let s = self.config.sim_present;
        self.log.push(PortCall::SimPresent(s));
        s
    }

    fn dial(&mut self, number: &str) -> Result<(), DialError> {
        if self.config.sim_present {
            self.log.push(PortCall::Dial(number.to_string()));
            Ok(())
        } else {
            self.log.push(PortCall::DialRejected(number.to_string()));
            Err(DialError::NoSim)
        }
    }
}

impl Contacts for RecordingSuite {
    fn resolve(&mut self, name: &str) -> Option<String> {
        let number = self.config.contacts.get(name).cloned();
        self.log.push(PortCall::Resolve { name: name.to_string(), number: number.clone() });
        number
    }
}

impl Notifier for RecordingSuite {
    fn notify(&mut self, message: &str) {
        self.log.push(PortCall::Notify(message.to_string()));
    }
}

impl Clock for RecordingSuite {
    fn now(&mut self) -> NaiveDateTime {
        self.log.push(PortCall::Now(self.now));
        self.now
    }
}
