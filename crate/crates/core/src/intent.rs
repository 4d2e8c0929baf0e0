//! Command notes: a note that starts with "remind me" or "call" and names
//! a time after its last " at ".

use alloc::string::{String, ToString};
use core::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TimeOfDay {
    hour: u8,
    minute: u8,
}

impl TimeOfDay {
    pub fn new(hour: u8, minute: u8) -> Option<Self> {
        (hour < 24 && minute < 60).then_some(TimeOfDay { hour, minute })
    }

    pub fn hour(self) -> u8 {
        self.hour
    }

    pub fn minute(self) -> u8 {
        self.minute
    }
}

impl fmt::Display for TimeOfDay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:02}:{:02}", self.hour, self.minute)
    }
}

/// Serialized as `"HH:MM"`.
impl Serialize for TimeOfDay {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TimeOfDay {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_time(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "text", rename_all = "snake_case")]
pub enum Intent {
    Reminder(String),
    /// Either a number or a contact name.
    Call(String),
}

impl Intent {
    pub fn kind(&self) -> &'static str {
        match self {
            Intent::Reminder(_) => "reminder",
            Intent::Call(_) => "call",
        }
    }

    pub fn payload(&self) -> &str {
        match self {
            Intent::Reminder(s) | Intent::Call(s) => s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvalidTime;

impl fmt::Display for InvalidTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("invalid time of day")
    }
}

impl core::error::Error for InvalidTime {}

const REMIND: &str = "remind me";
const CALL: &str = "call";
const AT: &str = " at ";

/// Which keyword, if any, a note starts with. Returns the keyword's kind
/// and the rest of the note after it.
pub fn command_keyword(note: &str) -> Option<(&'static str, &str)> {
    let body = note.trim_start();
    for (kw, kind) in [(REMIND, "reminder"), (CALL, "call")] {
        let Some(head) = body.get(..kw.len()) else { continue };
        if !head.eq_ignore_ascii_case(kw) {
            continue;
        }
        let rest = &body[kw.len()..];
        if rest.is_empty() || rest.starts_with(char::is_whitespace) {
            return Some((kind, rest));
        }
    }
    None
}

/// Parses a command note. Anything that is not a complete command,
/// including a command without a usable time, is an ordinary note.
pub fn parse_intent(note: &str) -> Option<(Intent, TimeOfDay)> {
    let (kind, rest) = command_keyword(note)?;
    // Keyword removal keeps byte offsets aligned with the lowered copy.
    let lowered = rest.to_ascii_lowercase();
    let mut search_end = lowered.len();
    while let Some(pos) = lowered[..search_end].rfind(AT) {
        if let Ok(time) = parse_time(&rest[pos + AT.len()..]) {
            let span = rest[..pos].trim();
            if span.is_empty() {
                return None;
            }
            let intent = match kind {
                "reminder" => Intent::Reminder(span.to_string()),
                _ => Intent::Call(span.to_string()),
            };
            return Some((intent, time));
        }
        // overlapping " at at " needs the earlier match to be tried too
        search_end = pos + AT.len() - 1;
    }
    None
}

/// Accepts `H`, `H:MM`, `H MM` (24-hour) and the same followed by
/// `am`/`pm`, with or without a space before the suffix.
pub fn parse_time(s: &str) -> Result<TimeOfDay, InvalidTime> {
    let s = s.trim().to_ascii_lowercase();
    let (clock, meridiem) = if let Some(c) = s.strip_suffix("am") {
        (c.trim_end(), Some(false))
    } else if let Some(c) = s.strip_suffix("pm") {
        (c.trim_end(), Some(true))
    } else {
        (s.as_str(), None)
    };

    let (h, m) = match clock.split_once([':', ' ']) {
        Some((h, m)) => (h, Some(m)),
        None => (clock, None),
    };
    let hour = digits(h, 1, 2)?;
    let minute = match m {
        Some(m) => digits(m, 2, 2)?,
        None => 0,
    };
    if minute >= 60 {
        return Err(InvalidTime);
    }
    let hour = match meridiem {
        None if hour < 24 => hour,
        Some(pm) if (1..=12).contains(&hour) => (hour % 12) + if pm { 12 } else { 0 },
        _ => return Err(InvalidTime),
    };
    TimeOfDay::new(hour, minute).ok_or(InvalidTime)
}

fn digits(s: &str, min: usize, max: usize) -> Result<u8, InvalidTime> {
    if s.len() < min || s.len() > max || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(InvalidTime);
    }
    s.parse().map_err(|_| InvalidTime)
}
