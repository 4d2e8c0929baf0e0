//! Announcement strings, loaded from a `key<TAB>text` table.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use core::fmt;

const STANDARD_MESSAGES: &str = include_str!("../data/messages.tsv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Messages {
    table: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessagesError {
    pub line: usize,
}

impl fmt::Display for MessagesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: expected `key<TAB>text`", self.line)
    }
}

impl core::error::Error for MessagesError {}

impl Messages {
    pub fn standard() -> Self {
        Messages::parse(STANDARD_MESSAGES).expect("built-in message table is valid")
    }

    pub fn parse(src: &str) -> Result<Self, MessagesError> {
        let mut table = BTreeMap::new();
        for (i, line) in src.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('\t').ok_or(MessagesError { line: i + 1 })?;
            table.insert(k.to_string(), v.to_string());
        }
        Ok(Messages { table })
    }

    /// Text for `key`. A missing key yields the key itself.
    pub fn get(&self, key: &str) -> String {
        self.table.get(key).cloned().unwrap_or_else(|| key.to_string())
    }

    /// Text for `key` with its `{}` replaced by `arg`.
    pub fn with(&self, key: &str, arg: impl fmt::Display) -> String {
        self.get(key).replacen("{}", &arg.to_string(), 1)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.table.contains_key(key)
    }
}

impl Default for Messages {
    fn default() -> Self {
        Messages::standard()
    }
}
