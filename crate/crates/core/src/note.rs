//! Note names.

use alloc::string::String;
use core::fmt;

use serde::{Deserialize, Serialize};

pub const MAX_NAME_LEN: usize = 64;

/// A sanitized note name: nonempty, at most 64 characters of `[a-z0-9_-]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct NoteName(String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmptyName;

impl fmt::Display for EmptyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("note name is empty")
    }
}

impl core::error::Error for EmptyName {}

impl NoteName {
    /// Lowercases, replaces anything outside `[a-z0-9_-]` with `_` and
    /// truncates to 64 characters. Input that is empty or only whitespace
    /// has nothing to keep.
    pub fn sanitize(raw: &str) -> Result<Self, EmptyName> {
        if raw.trim().is_empty() {
            return Err(EmptyName);
        }
        let name: String = raw
            .chars()
            .take(MAX_NAME_LEN)
            .map(|c| {
                let c = c.to_ascii_lowercase();
                if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' || c == '-' {
                    c
                } else {
                    '_'
                }
            })
            .collect();
        Ok(NoteName(name))
    }

    /// Accepts only names that are already sanitized.
    pub fn parse(s: &str) -> Option<Self> {
        match NoteName::sanitize(s) {
            Ok(n) if n.0 == s => Some(n),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NoteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for NoteName {
    type Error = EmptyName;

    fn try_from(s: String) -> Result<Self, EmptyName> {
        NoteName::parse(&s).ok_or(EmptyName)
    }
}

impl From<NoteName> for String {
    fn from(n: NoteName) -> String {
        n.0
    }
}
