//! Runtime settings and their `key=value` file form.
//!
//! ```text
//! # thresholds
//! long_press_min_ms=600
//! long_vibration_ms=150
//! tts_enabled=false
//! start_time=2024-01-01T20:00
//! ```

use std::path::Path;
use std::str::FromStr;

use braillepad_core::{GestureConfig, SessionConfig, Settings};
use chrono::{NaiveDate, NaiveDateTime};

use crate::clock::parse_datetime;
use crate::contacts::ContactTable;

#[derive(Debug, Clone, PartialEq)]
pub struct RuntimeConfig {
    pub gesture: GestureConfig,
    pub session: SessionConfig,
    pub settings: Settings,
    pub speech_available: bool,
    pub sim_present: bool,
    /// Virtual clock at boot.
    pub start: NaiveDateTime,
    pub contacts: ContactTable,
}

pub fn default_start() -> NaiveDateTime {
    NaiveDate::from_ymd_opt(2024, 1, 1)
        .and_then(|d| d.and_hms_opt(8, 0, 0))
        .expect("valid date")
}

impl Default for RuntimeConfig {
    fn default() -> Self {
        RuntimeConfig {
            gesture: GestureConfig::default(),
            session: SessionConfig::default(),
            settings: Settings::default(),
            speech_available: true,
            sim_present: true,
            start: default_start(),
            contacts: ContactTable::new(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("config line {line}: expected key=value")]
    Syntax { line: usize },
    #[error("config line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("config line {line}: bad value {value:?} for {key}")]
    BadValue { line: usize, key: String, value: String },
    #[error("gesture thresholds: {0}")]
    Gesture(braillepad_core::gesture::ConfigError),
    #[error("vibration durations must be positive with short < long")]
    Vibration,
    #[error("page_size must be positive")]
    PageSize,
    #[error("reading config: {0}")]
    Io(#[from] std::io::Error),
}

fn value<T: FromStr>(line: usize, key: &str, raw: &str) -> Result<T, ConfigError> {
    raw.parse().map_err(|_| ConfigError::BadValue { line, key: key.to_owned(), value: raw.to_owned() })
}

impl RuntimeConfig {
    /// Applies `key=value` lines on top of `self`. Blank lines and `#`
    /// comments are skipped.
    pub fn apply(mut self, src: &str) -> Result<Self, ConfigError> {
        for (i, raw) in src.lines().enumerate() {
            let line = i + 1;
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let (key, v) = text.split_once('=').ok_or(ConfigError::Syntax { line })?;
            let (key, v) = (key.trim(), v.trim());
            let g = &mut self.gesture;
            match key {
                "tap_max_ms" => g.tap_max_ms = value(line, key, v)?,
                "multi_tap_gap_ms" => g.multi_tap_gap_ms = value(line, key, v)?,
                "long_press_min_ms" => g.long_press_min_ms = value(line, key, v)?,
                "fling_min_dx" => g.fling_min_dx = value(line, key, v)?,
                "fling_max_ms" => g.fling_max_ms = value(line, key, v)?,
                "fling_max_dy" => g.fling_max_dy = value(line, key, v)?,
                "move_slop" => g.move_slop = value(line, key, v)?,
                "short_vibration_ms" => self.session.short_vibration_ms = value(line, key, v)?,
                "long_vibration_ms" => self.session.long_vibration_ms = value(line, key, v)?,
                "page_size" => self.session.page_size = value(line, key, v)?,
                "tts_enabled" => self.settings.tts_enabled = value(line, key, v)?,
                "braille_filename_mode" => self.settings.braille_filename_mode = value(line, key, v)?,
                "speech_available" => self.speech_available = value(line, key, v)?,
                "sim_present" => self.sim_present = value(line, key, v)?,
                "start_time" => {
                    self.start = parse_datetime(v).ok_or_else(|| ConfigError::BadValue {
                        line,
                        key: key.to_owned(),
                        value: v.to_owned(),
                    })?
                }
                _ => return Err(ConfigError::UnknownKey { line, key: key.to_owned() }),
            }
        }
        self.validate()?;
        Ok(self)
    }

    pub fn parse(src: &str) -> Result<Self, ConfigError> {
        RuntimeConfig::default().apply(src)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        RuntimeConfig::parse(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.gesture.validate().map_err(ConfigError::Gesture)?;
        let s = &self.session;
        if s.short_vibration_ms == 0 || s.short_vibration_ms >= s.long_vibration_ms {
            return Err(ConfigError::Vibration);
        }
        if s.page_size == 0 {
            return Err(ConfigError::PageSize);
        }
        Ok(())
    }
}
