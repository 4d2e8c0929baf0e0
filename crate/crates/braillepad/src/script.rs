//! Replay scripts: one JSON object per line.
//!
//! ```text
//! {"type":"touch","kind":"down","x":0.5,"y":0.1,"t":0}
//! {"type":"flush","t":900}
//! {"type":"clock","now":"2024-01-01T21:00"}
//! {"type":"text_input","text":"n1"}
//! {"type":"expect","record":{"type":"effect","effect":"speak","text":"Saved n1"}}
//! ```
//!
//! Blank lines and lines starting with `#` are skipped. A script is fully
//! checked before anything runs: touch time never goes backwards, presses
//! are well nested, coordinates are in range and the clock never regresses.

use braillepad_core::TouchKind;
use chrono::NaiveDateTime;
use serde_json::Value;

use crate::runtime::{Input, Record, Runtime, RuntimeError};
use braillepad_core::ports::Ports;

#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    Input(Input),
    /// Some record since the previous expectation must contain every field
    /// of this object.
    Expect(Value),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScriptLine {
    pub line: usize,
    pub step: Step,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Script {
    pub lines: Vec<ScriptLine>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("script line {line}: {message}")]
pub struct ScriptParseError {
    pub line: usize,
    pub message: String,
}

impl Script {
    pub fn parse(src: &str) -> Result<Script, ScriptParseError> {
        let mut lines = Vec::new();
        let mut touch_t: Option<u64> = None;
        let mut clock: Option<NaiveDateTime> = None;
        let mut pressed = false;
        for (i, raw) in src.lines().enumerate() {
            let line = i + 1;
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let err = |message: String| ScriptParseError { line, message };
            let value: Value = serde_json::from_str(text).map_err(|e| err(e.to_string()))?;
            let step = if value.get("type").and_then(Value::as_str) == Some("expect") {
                let record = value.get("record").filter(|r| r.is_object());
                Step::Expect(record.cloned().ok_or_else(|| err("expect needs a `record` object".into()))?)
            } else {
                Step::Input(serde_json::from_value(value).map_err(|e| err(e.to_string()))?)
            };

            if let Step::Input(input) = &step {
                let t = match input {
                    Input::Touch(e) => Some(e.t),
                    Input::Flush { t } => Some(*t),
                    _ => None,
                };
                if let Some(t) = t {
                    if touch_t.is_some_and(|prev| t < prev) {
                        return Err(err(format!("timestamp {t} is before {}", touch_t.unwrap_or_default())));
                    }
                    touch_t = Some(t);
                }
                match input {
                    Input::Touch(e) => {
                        if !(0.0..=1.0).contains(&e.x) || !(0.0..=1.0).contains(&e.y) {
                            return Err(err("coordinates must lie in [0, 1]".into()));
                        }
                        pressed = match (e.kind, pressed) {
                            (TouchKind::Down, false) => true,
                            (TouchKind::Move, true) => true,
                            (TouchKind::Up, true) => false,
                            (kind, _) => return Err(err(format!("unexpected {kind:?} event"))),
                        };
                    }
                    Input::Clock { now } => {
                        if clock.is_some_and(|prev| *now < prev) {
                            return Err(err("clock moves backwards".into()));
                        }
                        clock = Some(*now);
                    }
                    _ => {}
                }
            }
            lines.push(ScriptLine { line, step });
        }
        Ok(Script { lines })
    }

    pub fn inputs(&self) -> impl Iterator<Item = &Input> {
        self.lines.iter().filter_map(|l| match &l.step {
            Step::Input(i) => Some(i),
            Step::Expect(_) => None,
        })
    }
}

/// `actual` has every field of `expected`, recursively for objects.
pub fn subset_match(expected: &Value, actual: &Value) -> bool {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            e.iter().all(|(k, v)| a.get(k).is_some_and(|av| subset_match(v, av)))
        }
        (Value::Number(e), Value::Number(a)) => e.as_f64() == a.as_f64(),
        _ => expected == actual,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpectFailure {
    pub line: usize,
    pub expected: Value,
}

#[derive(Debug, thiserror::Error)]
#[error("script line {line}: {source}")]
pub struct ReplayError {
    pub line: usize,
    #[source]
    pub source: RuntimeError,
}

/// Runs every step of `script` against a booted runtime. Expectations are
/// checked against the records produced since the previous expectation,
/// boot included for the first one.
pub fn run_script<P: Ports>(runtime: &mut Runtime<P>, script: &Script) -> Result<Vec<ExpectFailure>, ReplayError> {
    let mut failures = Vec::new();
    let mut window_start = 0;
    for l in &script.lines {
        match &l.step {
            Step::Input(input) => {
                runtime.apply(input).map_err(|source| ReplayError { line: l.line, source })?;
            }
            Step::Expect(expected) => {
                let window: &[Record] = &runtime.log()[window_start..];
                let hit = window
                    .iter()
                    .any(|r| serde_json::to_value(r).is_ok_and(|v| subset_match(expected, &v)));
                if !hit {
                    failures.push(ExpectFailure { line: l.line, expected: expected.clone() });
                }
                window_start = runtime.log().len();
            }
        }
    }
    Ok(failures)
}
