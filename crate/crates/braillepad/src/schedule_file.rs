//! `schedule.rec`: pending actions, one `id<TAB>kind<TAB>payload<TAB>fire_at`
//! record per line. Tabs, newlines and backslashes in the payload are
//! backslash-escaped.

use std::fs;
use std::io;
use std::path::Path;

use braillepad_core::{Intent, ScheduledAction};

use crate::clock::{format_datetime, parse_datetime};

pub const SCHEDULE_FILE: &str = "schedule.rec";

#[derive(Debug, thiserror::Error)]
pub enum ScheduleFileError {
    #[error("{SCHEDULE_FILE} line {line}: {reason}")]
    Malformed { line: usize, reason: &'static str },
    #[error("{SCHEDULE_FILE}: {0}")]
    Io(#[from] io::Error),
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(s: &str) -> Option<String> {
    let mut out = String::with_capacity(s.len());
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        out.push(match chars.next()? {
            '\\' => '\\',
            't' => '\t',
            'n' => '\n',
            'r' => '\r',
            _ => return None,
        });
    }
    Some(out)
}

pub fn format_records<'a>(actions: impl IntoIterator<Item = &'a ScheduledAction>) -> String {
    let mut out = String::new();
    for a in actions {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            a.id,
            a.intent.kind(),
            escape(a.intent.payload()),
            format_datetime(a.fire_at)
        ));
    }
    out
}

pub fn parse_records(src: &str) -> Result<Vec<ScheduledAction>, ScheduleFileError> {
    let mut actions = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        if raw.is_empty() {
            continue;
        }
        let bad = |reason| ScheduleFileError::Malformed { line, reason };
        let fields: Vec<&str> = raw.split('\t').collect();
        let [id, kind, payload, fire_at] = fields[..] else {
            return Err(bad("expected four tab-separated fields"));
        };
        let id = id.parse().map_err(|_| bad("bad id"))?;
        let payload = unescape(payload).ok_or(bad("bad escape in payload"))?;
        let intent = match kind {
            "reminder" => Intent::Reminder(payload),
            "call" => Intent::Call(payload),
            _ => return Err(bad("unknown kind")),
        };
        let fire_at = parse_datetime(fire_at).ok_or(bad("bad fire_at"))?;
        actions.push(ScheduledAction { id, intent, fire_at });
    }
    Ok(actions)
}

/// Missing file means nothing pending.
pub fn load_schedule(path: &Path) -> Result<Vec<ScheduledAction>, ScheduleFileError> {
    match fs::read_to_string(path) {
        Ok(src) => parse_records(&src),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(Vec::new()),
        Err(e) => Err(e.into()),
    }
}

/// Replaces the file through a temporary sibling so a crash never leaves
/// a half-written schedule.
pub fn write_schedule<'a>(
    path: &Path,
    actions: impl IntoIterator<Item = &'a ScheduledAction>,
) -> Result<(), ScheduleFileError> {
    let tmp = path.with_extension("rec.tmp");
    fs::write(&tmp, format_records(actions))?;
    fs::rename(&tmp, path)?;
    Ok(())
}
