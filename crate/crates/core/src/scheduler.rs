//! Time-fired reminders and calls against a virtual clock.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use chrono::{Duration, NaiveDateTime, NaiveTime, Timelike};

use crate::intent::{Intent, TimeOfDay};
use crate::ports::{Contacts, Notifier, Speech, Telephony};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScheduledAction {
    pub id: u64,
    pub intent: Intent,
    pub fire_at: NaiveDateTime,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Outcome {
    Notified,
    Dialed(String),
    Failed(String),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Notified => f.write_str("notified"),
            Outcome::Dialed(n) => write!(f, "dialed {n}"),
            Outcome::Failed(r) => write!(f, "failed: {r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiredAction {
    pub id: u64,
    pub intent: Intent,
    pub fired_at: NaiveDateTime,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchedulerError {
    ClockRegression { now: NaiveDateTime, to: NaiveDateTime },
    UnknownId(u64),
}

impl fmt::Display for SchedulerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchedulerError::ClockRegression { now, to } => {
                write!(f, "cannot move clock back from {now} to {to}")
            }
            SchedulerError::UnknownId(id) => write!(f, "no pending action with id {id}"),
        }
    }
}

impl core::error::Error for SchedulerError {}

/// Earliest instant at or after `now` whose wall time is exactly `t`.
pub fn next_occurrence(now: NaiveDateTime, t: TimeOfDay) -> NaiveDateTime {
    let time = NaiveTime::from_hms_opt(t.hour().into(), t.minute().into(), 0)
        .expect("TimeOfDay is in range");
    let today = now.date().and_time(time);
    if today >= now {
        today
    } else {
        today + Duration::days(1)
    }
}

fn minute_floor(t: NaiveDateTime) -> NaiveDateTime {
    t.with_second(0).and_then(|t| t.with_nanosecond(0)).unwrap_or(t)
}

#[derive(Debug, Clone)]
pub struct Scheduler {
    now: NaiveDateTime,
    next_id: u64,
    pending: BTreeMap<u64, ScheduledAction>,
}

impl Scheduler {
    pub fn new(now: NaiveDateTime) -> Self {
        Scheduler { now, next_id: 1, pending: BTreeMap::new() }
    }

    /// Rebuilds a scheduler from persisted actions. Ids continue after the
    /// largest restored id.
    pub fn restore(now: NaiveDateTime, actions: impl IntoIterator<Item = ScheduledAction>) -> Self {
        let mut s = Scheduler::new(now);
        for a in actions {
            s.next_id = s.next_id.max(a.id + 1);
            s.pending.insert(a.id, a);
        }
        s
    }

    pub fn now(&self) -> NaiveDateTime {
        self.now
    }

    /// Pending actions ordered by `(fire_at, id)`.
    pub fn pending(&self) -> Vec<&ScheduledAction> {
        let mut v: Vec<_> = self.pending.values().collect();
        v.sort_by_key(|a| (a.fire_at, a.id));
        v
    }

    pub fn next_fire_at(&self) -> Option<NaiveDateTime> {
        self.pending.values().map(|a| a.fire_at).min()
    }

    /// Schedules `intent` for the next `t` at or after `now` (or the
    /// scheduler's own time, whichever is later).
    pub fn schedule(&mut self, intent: Intent, t: TimeOfDay, now: NaiveDateTime) -> ScheduledAction {
        let from = now.max(self.now);
        let action = ScheduledAction { id: self.next_id, intent, fire_at: next_occurrence(from, t) };
        self.next_id += 1;
        self.pending.insert(action.id, action.clone());
        action
    }

    pub fn cancel(&mut self, id: u64) -> Result<ScheduledAction, SchedulerError> {
        self.pending.remove(&id).ok_or(SchedulerError::UnknownId(id))
    }

    /// Moves the clock to `to` and fires every due action in
    /// `(fire_at, id)` order. Fired actions are forgotten.
    pub fn advance<P>(&mut self, to: NaiveDateTime, ports: &mut P) -> Result<Vec<FiredAction>, SchedulerError>
    where
        P: Speech + Notifier + Telephony + Contacts,
    {
        if to < self.now {
            return Err(SchedulerError::ClockRegression { now: self.now, to });
        }
        self.now = to;
        let due: Vec<ScheduledAction> = self
            .pending()
            .into_iter()
            .filter(|a| a.fire_at <= to)
            .cloned()
            .collect();
        let mut fired = Vec::with_capacity(due.len());
        for action in due {
            self.pending.remove(&action.id);
            let outcome = execute(&action.intent, ports);
            fired.push(FiredAction {
                id: action.id,
                intent: action.intent,
                fired_at: minute_floor(action.fire_at),
                outcome,
            });
        }
        Ok(fired)
    }
}

fn is_phone_number(s: &str) -> bool {
    s.chars().any(|c| c.is_ascii_digit()) && s.chars().all(|c| c.is_ascii_digit() || c == ' ')
}

fn execute<P>(intent: &Intent, ports: &mut P) -> Outcome
where
    P: Speech + Notifier + Telephony + Contacts,
{
    match intent {
        Intent::Reminder(message) => {
            ports.notify(message);
            ports.speak(message);
            Outcome::Notified
        }
        Intent::Call(target) => {
            if !ports.sim_present() {
                return Outcome::Failed("no sim".to_string());
            }
            let number = if is_phone_number(target) {
                target.chars().filter(|c| c.is_ascii_digit()).collect()
            } else {
                match ports.resolve(target) {
                    Some(n) => n,
                    None => return Outcome::Failed("unknown contact".to_string()),
                }
            };
            match ports.dial(&number) {
                Ok(()) => Outcome::Dialed(number),
                Err(e) => Outcome::Failed(e.to_string()),
            }
        }
    }
}
