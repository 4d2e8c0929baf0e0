//! The loop that feeds touches through the gesture engine into the session
//! and carries out the resulting effects against the store, the scheduler
//! and the device ports.

use std::path::PathBuf;

use braillepad_core::gesture::GestureError;
use braillepad_core::messages::Messages;
use braillepad_core::ports::{Ports, RecordingConfig, RecordingSuite};
use braillepad_core::scheduler::SchedulerError;
use braillepad_core::session::SaveResult;
use braillepad_core::{
    Effect, FiredAction, Gesture, GestureEngine, Intent, NoteName, Outcome, ScheduledAction, Scheduler,
    ScreenModel, Session, TouchEvent,
};
use chrono::NaiveDateTime;
use serde::{Deserialize, Serialize};

use crate::config::RuntimeConfig;
use crate::schedule_file::{load_schedule, write_schedule, ScheduleFileError, SCHEDULE_FILE};
use crate::store::{NoteStore, StoreError};

/// Something that happens to a session from outside: a pointer sample, the
/// passage of touch time or wall time, or typed text.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Input {
    Touch(TouchEvent),
    /// Touch time has reached `t` with no new samples.
    Flush { t: u64 },
    Clock {
        #[serde(with = "crate::clock::iso")]
        now: NaiveDateTime,
    },
    TextInput { text: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SaveStatus {
    Saved,
    AlreadyExists,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum StoreRecord {
    Save { name: NoteName, status: SaveStatus },
    List { count: usize },
    Load { name: NoteName, found: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionSummary {
    pub id: u64,
    pub kind: String,
    pub text: String,
    #[serde(with = "crate::clock::iso")]
    pub fire_at: NaiveDateTime,
}

impl From<&ScheduledAction> for ActionSummary {
    fn from(a: &ScheduledAction) -> Self {
        ActionSummary {
            id: a.id,
            kind: a.intent.kind().to_owned(),
            text: a.intent.payload().to_owned(),
            fire_at: a.fire_at,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiredSummary {
    pub id: u64,
    pub kind: String,
    pub text: String,
    #[serde(with = "crate::clock::iso")]
    pub fired_at: NaiveDateTime,
    /// `notified`, `dialed` or `failed`.
    pub outcome: String,
    /// Dialed number or failure reason.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl From<&FiredAction> for FiredSummary {
    fn from(f: &FiredAction) -> Self {
        let (outcome, detail) = match &f.outcome {
            Outcome::Notified => ("notified", None),
            Outcome::Dialed(n) => ("dialed", Some(n.clone())),
            Outcome::Failed(r) => ("failed", Some(r.clone())),
        };
        FiredSummary {
            id: f.id,
            kind: f.intent.kind().to_owned(),
            text: f.intent.payload().to_owned(),
            fired_at: f.fired_at,
            outcome: outcome.to_owned(),
            detail,
        }
    }
}

/// One line of the feedback log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Record {
    Gesture {
        #[serde(flatten)]
        gesture: Gesture,
        ignored: bool,
    },
    TextInput { text: String, ignored: bool },
    Effect(Effect),
    Store(StoreRecord),
    Scheduled(ActionSummary),
    Clock {
        #[serde(with = "crate::clock::iso")]
        now: NaiveDateTime,
    },
    Fired(FiredSummary),
}

impl Record {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records always serialize")
    }
}

/// Newline-terminated JSON lines.
pub fn format_log(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.to_line());
        out.push('\n');
    }
    out
}

#[derive(Debug, thiserror::Error)]
pub enum RuntimeError {
    #[error("touch stream: {0}")]
    Gesture(GestureError),
    #[error("clock: {0}")]
    Clock(SchedulerError),
    #[error(transparent)]
    Schedule(#[from] ScheduleFileError),
    #[error(transparent)]
    Store(#[from] StoreError),
}

/// Recording ports matching a runtime configuration.
pub fn recording_ports(config: &RuntimeConfig) -> RecordingSuite {
    RecordingSuite::new(RecordingConfig {
        speech_available: config.speech_available,
        sim_present: config.sim_present,
        contacts: config.contacts.clone(),
        start: config.start,
    })
}

pub struct Runtime<P> {
    engine: GestureEngine,
    session: Session,
    scheduler: Scheduler,
    store: NoteStore,
    schedule_path: PathBuf,
    messages: Messages,
    ports: P,
    log: Vec<Record>,
}

impl<P: Ports> Runtime<P> {
    /// Restores pending actions from the store's `schedule.rec`, boots the
    /// session and applies the boot effects.
    pub fn boot(config: &RuntimeConfig, store: NoteStore, mut ports: P) -> Result<Self, RuntimeError> {
        let schedule_path = store.dir().join(SCHEDULE_FILE);
        let scheduler = Scheduler::restore(config.start, load_schedule(&schedule_path)?);
        let speech_available = ports.available();
        let (session, effects) = Session::boot(config.settings, speech_available, config.session);
        let mut rt = Runtime {
            engine: GestureEngine::new(config.gesture),
            session,
            scheduler,
            store,
            schedule_path,
            messages: Messages::standard(),
            ports,
            log: Vec::new(),
        };
        rt.apply_effects(effects)?;
        Ok(rt)
    }

    /// Handles one input and returns the records it produced.
    pub fn apply(&mut self, input: &Input) -> Result<&[Record], RuntimeError> {
        let start = self.log.len();
        match input {
            Input::Touch(e) => {
                let gestures = self.engine.feed(*e).map_err(RuntimeError::Gesture)?;
                self.handle_gestures(gestures)?;
            }
            Input::Flush { t } => {
                let gestures = self.engine.flush(*t);
                self.handle_gestures(gestures)?;
            }
            Input::TextInput { text } => {
                let tr = self.session.text_input(text);
                self.log.push(Record::TextInput { text: text.clone(), ignored: tr.ignored });
                self.apply_effects(tr.effects)?;
            }
            Input::Clock { now } => self.advance(*now)?,
        }
        Ok(&self.log[start..])
    }

    fn handle_gestures(&mut self, gestures: Vec<Gesture>) -> Result<(), RuntimeError> {
        for gesture in gestures {
            let tr = self.session.handle(&gesture);
            self.log.push(Record::Gesture { gesture, ignored: tr.ignored });
            self.apply_effects(tr.effects)?;
        }
        Ok(())
    }

    fn apply_effects(&mut self, effects: Vec<Effect>) -> Result<(), RuntimeError> {
        for effect in effects {
            self.log.push(Record::Effect(effect.clone()));
            match effect {
                Effect::Vibrate { ms } => self.ports.vibrate(ms),
                Effect::Speak { text } => self.ports.speak(&text),
                Effect::RequestSpeechInstall => {}
                Effect::SaveNote { name, content, overwrite } => {
                    let (status, result) = match self.store.save(&name, &content, overwrite) {
                        Ok(()) => (SaveStatus::Saved, SaveResult::Saved),
                        Err(StoreError::AlreadyExists(_)) => (SaveStatus::AlreadyExists, SaveResult::AlreadyExists),
                        Err(_) => (SaveStatus::Failed, SaveResult::Failed),
                    };
                    self.log.push(Record::Store(StoreRecord::Save { name, status }));
                    let follow = self.session.save_completed(result);
                    self.apply_effects(follow)?;
                }
                Effect::ListNotes => {
                    let names = self.store.list().unwrap_or_default();
                    self.log.push(Record::Store(StoreRecord::List { count: names.len() }));
                    let follow = self.session.notes_listed(names);
                    self.apply_effects(follow)?;
                }
                Effect::LoadNote { name } => {
                    let content = self.store.load(&name).ok();
                    self.log.push(Record::Store(StoreRecord::Load { name: name.clone(), found: content.is_some() }));
                    let follow = self.session.note_loaded(name, content);
                    self.apply_effects(follow)?;
                }
                Effect::Schedule { intent, time } => {
                    let now = self.scheduler.now();
                    let action = self.scheduler.schedule(intent, time, now);
                    self.persist_schedule()?;
                    self.log.push(Record::Scheduled(ActionSummary::from(&action)));
                }
            }
        }
        Ok(())
    }

    /// Moves the virtual clock to `now`, firing whatever falls due. A fired
    /// call is followed by a spoken notice of its outcome.
    pub fn advance(&mut self, now: NaiveDateTime) -> Result<(), RuntimeError> {
        if now < self.scheduler.now() {
            return Err(RuntimeError::Clock(SchedulerError::ClockRegression { now: self.scheduler.now(), to: now }));
        }
        self.log.push(Record::Clock { now });
        let fired = self.scheduler.advance(now, &mut self.ports).map_err(RuntimeError::Clock)?;
        if fired.is_empty() {
            return Ok(());
        }
        self.persist_schedule()?;
        for f in &fired {
            self.log.push(Record::Fired(FiredSummary::from(f)));
            if let Intent::Call(target) = &f.intent {
                let notice = match f.outcome {
                    Outcome::Dialed(_) => self.messages.with("calling", target),
                    _ => self.messages.with("call_failed", target),
                };
                let state = self.session.state();
                if state.settings.tts_enabled && state.speech_available {
                    self.apply_effects(vec![Effect::Speak { text: notice }])?;
                }
            }
        }
        Ok(())
    }

    fn persist_schedule(&self) -> Result<(), RuntimeError> {
        write_schedule(&self.schedule_path, self.scheduler.pending())?;
        Ok(())
    }

    pub fn log(&self) -> &[Record] {
        &self.log
    }

    /// Drops the accumulated log; long-lived sessions call this after
    /// forwarding each batch.
    pub fn clear_log(&mut self) {
        self.log.clear();
    }

    pub fn snapshot(&self) -> ScreenModel {
        self.session.snapshot()
    }

    pub fn session(&self) -> &Session {
        &self.session
    }

    pub fn scheduler(&self) -> &Scheduler {
        &self.scheduler
    }

    pub fn store(&self) -> &NoteStore {
        &self.store
    }

    pub fn ports(&self) -> &P {
        &self.ports
    }

    pub fn ports_mut(&mut self) -> &mut P {
        &mut self.ports
    }

    pub fn into_ports(self) -> P {
        self.ports
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use braillepad_core::ScreenId;

    fn boot(dir: &std::path::Path) -> Runtime<RecordingSuite> {
        let config = RuntimeConfig::default();
        Runtime::boot(&config, NoteStore::open(dir).unwrap(), recording_ports(&config)).unwrap()
    }

    fn double_tap(rt: &mut Runtime<RecordingSuite>, x: f64, y: f64, t: u64) {
        for input in [
            Input::Touch(TouchEvent::down(x, y, t)),
            Input::Touch(TouchEvent::up(x, y, t + 50)),
            Input::Touch(TouchEvent::down(x, y, t + 150)),
            Input::Touch(TouchEvent::up(x, y, t + 200)),
            Input::Flush { t: t + 600 },
        ] {
            rt.apply(&input).unwrap();
        }
    }

    #[test]
    fn boot_speaks_main_menu() {
        let dir = tempfile::tempdir().unwrap();
        let rt = boot(dir.path());
        assert_eq!(rt.session().screen(), ScreenId::MainMenu);
        assert_eq!(format_log(rt.log()), "{\"type\":\"effect\",\"effect\":\"speak\",\"text\":\"Main menu. Notes, Settings, Help.\"}\n");
        assert_eq!(rt.ports().spoken(), ["Main menu. Notes, Settings, Help."]);
    }

    #[test]
    fn double_tap_top_band_opens_notes() {
        let dir = tempfile::tempdir().unwrap();
        let mut rt = boot(dir.path());
        double_tap(&mut rt, 0.5, 0.1, 1000);
        assert_eq!(rt.session().screen(), ScreenId::NotesMenu);
        assert!(rt.log().iter().any(|r| matches!(r, Record::Gesture { gesture: Gesture::DoubleTap { .. }, ignored: false })));
    }

    #[test]
    fn clock_regression_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let mut rt = boot(dir.path());
        let earlier = crate::clock::parse_datetime("2023-12-31T00:00").unwrap();
        assert!(matches!(rt.apply(&Input::Clock { now: earlier }), Err(RuntimeError::Clock(_))));
    }

    #[test]
    fn out_of_order_touch_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let mut rt = boot(dir.path());
        rt.apply(&Input::Touch(TouchEvent::down(0.5, 0.5, 100))).unwrap();
        assert!(matches!(
            rt.apply(&Input::Touch(TouchEvent::up(0.5, 0.5, 50))),
            Err(RuntimeError::Gesture(GestureError::OutOfOrderEvent { .. }))
        ));
    }

    #[test]
    fn record_lines_roundtrip() {
        let records = [
            Record::Gesture { gesture: Gesture::Explore { x: 0.25, y: 0.5, initial: true }, ignored: false },
            Record::Gesture { gesture: Gesture::TripleTap, ignored: true },
            Record::Effect(Effect::Vibrate { ms: 40 }),
            Record::Store(StoreRecord::List { count: 2 }),
            Record::Clock { now: crate::config::default_start() },
        ];
        for r in records {
            let line = r.to_line();
            assert_eq!(serde_json::from_str::<Record>(&line).unwrap(), r, "{line}");
        }
        assert_eq!(
            Record::Gesture { gesture: Gesture::TripleTap, ignored: false }.to_line(),
            "{\"type\":\"gesture\",\"gesture\":\"triple_tap\",\"ignored\":false}"
        );
    }

    #[test]
    fn inputs_parse() {
        let i: Input = serde_json::from_str("{\"type\":\"touch\",\"kind\":\"down\",\"x\":0.5,\"y\":0.2,\"t\":7}").unwrap();
        assert_eq!(i, Input::Touch(TouchEvent::down(0.5, 0.2, 7)));
        let c: Input = serde_json::from_str("{\"type\":\"clock\",\"now\":\"2024-01-01T21:00\"}").unwrap();
        assert!(matches!(c, Input::Clock { .. }));
    }
}
