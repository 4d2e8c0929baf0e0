//! Headless replay: boot against recording ports, run a script, keep the log.

use std::path::Path;

use braillepad_core::ports::RecordingSuite;

use crate::config::RuntimeConfig;
use crate::runtime::{format_log, recording_ports, Runtime, RuntimeError};
use crate::script::{run_script, ExpectFailure, ReplayError, Script};
use crate::store::{NoteStore, StoreError};

#[derive(Debug, thiserror::Error)]
pub enum ReplayFailure {
    #[error("opening notes directory: {0}")]
    Store(#[from] StoreError),
    #[error("boot: {0}")]
    Boot(RuntimeError),
    #[error(transparent)]
    Step(#[from] ReplayError),
}

pub struct ReplayReport {
    pub runtime: Runtime<RecordingSuite>,
    pub failures: Vec<ExpectFailure>,
}

impl ReplayReport {
    pub fn log_text(&self) -> String {
        format_log(self.runtime.log())
    }

    pub fn ports(&self) -> &RecordingSuite {
        self.runtime.ports()
    }
}

pub fn replay(script: &Script, config: &RuntimeConfig, notes_dir: &Path) -> Result<ReplayReport, ReplayFailure> {
    let store = NoteStore::open(notes_dir)?;
    let mut runtime = Runtime::boot(config, store, recording_ports(config)).map_err(ReplayFailure::Boot)?;
    let failures = run_script(&mut runtime, script)?;
    Ok(ReplayReport { runtime, failures })
}
