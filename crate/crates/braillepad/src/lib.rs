//! Files, replay, the WebSocket service and the command line around
//! `braillepad-core`.

pub mod clock;
pub mod config;
pub mod contacts;
pub mod replay;
pub mod runtime;
pub mod schedule_file;
pub mod script;
pub mod serve;
pub mod store;
pub mod translate;
pub mod wire;

pub use config::RuntimeConfig;
pub use replay::{replay, ReplayReport};
pub use runtime::{format_log, Input, Record, Runtime};
pub use script::Script;
pub use store::NoteStore;

/// Default notes directory when neither a flag nor the environment names one.
pub const DEFAULT_NOTES_DIR: &str = "./notes";
pub const NOTES_DIR_ENV: &str = "BRAILLEPAD_NOTES_DIR";
