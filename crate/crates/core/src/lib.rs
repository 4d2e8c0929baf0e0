//! Engine for an eyes-free Braille note manager.
//!
//! Everything here is pure and deterministic: no IO, no wall clock. The
//! `braillepad` crate wires these pieces to files, sockets and a CLI.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod braille;
pub mod gesture;
pub mod intent;
pub mod layout;
pub mod messages;
pub mod note;
pub mod ports;
pub mod scheduler;
pub mod session;

pub use braille::{CharsetTable, DotPattern, PatternClass};
pub use gesture::{Gesture, GestureConfig, GestureEngine, TouchEvent, TouchKind};
pub use intent::{parse_intent, parse_time, Intent, TimeOfDay};
pub use layout::Layout;
pub use note::NoteName;
pub use scheduler::{FiredAction, Outcome, ScheduledAction, Scheduler};
pub use session::{Effect, ScreenId, ScreenModel, Session, SessionConfig, Settings};
