//! Gesture recognition over a timestamped pointer stream.
//!
//! The engine never reads a clock. Everything time-dependent is decided
//! from event timestamps, or from the `now` passed to [`GestureEngine::flush`],
//! so a recorded stream always classifies the same way.

use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

pub use crate::layout::hit_test;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TouchKind {
    Down,
    Move,
    Up,
}

/// One pointer sample. `x`/`y` are fractions of screen width/height,
/// `t` is milliseconds on any monotone timeline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TouchEvent {
    pub kind: TouchKind,
    pub x: f64,
    pub y: f64,
    pub t: u64,
}

impl TouchEvent {
    pub fn down(x: f64, y: f64, t: u64) -> Self {
        TouchEvent { kind: TouchKind::Down, x, y, t }
    }

    pub fn moved(x: f64, y: f64, t: u64) -> Self {
        TouchEvent { kind: TouchKind::Move, x, y, t }
    }

    pub fn up(x: f64, y: f64, t: u64) -> Self {
        TouchEvent { kind: TouchKind::Up, x, y, t }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gesture", rename_all = "snake_case")]
pub enum Gesture {
    /// Finger on the glass. `initial` marks the first sample of a press.
    Explore { x: f64, y: f64, initial: bool },
    Tap { x: f64, y: f64 },
    /// Carries the position of the first tap.
    DoubleTap { x: f64, y: f64 },
    TripleTap,
    LongPress { x: f64, y: f64 },
    FlingLeft,
    FlingRight,
}

impl Gesture {
    pub fn name(&self) -> &'static str {
        match self {
            Gesture::Explore { .. } => "explore",
            Gesture::Tap { .. } => "tap",
            Gesture::DoubleTap { .. } => "double_tap",
            Gesture::TripleTap => "triple_tap",
            Gesture::LongPress { .. } => "long_press",
            Gesture::FlingLeft => "fling_left",
            Gesture::FlingRight => "fling_right",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GestureConfig {
    /// Longest press that still counts as a tap.
    pub tap_max_ms: u64,
    /// Longest gap between one tap's up and the next tap's down.
    pub multi_tap_gap_ms: u64,
    /// A still press longer than this is a long press.
    pub long_press_min_ms: u64,
    pub fling_min_dx: f64,
    pub fling_max_ms: u64,
    pub fling_max_dy: f64,
    /// Largest per-axis drift from the down point for taps and long presses.
    pub move_slop: f64,
}

impl Default for GestureConfig {
    fn default() -> Self {
        GestureConfig {
            tap_max_ms: 300,
            multi_tap_gap_ms: 300,
            long_press_min_ms: 500,
            fling_min_dx: 0.25,
            fling_max_ms: 300,
            fling_max_dy: 0.15,
            move_slop: 0.05,
        }
    }
}

impl GestureConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = self.tap_max_ms > 0
            && self.multi_tap_gap_ms > 0
            && self.long_press_min_ms > 0
            && self.fling_max_ms > 0
            && self.fling_min_dx > 0.0
            && self.fling_max_dy > 0.0
            && self.move_slop > 0.0;
        if !positive {
            return Err(ConfigError::NotPositive);
        }
        if self.long_press_min_ms <= self.tap_max_ms {
            return Err(ConfigError::LongPressNotAboveTap);
        }
        if self.fling_min_dx <= self.move_slop {
            return Err(ConfigError::FlingWithinSlop);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfigError {
    NotPositive,
    LongPressNotAboveTap,
    FlingWithinSlop,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConfigError::NotPositive => "gesture thresholds must be positive",
            ConfigError::LongPressNotAboveTap => "long_press_min_ms must exceed tap_max_ms",
            ConfigError::FlingWithinSlop => "fling_min_dx must exceed move_slop",
        })
    }
}

impl core::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GestureError {
    OutOfOrderEvent { previous: u64, got: u64 },
    /// `move` or `up` with no finger down, or `down` while already down.
    IllegalSequence(TouchKind),
    CoordinateOutOfRange { x: f64, y: f64 },
}

impl fmt::Display for GestureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GestureError::OutOfOrderEvent { previous, got } => {
                write!(f, "event at t={got} precedes previous event at t={previous}")
            }
            GestureError::IllegalSequence(kind) => write!(f, "unexpected {kind:?} event"),
            GestureError::CoordinateOutOfRange { x, y } => {
                write!(f, "coordinates ({x}, {y}) outside the unit square")
            }
        }
    }
}

impl core::error::Error for GestureError {}

#[derive(Debug, Clone, Copy)]
struct Press {
    x: f64,
    y: f64,
    t: u64,
    slop_exceeded: bool,
    long_emitted: bool,
}

#[derive(Debug, Clone, Copy)]
struct PendingTaps {
    count: u8,
    x: f64,
    y: f64,
    last_up: u64,
}

/// Single-owner recognizer; one per session.
#[derive(Debug, Clone)]
pub struct GestureEngine {
    config: GestureConfig,
    press: Option<Press>,
    pending: Option<PendingTaps>,
    last_t: Option<u64>,
}

impl GestureEngine {
    pub fn new(config: GestureConfig) -> Self {
        GestureEngine { config, press: None, pending: None, last_t: None }
    }

    pub fn config(&self) -> &GestureConfig {
        &self.config
    }

    pub fn is_pressed(&self) -> bool {
        self.press.is_some()
    }

    pub fn feed(&mut self, e: TouchEvent) -> Result<Vec<Gesture>, GestureError> {
        if let Some(previous) = self.last_t {
            if e.t < previous {
                return Err(GestureError::OutOfOrderEvent { previous, got: e.t });
            }
        }
        if !(0.0..=1.0).contains(&e.x) || !(0.0..=1.0).contains(&e.y) {
            return Err(GestureError::CoordinateOutOfRange { x: e.x, y: e.y });
        }
        match (e.kind, self.press.is_some()) {
            (TouchKind::Down, true) | (TouchKind::Move | TouchKind::Up, false) => {
                return Err(GestureError::IllegalSequence(e.kind));
            }
            _ => {}
        }
        self.last_t = Some(e.t);

        let mut out = Vec::new();
        match e.kind {
            TouchKind::Down => {
                if let Some(p) = self.pending {
                    if e.t - p.last_up >= self.config.multi_tap_gap_ms {
                        self.resolve_pending(&mut out);
                    }
                }
                self.press = Some(Press {
                    x: e.x,
                    y: e.y,
                    t: e.t,
                    slop_exceeded: false,
                    long_emitted: false,
                });
                out.push(Gesture::Explore { x: e.x, y: e.y, initial: true });
            }
            TouchKind::Move => {
                self.track(e.x, e.y);
                out.push(Gesture::Explore { x: e.x, y: e.y, initial: false });
                self.check_long_press(e.t, &mut out);
            }
            TouchKind::Up => {
                self.track(e.x, e.y);
                let press = self.press.take().expect("checked above");
                self.finish_press(press, e, &mut out);
            }
        }
        Ok(out)
    }

    /// Resolves whatever can be decided by time `now`: a held press that
    /// has become a long press, or taps whose multi-tap window has closed.
    pub fn flush(&mut self, now: u64) -> Vec<Gesture> {
        let now = self.last_t.map_or(now, |t| now.max(t));
        self.last_t = Some(now);
        let mut out = Vec::new();
        if self.press.is_some() {
            self.check_long_press(now, &mut out);
        } else if let Some(p) = self.pending {
            if now - p.last_up >= self.config.multi_tap_gap_ms {
                self.resolve_pending(&mut out);
            }
        }
        out
    }

    fn track(&mut self, x: f64, y: f64) {
        let slop = self.config.move_slop;
        if let Some(p) = self.press.as_mut() {
            if (x - p.x).abs() > slop || (y - p.y).abs() > slop {
                p.slop_exceeded = true;
            }
        }
    }

    fn check_long_press(&mut self, now: u64, out: &mut Vec<Gesture>) {
        let Some(p) = self.press else { return };
        if !p.slop_exceeded && !p.long_emitted && now - p.t > self.config.long_press_min_ms {
            self.resolve_pending(out);
            out.push(Gesture::LongPress { x: p.x, y: p.y });
            if let Some(p) = self.press.as_mut() {
                p.long_emitted = true;
            }
        }
    }

    fn finish_press(&mut self, press: Press, up: TouchEvent, out: &mut Vec<Gesture>) {
        let c = &self.config;
        let held = up.t - press.t;
        let dx = up.x - press.x;
        let dy = up.y - press.y;

        if press.long_emitted {
            return;
        }
        if !press.slop_exceeded && held > c.long_press_min_ms {
            self.resolve_pending(out);
            out.push(Gesture::LongPress { x: press.x, y: press.y });
        } else if dx.abs() >= c.fling_min_dx && dy.abs() <= c.fling_max_dy && held <= c.fling_max_ms
        {
            self.resolve_pending(out);
            out.push(if dx < 0.0 { Gesture::FlingLeft } else { Gesture::FlingRight });
        } else if !press.slop_exceeded && held <= c.tap_max_ms {
            let taps = match self.pending {
                Some(p) => PendingTaps { count: p.count + 1, last_up: up.t, ..p },
                None => PendingTaps { count: 1, x: press.x, y: press.y, last_up: up.t },
            };
            if taps.count >= 3 {
                self.pending = None;
                out.push(Gesture::TripleTap);
            } else {
                self.pending = Some(taps);
            }
        } else {
            self.resolve_pending(out);
        }
    }

    fn resolve_pending(&mut self, out: &mut Vec<Gesture>) {
        if let Some(p) = self.pending.take() {
            out.push(match p.count {
                1 => Gesture::Tap { x: p.x, y: p.y },
                _ => Gesture::DoubleTap { x: p.x, y: p.y },
            });
        }
    }
}

impl Default for GestureEngine {
    fn default() -> Self {
        GestureEngine::new(GestureConfig::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn run(events: &[TouchEvent], flush_at: Option<u64>) -> Vec<Gesture> {
        let mut engine = GestureEngine::default();
        let mut out = Vec::new();
        for &e in events {
            out.extend(engine.feed(e).unwrap());
        }
        if let Some(t) = flush_at {
            out.extend(engine.flush(t));
        }
        out
    }

    fn explore(x: f64, y: f64) -> Gesture {
        Gesture::Explore { x, y, initial: true }
    }

    #[test]
    fn tap_resolves_on_flush() {
        let mut engine = GestureEngine::default();
        let a = engine.feed(TouchEvent::down(0.5, 0.2, 0)).unwrap();
        let b = engine.feed(TouchEvent::up(0.5, 0.2, 100)).unwrap();
        assert_eq!(a, vec![explore(0.5, 0.2)]);
        assert!(b.is_empty());
        assert!(engine.flush(399).is_empty());
        assert_eq!(engine.flush(500), vec![Gesture::Tap { x: 0.5, y: 0.2 }]);
        assert!(engine.flush(1000).is_empty());
    }

    #[test]
    fn long_press_on_up() {
        let out = run(&[TouchEvent::down(0.5, 0.5, 0), TouchEvent::up(0.5, 0.5, 700)], None);
        assert_eq!(out, vec![explore(0.5, 0.5), Gesture::LongPress { x: 0.5, y: 0.5 }]);
    }

    #[test]
    fn long_press_while_held_fires_once() {
        let mut engine = GestureEngine::default();
        engine.feed(TouchEvent::down(0.2, 0.2, 0)).unwrap();
        assert!(engine.flush(500).is_empty());
        assert_eq!(engine.flush(501), vec![Gesture::LongPress { x: 0.2, y: 0.2 }]);
        assert!(engine.flush(900).is_empty());
        assert!(engine.feed(TouchEvent::up(0.2, 0.2, 1000)).unwrap().is_empty());
    }

    #[test]
    fn fling_left() {
        let out = run(&[TouchEvent::down(0.9, 0.5, 0), TouchEvent::up(0.3, 0.5, 150)], None);
        assert_eq!(out, vec![explore(0.9, 0.5), Gesture::FlingLeft]);
    }

    #[test]
    fn errors() {
        let mut engine = GestureEngine::default();
        assert_eq!(
            engine.feed(TouchEvent::up(0.1, 0.1, 0)),
            Err(GestureError::IllegalSequence(TouchKind::Up))
        );
        engine.feed(TouchEvent::down(0.1, 0.1, 10)).unwrap();
        assert_eq!(
            engine.feed(TouchEvent::down(0.1, 0.1, 20)),
            Err(GestureError::IllegalSequence(TouchKind::Down))
        );
        assert_eq!(
            engine.feed(TouchEvent::moved(0.1, 0.1, 5)),
            Err(GestureError::OutOfOrderEvent { previous: 10, got: 5 })
        );
        assert!(matches!(
            engine.feed(TouchEvent::moved(1.5, 0.1, 30)),
            Err(GestureError::CoordinateOutOfRange { .. })
        ));
        // failed events leave the press intact
        assert!(engine.feed(TouchEvent::up(0.1, 0.1, 40)).is_ok());
    }

    #[test]
    fn config_validation() {
        assert!(GestureConfig::default().validate().is_ok());
        let bad = GestureConfig { long_press_min_ms: 300, ..Default::default() };
        assert_eq!(bad.validate(), Err(ConfigError::LongPressNotAboveTap));
        let bad = GestureConfig { fling_min_dx: 0.01, ..Default::default() };
        assert_eq!(bad.validate(), Err(ConfigError::FlingWithinSlop));
        let bad = GestureConfig { move_slop: 0.0, ..Default::default() };
        assert_eq!(bad.validate(), Err(ConfigError::NotPositive));
    }
}
