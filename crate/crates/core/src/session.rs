//! The application state machine.
//!
//! A [`Session`] consumes gestures (and the results of store operations it
//! asked for) and answers with [`Effect`]s. It has no timers and no IO, so a
//! gesture sequence always produces the same trajectory.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::braille::{CharsetTable, Decoded, Decoder, DecoderState, DotPattern, PatternClass};
use crate::gesture::Gesture;
use crate::intent::{command_keyword, parse_intent, Intent, TimeOfDay};
use crate::layout::{hit_test, Layout};
use crate::messages::Messages;
use crate::note::NoteName;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScreenId {
    MainMenu,
    NotesMenu,
    Compose,
    SaveName,
    OpenList,
    ReadChoice,
    ReadTouch,
    ReadSpeech,
    Settings,
    Help,
}

impl ScreenId {
    pub const ALL: [ScreenId; 10] = [
        ScreenId::MainMenu,
        ScreenId::NotesMenu,
        ScreenId::Compose,
        ScreenId::SaveName,
        ScreenId::OpenList,
        ScreenId::ReadChoice,
        ScreenId::ReadTouch,
        ScreenId::ReadSpeech,
        ScreenId::Settings,
        ScreenId::Help,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Settings {
    pub tts_enabled: bool,
    pub braille_filename_mode: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { tts_enabled: true, braille_filename_mode: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionConfig {
    pub short_vibration_ms: u32,
    pub long_vibration_ms: u32,
    pub page_size: usize,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig { short_vibration_ms: 40, long_vibration_ms: 120, page_size: 5 }
    }
}

/// An externally observable output of the session.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "effect", rename_all = "snake_case")]
pub enum Effect {
    Vibrate { ms: u32 },
    Speak { text: String },
    SaveNote { name: NoteName, content: String, overwrite: bool },
    ListNotes,
    LoadNote { name: NoteName },
    Schedule { intent: Intent, time: TimeOfDay },
    RequestSpeechInstall,
}

/// Outcome of a `SaveNote` effect, reported back by the runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaveResult {
    Saved,
    AlreadyExists,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Transition {
    pub effects: Vec<Effect>,
    /// The gesture has no meaning on the current screen.
    pub ignored: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LoadedNote {
    pub name: NoteName,
    pub content: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SessionState {
    pub screen: ScreenId,
    pub settings: Settings,
    pub speech_available: bool,
    pub compose_text: String,
    pub compose_decoder: DecoderState,
    /// Cell being built in compose or Braille name entry.
    pub current_pattern: DotPattern,
    pub pending_name: String,
    pub name_decoder: DecoderState,
    /// Set when compose was entered to modify a saved note.
    pub editing: Option<NoteName>,
    pub saving: Option<NoteName>,
    pub listing: Vec<NoteName>,
    pub page: usize,
    pub loaded: Option<LoadedNote>,
    /// Cells of the loaded note, for reading by touch.
    pub read_cells: Vec<DotPattern>,
    pub read_cursor: usize,
    pub help_index: usize,
    pub last_explored_region: Option<usize>,
}

/// Renderable projection of a session.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenModel {
    pub screen: ScreenId,
    pub layout: Layout,
    pub labels: Vec<String>,
    /// Raised/plain state of dots 1..6 on six-dot screens.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dots: Option<[bool; 6]>,
    pub status: String,
}

#[derive(Debug, Clone)]
struct HelpEntry {
    label: String,
    pattern: DotPattern,
}

#[derive(Debug, Clone)]
pub struct Session {
    state: SessionState,
    config: SessionConfig,
    table: Arc<CharsetTable>,
    messages: Arc<Messages>,
    help: Arc<Vec<HelpEntry>>,
}

impl PartialEq for Session {
    fn eq(&self, other: &Self) -> bool {
        self.state == other.state && self.config == other.config
    }
}

impl Eq for Session {}

/// Collects effects, dropping speech that the user cannot or will not hear.
struct Fx {
    effects: Vec<Effect>,
    speech_on: bool,
}

impl Fx {
    fn new(state: &SessionState) -> Self {
        Fx { effects: Vec::new(), speech_on: state.settings.tts_enabled && state.speech_available }
    }

    fn speak(&mut self, text: impl Into<String>) {
        if self.speech_on {
            self.effects.push(Effect::Speak { text: text.into() });
        }
    }

    fn speak_always(&mut self, text: impl Into<String>) {
        self.effects.push(Effect::Speak { text: text.into() });
    }

    fn vibrate(&mut self, ms: u32) {
        self.effects.push(Effect::Vibrate { ms });
    }

    fn push(&mut self, e: Effect) {
        self.effects.push(e);
    }

    fn done(self) -> Transition {
        Transition { effects: self.effects, ignored: false }
    }
}

fn ignored() -> Transition {
    Transition { effects: Vec::new(), ignored: true }
}

impl Session {
    pub fn boot(settings: Settings, speech_available: bool, config: SessionConfig) -> (Session, Vec<Effect>) {
        Session::boot_with(settings, speech_available, config, CharsetTable::standard(), Messages::standard())
    }

    pub fn boot_with(
        settings: Settings,
        speech_available: bool,
        config: SessionConfig,
        table: CharsetTable,
        messages: Messages,
    ) -> (Session, Vec<Effect>) {
        let help = help_entries(&table, &messages);
        let session = Session {
            state: SessionState {
                screen: ScreenId::MainMenu,
                settings,
                speech_available,
                compose_text: String::new(),
                compose_decoder: DecoderState::default(),
                current_pattern: DotPattern::EMPTY,
                pending_name: String::new(),
                name_decoder: DecoderState::default(),
                editing: None,
                saving: None,
                listing: Vec::new(),
                page: 0,
                loaded: None,
                read_cells: Vec::new(),
                read_cursor: 0,
                help_index: 0,
                last_explored_region: None,
            },
            config,
            table: Arc::new(table),
            messages: Arc::new(messages),
            help: Arc::new(help),
        };
        let mut fx = Fx::new(&session.state);
        if !speech_available {
            fx.push(Effect::RequestSpeechInstall);
        }
        fx.speak(session.messages.get("main_menu"));
        (session, fx.effects)
    }

    pub fn state(&self) -> &SessionState {
        &self.state
    }

    pub fn screen(&self) -> ScreenId {
        self.state.screen
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn table(&self) -> &CharsetTable {
        &self.table
    }

    pub fn layout(&self) -> Layout {
        match self.state.screen {
            ScreenId::MainMenu => Layout::Menu3,
            ScreenId::NotesMenu | ScreenId::ReadChoice | ScreenId::Settings => Layout::Menu2,
            ScreenId::Compose | ScreenId::ReadTouch | ScreenId::Help => Layout::Dot6,
            ScreenId::SaveName if self.state.settings.braille_filename_mode => Layout::Dot6,
            ScreenId::SaveName | ScreenId::ReadSpeech => Layout::Text,
            ScreenId::OpenList => Layout::List { rows: self.page_entries().len() },
        }
    }

    fn page_entries(&self) -> &[NoteName] {
        let size = self.config.page_size.max(1);
        let start = (self.state.page * size).min(self.state.listing.len());
        let end = (start + size).min(self.state.listing.len());
        &self.state.listing[start..end]
    }

    fn page_count(&self) -> usize {
        self.state.listing.len().div_ceil(self.config.page_size.max(1))
    }

    fn menu_labels(&self) -> Vec<String> {
        let m = &self.messages;
        let onoff = |b: bool| m.get(if b { "on" } else { "off" });
        match self.state.screen {
            ScreenId::MainMenu => vec![m.get("label_notes"), m.get("label_settings"), m.get("label_help")],
            ScreenId::NotesMenu => vec![m.get("label_compose"), m.get("label_open")],
            ScreenId::ReadChoice => vec![m.get("label_read_touch"), m.get("label_read_speech")],
            ScreenId::Settings => vec![
                m.with("label_speech", onoff(self.state.settings.tts_enabled)),
                m.with("label_braille_names", onoff(self.state.settings.braille_filename_mode)),
            ],
            _ => Vec::new(),
        }
    }

    /// Pattern shown on the six-dot pad.
    fn shown_pattern(&self) -> DotPattern {
        match self.state.screen {
            ScreenId::ReadTouch => {
                self.state.read_cells.get(self.state.read_cursor).copied().unwrap_or(DotPattern::EMPTY)
            }
            ScreenId::Help => self.help[self.state.help_index].pattern,
            _ => self.state.current_pattern,
        }
    }

    pub fn snapshot(&self) -> ScreenModel {
        let layout = self.layout();
        let s = &self.state;
        let labels = match layout {
            Layout::Dot6 => (1..=6).map(|d| self.messages.with("dot", d)).collect(),
            Layout::List { .. } => self.page_entries().iter().map(|n| n.to_string()).collect(),
            Layout::Text => Vec::new(),
            Layout::Menu2 | Layout::Menu3 => self.menu_labels(),
        };
        let status = match s.screen {
            ScreenId::Compose => s.compose_text.clone(),
            ScreenId::SaveName => s.pending_name.clone(),
            ScreenId::OpenList if s.listing.is_empty() => self.messages.get("open_list_empty"),
            ScreenId::OpenList => {
                let mut st = self.messages.with("page", s.page + 1);
                st.push_str(" / ");
                st.push_str(&self.page_count().to_string());
                st
            }
            ScreenId::ReadChoice => s.loaded.as_ref().map(|n| n.name.to_string()).unwrap_or_default(),
            ScreenId::ReadTouch => {
                let mut st = self.messages.with("cell_position", s.read_cursor + 1);
                st.push_str(" / ");
                st.push_str(&s.read_cells.len().to_string());
                st
            }
            ScreenId::ReadSpeech => s.loaded.as_ref().map(|n| n.content.clone()).unwrap_or_default(),
            ScreenId::Help => self.help[s.help_index].label.clone(),
            _ => String::new(),
        };
        ScreenModel {
            screen: s.screen,
            layout,
            labels,
            dots: (layout == Layout::Dot6).then(|| self.shown_pattern().states()),
            status,
        }
    }

    fn enter(&mut self, screen: ScreenId, fx: &mut Fx) {
        let s = &mut self.state;
        if !matches!(screen, ScreenId::Compose | ScreenId::SaveName) {
            s.current_pattern = DotPattern::EMPTY;
        }
        s.screen = screen;
        s.last_explored_region = None;
        let m = &self.messages;
        match screen {
            ScreenId::MainMenu => fx.speak(m.get("main_menu")),
            ScreenId::NotesMenu => fx.speak(m.get("notes_menu")),
            ScreenId::Compose => fx.speak(m.get("compose")),
            ScreenId::SaveName if s.settings.braille_filename_mode => fx.speak(m.get("save_name_braille")),
            ScreenId::SaveName => fx.speak(m.get("save_name_text")),
            // announced once the listing arrives
            ScreenId::OpenList => {}
            ScreenId::ReadChoice => fx.speak(m.get("read_choice")),
            ScreenId::ReadTouch => fx.speak(m.get("read_touch")),
            ScreenId::ReadSpeech => {
                let content = s.loaded.as_ref().map(|n| n.content.clone()).unwrap_or_default();
                if fx.speech_on {
                    fx.speak(content);
                } else {
                    fx.speak_always(m.get("read_speech_off"));
                }
            }
            ScreenId::Settings => fx.speak(m.get("settings")),
            ScreenId::Help => {
                fx.speak(m.get("help"));
                fx.speak(self.help_announcement());
            }
        }
    }

    fn help_announcement(&self) -> String {
        let entry = &self.help[self.state.help_index];
        let mut digits = String::new();
        for (i, d) in entry.pattern.dots().enumerate() {
            if i > 0 {
                digits.push(' ');
            }
            digits.push((b'0' + d) as char);
        }
        let mut s = entry.label.clone();
        s.push_str(", ");
        s.push_str(&self.messages.with("dots", digits));
        s
    }

    pub fn handle(&mut self, gesture: &Gesture) -> Transition {
        match *gesture {
            Gesture::Explore { x, y, initial } => self.explore(x, y, initial),
            Gesture::DoubleTap { x, y } => self.double_tap(x, y),
            Gesture::LongPress { x, y } => self.long_press(x, y),
            Gesture::FlingLeft => self.fling_left(),
            Gesture::FlingRight => self.fling_right(),
            Gesture::TripleTap => self.triple_tap(),
            Gesture::Tap { .. } => ignored(),
        }
    }

    fn dot_entry_active(&self) -> bool {
        match self.state.screen {
            ScreenId::Compose => true,
            ScreenId::SaveName => self.state.settings.braille_filename_mode,
            _ => false,
        }
    }

    fn explore(&mut self, x: f64, y: f64, initial: bool) -> Transition {
        if initial {
            self.state.last_explored_region = None;
        }
        let layout = self.layout();
        let region = hit_test(layout, x, y);
        let mut fx = Fx::new(&self.state);
        if self.state.last_explored_region == Some(region) {
            return fx.done();
        }
        self.state.last_explored_region = Some(region);
        let short = self.config.short_vibration_ms;
        let long = self.config.long_vibration_ms;
        match layout {
            Layout::Menu2 | Layout::Menu3 => {
                if let Some(label) = self.menu_labels().into_iter().nth(region) {
                    fx.vibrate(short);
                    fx.speak(label);
                }
            }
            Layout::Dot6 => {
                let dot = region as u8 + 1;
                let raised = self.shown_pattern().contains(dot);
                fx.vibrate(if raised { long } else { short });
                if self.dot_entry_active() {
                    let key = if raised { "dot_selected" } else { "dot" };
                    fx.speak(self.messages.with(key, dot));
                }
            }
            Layout::List { .. } => {
                if let Some(name) = self.page_entries().get(region) {
                    let name = name.to_string();
                    fx.vibrate(short);
                    fx.speak(name);
                }
            }
            Layout::Text => {}
        }
        fx.done()
    }

    fn double_tap(&mut self, x: f64, y: f64) -> Transition {
        let region = hit_test(self.layout(), x, y);
        let mut fx = Fx::new(&self.state);
        match (self.state.screen, region) {
            (ScreenId::MainMenu, 0) => self.enter(ScreenId::NotesMenu, &mut fx),
            (ScreenId::MainMenu, 1) => self.enter(ScreenId::Settings, &mut fx),
            (ScreenId::MainMenu, _) => {
                self.state.help_index = 0;
                self.enter(ScreenId::Help, &mut fx);
            }
            (ScreenId::NotesMenu, 0) => {
                self.start_compose(String::new(), None);
                self.enter(ScreenId::Compose, &mut fx);
            }
            (ScreenId::NotesMenu, _) => {
                self.state.listing.clear();
                self.state.page = 0;
                self.enter(ScreenId::OpenList, &mut fx);
                fx.push(Effect::ListNotes);
            }
            (ScreenId::OpenList, row) => match self.page_entries().get(row) {
                Some(name) => fx.push(Effect::LoadNote { name: name.clone() }),
                None => return ignored(),
            },
            (ScreenId::ReadChoice, 0) => {
                let content = self.state.loaded.as_ref().map(|n| n.content.as_str()).unwrap_or("");
                match self.table.encode(content) {
                    Ok(cells) => {
                        self.state.read_cells = cells;
                        self.state.read_cursor = 0;
                        self.enter(ScreenId::ReadTouch, &mut fx);
                    }
                    Err(_) => {
                        fx.vibrate(self.config.long_vibration_ms);
                        fx.speak(self.messages.get("note_unreadable"));
                    }
                }
            }
            (ScreenId::ReadChoice, _) => self.enter(ScreenId::ReadSpeech, &mut fx),
            (ScreenId::ReadSpeech, _) => {
                let Some(note) = self.state.loaded.clone() else { return ignored() };
                self.start_compose(note.content, Some(note.name));
                self.enter(ScreenId::Compose, &mut fx);
            }
            (ScreenId::Settings, row) => {
                let settings = &mut self.state.settings;
                if row == 0 {
                    settings.tts_enabled = !settings.tts_enabled;
                } else {
                    settings.braille_filename_mode = !settings.braille_filename_mode;
                }
                let mut fx = Fx::new(&self.state);
                fx.vibrate(self.config.short_vibration_ms);
                if let Some(label) = self.menu_labels().into_iter().nth(row) {
                    fx.speak(label);
                }
                return fx.done();
            }
            _ => return ignored(),
        }
        fx.done()
    }

    fn start_compose(&mut self, text: String, editing: Option<NoteName>) {
        let s = &mut self.state;
        s.compose_text = text;
        s.compose_decoder = DecoderState::default();
        s.current_pattern = DotPattern::EMPTY;
        s.editing = editing;
    }

    fn long_press(&mut self, x: f64, y: f64) -> Transition {
        if !self.dot_entry_active() {
            return ignored();
        }
        let dot = hit_test(Layout::Dot6, x, y) as u8 + 1;
        self.state.current_pattern.toggle(dot);
        let raised = self.state.current_pattern.contains(dot);
        let mut fx = Fx::new(&self.state);
        if raised {
            fx.vibrate(self.config.long_vibration_ms);
            fx.speak(self.messages.with("dot_selected", dot));
        } else {
            fx.vibrate(self.config.short_vibration_ms);
            fx.speak(self.messages.with("dot_cleared", dot));
        }
        // the pad changed under the finger
        self.state.last_explored_region = None;
        fx.done()
    }

    fn commit_cell(&mut self) -> Transition {
        let in_compose = self.state.screen == ScreenId::Compose;
        let decoder_state =
            if in_compose { self.state.compose_decoder.clone() } else { self.state.name_decoder.clone() };
        let mut decoder = Decoder::resume(&self.table, decoder_state);
        let cell = self.state.current_pattern;
        let mut fx = Fx::new(&self.state);
        let announcement = match decoder.push(cell) {
            Ok(Decoded::Char(c)) => {
                if in_compose {
                    self.state.compose_text.push(c);
                } else {
                    self.state.pending_name.push(c);
                }
                match c {
                    ' ' => self.messages.get("space"),
                    ',' => self.messages.get("comma"),
                    '.' => self.messages.get("period"),
                    c => c.to_string(),
                }
            }
            Ok(Decoded::Indicator(class)) => self.messages.get(match class {
                PatternClass::NumberSign => "number_sign",
                PatternClass::CapitalSign => "capital_sign",
                _ => "letter_sign",
            }),
            Err(_) => {
                fx.vibrate(self.config.long_vibration_ms);
                fx.speak(self.messages.get("invalid_pattern"));
                return fx.done();
            }
        };
        let state = decoder.into_state();
        if in_compose {
            self.state.compose_decoder = state;
        } else {
            self.state.name_decoder = state;
        }
        self.state.current_pattern = DotPattern::EMPTY;
        self.state.last_explored_region = None;
        fx.speak(announcement);
        fx.done()
    }

    fn back(&mut self) -> Transition {
        let target = match self.state.screen {
            ScreenId::NotesMenu | ScreenId::Settings => ScreenId::MainMenu,
            ScreenId::OpenList => ScreenId::NotesMenu,
            ScreenId::ReadChoice => ScreenId::OpenList,
            ScreenId::ReadSpeech => ScreenId::ReadChoice,
            ScreenId::SaveName => ScreenId::Compose,
            _ => return ignored(),
        };
        let mut fx = Fx::new(&self.state);
        self.enter(target, &mut fx);
        if target == ScreenId::OpenList {
            self.announce_listing(&mut fx);
        }
        fx.done()
    }

    fn fling_left(&mut self) -> Transition {
        match self.state.screen {
            ScreenId::Compose => self.commit_cell(),
            ScreenId::SaveName if self.state.settings.braille_filename_mode => self.commit_cell(),
            ScreenId::ReadTouch => self.step_read(false),
            ScreenId::Help => self.step_help(false),
            ScreenId::OpenList if self.state.page > 0 => {
                self.state.page -= 1;
                self.state.last_explored_region = None;
                let mut fx = Fx::new(&self.state);
                fx.speak(self.messages.with("page", self.state.page + 1));
                fx.done()
            }
            _ => self.back(),
        }
    }

    fn fling_right(&mut self) -> Transition {
        match self.state.screen {
            ScreenId::ReadTouch => self.step_read(true),
            ScreenId::Help => self.step_help(true),
            ScreenId::OpenList => {
                let mut fx = Fx::new(&self.state);
                if self.state.page + 1 < self.page_count() {
                    self.state.page += 1;
                    self.state.last_explored_region = None;
                    fx.speak(self.messages.with("page", self.state.page + 1));
                } else {
                    fx.speak(self.messages.get("last_page"));
                }
                fx.done()
            }
            _ => ignored(),
        }
    }

    fn step_read(&mut self, forward: bool) -> Transition {
        let s = &mut self.state;
        let mut fx = Fx::new(s);
        let len = s.read_cells.len();
        if forward && s.read_cursor + 1 < len {
            s.read_cursor += 1;
        } else if !forward && s.read_cursor > 0 {
            s.read_cursor -= 1;
        } else {
            fx.speak(self.messages.get(if forward { "end_of_note" } else { "start_of_note" }));
            return fx.done();
        }
        s.last_explored_region = None;
        fx.speak(self.messages.with("cell_position", s.read_cursor + 1));
        fx.done()
    }

    fn step_help(&mut self, forward: bool) -> Transition {
        let n = self.help.len();
        let i = self.state.help_index;
        self.state.help_index = if forward { (i + 1) % n } else { (i + n - 1) % n };
        self.state.last_explored_region = None;
        let mut fx = Fx::new(&self.state);
        fx.speak(self.help_announcement());
        fx.done()
    }

    fn triple_tap(&mut self) -> Transition {
        let mut fx = Fx::new(&self.state);
        match self.state.screen {
            ScreenId::Compose => {
                if self.state.compose_text.is_empty() {
                    fx.speak(self.messages.get("nothing_to_save"));
                    self.enter(ScreenId::NotesMenu, &mut fx);
                } else {
                    self.state.pending_name.clear();
                    self.state.name_decoder = DecoderState::default();
                    self.state.current_pattern = DotPattern::EMPTY;
                    self.enter(ScreenId::SaveName, &mut fx);
                }
            }
            ScreenId::SaveName => {
                if self.state.pending_name.is_empty() {
                    fx.speak(self.messages.get("save_cancelled"));
                    self.enter(ScreenId::Compose, &mut fx);
                    return fx.done();
                }
                match NoteName::sanitize(&self.state.pending_name) {
                    Ok(name) => {
                        let overwrite = self.state.editing.as_ref() == Some(&name);
                        self.state.saving = Some(name.clone());
                        fx.push(Effect::SaveNote {
                            name,
                            content: self.state.compose_text.clone(),
                            overwrite,
                        });
                    }
                    Err(_) => {
                        self.state.pending_name.clear();
                        self.state.name_decoder = DecoderState::default();
                        fx.vibrate(self.config.long_vibration_ms);
                        fx.speak(self.messages.get("name_invalid"));
                    }
                }
            }
            ScreenId::ReadTouch => self.enter(ScreenId::NotesMenu, &mut fx),
            ScreenId::Help => self.enter(ScreenId::MainMenu, &mut fx),
            _ => return ignored(),
        }
        fx.done()
    }

    /// Direct text entry for the file name when Braille names are off.
    pub fn text_input(&mut self, text: &str) -> Transition {
        if self.state.screen != ScreenId::SaveName || self.state.settings.braille_filename_mode {
            return ignored();
        }
        self.state.pending_name = text.to_string();
        let mut fx = Fx::new(&self.state);
        fx.speak(text);
        fx.done()
    }

    fn announce_listing(&self, fx: &mut Fx) {
        if self.state.listing.is_empty() {
            fx.speak(self.messages.get("open_list_empty"));
        } else {
            fx.speak(self.messages.with("open_list", self.state.listing.len()));
        }
    }

    /// Result of a `ListNotes` effect.
    pub fn notes_listed(&mut self, mut names: Vec<NoteName>) -> Vec<Effect> {
        if self.state.screen != ScreenId::OpenList {
            return Vec::new();
        }
        names.sort();
        self.state.listing = names;
        self.state.page = 0;
        self.state.last_explored_region = None;
        let mut fx = Fx::new(&self.state);
        self.announce_listing(&mut fx);
        fx.effects
    }

    /// Result of a `LoadNote` effect; `None` when the note could not be read.
    pub fn note_loaded(&mut self, name: NoteName, content: Option<String>) -> Vec<Effect> {
        let mut fx = Fx::new(&self.state);
        if self.state.screen != ScreenId::OpenList {
            return fx.effects;
        }
        match content {
            Some(content) => {
                self.state.loaded = Some(LoadedNote { name, content });
                self.enter(ScreenId::ReadChoice, &mut fx);
            }
            None => fx.speak(self.messages.with("open_failed", name)),
        }
        fx.effects
    }

    /// Result of a `SaveNote` effect.
    pub fn save_completed(&mut self, result: SaveResult) -> Vec<Effect> {
        let mut fx = Fx::new(&self.state);
        let Some(name) = self.state.saving.take() else { return fx.effects };
        match result {
            SaveResult::Saved => {
                fx.speak(self.messages.with("saved", &name));
                let content = core::mem::take(&mut self.state.compose_text);
                if let Some((intent, time)) = parse_intent(&content) {
                    fx.push(Effect::Schedule { intent, time });
                    fx.speak(self.messages.with("scheduled", time));
                } else if command_keyword(&content).is_some() {
                    fx.speak(self.messages.get("no_time"));
                }
                self.start_compose(String::new(), None);
                self.state.pending_name.clear();
                self.enter(ScreenId::NotesMenu, &mut fx);
            }
            SaveResult::AlreadyExists => {
                self.state.pending_name.clear();
                self.state.name_decoder = DecoderState::default();
                fx.vibrate(self.config.long_vibration_ms);
                fx.speak(self.messages.with("name_exists", &name));
            }
            SaveResult::Failed => {
                fx.vibrate(self.config.long_vibration_ms);
                fx.speak(self.messages.get("save_failed"));
            }
        }
        fx.effects
    }
}

fn help_entries(table: &CharsetTable, m: &Messages) -> Vec<HelpEntry> {
    let mut out = Vec::new();
    for c in 'a'..='z' {
        out.push(HelpEntry { label: c.to_string(), pattern: table.letter(c).expect("full alphabet") });
    }
    for c in table.punctuation_chars() {
        let label = match c {
            ',' => m.get("comma"),
            '.' => m.get("period"),
            c => c.to_string(),
        };
        out.push(HelpEntry { label, pattern: table.punctuation(c).expect("listed") });
    }
    out.push(HelpEntry { label: m.get("number_sign"), pattern: table.number_sign() });
    out.push(HelpEntry { label: m.get("capital_sign"), pattern: table.capital_sign() });
    out.push(HelpEntry { label: m.get("letter_sign"), pattern: table.letter_sign() });
    out
}

impl fmt::Display for ScreenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScreenId::MainMenu => "main_menu",
            ScreenId::NotesMenu => "notes_menu",
            ScreenId::Compose => "compose",
            ScreenId::SaveName => "save_name",
            ScreenId::OpenList => "open_list",
            ScreenId::ReadChoice => "read_choice",
            ScreenId::ReadTouch => "read_touch",
            ScreenId::ReadSpeech => "read_speech",
            ScreenId::Settings => "settings",
            ScreenId::Help => "help",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::region_center;

    fn boot() -> Session {
        Session::boot(Settings::default(), true, SessionConfig::default()).0
    }

    fn dtap(s: &mut Session, layout: Layout, region: usize) -> Transition {
        let (x, y) = region_center(layout, region);
        s.handle(&Gesture::DoubleTap { x, y })
    }

    fn press_dot(s: &mut Session, dot: usize) {
        let (x, y) = region_center(Layout::Dot6, dot - 1);
        s.handle(&Gesture::LongPress { x, y });
    }

    fn speaks(effects: &[Effect]) -> Vec<&str> {
        effects
            .iter()
            .filter_map(|e| match e {
                Effect::Speak { text } => Some(text.as_str()),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn boot_effects() {
        let (s, fx) = Session::boot(Settings::default(), true, SessionConfig::default());
        assert_eq!(s.screen(), ScreenId::MainMenu);
        assert_eq!(fx, vec![Effect::Speak { text: "Main menu. Notes, Settings, Help.".into() }]);

        let (_, fx) = Session::boot(Settings::default(), false, SessionConfig::default());
        assert_eq!(fx, vec![Effect::RequestSpeechInstall]);

        let quiet = Settings { tts_enabled: false, ..Default::default() };
        let (_, fx) = Session::boot(quiet, true, SessionConfig::default());
        assert!(fx.is_empty());
    }

    #[test]
    fn main_menu_snapshot() {
        let m = boot().snapshot();
        assert_eq!(m.screen, ScreenId::MainMenu);
        assert_eq!(m.layout, Layout::Menu3);
        assert_eq!(m.labels, ["Notes", "Settings", "Help"]);
        assert_eq!(m.dots, None);
    }

    #[test]
    fn double_tap_top_band_opens_notes() {
        let mut s = boot();
        let t = s.handle(&Gesture::DoubleTap { x: 0.5, y: 0.1 });
        assert!(!t.ignored);
        assert_eq!(s.screen(), ScreenId::NotesMenu);
    }

    #[test]
    fn compose_commit_h() {
        let mut s = boot();
        dtap(&mut s, Layout::Menu3, 0);
        dtap(&mut s, Layout::Menu2, 0);
        assert_eq!(s.screen(), ScreenId::Compose);
        press_dot(&mut s, 1);
        assert_eq!(s.snapshot().dots, Some([true, false, false, false, false, false]));
        press_dot(&mut s, 2);
        press_dot(&mut s, 5);
        let t = s.handle(&Gesture::FlingLeft);
        assert_eq!(speaks(&t.effects), ["h"]);
        assert_eq!(s.state().compose_text, "h");
        assert!(s.state().current_pattern.is_empty());
    }

    #[test]
    fn invalid_commit_keeps_pattern() {
        let mut s = boot();
        dtap(&mut s, Layout::Menu3, 0);
        dtap(&mut s, Layout::Menu2, 0);
        press_dot(&mut s, 3);
        let t = s.handle(&Gesture::FlingLeft);
        assert_eq!(t.effects[0], Effect::Vibrate { ms: 120 });
        assert_eq!(speaks(&t.effects), ["Invalid pattern"]);
        assert_eq!(s.state().current_pattern, DotPattern::from_dots(&[3]).unwrap());
        assert_eq!(s.state().compose_text, "");
    }

    #[test]
    fn empty_compose_triple_tap() {
        let mut s = boot();
        dtap(&mut s, Layout::Menu3, 0);
        dtap(&mut s, Layout::Menu2, 0);
        let t = s.handle(&Gesture::TripleTap);
        assert_eq!(speaks(&t.effects)[0], "Nothing to save");
        assert!(!t.effects.iter().any(|e| matches!(e, Effect::SaveNote { .. })));
        assert_eq!(s.screen(), ScreenId::NotesMenu);
    }

    #[test]
    fn explore_dedups_until_new_press() {
        let mut s = boot();
        let a = s.handle(&Gesture::Explore { x: 0.5, y: 0.1, initial: true });
        assert_eq!(a.effects, vec![Effect::Vibrate { ms: 40 }, Effect::Speak { text: "Notes".into() }]);
        let b = s.handle(&Gesture::Explore { x: 0.5, y: 0.2, initial: false });
        assert!(b.effects.is_empty());
        let c = s.handle(&Gesture::Explore { x: 0.5, y: 0.5, initial: false });
        assert_eq!(speaks(&c.effects), ["Settings"]);
        let d = s.handle(&Gesture::Explore { x: 0.5, y: 0.5, initial: true });
        assert_eq!(speaks(&d.effects), ["Settings"]);
    }

    #[test]
    fn tts_off_keeps_vibration() {
        let mut s = Session::boot(Settings { tts_enabled: false, ..Default::default() }, true, SessionConfig::default()).0;
        let t = s.handle(&Gesture::Explore { x: 0.5, y: 0.1, initial: true });
        assert_eq!(t.effects, vec![Effect::Vibrate { ms: 40 }]);
    }

    #[test]
    fn unmapped_gestures_are_ignored() {
        let mut s = boot();
        assert!(s.handle(&Gesture::FlingLeft).ignored);
        assert!(s.handle(&Gesture::TripleTap).ignored);
        assert!(s.handle(&Gesture::Tap { x: 0.5, y: 0.5 }).ignored);
        assert!(s.handle(&Gesture::LongPress { x: 0.5, y: 0.5 }).ignored);
        assert_eq!(s.screen(), ScreenId::MainMenu);
    }

    #[test]
    fn settings_toggle() {
        let mut s = boot();
        dtap(&mut s, Layout::Menu3, 1);
        assert_eq!(s.screen(), ScreenId::Settings);
        let t = dtap(&mut s, Layout::Menu2, 1);
        assert!(!s.state().settings.braille_filename_mode);
        assert_eq!(speaks(&t.effects), ["Braille file names off"]);
        let t = dtap(&mut s, Layout::Menu2, 0);
        assert!(!s.state().settings.tts_enabled);
        assert_eq!(t.effects, vec![Effect::Vibrate { ms: 40 }]);
        s.handle(&Gesture::FlingLeft);
        assert_eq!(s.screen(), ScreenId::MainMenu);
    }

    #[test]
    fn open_list_paging_snapshot() {
        let mut s = boot();
        dtap(&mut s, Layout::Menu3, 0);
        let t = dtap(&mut s, Layout::Menu2, 1);
        assert!(t.effects.contains(&Effect::ListNotes));
        let names = (0..7).map(|i| NoteName::sanitize(&alloc::format!("n{i}")).unwrap()).collect();
        s.notes_listed(names);
        let m = s.snapshot();
        assert_eq!(m.layout, Layout::List { rows: 5 });
        assert_eq!(m.labels, ["n0", "n1", "n2", "n3", "n4"]);
        assert_eq!(m.status, "Page 1 / 2");
        s.handle(&Gesture::FlingRight);
        assert_eq!(s.snapshot().labels, ["n5", "n6"]);
        s.handle(&Gesture::FlingLeft);
        assert_eq!(s.state().page, 0);
        s.handle(&Gesture::FlingLeft);
        assert_eq!(s.screen(), ScreenId::NotesMenu);
    }

    #[test]
    fn read_speech_and_modify() {
        let mut s = boot();
        dtap(&mut s, Layout::Menu3, 0);
        dtap(&mut s, Layout::Menu2, 1);
        let name = NoteName::sanitize("greeting").unwrap();
        s.notes_listed(vec![name.clone()]);
        let t = dtap(&mut s, Layout::List { rows: 1 }, 0);
        assert_eq!(t.effects, vec![Effect::LoadNote { name: name.clone() }]);
        s.note_loaded(name.clone(), Some("hi".into()));
        assert_eq!(s.screen(), ScreenId::ReadChoice);
        let t = dtap(&mut s, Layout::Menu2, 1);
        assert_eq!(speaks(&t.effects), ["hi"]);
        assert_eq!(s.snapshot().status, "hi");
        s.handle(&Gesture::DoubleTap { x: 0.5, y: 0.5 });
        assert_eq!(s.screen(), ScreenId::Compose);
        assert_eq!(s.state().compose_text, "hi");
        press_dot(&mut s, 1);
        s.handle(&Gesture::FlingLeft);
        s.handle(&Gesture::TripleTap);
        s.text_input("ignored in braille mode");
        for dots in [&[1, 2, 4, 5][..], &[1, 2, 3, 5], &[1, 5], &[1, 5], &[2, 3, 4, 5], &[2, 4], &[1, 3, 4, 5], &[1, 2, 4, 5]] {
            for &d in dots {
                press_dot(&mut s, d);
            }
            s.handle(&Gesture::FlingLeft);
        }
        assert_eq!(s.state().pending_name, "greeting");
        let t = s.handle(&Gesture::TripleTap);
        assert_eq!(
            t.effects,
            vec![Effect::SaveNote { name, content: "hia".into(), overwrite: true }]
        );
    }

    #[test]
    fn read_speech_with_tts_off_still_explains() {
        let mut s = Session::boot(Settings { tts_enabled: false, ..Default::default() }, true, SessionConfig::default()).0;
        dtap(&mut s, Layout::Menu3, 0);
        dtap(&mut s, Layout::Menu2, 1);
        let name = NoteName::sanitize("x").unwrap();
        s.notes_listed(vec![name.clone()]);
        s.note_loaded(name, Some("secret".into()));
        let t = dtap(&mut s, Layout::Menu2, 1);
        assert_eq!(speaks(&t.effects), ["Speech is turned off. Turn it on in Settings to read by speech."]);
    }

    #[test]
    fn text_mode_name_entry_and_schedule() {
        let mut s = boot();
        dtap(&mut s, Layout::Menu3, 1);
        dtap(&mut s, Layout::Menu2, 1);
        s.handle(&Gesture::FlingLeft);
        dtap(&mut s, Layout::Menu3, 0);
        dtap(&mut s, Layout::Menu2, 0);
        s.start_compose("call mom at 9 pm".into(), None);
        s.handle(&Gesture::TripleTap);
        assert_eq!(s.layout(), Layout::Text);
        s.text_input("Mom Call");
        let t = s.handle(&Gesture::TripleTap);
        let name = NoteName::sanitize("mom_call").unwrap();
        assert_eq!(
            t.effects,
            vec![Effect::SaveNote { name: name.clone(), content: "call mom at 9 pm".into(), overwrite: false }]
        );
        let fx = s.save_completed(SaveResult::Saved);
        assert!(fx.contains(&Effect::Schedule {
            intent: Intent::Call("mom".into()),
            time: TimeOfDay::new(21, 0).unwrap()
        }));
        assert_eq!(s.screen(), ScreenId::NotesMenu);
        assert_eq!(s.state().compose_text, "");
    }

    #[test]
    fn command_without_time_gets_notice() {
        let mut s = boot();
        dtap(&mut s, Layout::Menu3, 0);
        dtap(&mut s, Layout::Menu2, 0);
        s.start_compose("remind me soon".into(), None);
        s.handle(&Gesture::TripleTap);
        press_dot(&mut s, 1);
        s.handle(&Gesture::FlingLeft);
        s.handle(&Gesture::TripleTap);
        let fx = s.save_completed(SaveResult::Saved);
        assert!(!fx.iter().any(|e| matches!(e, Effect::Schedule { .. })));
        assert!(speaks(&fx).contains(&"No valid time found. Saved as a plain note."));
    }

    #[test]
    fn name_collision_stays_on_save_name() {
        let mut s = boot();
        dtap(&mut s, Layout::Menu3, 0);
        dtap(&mut s, Layout::Menu2, 0);
        press_dot(&mut s, 1);
        s.handle(&Gesture::FlingLeft);
        s.handle(&Gesture::TripleTap);
        press_dot(&mut s, 1);
        s.handle(&Gesture::FlingLeft);
        s.handle(&Gesture::TripleTap);
        let fx = s.save_completed(SaveResult::AlreadyExists);
        assert_eq!(speaks(&fx), ["A note named a already exists"]);
        assert_eq!(s.screen(), ScreenId::SaveName);
        assert_eq!(s.state().pending_name, "");
        // empty name cancels back to compose with the text intact
        s.handle(&Gesture::TripleTap);
        assert_eq!(s.screen(), ScreenId::Compose);
        assert_eq!(s.state().compose_text, "a");
    }

    #[test]
    fn help_steps_and_exits() {
        let mut s = boot();
        let t = dtap(&mut s, Layout::Menu3, 2);
        assert_eq!(s.screen(), ScreenId::Help);
        assert_eq!(speaks(&t.effects)[1], "a, dots 1");
        let t = s.handle(&Gesture::FlingLeft);
        assert_eq!(speaks(&t.effects), ["Letter sign, dots 5 6"]);
        s.handle(&Gesture::FlingRight);
        s.handle(&Gesture::FlingRight);
        assert_eq!(s.snapshot().dots, Some([true, true, false, false, false, false]));
        s.handle(&Gesture::TripleTap);
        assert_eq!(s.screen(), ScreenId::MainMenu);
    }
}
