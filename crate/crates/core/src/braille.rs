//! Grade-1 Braille: dot patterns, the character chart, and a stateful
//! codec with number-sign and capital-indicator handling.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

const STANDARD_CHART: &str = include_str!("../data/grade1.tsv");

/// One Braille cell: a subset of dots 1..=6, stored as a bitmask where
/// bit `n - 1` is dot `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DotPattern(u8);

impl DotPattern {
    /// The blank cell. Used as a space.
    pub const EMPTY: DotPattern = DotPattern(0);

    pub const fn from_bits(bits: u8) -> Option<Self> {
        if bits < 64 {
            Some(DotPattern(bits))
        } else {
            None
        }
    }

    pub fn from_dots(dots: &[u8]) -> Result<Self, PatternError> {
        let mut p = DotPattern::EMPTY;
        for &d in dots {
            if !(1..=6).contains(&d) {
                return Err(PatternError::DotOutOfRange(d));
            }
            if p.contains(d) {
                return Err(PatternError::DuplicateDot(d));
            }
            p.0 |= 1 << (d - 1);
        }
        Ok(p)
    }

    /// Parses a dot-digit group such as `125`. `-` and `0` denote the blank cell.
    pub fn parse_digits(s: &str) -> Result<Self, PatternError> {
        if s == "-" || s == "0" {
            return Ok(DotPattern::EMPTY);
        }
        if s.is_empty() {
            return Err(PatternError::Empty);
        }
        let mut dots = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch.to_digit(10) {
                Some(d) => dots.push(d as u8),
                None => return Err(PatternError::NotADigit(ch)),
            }
        }
        DotPattern::from_dots(&dots)
    }

    pub const fn bits(self) -> u8 {
        self.0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, dot: u8) -> bool {
        (1..=6).contains(&dot) && self.0 & (1 << (dot - 1)) != 0
    }

    /// Flips `dot`. Dots outside 1..=6 are ignored.
    pub fn toggle(&mut self, dot: u8) {
        if (1..=6).contains(&dot) {
            self.0 ^= 1 << (dot - 1);
        }
    }

    /// Raised dots in ascending order.
    pub fn dots(self) -> impl Iterator<Item = u8> {
        (1..=6u8).filter(move |&d| self.contains(d))
    }

    /// Raised/plain state of dots 1..=6.
    pub fn states(self) -> [bool; 6] {
        let mut out = [false; 6];
        for (i, s) in out.iter_mut().enumerate() {
            *s = self.contains(i as u8 + 1);
        }
        out
    }

    /// Every one of the 64 possible patterns.
    pub fn all() -> impl Iterator<Item = DotPattern> {
        (0u8..64).map(DotPattern)
    }
}

/// Dot digits, `-` for the blank cell.
impl fmt::Display for DotPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        for d in self.dots() {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DotPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, d) in self.dots().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternError {
    DotOutOfRange(u8),
    DuplicateDot(u8),
    NotADigit(char),
    Empty,
}

impl fmt::Display for PatternError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternError::DotOutOfRange(d) => write!(f, "dot {d} is outside 1..6"),
            PatternError::DuplicateDot(d) => write!(f, "dot {d} listed twice"),
            PatternError::NotADigit(c) => write!(f, "{c:?} is not a dot number"),
            PatternError::Empty => f.write_str("empty dot group"),
        }
    }
}

impl core::error::Error for PatternError {}

/// What a single cell means in a given mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternClass {
    Letter(char),
    /// Only produced in number mode, for the a–j shapes.
    Digit(char),
    NumberSign,
    CapitalSign,
    /// Ends number mode so that an a–j letter can follow a digit.
    LetterSign,
    Space,
    Punctuation(char),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChartError {
    Malformed { line: usize },
    BadPattern { line: usize, error: PatternError },
    UnknownEntry { line: usize, key: String },
    Duplicate { line: usize },
    MissingLetter(char),
    MissingIndicator(&'static str),
}

impl fmt::Display for ChartError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChartError::Malformed { line } => write!(f, "line {line}: expected `char<TAB>dots`"),
            ChartError::BadPattern { line, error } => write!(f, "line {line}: {error}"),
            ChartError::UnknownEntry { line, key } => write!(f, "line {line}: unknown entry {key:?}"),
            ChartError::Duplicate { line } => {
                write!(f, "line {line}: character or pattern already defined")
            }
            ChartError::MissingLetter(c) => write!(f, "chart has no pattern for {c:?}"),
            ChartError::MissingIndicator(name) => write!(f, "chart has no {name}"),
        }
    }
}

impl core::error::Error for ChartError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodecError {
    UnsupportedCharacter { position: usize, ch: char },
}

impl fmt::Display for CodecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodecError::UnsupportedCharacter { position, ch } => {
                write!(f, "unsupported character {ch:?} at position {position}")
            }
        }
    }
}

impl core::error::Error for CodecError {}

/// Decoding stopped at `index`; `prefix` holds everything decoded before it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidPattern {
    pub index: usize,
    pub pattern: DotPattern,
    pub prefix: String,
}

impl fmt::Display for InvalidPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid pattern {} at cell {}", self.pattern, self.index)
    }
}

impl core::error::Error for InvalidPattern {}

/// Bidirectional letter/punctuation/indicator chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharsetTable {
    letters: [DotPattern; 26],
    punctuation: Vec<(char, DotPattern)>,
    number_sign: DotPattern,
    capital_sign: DotPattern,
    letter_sign: DotPattern,
    reverse: [Option<char>; 64],
}

impl CharsetTable {
    /// The built-in chart shipped in `data/grade1.tsv`.
    pub fn standard() -> Self {
        CharsetTable::parse(STANDARD_CHART).expect("built-in chart is valid")
    }

    /// Raw text of the built-in chart.
    pub fn standard_source() -> &'static str {
        STANDARD_CHART
    }

    /// Parses a chart in `char<TAB>dot-digits` form. Blank lines and lines
    /// starting with `#` are skipped. Multi-character keys name indicators.
    pub fn parse(src: &str) -> Result<Self, ChartError> {
        let mut letters = [None; 26];
        let mut punctuation = Vec::new();
        let mut number_sign = None;
        let mut capital_sign = None;
        let mut letter_sign = None;
        let mut reverse = [None; 64];
        let mut used = [false; 64];

        for (i, raw) in src.lines().enumerate() {
            let line = i + 1;
            let text = raw.trim_end_matches('\r');
            if text.trim().is_empty() || text.starts_with('#') {
                continue;
            }
            let (key, dots) = text.split_once('\t').ok_or(ChartError::Malformed { line })?;
            let pattern = DotPattern::parse_digits(dots.trim())
                .map_err(|error| ChartError::BadPattern { line, error })?;
            if pattern.is_empty() || used[pattern.bits() as usize] {
                return Err(ChartError::Duplicate { line });
            }
            used[pattern.bits() as usize] = true;

            let mut chars = key.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) if c.is_ascii_lowercase() => {
                    let slot = &mut letters[(c as u8 - b'a') as usize];
                    if slot.is_some() {
                        return Err(ChartError::Duplicate { line });
                    }
                    *slot = Some(pattern);
                    reverse[pattern.bits() as usize] = Some(c);
                }
                (Some(c), None) if c.is_ascii_punctuation() => {
                    if punctuation.iter().any(|&(p, _)| p == c) {
                        return Err(ChartError::Duplicate { line });
                    }
                    punctuation.push((c, pattern));
                    reverse[pattern.bits() as usize] = Some(c);
                }
                _ => {
                    let slot = match key {
                        "number_sign" => &mut number_sign,
                        "capital_sign" => &mut capital_sign,
                        "letter_sign" => &mut letter_sign,
                        _ => {
                            return Err(ChartError::UnknownEntry { line, key: key.into() });
                        }
                    };
                    if slot.is_some() {
                        return Err(ChartError::Duplicate { line });
                    }
                    *slot = Some(pattern);
                }
            }
        }

        let mut out = [DotPattern::EMPTY; 26];
        for (i, l) in letters.iter().enumerate() {
            out[i] = l.ok_or(ChartError::MissingLetter((b'a' + i as u8) as char))?;
        }
        Ok(CharsetTable {
            letters: out,
            punctuation,
            number_sign: number_sign.ok_or(ChartError::MissingIndicator("number_sign"))?,
            capital_sign: capital_sign.ok_or(ChartError::MissingIndicator("capital_sign"))?,
            letter_sign: letter_sign.ok_or(ChartError::MissingIndicator("letter_sign"))?,
            reverse,
        })
    }

    pub fn letter(&self, c: char) -> Option<DotPattern> {
        let c = c.to_ascii_lowercase();
        c.is_ascii_lowercase().then(|| self.letters[(c as u8 - b'a') as usize])
    }

    pub fn punctuation(&self, c: char) -> Option<DotPattern> {
        self.punctuation.iter().find(|&&(p, _)| p == c).map(|&(_, d)| d)
    }

    /// Cell used for a digit after the number sign (1..9,0 reuse a..j).
    pub fn digit(&self, d: char) -> Option<DotPattern> {
        let letter = match d {
            '0' => 'j',
            '1'..='9' => (b'a' + (d as u8 - b'1')) as char,
            _ => return None,
        };
        self.letter(letter)
    }

    pub fn number_sign(&self) -> DotPattern {
        self.number_sign
    }

    pub fn capital_sign(&self) -> DotPattern {
        self.capital_sign
    }

    pub fn letter_sign(&self) -> DotPattern {
        self.letter_sign
    }

    /// Punctuation characters in chart order.
    pub fn punctuation_chars(&self) -> impl Iterator<Item = char> + '_ {
        self.punctuation.iter().map(|&(c, _)| c)
    }

    /// True when `c` can be written with this chart.
    pub fn supports(&self, c: char) -> bool {
        c == ' ' || c.is_ascii_alphanumeric() || self.punctuation(c).is_some()
    }

    pub fn classify(&self, p: DotPattern, number_mode: bool) -> PatternClass {
        if p.is_empty() {
            return PatternClass::Space;
        }
        if p == self.number_sign {
            return PatternClass::NumberSign;
        }
        if p == self.capital_sign {
            return PatternClass::CapitalSign;
        }
        if p == self.letter_sign {
            return PatternClass::LetterSign;
        }
        match self.reverse[p.bits() as usize] {
            Some(c) if c.is_ascii_lowercase() => {
                if number_mode && ('a'..='j').contains(&c) {
                    PatternClass::Digit(letter_to_digit(c))
                } else {
                    PatternClass::Letter(c)
                }
            }
            Some(c) => PatternClass::Punctuation(c),
            None => PatternClass::Unknown,
        }
    }

    /// Text to cells. Capitals get the capital sign, each run of digits one
    /// number sign, and an a–j letter right after a digit gets the letter
    /// sign so it is not read as another digit.
    pub fn encode(&self, text: &str) -> Result<Vec<DotPattern>, CodecError> {
        let mut out = Vec::with_capacity(text.len());
        let mut number_mode = false;
        for (position, ch) in text.chars().enumerate() {
            if ch == ' ' {
                out.push(DotPattern::EMPTY);
                number_mode = false;
            } else if ch.is_ascii_digit() {
                if !number_mode {
                    out.push(self.number_sign);
                    number_mode = true;
                }
                out.push(self.digit(ch).expect("a-j present"));
            } else if ch.is_ascii_alphabetic() {
                let lower = ch.to_ascii_lowercase();
                if ch.is_ascii_uppercase() {
                    out.push(self.capital_sign);
                } else if number_mode && ('a'..='j').contains(&lower) {
                    out.push(self.letter_sign);
                }
                number_mode = false;
                out.push(self.letter(lower).expect("letters complete"));
            } else if let Some(p) = self.punctuation(ch) {
                out.push(p);
                number_mode = false;
            } else {
                return Err(CodecError::UnsupportedCharacter { position, ch });
            }
        }
        Ok(out)
    }

    pub fn decode(&self, cells: &[DotPattern]) -> Result<String, InvalidPattern> {
        let mut decoder = Decoder::new(self);
        let mut text = String::with_capacity(cells.len());
        for (index, &cell) in cells.iter().enumerate() {
            match decoder.push(cell) {
                Ok(Decoded::Char(c)) => text.push(c),
                Ok(Decoded::Indicator(_)) => {}
                Err(Rejected) => {
                    return Err(InvalidPattern { index, pattern: cell, prefix: text });
                }
            }
        }
        Ok(text)
    }
}

fn letter_to_digit(c: char) -> char {
    match c {
        'j' => '0',
        _ => (b'1' + (c as u8 - b'a')) as char,
    }
}

/// Result of feeding one cell to a [`Decoder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decoded {
    Char(char),
    /// Consumed without producing text.
    Indicator(PatternClass),
}

/// The cell has no meaning in the decoder's current mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rejected;

/// Left-to-right decoder state, for cell-at-a-time entry.
///
/// A rejected cell leaves the state untouched.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DecoderState {
    pub number_mode: bool,
    pub capital_pending: bool,
}

pub struct Decoder<'a> {
    table: &'a CharsetTable,
    state: DecoderState,
}

impl<'a> Decoder<'a> {
    pub fn new(table: &'a CharsetTable) -> Self {
        Self::resume(table, DecoderState::default())
    }

    pub fn resume(table: &'a CharsetTable, state: DecoderState) -> Self {
        Decoder { table, state }
    }

    pub fn state(&self) -> &DecoderState {
        &self.state
    }

    pub fn into_state(self) -> DecoderState {
        self.state
    }

    pub fn push(&mut self, cell: DotPattern) -> Result<Decoded, Rejected> {
        let class = self.table.classify(cell, self.state.number_mode);
        if self.state.capital_pending {
            return match class {
                PatternClass::Letter(c) => {
                    self.state.capital_pending = false;
                    Ok(Decoded::Char(c.to_ascii_uppercase()))
                }
                _ => Err(Rejected),
            };
        }
        match class {
            PatternClass::Space => {
                self.state.number_mode = false;
                Ok(Decoded::Char(' '))
            }
            PatternClass::NumberSign => {
                self.state.number_mode = true;
                Ok(Decoded::Indicator(class))
            }
            PatternClass::CapitalSign => {
                self.state.number_mode = false;
                self.state.capital_pending = true;
                Ok(Decoded::Indicator(class))
            }
            PatternClass::LetterSign => {
                self.state.number_mode = false;
                Ok(Decoded::Indicator(class))
            }
            PatternClass::Digit(d) => Ok(Decoded::Char(d)),
            PatternClass::Letter(c) | PatternClass::Punctuation(c) => {
                self.state.number_mode = false;
                Ok(Decoded::Char(c))
            }
            PatternClass::Unknown => Err(Rejected),
        }
    }
}

pub fn encode_text(text: &str) -> Result<Vec<DotPattern>, CodecError> {
    CharsetTable::standard().encode(text)
}

pub fn decode_cells(cells: &[DotPattern]) -> Result<String, InvalidPattern> {
    CharsetTable::standard().decode(cells)
}

pub fn classify_pattern(p: DotPattern, number_mode: bool) -> PatternClass {
    CharsetTable::standard().classify(p, number_mode)
}

/// Space-separated dot groups, e.g. `125 24`; the blank cell prints as `-`.
pub fn format_cells(cells: &[DotPattern]) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (i, c) in cells.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{c}");
    }
    out
}

/// Inverse of [`format_cells`]. Errors carry the zero-based group index.
pub fn parse_cells(s: &str) -> Result<Vec<DotPattern>, (usize, PatternError)> {
    s.split_whitespace()
        .enumerate()
        .map(|(i, g)| DotPattern::parse_digits(g).map_err(|e| (i, e)))
        .collect()
}
