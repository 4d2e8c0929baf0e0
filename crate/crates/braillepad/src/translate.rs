//! Text to dot groups and back, for the `translate` command.

use braillepad_core::braille::{format_cells, parse_cells, CodecError, InvalidPattern, PatternError};
use braillepad_core::CharsetTable;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("{0}")]
    Codec(CodecError),
    #[error("group {}: {error}", .group + 1)]
    Group { group: usize, error: PatternError },
    #[error("{0}")]
    Pattern(InvalidPattern),
}

/// `"hi"` becomes `"125 24"`.
pub fn to_braille(table: &CharsetTable, text: &str) -> Result<String, TranslateError> {
    table.encode(text).map(|cells| format_cells(&cells)).map_err(TranslateError::Codec)
}

/// Space-separated dot-digit groups; `-` is a blank cell.
pub fn from_braille(table: &CharsetTable, groups: &str) -> Result<String, TranslateError> {
    let cells = parse_cells(groups).map_err(|(group, error)| TranslateError::Group { group, error })?;
    table.decode(&cells).map_err(TranslateError::Pattern)
}
