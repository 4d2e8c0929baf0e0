//! `contacts.tsv`: one `name<TAB>number` pair per line.

use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum ContactsError {
    #[error("line {line}: expected `name<TAB>number`")]
    Malformed { line: usize },
    #[error("line {line}: duplicate contact {name:?}")]
    Duplicate { line: usize, name: String },
    #[error("reading contacts: {0}")]
    Io(#[from] std::io::Error),
}

pub type ContactTable = BTreeMap<String, String>;

pub fn parse_contacts(src: &str) -> Result<ContactTable, ContactsError> {
    let mut table = ContactTable::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let (name, number) = raw.split_once('\t').ok_or(ContactsError::Malformed { line })?;
        let (name, number) = (name.trim(), number.trim());
        if name.is_empty() || number.is_empty() {
            return Err(ContactsError::Malformed { line });
        }
        if table.insert(name.to_owned(), number.to_owned()).is_some() {
            return Err(ContactsError::Duplicate { line, name: name.to_owned() });
        }
    }
    Ok(table)
}

pub fn load_contacts(path: &Path) -> Result<ContactTable, ContactsError> {
    parse_contacts(&std::fs::read_to_string(path)?)
}
