//! One UTF-8 file per note, `<dir>/<name>.note`.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use braillepad_core::NoteName;

pub const NOTE_EXTENSION: &str = "note";

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("a note named {0} already exists")]
    AlreadyExists(NoteName),
    #[error("no note named {0}")]
    NotFound(NoteName),
    #[error("note store i/o: {0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone)]
pub struct NoteStore {
    dir: PathBuf,
}

impl NoteStore {
    /// Opens `dir`, creating it if needed.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(NoteStore { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_of(&self, name: &NoteName) -> PathBuf {
        self.dir.join(format!("{}.{NOTE_EXTENSION}", name.as_str()))
    }

    pub fn save(&self, name: &NoteName, content: &str, overwrite: bool) -> Result<(), StoreError> {
        let path = self.path_of(name);
        if overwrite {
            fs::write(&path, content)?;
            return Ok(());
        }
        let mut file = match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => {
                return Err(StoreError::AlreadyExists(name.clone()))
            }
            Err(e) => return Err(e.into()),
        };
        file.write_all(content.as_bytes())?;
        Ok(())
    }

    pub fn load(&self, name: &NoteName) -> Result<String, StoreError> {
        match fs::read_to_string(self.path_of(name)) {
            Ok(s) => Ok(s),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Err(StoreError::NotFound(name.clone())),
            Err(e) => Err(e.into()),
        }
    }

    /// Sorted names of every `.note` file whose stem is a valid note name.
    pub fn list(&self) -> Result<Vec<NoteName>, StoreError> {
        let mut names = Vec::new();
        for entry in fs::read_dir(&self.dir)? {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some(NOTE_EXTENSION) || !path.is_file() {
                continue;
            }
            if let Some(name) = path.file_stem().and_then(|s| s.to_str()).and_then(NoteName::parse) {
                names.push(name);
            }
        }
        names.sort();
        Ok(names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(s: &str) -> NoteName {
        NoteName::parse(s).unwrap()
    }

    #[test]
    fn save_load_overwrite() {
        let dir = tempfile::tempdir().unwrap();
        let store = NoteStore::open(dir.path()).unwrap();
        store.save(&name("greeting"), "hi", false).unwrap();
        assert_eq!(store.load(&name("greeting")).unwrap(), "hi");
        assert!(matches!(store.save(&name("greeting"), "hi", false), Err(StoreError::AlreadyExists(_))));
        store.save(&name("greeting"), "hello", true).unwrap();
        assert_eq!(store.load(&name("greeting")).unwrap(), "hello");
        assert_eq!(fs::read(dir.path().join("greeting.note")).unwrap(), b"hello");
    }

    #[test]
    fn missing_note() {
        let dir = tempfile::tempdir().unwrap();
        let store = NoteStore::open(dir.path()).unwrap();
        assert!(matches!(store.load(&name("missing")), Err(StoreError::NotFound(_))));
    }

    #[test]
    fn listing() {
        let dir = tempfile::tempdir().unwrap();
        let store = NoteStore::open(dir.path()).unwrap();
        assert!(store.list().unwrap().is_empty());
        fs::write(dir.path().join("b.note"), "").unwrap();
        fs::write(dir.path().join("a.note"), "").unwrap();
        fs::write(dir.path().join("x.txt"), "").unwrap();
        fs::write(dir.path().join("Bad Name.note"), "").unwrap();
        fs::create_dir(dir.path().join("d.note")).unwrap();
        let listed: Vec<_> = store.list().unwrap().iter().map(|n| n.as_str().to_owned()).collect();
        assert_eq!(listed, ["a", "b"]);
        assert_eq!(store.list().unwrap(), store.list().unwrap());
    }
}
