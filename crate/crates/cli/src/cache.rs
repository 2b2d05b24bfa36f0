//! Content-addressed result cache. Entries are canonical JSON files named by
//! the SHA-256 of the job description; writes go through a temporary file
//! and a rename so concurrent processes never see a partial entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::canonical_json;

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit,
    Miss,
    /// An entry existed but could not be read back.
    Corrupt,
    Disabled,
}

pub fn hash_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Key of a job: the hash of its canonical description.
    pub fn key<T: Serialize>(job: &T) -> String {
        hash_hex(canonical_json(job).as_bytes())
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn load<T: DeserializeOwned>(&self, key: &str) -> (Option<T>, Lookup) {
        let Some(path) = self.path(key) else {
            return (None, Lookup::Disabled);
        };
        let Ok(bytes) = fs::read(&path) else {
            return (None, Lookup::Miss);
        };
        match serde_json::from_slice(&bytes) {
            Ok(v) => (Some(v), Lookup::Hit),
            Err(_) => (None, Lookup::Corrupt),
        }
    }

    pub fn store<T: Serialize>(&self, key: &str, value: &T) -> std::io::Result<()> {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path(key)) else {
            return Ok(());
        };
        fs::create_dir_all(dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(canonical_json(value).as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }

    /// Returns the cached value for `key`, or computes and stores it.
    /// Unreadable entries are recomputed and overwritten.
    pub fn get_or_compute<T, E>(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<T, E>,
    ) -> Result<(T, Lookup), E>
    where
        T: Serialize + DeserializeOwned,
        E: From<std::io::Error>,
    {
        let (cached, lookup) = self.load(key);
        if let Some(v) = cached {
            return Ok((v, lookup));
        }
        let v = compute()?;
        self.store(key, &v)?;
        Ok((v, lookup))
    }
}
