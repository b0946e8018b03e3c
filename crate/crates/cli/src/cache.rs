//! On-disk result cache keyed by a content hash, written by temp-file-then-rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};
use tempfile::NamedTempFile;

/// Tag mixed into every key so that results of older builds are never reused.
pub const CODE_VERSION: &str = concat!("rmf-", env!("CARGO_PKG_VERSION"), "-cache-1");

/// A cache directory, or a no-op cache when none is configured.
#[derive(Clone, Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> std::io::Result<Self> {
        if let Some(d) = &dir {
            fs::create_dir_all(d)?;
        }
        Ok(Cache { dir })
    }

    /// Hex SHA-256 of the key parts joined with the code version tag.
    pub fn key(parts: &[&str]) -> String {
        let mut h = Sha256::new();
        h.update(CODE_VERSION.as_bytes());
        for p in parts {
            h.update([0u8]);
            h.update(p.as_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// The cached value, if present and readable.
    pub fn get(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Stores `value` atomically; concurrent writers of the same key leave one complete file.
    pub fn put(&self, key: &str, value: &Value) -> std::io::Result<()> {
        let (Some(dir), Some(path)) = (self.dir.as_deref(), self.path(key)) else {
            return Ok(());
        };
        write_atomic(dir, &path, value.to_string().as_bytes())
    }
}

/// Writes `bytes` to `path` through a temporary file in `dir`.
pub fn write_atomic(dir: &Path, path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
