//! On-disk cache of verified component records.
//!
//! Entries are JSON files named by the SHA-256 of their key; the key carries
//! the shapes, the component index, the coefficient mode and the engine
//! version, so stale or foreign entries never match. Unreadable entries are
//! skipped with a warning and recomputed.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::qalgebra::RELATIONS;
use crate::theorems::ComponentRecord;

/// Hex SHA-256 of the rewrite rules.
pub fn relation_fingerprint() -> String {
    hex::encode(Sha256::digest(RELATIONS.as_bytes()))
}

/// Engine version tag stored in every key.
pub fn engine_version() -> String {
    format!("{}+{}", env!("CARGO_PKG_VERSION"), &relation_fingerprint()[..12])
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub record: ComponentRecord,
    /// Basis of the left-hand subspace, rendered.
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TableEntry {
    key: String,
    scalars: Vec<String>,
}

#[derive(Debug)]
pub struct Cache {
    dir: PathBuf,
    warnings: Mutex<Vec<String>>,
}

impl Cache {
    pub fn open(dir: impl AsRef<Path>) -> std::io::Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Cache { dir: dir.as_ref().to_path_buf(), warnings: Mutex::new(Vec::new()) })
    }

    pub fn key(suite: &str, shapes: &str, component: &str, q_mode: &str) -> String {
        format!("{suite}|{shapes}|{component}|{q_mode}|{}", engine_version())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", hex::encode(Sha256::digest(key.as_bytes()))))
    }

    fn warn(&self, msg: String) {
        eprintln!("warning: {msg}");
        self.warnings.lock().unwrap().push(msg);
    }

    pub fn warnings(&self) -> Vec<String> {
        self.warnings.lock().unwrap().clone()
    }

    fn read<T: for<'de> Deserialize<'de>>(&self, key: &str) -> Option<T> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str(&text) {
            Ok(v) => Some(v),
            Err(e) => {
                self.warn(format!("ignoring corrupt cache entry {}: {e}", path.display()));
                None
            }
        }
    }

    fn write<T: Serialize>(&self, key: &str, value: &T) {
        let path = self.path(key);
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string(value).expect("cache entries serialize");
        if let Err(e) = fs::write(&tmp, text).and_then(|_| fs::rename(&tmp, &path)) {
            self.warn(format!("could not write cache entry {}: {e}", path.display()));
        }
    }

    pub fn get(&self, key: &str) -> Option<CacheEntry> {
        let entry: CacheEntry = self.read(key)?;
        if entry.key != key {
            self.warn(format!("ignoring cache entry with mismatched key {}", entry.key));
            return None;
        }
        Some(entry)
    }

    pub fn put(&self, entry: &CacheEntry) {
        self.write(&entry.key, entry);
    }

    /// Stores the commutation table of a normal element.
    pub fn put_table(&self, name: &str, scalars: &[crate::scalar::RatFunc]) {
        let key = format!("table|{name}|{}", engine_version());
        let entry = TableEntry { key: key.clone(), scalars: scalars.iter().map(|c| c.to_string()).collect() };
        self.write(&key, &entry);
    }

    pub fn get_table(&self, name: &str) -> Option<Vec<crate::scalar::RatFunc>> {
        let key = format!("table|{name}|{}", engine_version());
        let entry: TableEntry = self.read(&key)?;
        let parsed: Result<Vec<_>, _> = entry.scalars.iter().map(|s| s.parse()).collect();
        match parsed {
            Ok(v) if entry.key == key => Some(v),
            _ => {
                self.warn(format!("ignoring corrupt commutation table for {name}"));
                None
            }
        }
    }
}
