//! Shell-count cache keyed by (Gram matrix, norm, canonical shift), with a
//! JSON file backing.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::{Lattice, RationalVector};

pub const CACHE_FILE: &str = "shells.json";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub(crate) struct ShellKey {
    gram: Vec<Vec<i64>>,
    norm: String,
    shift: Option<Vec<String>>,
}

impl ShellKey {
    /// `shift` must already be reduced into `[0, 1)`.
    pub(crate) fn new(l: &Lattice, n: &BigRational, shift: Option<&RationalVector>) -> Self {
        ShellKey {
            gram: l.gram().to_vec(),
            norm: n.to_string(),
            shift: shift.map(RationalVector::to_strings),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    #[serde(flatten)]
    key: ShellKey,
    count: u64,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: Vec<Entry>,
}

#[derive(Debug, Default)]
pub struct ShellCache {
    map: RwLock<HashMap<ShellKey, u64>>,
}

impl ShellCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn path_in(dir: &Path) -> PathBuf {
        dir.join(CACHE_FILE)
    }

    /// Loads `dir/shells.json`; a missing file gives an empty cache.
    pub fn load(dir: &Path) -> Result<Self> {
        let path = Self::path_in(dir);
        if !path.exists() {
            return Ok(Self::new());
        }
        let file: CacheFile = serde_json::from_str(&fs::read_to_string(path)?)?;
        let map = file.entries.into_iter().map(|e| (e.key, e.count)).collect();
        Ok(ShellCache {
            map: RwLock::new(map),
        })
    }

    /// Writes entries sorted by key so the file is deterministic.
    pub fn save(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let mut entries: Vec<Entry> = self
            .map
            .read()
            .expect("cache lock")
            .iter()
            .map(|(k, &count)| Entry { key: k.clone(), count })
            .collect();
        entries.sort_by(|a, b| a.key.cmp(&b.key));
        let body = serde_json::to_string_pretty(&CacheFile { version: 1, entries })?;
        let tmp = dir.join(format!("{CACHE_FILE}.tmp"));
        fs::write(&tmp, body)?;
        fs::rename(tmp, Self::path_in(dir))?;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub(crate) fn get(&self, key: &ShellKey) -> Option<u64> {
        self.map.read().expect("cache lock").get(key).copied()
    }

    pub(crate) fn insert(&self, key: ShellKey, count: u64) {
        self.map.write().expect("cache lock").insert(key, count);
    }
}
