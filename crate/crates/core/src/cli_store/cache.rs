//! Append-only JSON-lines cache.
//!
//! Layout: sealed segments `segment-000000.jsonl`, … plus one `active.jsonl`
//! that receives appends. When the active file grows past the rotation size
//! it is renamed into the next sealed segment. Every line carries the schema
//! version and a SHA-256 over `(kind, key, payload)`.
//!
//! A process killed mid-append leaves at most one torn line at the end of
//! `active.jsonl`; it is dropped on open. Anything else that fails to decode
//! is an error, never silently skipped.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const ENV_VAR: &str = "CUBIC_CENSUS_CACHE";
pub const DEFAULT_DIR: &str = ".cubic-cache";
const ACTIVE: &str = "active.jsonl";
const ROTATE_BYTES: u64 = 4 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Field,
    Unit,
    Class,
    Order,
    Report,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema: u32,
    pub kind: EntryKind,
    pub key: String,
    pub payload: serde_json::Value,
    pub hash: String,
}

impl CacheEntry {
    pub fn new(kind: EntryKind, key: String, payload: serde_json::Value) -> Self {
        let hash = content_hash(kind, &key, &payload);
        CacheEntry {
            schema: SCHEMA_VERSION,
            kind,
            key,
            payload,
            hash,
        }
    }
}

/// Hex SHA-256 of the compact JSON of `(kind, key, payload)`.
pub fn content_hash(kind: EntryKind, key: &str, payload: &serde_json::Value) -> String {
    let text = serde_json::to_string(&(kind, key, payload)).expect("JSON values serialise");
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Parses and verifies one cache line.
pub fn decode_line(line: &str) -> Result<CacheEntry> {
    let entry: CacheEntry = serde_json::from_str(line).map_err(|e| Error::Malformed(format!("cache line: {e}")))?;
    if entry.schema != SCHEMA_VERSION {
        return Err(Error::Stale(format!(
            "cache schema {} but this build reads {SCHEMA_VERSION}",
            entry.schema
        )));
    }
    if content_hash(entry.kind, &entry.key, &entry.payload) != entry.hash {
        return Err(Error::Malformed(format!("hash mismatch for {:?} {}", entry.kind, entry.key)));
    }
    Ok(entry)
}

pub fn encode_line(entry: &CacheEntry) -> String {
    let mut s = serde_json::to_string(entry).expect("entries serialise");
    s.push('\n');
    s
}

/// Resolves the cache directory: explicit argument, then the environment.
pub fn cache_dir(explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    std::env::var_os(ENV_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_DIR))
}

pub struct Cache {
    dir: PathBuf,
    index: BTreeMap<(EntryKind, String), CacheEntry>,
    active: File,
    active_bytes: u64,
    sealed: usize,
}

impl Cache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Cache> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        let mut sealed: Vec<PathBuf> = fs::read_dir(&dir)
            .map_err(|e| Error::io(&dir, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| {
                p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.starts_with("segment-") && n.ends_with(".jsonl"))
            })
            .collect();
        sealed.sort();
        let mut index = BTreeMap::new();
        for seg in &sealed {
            let file = File::open(seg).map_err(|e| Error::io(seg, e))?;
            for line in BufReader::new(file).lines() {
                let line = line.map_err(|e| Error::io(seg, e))?;
                if line.is_empty() {
                    continue;
                }
                insert(&mut index, decode_line(&line)?)?;
            }
        }
        let active_path = dir.join(ACTIVE);
        let good = if active_path.exists() {
            let bytes = fs::read(&active_path).map_err(|e| Error::io(&active_path, e))?;
            let mut good = 0usize;
            let mut start = 0usize;
            while let Some(nl) = bytes[start..].iter().position(|&b| b == b'\n') {
                let end = start + nl;
                let text = std::str::from_utf8(&bytes[start..end])
                    .map_err(|_| Error::Malformed("cache line is not UTF-8".into()))?;
                if !text.is_empty() {
                    insert(&mut index, decode_line(text)?)?;
                }
                start = end + 1;
                good = start;
            }
            // bytes past the last newline are a torn append
            good as u64
        } else {
            0
        };
        let active = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&active_path)
            .map_err(|e| Error::io(&active_path, e))?;
        active.set_len(good).map_err(|e| Error::io(&active_path, e))?;
        Ok(Cache {
            dir,
            index,
            active,
            active_bytes: good,
            sealed: sealed.len(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn get(&self, kind: EntryKind, key: &str) -> Option<&CacheEntry> {
        self.index.get(&(kind, key.to_string()))
    }

    pub fn get_as<T: DeserializeOwned>(&self, kind: EntryKind, key: &str) -> Result<Option<T>> {
        match self.get(kind, key) {
            None => Ok(None),
            Some(e) => serde_json::from_value(e.payload.clone())
                .map(Some)
                .map_err(|err| Error::Malformed(format!("{kind:?} {key}: {err}"))),
        }
    }

    pub fn entries(&self, kind: EntryKind) -> impl Iterator<Item = &CacheEntry> {
        self.index.values().filter(move |e| e.kind == kind)
    }

    /// Appends unless an identical entry exists. A different payload under an
    /// existing key means two runs disagree, which is an error.
    pub fn put<T: Serialize>(&mut self, kind: EntryKind, key: &str, payload: &T) -> Result<()> {
        let value = serde_json::to_value(payload).map_err(|e| Error::Inconsistent(format!("serialise {key}: {e}")))?;
        let entry = CacheEntry::new(kind, key.to_string(), value);
        if let Some(old) = self.get(kind, key) {
            if old.hash == entry.hash {
                return Ok(());
            }
            return Err(Error::Inconsistent(format!("cache already holds a different {kind:?} entry for {key}")));
        }
        let line = encode_line(&entry);
        let path = self.dir.join(ACTIVE);
        self.active.write_all(line.as_bytes()).map_err(|e| Error::io(&path, e))?;
        self.active.flush().map_err(|e| Error::io(&path, e))?;
        self.active_bytes += line.len() as u64;
        self.index.insert((kind, key.to_string()), entry);
        if self.active_bytes >= ROTATE_BYTES {
            self.rotate()?;
        }
        Ok(())
    }

    /// Seals the active file under the next segment name (atomic rename).
    pub fn rotate(&mut self) -> Result<()> {
        let from = self.dir.join(ACTIVE);
        let to = self.dir.join(format!("segment-{:06}.jsonl", self.sealed));
        self.active.sync_all().map_err(|e| Error::io(&from, e))?;
        fs::rename(&from, &to).map_err(|e| Error::io(&to, e))?;
        self.sealed += 1;
        self.active = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&from)
            .map_err(|e| Error::io(&from, e))?;
        self.active_bytes = 0;
        Ok(())
    }
}

fn insert(index: &mut BTreeMap<(EntryKind, String), CacheEntry>, e: CacheEntry) -> Result<()> {
    let k = (e.kind, e.key.clone());
    if let Some(old) = index.get(&k) {
        if old.hash != e.hash {
            return Err(Error::Malformed(format!("conflicting cache entries for {:?} {}", e.kind, e.key)));
        }
        return Ok(());
    }
    index.insert(k, e);
    Ok(())
}
