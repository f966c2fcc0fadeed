//! Per-base result cache so an interrupted sweep can resume. Entries are
//! appended as JSON lines to `<dir>/<digest>.jsonl`; floats are stored as
//! their bit patterns so resumed results are bit-identical.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::evaluation::{ElevenLevels, EvalSummary, LEVELS};

use super::GridBase;

#[derive(Serialize, Deserialize)]
struct Entry {
    units: u64,
    decimals: u32,
    levels: [u64; LEVELS],
}

pub struct SweepCache {
    path: PathBuf,
    file: Mutex<File>,
    loaded: BTreeMap<GridBase, EvalSummary>,
}

impl SweepCache {
    /// Open (creating if needed) the cache for one collection digest.
    pub fn open(dir: &Path, digest: &str) -> Result<Self> {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(format!("{digest}.jsonl"));
        let mut loaded = BTreeMap::new();
        if path.exists() {
            let content = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            for line in content.lines() {
                // A torn final line from an interrupted run is skipped.
                let Ok(entry) = serde_json::from_str::<Entry>(line) else { continue };
                let levels = ElevenLevels(entry.levels.map(f64::from_bits));
                loaded.insert(GridBase::new(entry.units, entry.decimals), EvalSummary::from_levels(levels));
            }
        }
        let mut file = OpenOptions::new().create(true).append(true).open(&path).map_err(|e| Error::io(&path, e))?;
        let len = file.metadata().map_err(|e| Error::io(&path, e))?.len();
        if len > 0 {
            let tail = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
            if tail.last() != Some(&b'\n') {
                file.write_all(b"\n").map_err(|e| Error::io(&path, e))?;
            }
        }
        Ok(SweepCache { path, file: Mutex::new(file), loaded })
    }

    pub fn get(&self, base: &GridBase) -> Option<&EvalSummary> {
        self.loaded.get(base)
    }

    pub fn len(&self) -> usize {
        self.loaded.len()
    }

    pub fn is_empty(&self) -> bool {
        self.loaded.is_empty()
    }

    pub fn record(&self, base: &GridBase, summary: &EvalSummary) -> Result<()> {
        let entry =
            Entry { units: base.units(), decimals: base.decimals(), levels: summary.levels.0.map(f64::to_bits) };
        let mut line = serde_json::to_string(&entry).expect("cache entry serializes");
        line.push('\n');
        let mut file = self.file.lock().unwrap_or_else(|e| e.into_inner());
        file.write_all(line.as_bytes()).map_err(|e| Error::io(&self.path, e))
    }
}

/// Hex SHA-256 over the given parts, each length-prefixed.
pub fn digest(parts: &[&[u8]]) -> String {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update((part.len() as u64).to_le_bytes());
        hasher.update(part);
    }
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let base = GridBase::new(326, 1);
        let summary = EvalSummary::from_levels(ElevenLevels([
            0.1 + 0.2,
            1.0 / 3.0,
            0.0,
            0.5,
            0.25,
            0.7,
            0.1,
            0.9,
            0.3,
            0.4,
            0.0,
        ]));
        {
            let cache = SweepCache::open(dir.path(), "abc").unwrap();
            assert!(cache.is_empty());
            cache.record(&base, &summary).unwrap();
        }
        std::fs::OpenOptions::new()
            .append(true)
            .open(dir.path().join("abc.jsonl"))
            .unwrap()
            .write_all(b"{\"units\":1")
            .unwrap();
        let cache = SweepCache::open(dir.path(), "abc").unwrap();
        assert_eq!(cache.len(), 1);
        assert_eq!(cache.get(&base), Some(&summary));
        let other = GridBase::new(10, 1);
        cache.record(&other, &summary).unwrap();
        drop(cache);
        assert_eq!(SweepCache::open(dir.path(), "abc").unwrap().len(), 2);
    }

    #[test]
    fn digest_separates_parts() {
        assert_ne!(digest(&[b"ab", b"c"]), digest(&[b"a", b"bc"]));
        assert_eq!(digest(&[b"x"]).len(), 64);
    }
}
