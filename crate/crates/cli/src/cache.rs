//! On-disk series cache.
//!
//! One JSON file per `(which, r, i, N, interp)`. Each entry stores a sha256
//! of the serialized series, re-checked on every hit; a bad entry is treated
//! as a miss and overwritten. Writes go to a temp file in the same directory
//! and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use gordonlab_core::TruncatedSeries;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub which: String,
    pub r: usize,
    pub i: usize,
    pub trunc: usize,
    pub interp: String,
}

impl CacheKey {
    fn file_name(&self) -> String {
        format!("{}-r{}-i{}-n{}-{}.json", self.which, self.r, self.i, self.trunc, self.interp)
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: CacheKey,
    sha256: String,
    series: TruncatedSeries,
}

fn checksum(series: &TruncatedSeries) -> String {
    let bytes = serde_json::to_vec(series).expect("series serializes");
    hex::encode(Sha256::digest(bytes))
}

pub struct SeriesCache {
    dir: PathBuf,
}

impl SeriesCache {
    pub fn open(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    /// Returns the cached series only if the key and checksum both match.
    pub fn load(&self, key: &CacheKey) -> Option<TruncatedSeries> {
        let text = fs::read_to_string(self.path_for(key)).ok()?;
        let entry: Entry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(err) => {
                eprintln!("warning: ignoring unreadable cache entry {}: {err}", key.file_name());
                return None;
            }
        };
        if entry.key != *key || entry.series.validate().is_err() || entry.series.trunc() != key.trunc {
            eprintln!("warning: ignoring mismatched cache entry {}", key.file_name());
            return None;
        }
        if checksum(&entry.series) != entry.sha256 {
            eprintln!("warning: checksum mismatch in cache entry {}", key.file_name());
            return None;
        }
        Some(entry.series)
    }

    pub fn store(&self, key: &CacheKey, series: &TruncatedSeries) -> std::io::Result<()> {
        let entry = Entry { key: key.clone(), sha256: checksum(series), series: series.clone() };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.write_all(b"\n")?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path_for(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
