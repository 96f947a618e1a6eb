//! On-disk table cache under `WEYLREC_CACHE_DIR`.
//!
//! A file is named by the SHA-256 of its canonical key (format version, kind,
//! rank, size and specialization or order) and stores the SHA-256 of its
//! payload; files that fail either check are rebuilt and overwritten.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use weylrec::macdonald::{install_series_table, install_table, QWhittakerSeriesTable, QWhittakerTable, Specialization};

/// Bumped whenever the serialized table layout changes.
pub const FORMAT_VERSION: u32 = 1;

pub const ENV_VAR: &str = "WEYLREC_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Envelope {
    version: u32,
    key: Value,
    sha256: String,
    table: Value,
}

pub struct TableCache {
    dir: PathBuf,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl TableCache {
    pub fn from_env() -> Option<Self> {
        std::env::var_os(ENV_VAR)
            .filter(|d| !d.is_empty())
            .map(|d| TableCache { dir: d.into() })
    }

    fn path(&self, key: &Value) -> PathBuf {
        let canonical = json!({"version": FORMAT_VERSION, "key": key}).to_string();
        self.dir.join(format!("{}.json", digest(canonical.as_bytes())))
    }

    fn load<T: DeserializeOwned>(path: &Path, key: &Value) -> Option<T> {
        let bytes = fs::read(path).ok()?;
        let env: Envelope = serde_json::from_slice(&bytes).ok()?;
        if env.version != FORMAT_VERSION || &env.key != key {
            return None;
        }
        if digest(env.table.to_string().as_bytes()) != env.sha256 {
            return None;
        }
        serde_json::from_value(env.table).ok()
    }

    fn store<T: Serialize>(&self, path: &Path, key: &Value, table: &T) -> Result<()> {
        fs::create_dir_all(&self.dir).with_context(|| format!("creating {}", self.dir.display()))?;
        let table = serde_json::to_value(table)?;
        let env = Envelope {
            version: FORMAT_VERSION,
            key: key.clone(),
            sha256: digest(table.to_string().as_bytes()),
            table,
        };
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&env)?).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
        Ok(())
    }

    /// Loads or builds the exact table, then makes it the process-wide one.
    pub fn exact(&self, rank: usize, max_size: u32, spec: Specialization) -> Result<()> {
        let key = json!({"kind": "exact", "rank": rank, "max_size": max_size, "specialization": spec});
        let path = self.path(&key);
        let table = match Self::load::<QWhittakerTable>(&path, &key) {
            Some(t) => t,
            None => {
                let t = QWhittakerTable::build(rank, max_size, spec)?;
                self.store(&path, &key, &t)?;
                t
            }
        };
        install_table(table);
        Ok(())
    }

    /// As [`TableCache::exact`], for the table truncated at `q^order`.
    pub fn series(&self, rank: usize, max_size: u32, order: usize) -> Result<()> {
        let key = json!({"kind": "series", "rank": rank, "max_size": max_size, "order": order});
        let path = self.path(&key);
        let table = match Self::load::<QWhittakerSeriesTable>(&path, &key) {
            Some(t) => t,
            None => {
                let t = QWhittakerSeriesTable::build(rank, max_size, order)?;
                self.store(&path, &key, &t)?;
                t
            }
        };
        install_series_table(table);
        Ok(())
    }
}
