//! On-disk result cache keyed by a content hash of the request.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use kac_core::ENGINE_VERSION;

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    engine: String,
    output: String,
}

pub struct Cache {
    dir: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    /// Platform cache directory, falling back to the working directory.
    pub fn default_dir() -> PathBuf {
        dirs::cache_dir().unwrap_or_else(|| PathBuf::from(".")).join("kac")
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hex SHA-256 of the request document. The engine version is part of the
    /// key, so entries written by other versions are never hit.
    pub fn key(request: &serde_json::Value) -> String {
        let mut h = Sha256::new();
        h.update(ENGINE_VERSION.as_bytes());
        h.update([0]);
        h.update(request.to_string().as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<String> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.engine == ENGINE_VERSION).then_some(entry.output)
    }

    /// Writes through a temporary file and a rename, so readers never see a
    /// partial entry and concurrent writers of the same key are harmless.
    pub fn put(&self, key: &str, output: &str) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry { engine: ENGINE_VERSION.to_string(), output: output.to_string() };
        let tmp = self.dir.join(format!(
            ".{key}.{}.{}.tmp",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&entry)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, self.path(key)).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("nested"));
        let key = Cache::key(&json!({"command": "witt", "dim": [2, 2]}));
        assert_eq!(cache.get(&key), None);
        cache.put(&key, "1\n").unwrap();
        assert_eq!(cache.get(&key).as_deref(), Some("1\n"));
    }

    #[test]
    fn version_mismatch_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().to_path_buf());
        let key = Cache::key(&json!({"x": 1}));
        let stale = Entry { engine: "0.0.0-other".into(), output: "stale".into() };
        fs::write(cache.path(&key), serde_json::to_string(&stale).unwrap()).unwrap();
        assert_eq!(cache.get(&key), None);
    }

    #[test]
    fn keys_depend_on_content() {
        assert_ne!(Cache::key(&json!({"dim": [2, 2]})), Cache::key(&json!({"dim": [2, 3]})));
        assert_eq!(Cache::key(&json!({"dim": [2, 2]})), Cache::key(&json!({"dim": [2, 2]})));
    }
}
