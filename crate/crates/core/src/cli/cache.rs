//! Read-through cache of computed payloads keyed by the canonical request.
//!
//! Each entry is one JSON file named after `sha256(version || request)`. The
//! file records a checksum of the stored payload; entries that fail the check
//! are treated as misses and overwritten.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "BRIESKORN_CACHE_DIR";

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    key: String,
    checksum: String,
    payload: String,
}

/// Result payload and the provenance that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cached {
    pub result: Value,
    pub provenance: Value,
}

pub struct Cache {
    dir: PathBuf,
    version: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>, version: impl Into<String>) -> Self {
        Cache {
            dir: dir.into(),
            version: version.into(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(&self, canonical_request: &str) -> String {
        let mut h = Sha256::new();
        h.update(self.version.as_bytes());
        h.update([0u8]);
        h.update(canonical_request.as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored payload, or `None` on a miss or a corrupted entry.
    pub fn get(&self, canonical_request: &str) -> Option<Cached> {
        let key = self.key(canonical_request);
        let text = fs::read_to_string(self.path(&key)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if entry.version != self.version
            || entry.key != key
            || entry.checksum != sha256_hex(entry.payload.as_bytes())
        {
            return None;
        }
        serde_json::from_str(&entry.payload).ok()
    }

    /// Stores atomically: write a temporary file, then rename over the entry.
    pub fn put(&self, canonical_request: &str, value: &Cached) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let key = self.key(canonical_request);
        let payload = serde_json::to_string(value)?;
        let entry = Entry {
            version: self.version.clone(),
            key: key.clone(),
            checksum: sha256_hex(payload.as_bytes()),
            payload,
        };
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&entry)?.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, self.path(&key))
    }

    /// Path of the entry for a request, for inspection.
    pub fn entry_path(&self, canonical_request: &str) -> PathBuf {
        self.path(&self.key(canonical_request))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Cached {
        Cached {
            result: json!({"order": "992"}),
            provenance: json!({"method": "formula"}),
        }
    }

    #[test]
    fn hit_miss_and_version() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path(), "1.0");
        assert!(cache.get("req").is_none());
        cache.put("req", &sample()).unwrap();
        assert_eq!(cache.get("req"), Some(sample()));
        assert!(cache.get("other").is_none());
        assert!(Cache::new(dir.path(), "1.1").get("req").is_none());
    }

    #[test]
    fn tampering_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path(), "1.0");
        cache.put("req", &sample()).unwrap();
        let path = cache.entry_path("req");
        let text = fs::read_to_string(&path).unwrap().replace("992", "993");
        fs::write(&path, text).unwrap();
        assert!(cache.get("req").is_none());
        cache.put("req", &sample()).unwrap();
        assert_eq!(cache.get("req"), Some(sample()));
    }
}
