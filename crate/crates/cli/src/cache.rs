//! Content-addressed result cache.
//!
//! Entries live at `<dir>/<aa>/<sha256 of the request>.json` and hold the
//! payload together with its own SHA-256. A read re-hashes the payload and
//! ignores the entry on mismatch, so a damaged file is recomputed rather
//! than trusted. Entries are written once, through a temporary file and a
//! rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Serialize, Deserialize)]
struct Entry {
    sha256: String,
    payload: String,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// Key for a request; `parts` should pin everything the result depends on.
    pub fn key(parts: &[&str]) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        for p in parts {
            h.update((p.len() as u64).to_le_bytes());
            h.update(p.as_bytes());
        }
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(format!("{key}.json"))
    }

    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let raw = fs::read_to_string(self.path(key)).ok()?;
        let e: Entry = serde_json::from_str(&raw).ok()?;
        if sha256_hex(e.payload.as_bytes()) != e.sha256 {
            return None;
        }
        serde_json::from_str(&e.payload).ok()
    }

    pub fn put<T: Serialize>(&self, key: &str, value: &T) -> std::io::Result<()> {
        let path = self.path(key);
        if path.exists() {
            return Ok(());
        }
        let payload = serde_json::to_string(value).map_err(std::io::Error::other)?;
        let entry = Entry { sha256: sha256_hex(payload.as_bytes()), payload };
        let parent = path.parent().expect("cache path has a parent");
        fs::create_dir_all(parent)?;
        let tmp = parent.join(format!(".{key}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&entry).map_err(std::io::Error::other)?.as_bytes())?;
            f.sync_all()?;
        }
        // another writer may have won the race; both wrote the same bytes
        match fs::rename(&tmp, &path) {
            Ok(()) => Ok(()),
            Err(_) if path.exists() => fs::remove_file(&tmp),
            Err(e) => Err(e),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_tamper() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path());
        let k = Cache::key(&["free", "Q", "{}"]);
        assert_eq!(c.get::<Vec<u32>>(&k), None);
        c.put(&k, &vec![1u32, 2, 3]).unwrap();
        assert_eq!(c.get::<Vec<u32>>(&k), Some(vec![1, 2, 3]));
        let p = c.path(&k);
        let raw = fs::read_to_string(&p).unwrap().replace("[1,2,3]", "[1,2,4]");
        fs::write(&p, raw).unwrap();
        assert_eq!(c.get::<Vec<u32>>(&k), None);
        assert_ne!(k, Cache::key(&["free", "Fp:7", "{}"]));
    }
}
