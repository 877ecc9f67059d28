//! Append-only JSON-lines count cache. Cache hits must be byte-identical to
//! recomputation; a seeded sample of loaded entries is re-verified against
//! fresh counts on first use.

use anyhow::{Context, Result};
use lfchar::{CountKey, CountStore};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

pub const CACHE_VERSION: &str = "1";

#[derive(Serialize, Deserialize)]
struct CacheLine {
    key: CountKey,
    count: String,
    ver: String,
}

pub struct FileStore {
    path: PathBuf,
    entries: Mutex<BTreeMap<String, u128>>,
    /// Entries withheld for re-verification: first get() misses so the count
    /// is recomputed, then put() compares.
    pending_verify: Mutex<BTreeMap<String, u128>>,
    file: Mutex<std::fs::File>,
    poisoned: AtomicBool,
}

fn key_string(key: &CountKey) -> String {
    serde_json::to_string(key).expect("count keys serialize")
}

impl FileStore {
    pub fn open(dir: &Path, seed: u64) -> Result<FileStore> {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("cannot create cache dir {}", dir.display()))?;
        let path = dir.join("counts.jsonl");
        let mut entries = BTreeMap::new();
        if path.exists() {
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("cannot read cache {}", path.display()))?;
            for line in text.lines() {
                if line.trim().is_empty() {
                    continue;
                }
                let parsed: CacheLine = serde_json::from_str(line)
                    .with_context(|| format!("corrupt cache line: {}", line))?;
                if parsed.ver != CACHE_VERSION {
                    continue;
                }
                let count: u128 = parsed
                    .count
                    .parse()
                    .with_context(|| format!("corrupt cache count: {}", parsed.count))?;
                entries.insert(key_string(&parsed.key), count);
            }
        }
        // Withhold a seeded sample for re-verification.
        let mut pending = BTreeMap::new();
        if !entries.is_empty() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xcac4e);
            let keys: Vec<String> = entries.keys().cloned().collect();
            let picks = keys.len().min(3);
            for _ in 0..picks {
                let k = keys[rng.gen_range(0..keys.len())].clone();
                if let Some(v) = entries.remove(&k) {
                    pending.insert(k, v);
                }
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .with_context(|| format!("cannot open cache {}", path.display()))?;
        Ok(FileStore {
            path,
            entries: Mutex::new(entries),
            pending_verify: Mutex::new(pending),
            file: Mutex::new(file),
            poisoned: AtomicBool::new(false),
        })
    }

    pub fn poisoned(&self) -> bool {
        self.poisoned.load(Ordering::SeqCst)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

impl CountStore for FileStore {
    fn get(&self, key: &CountKey) -> Option<u128> {
        let k = key_string(key);
        self.entries.lock().unwrap().get(&k).copied()
    }

    fn put(&self, key: &CountKey, count: u128) {
        let k = key_string(key);
        if let Some(expected) = self.pending_verify.lock().unwrap().remove(&k) {
            if expected != count {
                eprintln!(
                    "cache verification failed for {}: cached {} vs recomputed {}",
                    k, expected, count
                );
                self.poisoned.store(true, Ordering::SeqCst);
            }
            // verified (or poisoned): either way the entry is already on disk
            self.entries.lock().unwrap().insert(k, count);
            return;
        }
        let mut entries = self.entries.lock().unwrap();
        if entries.contains_key(&k) {
            return;
        }
        entries.insert(k.clone(), count);
        let line = CacheLine {
            key: key.clone(),
            count: count.to_string(),
            ver: CACHE_VERSION.to_string(),
        };
        let mut file = self.file.lock().unwrap();
        let _ = writeln!(file, "{}", serde_json::to_string(&line).unwrap());
    }
}
