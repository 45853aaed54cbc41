//! On-disk BSGS cache. One JSON file per key; writes go to a temporary
//! file in the same directory and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use chainscope_core::chains::GroupStore;
use chainscope_core::quotients::BsgsData;
use serde::Serialize;

const EXT: &str = "bsgs.json";

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

pub struct FileStore {
    dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub dir: String,
    pub entries: u64,
    pub bytes: u64,
}

impl FileStore {
    pub fn new(dir: PathBuf) -> Self {
        FileStore { dir }
    }

    /// `$XDG_CACHE_HOME/chainscope`, else `$HOME/.cache/chainscope`, else a
    /// directory under the system temp dir.
    pub fn default_dir() -> PathBuf {
        if let Some(x) = std::env::var_os("XDG_CACHE_HOME").filter(|v| !v.is_empty()) {
            return PathBuf::from(x).join("chainscope");
        }
        if let Some(h) = std::env::var_os("HOME").filter(|v| !v.is_empty()) {
            return PathBuf::from(h).join(".cache").join("chainscope");
        }
        std::env::temp_dir().join("chainscope-cache")
    }

    fn path(&self, key: &str) -> PathBuf {
        let safe: String = key
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
            .collect();
        self.dir.join(format!("{safe}.{EXT}"))
    }

    fn entries(&self) -> std::io::Result<Vec<PathBuf>> {
        let mut out = Vec::new();
        let read = match fs::read_dir(&self.dir) {
            Ok(r) => r,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(e),
        };
        for entry in read {
            let p = entry?.path();
            if is_entry(&p) {
                out.push(p);
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn stats(&self) -> std::io::Result<CacheStats> {
        let entries = self.entries()?;
        let mut bytes = 0;
        for p in &entries {
            bytes += fs::metadata(p)?.len();
        }
        Ok(CacheStats {
            dir: self.dir.display().to_string(),
            entries: entries.len() as u64,
            bytes,
        })
    }

    /// Removes every cache entry; other files in the directory are kept.
    pub fn clear(&self) -> std::io::Result<CacheStats> {
        let before = self.stats()?;
        for p in self.entries()? {
            fs::remove_file(p)?;
        }
        Ok(before)
    }

    fn write_atomic(&self, path: &Path, bytes: &[u8]) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let n = TMP_COUNTER.fetch_add(1, Ordering::Relaxed);
        let tmp = self.dir.join(format!(".tmp-{}-{n}", std::process::id()));
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        drop(f);
        fs::rename(&tmp, path).inspect_err(|_| {
            let _ = fs::remove_file(&tmp);
        })
    }
}

fn is_entry(p: &Path) -> bool {
    p.file_name()
        .and_then(|n| n.to_str())
        .is_some_and(|n| n.ends_with(&format!(".{EXT}")))
}

impl GroupStore for FileStore {
    fn load(&self, key: &str) -> Option<BsgsData> {
        let bytes = fs::read(self.path(key)).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    fn store(&self, key: &str, data: &BsgsData) {
        // a failed write only costs a recomputation next time
        if let Ok(bytes) = serde_json::to_vec(data) {
            let _ = self.write_atomic(&self.path(key), &bytes);
        }
    }
}
