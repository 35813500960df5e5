//! Optional on-disk cache of computed documents, keyed by a hash of the
//! command and its parameters. Enabled by `ENCELL_CACHE_DIR`.

use std::fs;
use std::path::PathBuf;

use serde_json::Value;
use sha2::{Digest, Sha256};

fn path_for(key: &str) -> Option<PathBuf> {
    let dir = std::env::var_os("ENCELL_CACHE_DIR")?;
    let digest = Sha256::digest(key.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    Some(PathBuf::from(dir).join(format!("{hex}.json")))
}

pub fn load(key: &str) -> Option<Value> {
    let text = fs::read_to_string(path_for(key)?).ok()?;
    serde_json::from_str(&text).ok()
}

/// Best effort: a cache that cannot be written is ignored.
pub fn store(key: &str, doc: &Value) {
    if let Some(path) = path_for(key) {
        if let Some(parent) = path.parent() {
            let _ = fs::create_dir_all(parent);
        }
        let tmp = path.with_extension("tmp");
        if fs::write(&tmp, doc.to_string()).is_ok() {
            let _ = fs::rename(tmp, path);
        }
    }
}

/// Returns the cached document for `key`, computing and storing it on a miss.
pub fn cached(key: &str, compute: impl FnOnce() -> anyhow::Result<Value>) -> anyhow::Result<Value> {
    if let Some(v) = load(key) {
        return Ok(v);
    }
    let v = compute()?;
    store(key, &v);
    Ok(v)
}
