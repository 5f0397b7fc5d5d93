//! File-backed result cache: a JSON object keyed by `word|family`.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use arrowdiag::families::Family;
use arrowdiag::polycount::PolynomialQ;

pub fn key(word: &str, family: Family) -> String {
    format!("{word}|{family}")
}

/// In-memory view of the cache file. Unreadable or malformed files are
/// treated as empty; the cache never changes results.
#[derive(Debug, Default)]
pub struct Cache {
    path: PathBuf,
    entries: BTreeMap<String, serde_json::Value>,
}

impl Cache {
    pub fn load(path: &Path) -> Self {
        let entries = fs::read(path)
            .ok()
            .and_then(|bytes| serde_json::from_slice(&bytes).ok())
            .unwrap_or_default();
        Cache { path: path.to_path_buf(), entries }
    }

    pub fn get(&self, key: &str) -> Option<PolynomialQ> {
        self.entries.get(key).and_then(|v| serde_json::from_value(v.clone()).ok())
    }

    pub fn insert(&mut self, key: String, value: &PolynomialQ) {
        let v = serde_json::to_value(value).expect("polynomials always serialize");
        self.entries.insert(key, v);
    }

    /// Writes to a sibling temp file, then renames over the target.
    pub fn save(&self) -> io::Result<()> {
        let bytes = serde_json::to_vec_pretty(&self.entries)?;
        write_atomic(&self.path, &bytes)
    }
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "path has no file name"))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}
