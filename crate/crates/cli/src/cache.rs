//! On-disk store of τ extrema, one JSON file per triple and algorithm version.

use std::io::Write;
use std::path::{Path, PathBuf};

use groot::root::TauExtrema;
use groot::{BrieskornTriple, ALGORITHM_VERSION};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    triple: String,
    extrema: TauExtrema,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    fn path(&self, t: &BrieskornTriple) -> PathBuf {
        let [a, b, c] = t.exponents();
        self.dir
            .join(format!("v{ALGORITHM_VERSION}"))
            .join(format!("{a}_{b}_{c}.json"))
    }

    /// Unreadable, corrupt or mismatched entries count as misses.
    pub fn get(&self, t: &BrieskornTriple) -> Option<TauExtrema> {
        let text = std::fs::read_to_string(self.path(t)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.version == ALGORITHM_VERSION && entry.triple == t.unoriented().key())
            .then_some(entry.extrema)
    }

    /// Write-then-rename, so readers never observe a partial file.
    pub fn put(&self, t: &BrieskornTriple, extrema: &TauExtrema) -> std::io::Result<()> {
        let path = self.path(t);
        let dir = path.parent().unwrap_or(Path::new("."));
        std::fs::create_dir_all(dir)?;
        let entry = Entry {
            version: ALGORITHM_VERSION,
            triple: t.unoriented().key(),
            extrema: extrema.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.flush()?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(())
    }
}
