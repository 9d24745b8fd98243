use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::CliError;

pub const DEFAULT_SCAN_BUDGET: u64 = 200_000_000;

/// Optional settings file. Every field may be overridden on the command line.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub cache_dir: Option<PathBuf>,
    /// Largest τ scan (in steps) any single manifold may trigger.
    pub scan_budget: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }

    /// `--config`, else `$XDG_CONFIG_HOME/groot/config.json` or
    /// `~/.config/groot/config.json` when present.
    pub fn discover(explicit: Option<&Path>) -> Result<Self, CliError> {
        if let Some(p) = explicit {
            return Self::load(p);
        }
        let base = std::env::var_os("XDG_CONFIG_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".config")));
        match base.map(|b| b.join("groot").join("config.json")) {
            Some(p) if p.is_file() => Self::load(&p),
            _ => Ok(Self::default()),
        }
    }
}

/// Flag, then `GROOT_CACHE_DIR`, then the config file, then the user cache directory.
pub fn resolve_cache_dir(flag: Option<PathBuf>, file: &FileConfig) -> Option<PathBuf> {
    flag.or_else(|| std::env::var_os("GROOT_CACHE_DIR").map(PathBuf::from))
        .or_else(|| file.cache_dir.clone())
        .or_else(|| {
            std::env::var_os("XDG_CACHE_HOME")
                .map(PathBuf::from)
                .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
                .map(|b| b.join("groot"))
        })
}
