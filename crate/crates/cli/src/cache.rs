//! On-disk cache of series and table records.
//!
//! Entries live under `<dir>/v<FORMAT_VERSION>/`, so a version bump leaves
//! old entries unread. An entry that fails to parse or whose header does not
//! match the request is recomputed and overwritten.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use pdcrank_core::cranks::{CrankTable, Statistic};
use pdcrank_core::records::{self, RecordKind, FORMAT_VERSION};
use pdcrank_core::TruncSeries;

pub const CACHE_DIR_ENV: &str = "CRANK_CACHE_DIR";

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    /// `--cache-dir`, else `$CRANK_CACHE_DIR`, else the per-user data dir.
    pub fn resolve(flag: Option<PathBuf>) -> Self {
        let dir = flag
            .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
            .or_else(|| dirs::data_dir().map(|d| d.join("pdcrank")));
        Cache { dir }
    }

    pub fn entry_path(&self, kind: RecordKind, key: &str, order: usize) -> Option<PathBuf> {
        let name: String = key
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        self.dir.as_ref().map(|d| {
            d.join(format!("v{FORMAT_VERSION}"))
                .join(format!("{kind}-{name}-{order}.txt"))
        })
    }

    pub fn series(
        &self,
        key: &str,
        order: usize,
        compute: impl FnOnce() -> TruncSeries,
    ) -> TruncSeries {
        let path = self.entry_path(RecordKind::Series, key, order);
        if let Some(text) = path.as_deref().and_then(read) {
            match records::parse_series(&text) {
                Ok((h, s)) if h.key == key && s.order() == order => return s,
                _ => {}
            }
        }
        let s = compute();
        if let Some(p) = path {
            store(&p, &records::write_series(key, &s));
        }
        s
    }

    pub fn table(
        &self,
        statistic: Statistic,
        order: usize,
        compute: impl FnOnce() -> CrankTable,
    ) -> CrankTable {
        let path = self.entry_path(RecordKind::Table, &statistic.to_string(), order);
        if let Some(text) = path.as_deref().and_then(read) {
            match records::parse_table(&text) {
                Ok(t) if t.statistic() == statistic && t.order() == order => return t,
                _ => {}
            }
        }
        let t = compute();
        if let Some(p) = path {
            store(&p, &records::write_table(&t));
        }
        t
    }
}

fn read(path: &Path) -> Option<String> {
    fs::read_to_string(path).ok()
}

fn store(path: &Path, text: &str) {
    if let Err(e) = write_atomic(path, text) {
        eprintln!(
            "warning: could not write cache entry {}: {e}",
            path.display()
        );
    }
}

fn write_atomic(path: &Path, text: &str) -> io::Result<()> {
    let dir = path.parent().expect("entry paths have a parent");
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}
