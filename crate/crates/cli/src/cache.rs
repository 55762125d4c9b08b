use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use cobord_core::lazard::cache_file_name;
use cobord_core::LazardBasisTable;

/// Where Lazard tables come from: a cache directory, or nowhere.
#[derive(Debug, Clone)]
pub struct TableSource {
    dir: Option<PathBuf>,
    rebuild: bool,
}

impl TableSource {
    pub fn new(dir: Option<PathBuf>, rebuild: bool) -> Self {
        TableSource { dir, rebuild }
    }

    /// A table of the given depth, read from the cache when one is there
    /// and written to it otherwise.
    pub fn table(&self, depth: usize) -> Result<Arc<LazardBasisTable>> {
        let Some(dir) = &self.dir else {
            return Ok(Arc::new(LazardBasisTable::build(depth)?));
        };
        let path = dir.join(cache_file_name(depth));
        if path.exists() && !self.rebuild {
            let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let table = LazardBasisTable::from_cache_json(&text).map_err(|e| {
                anyhow::Error::new(e).context(format!(
                    "refusing to use {}; pass --rebuild-cache to replace it",
                    path.display()
                ))
            })?;
            return Ok(Arc::new(table));
        }
        let table = LazardBasisTable::build(depth)?;
        write_atomic(dir, &path, &table.to_cache_json())?;
        Ok(Arc::new(table))
    }
}

fn write_atomic(dir: &Path, path: &Path, text: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
