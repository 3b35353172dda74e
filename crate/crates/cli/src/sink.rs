//! Output plumbing and the shared sieve builder.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use partition_stats::{PrimeTable, Result};

/// Buffered writer over a file path, or stdout when no path is given.
pub fn open(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Build the prime table, going through the on-disk cache when the
/// PARSTAT_CACHE_DIR environment variable names a directory.  The cache
/// only ever affects speed: a stale or unreadable file falls back to a
/// fresh sieve.
pub fn build_table(limit: u64) -> Result<PrimeTable> {
    let Ok(dir) = std::env::var("PARSTAT_CACHE_DIR") else {
        return PrimeTable::build(limit);
    };
    let path = Path::new(&dir).join(format!("ptbl_{limit}.bin"));
    if let Ok(table) = PrimeTable::load_cache(&path) {
        if table.limit() == limit {
            return Ok(table);
        }
    }
    let table = PrimeTable::build(limit)?;
    if std::fs::create_dir_all(&dir).is_ok() {
        let _ = table.write_cache(&path);
    }
    Ok(table)
}
