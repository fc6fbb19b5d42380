//! File formats: PGM images and CSV tables.

mod csv;
mod pgm;

use std::io::Write;
use std::path::Path;

pub use csv::{
    fmt_real, parse_sinogram_csv, write_exact_csv, write_report_csv, write_sinogram_csv,
    write_trace_csv, CsvError,
};
pub use pgm::{read_pgm, write_grid_pgm, write_pgm, PgmError};

/// Writes `bytes` to a temporary file next to `path`, then renames it over
/// `path` so readers never observe a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
