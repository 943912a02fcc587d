//! Atomic file output and the matrix export format.

use std::fs;
use std::io::Write;
use std::path::Path;

use jetrank_core::{Matrix, Weight};
use tempfile::NamedTempFile;

use crate::error::CliError;

/// Writes `contents` to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

/// Sends text to `path` when given, stdout otherwise.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

#[derive(Clone, Debug)]
pub struct DumpHeader<'a> {
    pub n: usize,
    pub d: usize,
    pub p: u64,
    pub seed: u64,
    pub weight: &'a Weight,
}

/// Header line followed by the matrix, one row per line.
pub fn render_dump(header: &DumpHeader<'_>, m: &Matrix) -> String {
    format!(
        "# n={} d={} p={} seed={} weight={}\n{}",
        header.n, header.d, header.p, header.seed, header.weight, m
    )
}

pub fn write_dump(dir: &Path, name: &str, header: &DumpHeader<'_>, m: &Matrix) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    write_atomic(&dir.join(name), render_dump(header, m).as_bytes())
}
