use std::io::Write;
use std::path::{Path, PathBuf};

use crate::Failure;

/// Writes `contents` to a temporary file next to `path`, then renames it over
/// `path`, so a failed run never leaves a half-written output.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let ctx = || format!("writing {}", path.display());
    std::fs::create_dir_all(dir).map_err(|e| Failure::io(anyhow::Error::new(e).context(ctx())))?;
    let mut tmp =
        tempfile::NamedTempFile::new_in(dir).map_err(|e| Failure::io(anyhow::Error::new(e).context(ctx())))?;
    tmp.write_all(contents).map_err(|e| Failure::io(anyhow::Error::new(e).context(ctx())))?;
    tmp.persist(path).map_err(|e| Failure::io(anyhow::Error::new(e.error).context(ctx())))?;
    Ok(())
}

/// `out.csv` + `relbs` -> `out.relbs.csv`.
pub fn with_kind(path: &Path, kind: &str, ext: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{kind}.{ext}"))
}

/// Keeps ids usable as file names.
pub fn file_safe(id: &str) -> String {
    id.chars().map(|c| if c.is_ascii_alphanumeric() || "-_.".contains(c) { c } else { '_' }).collect()
}
