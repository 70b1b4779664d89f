//! Deterministic artifact emission: CSV and JSON files written atomically
//! (temp file in the target directory, then rename) with a bit-exact
//! format contract — header row, `.` decimal separator, 17 significant
//! digits, LF line endings.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::CliError;

/// One fully formatted double: 17 significant digits, always scientific.
pub fn fmt(value: f64) -> String {
    format!("{value:.16e}")
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let parent = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(parent)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", parent.display())))?;
    let mut tmp = PathBuf::from(path);
    tmp.set_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", tmp.display())))?;
        f.write_all(bytes)
            .and_then(|_| f.sync_all())
            .map_err(|e| CliError::Numerical(format!("write failed: {e}")))?;
    }
    fs::rename(&tmp, path)
        .map_err(|e| CliError::Numerical(format!("rename to {} failed: {e}", path.display())))
}

/// CSV with a header row and all-numeric rows.
pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<String, CliError> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        let cells: Vec<String> = row.iter().map(|v| fmt(*v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    write_atomic(path, out.as_bytes())?;
    Ok(path.display().to_string())
}

/// Pretty-printed JSON document with a trailing newline.
pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Numerical(format!("serialization failed: {e}")))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())?;
    Ok(path.display().to_string())
}
