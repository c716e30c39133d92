//! Writing and checking fixture files.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoldenOutcome {
    Written,
    Matched,
}

/// File name used for a fixture: letters and digits of the parts joined
/// by `-`.
pub fn fixture_name(parts: &[&str], extension: &str) -> String {
    let cleaned: Vec<String> = parts
        .iter()
        .map(|p| p.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect())
        .collect();
    format!("{}.{extension}", cleaned.join("-"))
}

/// Writes `content` to `dir/name` when the file is missing (or `bless` is
/// set), otherwise requires the stored bytes to match.
pub fn write_or_verify(dir: &Path, name: &str, content: &str, bless: bool) -> Result<GoldenOutcome> {
    let path: PathBuf = dir.join(name);
    if bless || !path.exists() {
        fs::create_dir_all(dir)?;
        fs::write(&path, content)?;
        return Ok(GoldenOutcome::Written);
    }
    if fs::read_to_string(&path)? == content {
        Ok(GoldenOutcome::Matched)
    } else {
        Err(Error::GoldenMismatch { path: path.display().to_string() })
    }
}
