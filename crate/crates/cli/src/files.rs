//! Filesystem plumbing: input discovery, community naming, atomic writes.

use std::fs;
use std::path::{Path, PathBuf};

use crate::errors::CliError;

/// Expand input paths: files pass through, directories contribute their
/// immediate children with a recognized extension (xml, tsv, txt, json).
pub fn collect_inputs(paths: &[PathBuf], extensions: &[&str]) -> Result<Vec<PathBuf>, CliError> {
    let mut inputs = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut children: Vec<PathBuf> = fs::read_dir(path)
                .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| {
                    p.is_file()
                        && p.extension()
                            .and_then(|e| e.to_str())
                            .is_some_and(|e| extensions.contains(&e.to_ascii_lowercase().as_str()))
                })
                .collect();
            children.sort();
            inputs.extend(children);
        } else if path.is_file() {
            inputs.push(path.clone());
        } else {
            return Err(CliError::Data(format!("no such input: {}", path.display())));
        }
    }
    Ok(inputs)
}

/// Community name for an input file: the file stem, except that a file
/// literally named `Posts.xml` (the Stack Exchange dump layout) is named
/// after its parent directory.
pub fn community_name(path: &Path) -> String {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("community");
    if stem.eq_ignore_ascii_case("posts") {
        if let Some(parent) = path
            .parent()
            .and_then(Path::file_name)
            .and_then(|s| s.to_str())
        {
            if !parent.is_empty() {
                return parent.to_string();
            }
        }
    }
    stem.to_string()
}

/// Write via a temporary file in the same directory plus rename, so
/// concurrent readers never observe a partial artifact.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}
