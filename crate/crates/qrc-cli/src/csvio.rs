//! CSV emission and parsing. Every emitted file starts with a manifest
//! reference comment, then a header row. Floats are written with the
//! shortest representation that round-trips bit-exactly.

use std::fmt::Write as _;
use std::path::Path;

use crate::CliError;

pub const MANIFEST_REF: &str = "# manifest=manifest.json";

pub fn fmt_f64(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{v}")
}

pub fn write_csv(
    path: &Path,
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<(), CliError> {
    let mut text = String::new();
    let _ = writeln!(text, "{MANIFEST_REF}");
    let _ = writeln!(text, "{}", header.join(","));
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        let _ = writeln!(text, "{}", row.join(","));
    }
    std::fs::write(path, text)
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
}

/// Reads a CSV written by `write_csv`: comment lines are skipped and the
/// first remaining row is the header.
pub fn read_csv(path: &Path) -> Result<(Vec<String>, Vec<Vec<String>>), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| CliError::Data(format!("{} is empty", path.display())))?
        .split(',')
        .map(str::to_owned)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect();
    Ok((header, rows))
}

pub fn parse_f64(field: &str, context: &str) -> Result<f64, CliError> {
    match field {
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => field
            .parse()
            .map_err(|e| CliError::Data(format!("bad float '{field}' in {context}: {e}"))),
    }
}

pub fn parse_usize(field: &str, context: &str) -> Result<usize, CliError> {
    field
        .parse()
        .map_err(|e| CliError::Data(format!("bad integer '{field}' in {context}: {e}")))
}
