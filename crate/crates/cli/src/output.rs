//! Deterministic file writers: versioned JSON and 17-significant-digit CSV.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

pub const SCHEMA: &str = "cartanchan/1";

/// Round-trip-exact decimal rendering (17 significant digits); negative
/// zeros print as zero.
pub fn fmt17(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

pub fn ensure_dir(dir: &Path) -> Result<(), String> {
    fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, payload: &T) -> Result<PathBuf, String> {
    ensure_dir(dir)?;
    let path = dir.join(name);
    let mut body = serde_json::to_string_pretty(payload)
        .map_err(|e| format!("serialization failed for {name}: {e}"))?;
    body.push('\n');
    fs::write(&path, body).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(path)
}

/// One "alpha,beta" CSV file per polygon or point list.
pub fn write_points_csv(dir: &Path, name: &str, points: &[(f64, f64)]) -> Result<PathBuf, String> {
    ensure_dir(dir)?;
    let path = dir.join(name);
    let mut file =
        fs::File::create(&path).map_err(|e| format!("cannot create {}: {e}", path.display()))?;
    let mut body = String::from("alpha,beta\n");
    for &(a, b) in points {
        body.push_str(&fmt17(a));
        body.push(',');
        body.push_str(&fmt17(b));
        body.push('\n');
    }
    file.write_all(body.as_bytes())
        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(path)
}
