//! Deterministic CSV emission, run manifest, and number formatting.
//!
//! CSV layout: `# key=value` metadata comments, one column-header row,
//! then data rows. Numbers are printed with 17 significant digits, which
//! round-trips every f64 exactly, so reruns of the same scenario produce
//! byte-identical files.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::errors::CliError;
use lrising::{CoherenceSeries64, FrequencyHistogram64, Normalization};

/// 17 significant digits; round-trip exact for f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Ordered key=value pairs; insertion order is preserved everywhere so
/// output bytes never depend on hash maps.
pub type Params = Vec<(String, String)>;

pub fn param(key: &str, value: impl ToString) -> (String, String) {
    (key.to_string(), value.to_string())
}

fn metadata_block(params: &Params) -> String {
    let mut s = String::new();
    for (k, v) in params {
        s.push_str(&format!("# {k}={v}\n"));
    }
    s
}

/// Series CSV: columns `t,C` (or `t,C_norm` when normalized).
pub fn series_csv(params: &Params, series: &CoherenceSeries64) -> String {
    let mut s = metadata_block(params);
    s.push_str(if series.normalized() {
        "t,C_norm\n"
    } else {
        "t,C\n"
    });
    for (t, v) in series.times().iter().zip(series.values()) {
        s.push_str(&fmt_f64(*t));
        s.push(',');
        s.push_str(&fmt_f64(*v));
        s.push('\n');
    }
    s
}

/// Histogram CSV: columns `bin_left,bin_right,mass`.
pub fn histogram_csv(params: &Params, hist: &FrequencyHistogram64) -> String {
    let mut s = metadata_block(params);
    s.push_str("bin_left,bin_right,mass\n");
    let edges = hist.bin_edges();
    for (k, mass) in hist.mass().iter().enumerate() {
        s.push_str(&fmt_f64(edges[k]));
        s.push(',');
        s.push_str(&fmt_f64(edges[k + 1]));
        s.push(',');
        s.push_str(&fmt_f64(*mass));
        s.push('\n');
    }
    s
}

/// Generic small-table CSV with premade cells.
pub fn table_csv(params: &Params, header: &str, rows: &[Vec<String>]) -> String {
    let mut s = metadata_block(params);
    s.push_str(header);
    s.push('\n');
    for row in rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

pub fn norm_label(norm: Normalization) -> &'static str {
    match norm {
        Normalization::UnitSum => "unit-sum",
        Normalization::UnitMax => "unit-max",
    }
}

/// Collects every written file plus its parameters and content hash, and
/// lands them in `manifest.txt`. A scenario is reconstructable from the
/// manifest alone.
pub struct OutputWriter {
    dir: PathBuf,
    header: Params,
    files: Vec<(String, String, Params)>,
}

impl OutputWriter {
    pub fn create(dir: &Path, header: Params) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            header,
            files: Vec::new(),
        })
    }

    /// Write one output file and record it in the manifest.
    pub fn write(&mut self, name: &str, contents: &str, params: Params) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        let digest = Sha256::digest(contents.as_bytes());
        let mut hex = String::with_capacity(64);
        for byte in digest {
            hex.push_str(&format!("{byte:02x}"));
        }
        self.files.push((name.to_string(), hex, params));
        println!("wrote {}", path.display());
        Ok(())
    }

    /// Emit `manifest.txt` listing every file with its parameters.
    pub fn finish(self) -> Result<(), CliError> {
        let mut s = String::from("# lrising run manifest\n");
        for (k, v) in &self.header {
            s.push_str(&format!("{k}={v}\n"));
        }
        for (name, hash, params) in &self.files {
            s.push_str(&format!("\n[file {name}]\nsha256={hash}\n"));
            for (k, v) in params {
                s.push_str(&format!("{k}={v}\n"));
            }
        }
        let path = self.dir.join("manifest.txt");
        fs::write(&path, s).map_err(|e| CliError::io(&path, e))?;
        println!("wrote {}", path.display());
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits_round_trip() {
        for x in [0.0, 1.0, 0.1, std::f64::consts::PI, 1.0 / 3.0, 1e-300, -42.5] {
            let printed = fmt_f64(x);
            let back: f64 = printed.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{printed}");
        }
    }
}
