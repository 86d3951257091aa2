//! CSV artifacts with fixed headers and round-trip decimal text.

use crate::error::{Error, Result};
use rug::{Complex, Float};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// A header row and rows of decimal text.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvTable {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&'static str]) -> Self {
        CsvTable { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn header(&self) -> &[&'static str] {
        &self.header
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    /// Appends a row; its length must match the header.
    pub fn push(&mut self, row: Vec<String>) -> Result<()> {
        if row.len() != self.header.len() {
            return Err(Error::Usage(format!(
                "row has {} fields, header has {}",
                row.len(),
                self.header.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    /// Writes `dir/name` and returns the path.
    pub fn write(&self, dir: &Path, name: &str) -> Result<PathBuf> {
        write_text(dir, name, &self.to_text())
    }
}

/// Creates `dir` if needed and writes `dir/name`.
pub fn write_text(dir: &Path, name: &str, text: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, text)?;
    Ok(path)
}

/// Shortest decimal text that parses back to the same double.
pub fn num(x: f64) -> String {
    format!("{x:e}")
}

/// All significant decimal digits of an extended-precision number.
pub fn big(x: &Float) -> String {
    x.to_string_radix(10, None)
}

pub fn big_re_im(z: &Complex) -> [String; 2] {
    [big(z.real()), big(z.imag())]
}

/// `key=value` lines.
pub fn key_values(pairs: &[(&str, String)]) -> String {
    let mut s = String::new();
    for (k, v) in pairs {
        let _ = writeln!(s, "{k}={v}");
    }
    s
}
