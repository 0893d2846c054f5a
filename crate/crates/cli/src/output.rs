//! CSV tables and plot scripts.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::error::Result;

/// Floating-point cell with 17 significant digits.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// In-memory CSV table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Table {
            header: header.iter().map(|h| h.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Prepends fixed `(name, value)` columns to every row.
    pub fn with_labels(self, labels: &[(String, f64)]) -> Table {
        let mut header: Vec<String> = labels.iter().map(|(k, _)| k.clone()).collect();
        header.extend(self.header);
        let prefix: Vec<String> = labels.iter().map(|(_, v)| float(*v)).collect();
        let rows = self
            .rows
            .into_iter()
            .map(|r| prefix.iter().cloned().chain(r).collect())
            .collect();
        Table { header, rows }
    }

    /// Appends the rows of a table with the same header.
    pub fn append(&mut self, other: Table) {
        if self.header.is_empty() && self.rows.is_empty() {
            self.header = other.header.clone();
        }
        debug_assert_eq!(self.header, other.header);
        self.rows.extend(other.rows);
    }

    /// Index of a column by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.header.join(","));
        for r in &self.rows {
            let _ = writeln!(out, "{}", r.join(","));
        }
        out
    }
}

/// A named output file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub file_name: String,
    pub contents: String,
}

impl Artifact {
    pub fn csv(stem: &str, table: &Table) -> Self {
        Artifact {
            file_name: format!("{stem}.csv"),
            contents: table.to_csv(),
        }
    }
}

/// Writes artifacts into `dir`, or concatenates them to stdout without one.
pub fn emit(artifacts: &[Artifact], dir: Option<&Path>) -> Result<()> {
    match dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            for a in artifacts {
                fs::write(dir.join(&a.file_name), &a.contents)?;
            }
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            for (i, a) in artifacts.iter().enumerate() {
                if artifacts.len() > 1 {
                    if i > 0 {
                        writeln!(out)?;
                    }
                    writeln!(out, "# {}", a.file_name)?;
                }
                out.write_all(a.contents.as_bytes())?;
            }
        }
    }
    Ok(())
}
