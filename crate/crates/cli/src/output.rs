use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use catlab::{Error, Result};

/// Fixed 12-decimal rendering; negative zero prints as zero.
pub fn real(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

pub fn reals(xs: &[f64]) -> String {
    xs.iter().map(|&x| real(x)).collect::<Vec<_>>().join(" ")
}

/// Aligned `key: value` report.
#[derive(Default)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn line(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.lines.push((key.into(), value.into()));
        self
    }

    pub fn real(&mut self, key: impl Into<String>, x: f64) -> &mut Self {
        self.line(key, real(x))
    }

    pub fn render(&self) -> String {
        let width = self.lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        out
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
