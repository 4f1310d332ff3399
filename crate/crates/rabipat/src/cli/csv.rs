//! Deterministic CSV emission and ingestion.
//!
//! Floats are written with 17 significant digits (`{:.16e}`), which
//! round-trips `f64` exactly, so re-reading an emitted file and
//! re-emitting it reproduces the bytes. A leading block of `#` comment
//! lines carries tool version, config hash, and the active errata
//! entries.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

/// One CSV cell. Integers and text round-trip verbatim; floats through
/// the canonical 17-significant-digit form.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
}

impl Cell {
    pub fn bool(v: bool) -> Self {
        Cell::Text(if v { "true" } else { "false" }.into())
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Int(i) => Some(*i as f64),
            Cell::Num(x) => Some(*x),
            Cell::Text(_) => None,
        }
    }
}

/// Canonical float formatting: 17 significant digits, `.` decimal point,
/// no thousands separators.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:.16e}")
    }
}

fn fmt_cell(cell: &Cell) -> String {
    match cell {
        Cell::Int(i) => i.to_string(),
        Cell::Num(x) => fmt_f64(*x),
        Cell::Text(s) => s.clone(),
    }
}

fn parse_cell(raw: &str) -> Cell {
    if raw == "NaN" || raw == "inf" || raw == "-inf" {
        let v = match raw {
            "NaN" => f64::NAN,
            "inf" => f64::INFINITY,
            _ => f64::NEG_INFINITY,
        };
        return Cell::Num(v);
    }
    let is_int = {
        let body = raw.strip_prefix('-').unwrap_or(raw);
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if is_int {
        if let Ok(i) = raw.parse::<i64>() {
            return Cell::Int(i);
        }
    }
    if (raw.contains('e') || raw.contains('.')) && !raw.contains(' ') {
        if let Ok(x) = raw.parse::<f64>() {
            return Cell::Num(x);
        }
    }
    Cell::Text(raw.to_string())
}

/// A parsed or assembled CSV table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Comment lines, without the leading `# `.
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(comments: Vec<String>, header: Vec<String>) -> Self {
        Self {
            comments,
            header,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Index of a named column.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{}", self.header.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(fmt_cell).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(self.render().as_bytes())
    }

    pub fn write_file(&self, path: &Path) -> io::Result<()> {
        fs::write(path, self.render())
    }

    pub fn read_file(path: &Path) -> io::Result<Self> {
        let text = fs::read_to_string(path)?;
        Ok(Self::parse(&text))
    }

    pub fn parse(text: &str) -> Self {
        let mut comments = Vec::new();
        let mut header: Vec<String> = Vec::new();
        let mut rows = Vec::new();
        for line in text.lines() {
            if let Some(c) = line.strip_prefix("# ") {
                comments.push(c.to_string());
            } else if let Some(c) = line.strip_prefix('#') {
                comments.push(c.to_string());
            } else if header.is_empty() {
                header = line.split(',').map(|s| s.to_string()).collect();
            } else if !line.is_empty() {
                rows.push(line.split(',').map(parse_cell).collect());
            }
        }
        Self {
            comments,
            header,
            rows,
        }
    }
}

/// FNV-1a 64-bit hash, used to stamp output files with the config they
/// came from.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
