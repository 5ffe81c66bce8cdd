use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::{ComplexMatrix, C64};

/// Parses one matrix entry: `re`, `re+imj`, `re-imj`, `imj` or `j`-only forms such as `-j`.
pub fn parse_entry(tok: &str) -> Result<C64> {
    let bad = || Error::Parse(format!("malformed entry '{tok}'"));
    let t = tok.trim();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['j', 'i']) else {
        return Ok(C64::new(t.parse().map_err(|_| bad())?, 0.0));
    };
    // Split at the last sign that is not part of an exponent and not the leading character.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |s: &str| -> Result<f64> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse().map_err(|_| bad()),
        }
    };
    match split {
        Some(i) => {
            let re: f64 = body[..i].parse().map_err(|_| bad())?;
            Ok(C64::new(re, imag(&body[i..])?))
        }
        None => Ok(C64::new(0.0, imag(body)?)),
    }
}

/// Parses whitespace-separated rows, one per line. Blank lines and `#` comments are skipped.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        rows.push(line.split_whitespace().map(parse_entry).collect::<Result<_>>()?);
    }
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("matrix rows must be nonempty and of equal length".into()));
    }
    let n = rows.len();
    ComplexMatrix::new(n, cols, rows.into_iter().flatten().collect())
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_matrix(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn entry(z: C64) -> String {
    format!("{}{}j", num(z.re), if z.im.is_sign_negative() { num(z.im) } else { format!("+{}", num(z.im)) })
}

/// Inverse of [`parse_matrix`].
pub fn format_matrix(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| entry(m[(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// 17 significant digits, enough to round-trip any double.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

/// Minimal CSV writer; fields never contain separators.
#[derive(Debug, Default)]
pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self { out: format!("{}\n", header.join(",")) }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.out.push_str(&fields.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}
