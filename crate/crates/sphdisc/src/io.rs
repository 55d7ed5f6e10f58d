//! Matrix text format and CSV formatting helpers.
//!
//! Matrix files: line 1 holds `n`, the next n lines hold n whitespace
//! separated decimal reals each, row by row. Columns are the instance
//! vectors. Anything after `#` on a line is a comment.

use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Format a float with 17 significant digits (round-trips f64 exactly).
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        }
    } else {
        format!("{:.16e}", x)
    }
}

/// RFC 4180 quoting: wrap and double-up quotes only when the field needs it.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') || s.contains('\r') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

/// Parse the matrix text format.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = text
        .lines()
        .map(strip_comment)
        .map(str::trim)
        .filter(|l| !l.is_empty());

    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::Parse(format!("expected dimension on first line, got `{header}`")))?;
    if n < 1 {
        return Err(Error::Parse("dimension must be at least 1".into()));
    }

    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {n} rows, found {i}")))?;
        let row: Vec<f64> = line
            .split_whitespace()
            .map(|tok| {
                let v: f64 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad number `{tok}` in row {i}")))?;
                if !v.is_finite() {
                    return Err(Error::Parse(format!("non-finite entry `{tok}` in row {i}")));
                }
                Ok(v)
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::Parse(format!(
                "row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        rows.push(row);
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Parse(format!(
            "unexpected trailing content `{extra}`"
        )));
    }
    Ok(Matrix::from_rows(&rows))
}

pub fn read_matrix_file(path: &Path) -> Result<Matrix> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix(&text)
}

/// Render a matrix in the text format (row by row, full precision).
pub fn format_matrix(w: &Matrix) -> String {
    let n = w.n();
    let mut out = String::new();
    out.push_str(&n.to_string());
    out.push('\n');
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| fmt_f64(w.get(i, j))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
