//! Matrix file formats: Matrix Market (`array` or `coordinate`, real or
//! integer, general) and plain dense text (first line `n`, then `n` rows of
//! whitespace-separated values). Indices in files are 1-based.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;
use thiserror::Error;

use crate::matrix::MMatrix;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unsupported Matrix Market header: {0}")]
    Header(String),
    #[error("matrix is {rows}x{cols}, expected square with n >= 1")]
    NotSquare { rows: usize, cols: usize },
    #[error("unknown format {0:?} (expected mtx or txt)")]
    UnknownFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    MatrixMarket,
    Dense,
}

impl Format {
    /// `.mtx` is Matrix Market, anything else dense text.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("mtx") => Format::MatrixMarket,
            _ => Format::Dense,
        }
    }

    pub fn from_name(name: &str) -> Result<Format, ParseError> {
        match name {
            "mtx" | "matrix-market" => Ok(Format::MatrixMarket),
            "txt" | "dense" => Ok(Format::Dense),
            other => Err(ParseError::UnknownFormat(other.to_string())),
        }
    }
}

pub fn read_matrix(path: &Path, format: Option<Format>) -> Result<MMatrix, ParseError> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix(&text, format.unwrap_or_else(|| Format::from_path(path)))
}

pub fn parse_matrix(text: &str, format: Format) -> Result<MMatrix, ParseError> {
    let m = match format {
        Format::MatrixMarket => parse_matrix_market(text)?,
        Format::Dense => parse_dense(text)?,
    };
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(ParseError::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(MMatrix::new(m).expect("checked square"))
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("bad {what} {tok:?}")))
}

fn parse_matrix_market(text: &str) -> Result<DMatrix<f64>, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| syntax(1, "empty file"))?;
    let fields: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if fields.len() != 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
        return Err(ParseError::Header(header.to_string()));
    }
    let coordinate = match fields[2].as_str() {
        "coordinate" => true,
        "array" => false,
        _ => return Err(ParseError::Header(header.to_string())),
    };
    if !matches!(fields[3].as_str(), "real" | "integer") || fields[4] != "general" {
        return Err(ParseError::Header(header.to_string()));
    }

    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (ln, size) = body.next().ok_or_else(|| syntax(2, "missing size line"))?;
    let mut tok = size.split_whitespace();
    let rows: usize = number(tok.next(), ln, "row count")?;
    let cols: usize = number(tok.next(), ln, "column count")?;
    let mut m = DMatrix::zeros(rows, cols);

    if coordinate {
        let nnz: usize = number(tok.next(), ln, "entry count")?;
        let mut seen = 0;
        for (ln, line) in body {
            let mut tok = line.split_whitespace();
            let i: usize = number(tok.next(), ln, "row index")?;
            let j: usize = number(tok.next(), ln, "column index")?;
            let v: f64 = number(tok.next(), ln, "value")?;
            if i == 0 || j == 0 || i > rows || j > cols {
                return Err(syntax(ln, format!("index ({i}, {j}) out of range")));
            }
            m[(i - 1, j - 1)] += v;
            seen += 1;
        }
        if seen != nnz {
            return Err(syntax(ln, format!("declared {nnz} entries, found {seen}")));
        }
    } else {
        // Column-major.
        let mut k = 0;
        for (ln, line) in body {
            for t in line.split_whitespace() {
                if k >= rows * cols {
                    return Err(syntax(ln, "too many values"));
                }
                m[(k % rows, k / rows)] = number(Some(t), ln, "value")?;
                k += 1;
            }
        }
        if k != rows * cols {
            return Err(syntax(ln, format!("expected {} values, found {k}", rows * cols)));
        }
    }
    Ok(m)
}

fn parse_dense(text: &str) -> Result<DMatrix<f64>, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });
    let (ln, first) = lines.next().ok_or_else(|| syntax(1, "empty file"))?;
    let n: usize = number(Some(first.trim()), ln, "order")?;
    let mut m = DMatrix::zeros(n, n);
    let mut r = 0;
    for (ln, line) in lines {
        if r >= n {
            return Err(syntax(ln, "more rows than the declared order"));
        }
        let vals: Vec<f64> = line
            .split_whitespace()
            .map(|t| number(Some(t), ln, "value"))
            .collect::<Result<_, _>>()?;
        if vals.len() != n {
            return Err(syntax(ln, format!("expected {n} values, found {}", vals.len())));
        }
        for (c, v) in vals.into_iter().enumerate() {
            m[(r, c)] = v;
        }
        r += 1;
    }
    if r != n {
        return Err(syntax(ln, format!("expected {n} rows, found {r}")));
    }
    Ok(m)
}

/// Matrix Market `array real general`; values use the shortest representation
/// that parses back to the same `f64`.
pub fn to_matrix_market(m: &MMatrix) -> String {
    let n = m.n();
    let mut s = String::from("%%MatrixMarket matrix array real general\n");
    let _ = writeln!(s, "{n} {n}");
    for j in 0..n {
        for i in 0..n {
            let _ = writeln!(s, "{:?}", m.get(i, j));
        }
    }
    s
}

pub fn to_dense_text(m: &MMatrix) -> String {
    let n = m.n();
    let mut s = format!("{n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format!("{:?}", m.get(i, j))).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn write_matrix(path: &Path, m: &MMatrix, format: Format) -> std::io::Result<()> {
    let text = match format {
        Format::MatrixMarket => to_matrix_market(m),
        Format::Dense => to_dense_text(m),
    };
    std::fs::write(path, text)
}
