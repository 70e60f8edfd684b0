//! Plain-text interchange format for density matrices and state vectors.
//!
//! ```text
//! # two qubits, maximally mixed
//! 2 2
//! 0.25 0   0 0     0 0     0 0
//! 0 0      0.25 0  0 0     0 0
//! 0 0      0 0     0.25 0  0 0
//! 0 0      0 0     0 0     0.25 0
//! ```
//!
//! * `#` starts a comment that runs to the end of the line; blank lines are
//!   ignored.
//! * The first content line is the header: the subsystem dimensions
//!   (integers `>= 2`), optionally preceded by the tag `vec`.
//! * A matrix body is `d_tot` rows of `d_tot` entries, a vector body is
//!   `d_tot` rows of one entry, where `d_tot` is the product of the
//!   dimensions. An entry is two numbers, real then imaginary part.
//!
//! Writers emit 17 significant digits, so `parse(format(x))` reproduces
//! every entry exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use qcorr_core::{ComplexMatrix, DensityMatrix, C64};

use crate::{Error, Result};

/// Which kind of body the header announced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Matrix,
    Vector,
}

/// Parsed but unvalidated file contents.
#[derive(Debug, Clone, PartialEq)]
pub struct RawData {
    pub kind: Kind,
    pub dims: Vec<usize>,
    /// Row-major entries: `d_tot^2` for a matrix, `d_tot` for a vector.
    pub entries: Vec<C64>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_header(line_no: usize, line: &str) -> Result<(Kind, Vec<usize>)> {
    let mut tokens = line.split_whitespace().peekable();
    let kind = if tokens.peek() == Some(&"vec") {
        tokens.next();
        Kind::Vector
    } else {
        Kind::Matrix
    };
    let dims = tokens
        .map(|t| match t.parse::<usize>() {
            Ok(d) if d >= 2 => Ok(d),
            Ok(d) => Err(Error::parse(line_no, format!("subsystem dimension {d} is below 2"))),
            Err(_) => Err(Error::parse(
                line_no,
                format!("malformed header: `{t}` is not a subsystem dimension"),
            )),
        })
        .collect::<Result<Vec<_>>>()?;
    if dims.is_empty() {
        return Err(Error::parse(line_no, "malformed header: no subsystem dimensions"));
    }
    Ok((kind, dims))
}

fn total_dim(line_no: usize, dims: &[usize]) -> Result<usize> {
    dims.iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .filter(|&d| d <= 1 << 16)
        .ok_or_else(|| Error::parse(line_no, "total dimension is too large"))
}

fn dims_text(dims: &[usize]) -> String {
    dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_number(line_no: usize, token: &str) -> Result<f64> {
    match token.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        Ok(_) => Err(Error::parse(line_no, format!("non-finite value `{token}`"))),
        Err(_) => Err(Error::parse(line_no, format!("non-numeric token `{token}`"))),
    }
}

/// Parses either kind of file without checking any physical invariant.
pub fn parse_raw(text: &str) -> Result<RawData> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "empty file: missing header"))?;
    let (kind, dims) = parse_header(header_line, header)?;
    let d = total_dim(header_line, &dims)?;
    let per_row = match kind {
        Kind::Matrix => d,
        Kind::Vector => 1,
    };

    let mut entries = Vec::with_capacity(d * per_row);
    let mut rows = 0;
    let mut last_line = header_line;
    for (line_no, line) in lines {
        last_line = line_no;
        if rows == d {
            return Err(Error::parse(
                line_no,
                format!("extra row: dims {} give {d} rows", dims_text(&dims)),
            ));
        }
        let numbers = line
            .split_whitespace()
            .map(|t| parse_number(line_no, t))
            .collect::<Result<Vec<_>>>()?;
        if numbers.len() % 2 != 0 {
            return Err(Error::parse(
                line_no,
                format!("odd number of values ({}); entries are `re im` pairs", numbers.len()),
            ));
        }
        if numbers.len() / 2 != per_row {
            return Err(Error::parse(
                line_no,
                format!(
                    "row has {} entries, dims {} need {per_row}",
                    numbers.len() / 2,
                    dims_text(&dims)
                ),
            ));
        }
        entries.extend(numbers.chunks_exact(2).map(|p| C64::new(p[0], p[1])));
        rows += 1;
    }
    if rows != d {
        return Err(Error::parse(
            last_line,
            format!("file ends after {rows} rows, dims {} need {d}", dims_text(&dims)),
        ));
    }
    Ok(RawData { kind, dims, entries })
}

/// Parses a matrix file and returns its dimensions and entries, unvalidated.
pub fn parse_matrix(text: &str) -> Result<(Vec<usize>, ComplexMatrix)> {
    let raw = parse_raw(text)?;
    if raw.kind != Kind::Matrix {
        return Err(Error::parse(1, "expected a matrix, found a `vec` header"));
    }
    let d: usize = raw.dims.iter().product();
    let mat = ComplexMatrix::from_vec(d, d, raw.entries)?;
    Ok((raw.dims, mat))
}

/// Parses and validates a density matrix.
pub fn parse_density(text: &str) -> Result<DensityMatrix> {
    let (dims, mat) = parse_matrix(text)?;
    Ok(DensityMatrix::new(mat, dims)?)
}

/// Parses a state vector (`vec` header). Normalization is not checked here.
pub fn parse_vector(text: &str) -> Result<(Vec<usize>, Vec<C64>)> {
    let raw = parse_raw(text)?;
    if raw.kind != Kind::Vector {
        return Err(Error::parse(1, "expected a `vec` header"));
    }
    Ok((raw.dims, raw.entries))
}

fn push_entry(out: &mut String, z: C64) {
    let _ = write!(out, "{:.16e} {:.16e}", z.re, z.im);
}

pub fn format_matrix(mat: &ComplexMatrix, dims: &[usize]) -> String {
    let mut out = dims_text(dims);
    out.push('\n');
    for i in 0..mat.rows() {
        for j in 0..mat.cols() {
            if j > 0 {
                out.push_str("  ");
            }
            push_entry(&mut out, mat[(i, j)]);
        }
        out.push('\n');
    }
    out
}

pub fn format_density(rho: &DensityMatrix) -> String {
    format_matrix(rho.matrix(), rho.dims())
}

pub fn format_vector(psi: &[C64], dims: &[usize]) -> String {
    let mut out = format!("vec {}\n", dims_text(dims));
    for &z in psi {
        push_entry(&mut out, z);
        out.push('\n');
    }
    out
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn load_density(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    parse_density(&read_text(path.as_ref())?)
}

pub fn save_density(rho: &DensityMatrix, path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &format_density(rho))
}

pub fn load_vector(path: impl AsRef<Path>) -> Result<(Vec<usize>, Vec<C64>)> {
    parse_vector(&read_text(path.as_ref())?)
}

pub fn save_vector(psi: &[C64], dims: &[usize], path: impl AsRef<Path>) -> Result<()> {
    write_text(path.as_ref(), &format_vector(psi, dims))
}
