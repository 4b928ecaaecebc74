//! Dense Matrix Market reader and writer.
//!
//! Reads `array` and `coordinate` files with `real`, `integer`, `complex` or
//! (coordinate only) `pattern` fields and `general`, `symmetric`,
//! `skew-symmetric` or `hermitian` symmetry. Symmetric storage holds the lower
//! triangle; the reader mirrors it, conjugating for `hermitian`.

use std::fs;
use std::path::Path;

use super::IoError;
use crate::linalg::{CMatrix, Complex64};

/// Largest accepted row or column count.
pub const MAX_DIMENSION: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layout {
    Array,
    Coordinate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Integer,
    Complex,
    Pattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    SkewSymmetric,
    Hermitian,
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<CMatrix, IoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| IoError::io(path, e))?;
    parse_matrix_market(&text)
}

fn parse_error(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_matrix_market(text: &str) -> Result<CMatrix, IoError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| parse_error(1, "empty file"))?;
    let (layout, field, symmetry) = parse_header(header)?;

    // Skip comments and blank lines up to the size line.
    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (size_line, size) = body.next().ok_or_else(|| parse_error(1, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| parse_error(size_line, format!("bad size entry `{t}`"))))
        .collect::<Result<_, _>>()?;
    let expected = if layout == Layout::Array { 2 } else { 3 };
    if dims.len() != expected {
        return Err(parse_error(size_line, format!("size line needs {expected} integers")));
    }
    let (rows, cols) = (dims[0], dims[1]);
    if rows > MAX_DIMENSION || cols > MAX_DIMENSION {
        return Err(IoError::SizeOverflow {
            rows,
            cols,
            limit: MAX_DIMENSION,
        });
    }
    if rows == 0 || cols == 0 {
        return Err(parse_error(size_line, "matrix dimensions must be positive"));
    }
    if symmetry != Symmetry::General && rows != cols {
        return Err(parse_error(size_line, "symmetric storage needs a square matrix"));
    }

    let mut tokens = body.flat_map(|(line, l)| l.split_whitespace().map(move |t| (line, t)));
    let mut m = CMatrix::zeros(rows, cols);
    match layout {
        Layout::Array => {
            if field == Field::Pattern {
                return Err(parse_error(1, "pattern field needs coordinate layout"));
            }
            for j in 0..cols {
                let first_row = match symmetry {
                    Symmetry::General => 0,
                    Symmetry::SkewSymmetric => j + 1,
                    Symmetry::Symmetric | Symmetry::Hermitian => j,
                };
                for i in first_row..rows {
                    let z = next_value(&mut tokens, field)?;
                    store(&mut m, i, j, z, symmetry);
                }
            }
        }
        Layout::Coordinate => {
            let nnz = dims[2];
            if nnz > rows * cols {
                return Err(parse_error(size_line, "more entries than matrix positions"));
            }
            let mut seen = vec![false; rows * cols];
            for _ in 0..nnz {
                let (line, i) = next_index(&mut tokens, rows)?;
                let (_, j) = next_index(&mut tokens, cols)?;
                let z = if field == Field::Pattern {
                    Complex64::new(1.0, 0.0)
                } else {
                    next_value(&mut tokens, field)?
                };
                match symmetry {
                    Symmetry::General => {}
                    Symmetry::SkewSymmetric if i <= j => {
                        return Err(parse_error(line, "skew-symmetric entries must lie below the diagonal"))
                    }
                    _ if i < j => return Err(parse_error(line, "symmetric entries must lie on or below the diagonal")),
                    _ => {}
                }
                if std::mem::replace(&mut seen[i * cols + j], true) {
                    return Err(parse_error(line, format!("duplicate entry ({}, {})", i + 1, j + 1)));
                }
                store(&mut m, i, j, z, symmetry);
            }
        }
    }
    if let Some((line, t)) = tokens.next() {
        return Err(parse_error(line, format!("unexpected trailing token `{t}`")));
    }
    Ok(m)
}

fn parse_header(header: &str) -> Result<(Layout, Field, Symmetry), IoError> {
    let words: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    let words: Vec<&str> = words.iter().map(String::as_str).collect();
    let [banner, object, layout, field, symmetry] = words[..] else {
        return Err(parse_error(1, "header must have five words"));
    };
    if banner != "%%matrixmarket" {
        return Err(parse_error(1, "missing %%MatrixMarket banner"));
    }
    if object != "matrix" {
        return Err(parse_error(1, format!("unsupported object `{object}`")));
    }
    let layout = match layout {
        "array" => Layout::Array,
        "coordinate" => Layout::Coordinate,
        other => return Err(parse_error(1, format!("unsupported format `{other}`"))),
    };
    let field = match field {
        "real" => Field::Real,
        "integer" => Field::Integer,
        "complex" => Field::Complex,
        "pattern" => Field::Pattern,
        other => return Err(parse_error(1, format!("unsupported field `{other}`"))),
    };
    let symmetry = match symmetry {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "skew-symmetric" => Symmetry::SkewSymmetric,
        "hermitian" => Symmetry::Hermitian,
        other => return Err(parse_error(1, format!("unsupported symmetry `{other}`"))),
    };
    if field == Field::Pattern && symmetry == Symmetry::Hermitian {
        return Err(parse_error(1, "pattern matrices cannot be hermitian"));
    }
    Ok((layout, field, symmetry))
}

fn store(m: &mut CMatrix, i: usize, j: usize, z: Complex64, symmetry: Symmetry) {
    m[(i, j)] = z;
    if i != j {
        m[(j, i)] = match symmetry {
            Symmetry::General => return,
            Symmetry::Symmetric => z,
            Symmetry::SkewSymmetric => -z,
            Symmetry::Hermitian => z.conj(),
        };
    }
}

fn next_token<'a>(tokens: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<(usize, &'a str), IoError> {
    tokens.next().ok_or_else(|| parse_error(0, "unexpected end of data"))
}

fn next_real<'a>(tokens: &mut impl Iterator<Item = (usize, &'a str)>, field: Field) -> Result<f64, IoError> {
    let (line, t) = next_token(tokens)?;
    let x = if field == Field::Integer {
        t.parse::<i64>().map(|v| v as f64).ok()
    } else {
        t.parse::<f64>().ok()
    };
    match x {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(parse_error(line, format!("bad numeric entry `{t}`"))),
    }
}

fn next_value<'a>(tokens: &mut impl Iterator<Item = (usize, &'a str)>, field: Field) -> Result<Complex64, IoError> {
    let re = next_real(tokens, field)?;
    let im = if field == Field::Complex { next_real(tokens, field)? } else { 0.0 };
    Ok(Complex64::new(re, im))
}

fn next_index<'a>(tokens: &mut impl Iterator<Item = (usize, &'a str)>, bound: usize) -> Result<(usize, usize), IoError> {
    let (line, t) = next_token(tokens)?;
    match t.parse::<usize>() {
        Ok(i) if (1..=bound).contains(&i) => Ok((line, i - 1)),
        _ => Err(parse_error(line, format!("index `{t}` outside 1..={bound}"))),
    }
}

/// `m` as `array complex general`, column-major, 17 significant digits.
pub fn render_matrix_market(m: &CMatrix) -> String {
    let mut out = String::from("%%MatrixMarket matrix array complex general\n");
    out.push_str(&format!("{} {}\n", m.rows(), m.cols()));
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let z = m[(i, j)];
            out.push_str(&format!("{:.16e} {:.16e}\n", z.re, z.im));
        }
    }
    out
}

pub fn write_matrix_market(path: impl AsRef<Path>, m: &CMatrix) -> Result<(), IoError> {
    let path = path.as_ref();
    fs::write(path, render_matrix_market(m)).map_err(|e| IoError::io(path, e))
}
