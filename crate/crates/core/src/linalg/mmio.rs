//! Matrix Market files (coordinate and array) and plain vector files.
//!
//! Vector files start with a `%%vector <n>` line (optionally followed by
//! `complex`) and hold one value per line, written as `re` or `re im`.

use std::fmt::Write as _;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use super::matrix::ComplexMatrix;
use crate::{Error, Result, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Coordinate,
    Array,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Complex,
    Integer,
    Pattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
    SkewSymmetric,
    Hermitian,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn num(tok: Option<&str>, line: usize) -> Result<f64> {
    let t = tok.ok_or_else(|| perr(line, "missing value"))?;
    t.parse::<f64>().map_err(|_| perr(line, format!("bad number '{t}'")))
}

fn index(tok: Option<&str>, line: usize, max: usize) -> Result<usize> {
    let t = tok.ok_or_else(|| perr(line, "missing index"))?;
    let v: usize = t.parse().map_err(|_| perr(line, format!("bad index '{t}'")))?;
    if v == 0 || v > max {
        return Err(perr(line, format!("index {v} out of range 1..={max}")));
    }
    Ok(v - 1)
}

pub fn read_matrix_market(reader: impl Read) -> Result<ComplexMatrix> {
    let mut lines = BufReader::new(reader).lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| perr(1, "empty file"))?;
    let header = header?;
    let toks: Vec<String> = header.split_whitespace().map(|s| s.to_ascii_lowercase()).collect();
    if toks.len() != 5 || toks[0] != "%%matrixmarket" || toks[1] != "matrix" {
        return Err(perr(1, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'"));
    }
    let format = match toks[2].as_str() {
        "coordinate" => Format::Coordinate,
        "array" => Format::Array,
        f => return Err(perr(1, format!("unknown format '{f}'"))),
    };
    let field = match toks[3].as_str() {
        "real" | "double" => Field::Real,
        "complex" => Field::Complex,
        "integer" => Field::Integer,
        "pattern" => Field::Pattern,
        f => return Err(perr(1, format!("unknown field '{f}'"))),
    };
    let symmetry = match toks[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        "skew-symmetric" => Symmetry::SkewSymmetric,
        "hermitian" => Symmetry::Hermitian,
        s => return Err(perr(1, format!("unknown symmetry '{s}'"))),
    };
    if format == Format::Array && field == Field::Pattern {
        return Err(perr(1, "pattern field requires coordinate format"));
    }
    let mut body = lines.filter_map(|(i, l)| match l {
        Ok(l) => {
            let t = l.trim().to_string();
            if t.is_empty() || t.starts_with('%') {
                None
            } else {
                Some(Ok((i + 1, t)))
            }
        }
        Err(e) => Some(Err(Error::from(e))),
    });
    let (sl, size) = body.next().ok_or_else(|| perr(2, "missing size line"))??;
    let sizes: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| perr(sl, format!("bad size '{t}'"))))
        .collect::<Result<_>>()?;
    let (rows, cols) = match (format, sizes.as_slice()) {
        (Format::Coordinate, [r, c, _]) | (Format::Array, [r, c]) => (*r, *c),
        _ => return Err(perr(sl, "malformed size line")),
    };
    if rows == 0 || cols == 0 {
        return Err(perr(sl, "empty matrix"));
    }
    if symmetry != Symmetry::General && rows != cols {
        return Err(perr(sl, "symmetric storage requires a square matrix"));
    }
    let mut m = ComplexMatrix::zeros(rows, cols);
    let mut put = |i: usize, j: usize, v: C64| {
        m[(i, j)] = v;
        if i != j {
            match symmetry {
                Symmetry::General => {}
                Symmetry::Symmetric => m[(j, i)] = v,
                Symmetry::SkewSymmetric => m[(j, i)] = -v,
                Symmetry::Hermitian => m[(j, i)] = v.conj(),
            }
        }
    };
    let read_value = |toks: &mut std::str::SplitWhitespace, line: usize| -> Result<C64> {
        Ok(match field {
            Field::Real | Field::Integer => C64::new(num(toks.next(), line)?, 0.0),
            Field::Complex => C64::new(num(toks.next(), line)?, num(toks.next(), line)?),
            Field::Pattern => C64::new(1.0, 0.0),
        })
    };
    match format {
        Format::Coordinate => {
            let nnz = sizes[2];
            for _ in 0..nnz {
                let (ln, l) = body.next().ok_or_else(|| perr(sl, "fewer entries than declared"))??;
                let mut t = l.split_whitespace();
                let i = index(t.next(), ln, rows)?;
                let j = index(t.next(), ln, cols)?;
                let v = read_value(&mut t, ln)?;
                if symmetry == Symmetry::SkewSymmetric && i == j {
                    return Err(perr(ln, "diagonal entry in skew-symmetric storage"));
                }
                put(i, j, v);
            }
        }
        Format::Array => {
            // column-major; symmetric variants store the lower triangle only
            for j in 0..cols {
                let start = match symmetry {
                    Symmetry::General => 0,
                    Symmetry::SkewSymmetric => j + 1,
                    _ => j,
                };
                for i in start..rows {
                    let (ln, l) = body.next().ok_or_else(|| perr(sl, "fewer entries than declared"))??;
                    let mut t = l.split_whitespace();
                    let v = read_value(&mut t, ln)?;
                    put(i, j, v);
                }
            }
        }
    }
    if let Some(extra) = body.next() {
        let (ln, _) = extra?;
        return Err(perr(ln, "more entries than declared"));
    }
    let rows = m.rows();
    let cols = m.cols();
    ComplexMatrix::new(rows, cols, m.data().to_vec()).map_err(|_| perr(0, "non-finite entry"))
}

pub fn read_matrix_market_file(path: impl AsRef<Path>) -> Result<ComplexMatrix> {
    let f = std::fs::File::open(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    read_matrix_market(f)
}

fn fmt_value(s: &mut String, v: C64, complex: bool) {
    if complex {
        let _ = write!(s, "{:.16e} {:.16e}", v.re, v.im);
    } else {
        let _ = write!(s, "{:.16e}", v.re);
    }
}

/// Writes the nonzero entries in coordinate format (general symmetry).
pub fn write_matrix_market(m: &ComplexMatrix, mut w: impl Write) -> Result<()> {
    let complex = !m.is_real();
    let field = if complex { "complex" } else { "real" };
    let mut s = format!("%%MatrixMarket matrix coordinate {field} general\n");
    let nnz = m.data().iter().filter(|v| v.re != 0.0 || v.im != 0.0).count();
    let _ = writeln!(s, "{} {} {}", m.rows(), m.cols(), nnz);
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            let v = m[(i, j)];
            if v.re != 0.0 || v.im != 0.0 {
                let _ = write!(s, "{} {} ", i + 1, j + 1);
                fmt_value(&mut s, v, complex);
                s.push('\n');
            }
        }
    }
    w.write_all(s.as_bytes())?;
    Ok(())
}

/// Writes every entry in array (dense, column-major) format.
pub fn write_matrix_market_array(m: &ComplexMatrix, mut w: impl Write) -> Result<()> {
    let complex = !m.is_real();
    let field = if complex { "complex" } else { "real" };
    let mut s = format!("%%MatrixMarket matrix array {field} general\n{} {}\n", m.rows(), m.cols());
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            fmt_value(&mut s, m[(i, j)], complex);
            s.push('\n');
        }
    }
    w.write_all(s.as_bytes())?;
    Ok(())
}

pub fn write_matrix_market_file(m: &ComplexMatrix, path: impl AsRef<Path>) -> Result<()> {
    let f = std::fs::File::create(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    write_matrix_market(m, std::io::BufWriter::new(f))
}

pub fn read_vector(reader: impl Read) -> Result<Vec<C64>> {
    let mut lines = BufReader::new(reader).lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| perr(1, "empty file"))?;
    let header = header?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let n: usize = match toks.as_slice() {
        ["%%vector", n] | ["%%vector", n, "complex"] | ["%%vector", n, "real"] => {
            n.parse().map_err(|_| perr(1, format!("bad length '{n}'")))?
        }
        _ => return Err(perr(1, "expected '%%vector <n>'")),
    };
    let mut out = Vec::with_capacity(n);
    for (i, l) in lines {
        let l = l?;
        let t = l.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let mut it = t.split_whitespace();
        let re = num(it.next(), i + 1)?;
        let im = match it.next() {
            Some(s) => num(Some(s), i + 1)?,
            None => 0.0,
        };
        if !re.is_finite() || !im.is_finite() {
            return Err(perr(i + 1, "non-finite value"));
        }
        out.push(C64::new(re, im));
    }
    if out.len() != n {
        return Err(perr(0, format!("declared {n} values, found {}", out.len())));
    }
    Ok(out)
}

pub fn read_vector_file(path: impl AsRef<Path>) -> Result<Vec<C64>> {
    let f = std::fs::File::open(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    read_vector(f)
}

pub fn write_vector(v: &[C64], mut w: impl Write) -> Result<()> {
    let complex = v.iter().any(|z| z.im != 0.0);
    let mut s = if complex { format!("%%vector {} complex\n", v.len()) } else { format!("%%vector {}\n", v.len()) };
    for &z in v {
        fmt_value(&mut s, z, complex);
        s.push('\n');
    }
    w.write_all(s.as_bytes())?;
    Ok(())
}

pub fn write_vector_file(v: &[C64], path: impl AsRef<Path>) -> Result<()> {
    let f = std::fs::File::create(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    write_vector(v, std::io::BufWriter::new(f))
}
