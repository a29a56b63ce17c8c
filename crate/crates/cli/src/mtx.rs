//! Matrix Market reading and writing for real symmetric matrices.
//!
//! Both `array` and `coordinate` storage are read. Only the stored triangle is
//! read and it is mirrored; entries may come from either triangle.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use gsyeig_core::{DenseMatrix, DenseSymmetric, Uplo};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MtxError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    ParseError { line: usize, message: String },
    #[error("line {line}: header must declare a real symmetric matrix, found '{header}'")]
    NotSymmetricHeader { line: usize, header: String },
    #[error("shape mismatch: A is {a}x{a}, B is {b}x{b}")]
    ShapeMismatch { a: usize, b: usize },
}

/// On-disk layout used by [`write_matrix_market`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MtxFormat {
    #[default]
    Array,
    Coordinate,
}

#[derive(Clone, Copy, PartialEq)]
enum Layout {
    Array,
    Coordinate,
}

fn parse_err(line: usize, message: impl Into<String>) -> MtxError {
    MtxError::ParseError {
        line,
        message: message.into(),
    }
}

fn parse_header(line_no: usize, line: &str) -> Result<Layout, MtxError> {
    let fields: Vec<String> = line
        .split_whitespace()
        .map(|s| s.to_ascii_lowercase())
        .collect();
    if fields.len() != 5 || fields[0] != "%%matrixmarket" || fields[1] != "matrix" {
        return Err(parse_err(
            line_no,
            "expected '%%MatrixMarket matrix <format> <field> <symmetry>'",
        ));
    }
    let layout = match fields[2].as_str() {
        "array" => Layout::Array,
        "coordinate" => Layout::Coordinate,
        other => return Err(parse_err(line_no, format!("unknown format '{other}'"))),
    };
    if !matches!(fields[3].as_str(), "real" | "double" | "integer") || fields[4] != "symmetric" {
        return Err(MtxError::NotSymmetricHeader {
            line: line_no,
            header: line.trim().to_string(),
        });
    }
    Ok(layout)
}

fn parse_usize(line: usize, tok: Option<&str>) -> Result<usize, MtxError> {
    let tok = tok.ok_or_else(|| parse_err(line, "missing integer field"))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid integer '{tok}'")))
}

fn parse_f64(line: usize, tok: Option<&str>) -> Result<f64, MtxError> {
    let tok = tok.ok_or_else(|| parse_err(line, "missing value"))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid number '{tok}'")))
}

/// Reads a real symmetric matrix.
pub fn read_matrix_market(reader: impl BufRead) -> Result<DenseSymmetric, MtxError> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));
    let io_err = |e| MtxError::Io {
        path: "<input>".into(),
        source: e,
    };

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let layout = parse_header(hline, &header.map_err(io_err)?)?;

    let mut data = lines.filter_map(|(no, l)| match l {
        Ok(l) if l.trim().is_empty() || l.trim_start().starts_with('%') => None,
        other => Some((no, other)),
    });

    let (sline, size) = data
        .next()
        .ok_or_else(|| parse_err(hline + 1, "missing size line"))?;
    let size = size.map_err(io_err)?;
    let mut toks = size.split_whitespace();
    let rows = parse_usize(sline, toks.next())?;
    let cols = parse_usize(sline, toks.next())?;
    if rows != cols {
        return Err(parse_err(
            sline,
            format!("symmetric matrix must be square, got {rows}x{cols}"),
        ));
    }
    if rows == 0 {
        return Err(parse_err(sline, "matrix dimension must be positive"));
    }
    let n = rows;
    let expected = match layout {
        Layout::Array => n * (n + 1) / 2,
        Layout::Coordinate => parse_usize(sline, toks.next())?,
    };
    if toks.next().is_some() {
        return Err(parse_err(sline, "trailing fields on size line"));
    }

    let mut full = DenseMatrix::zeros(n, n);
    let mut count = 0;
    let mut last_line = sline;
    for (no, line) in data {
        let line = line.map_err(io_err)?;
        last_line = no;
        if count == expected {
            return Err(parse_err(
                no,
                format!("more than the {expected} declared entries"),
            ));
        }
        let mut toks = line.split_whitespace();
        let (i, j, v) = match layout {
            Layout::Array => {
                // Column-major lower triangle.
                let (i, j) = array_position(n, count);
                (i, j, parse_f64(no, toks.next())?)
            }
            Layout::Coordinate => {
                let i = parse_usize(no, toks.next())?;
                let j = parse_usize(no, toks.next())?;
                if i == 0 || j == 0 || i > n || j > n {
                    return Err(parse_err(no, format!("index ({i}, {j}) outside {n}x{n}")));
                }
                (i - 1, j - 1, parse_f64(no, toks.next())?)
            }
        };
        if toks.next().is_some() {
            return Err(parse_err(no, "trailing fields"));
        }
        full[(i, j)] = v;
        full[(j, i)] = v;
        count += 1;
    }
    if count != expected {
        return Err(parse_err(
            last_line,
            format!("expected {expected} entries, found {count}"),
        ));
    }
    Ok(DenseSymmetric::from_dense(&full, Uplo::Upper).expect("square nonempty matrix"))
}

fn array_position(n: usize, k: usize) -> (usize, usize) {
    let mut j = 0;
    let mut k = k;
    while k >= n - j {
        k -= n - j;
        j += 1;
    }
    (j + k, j)
}

pub fn load_matrix_market(path: impl AsRef<Path>) -> Result<DenseSymmetric, MtxError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| MtxError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    read_matrix_market(BufReader::new(file)).map_err(|e| match e {
        MtxError::Io { source, .. } => MtxError::Io {
            path: path.display().to_string(),
            source,
        },
        other => other,
    })
}

/// Loads `A` and `B`, checking that they have the same dimension.
pub fn load_matrix_market_pair(
    path_a: impl AsRef<Path>,
    path_b: impl AsRef<Path>,
) -> Result<(DenseSymmetric, DenseSymmetric), MtxError> {
    let a = load_matrix_market(path_a)?;
    let b = load_matrix_market(path_b)?;
    if a.n() != b.n() {
        return Err(MtxError::ShapeMismatch { a: a.n(), b: b.n() });
    }
    Ok((a, b))
}

/// Writes the lower triangle. Values use the shortest representation that
/// parses back to the same bits.
pub fn write_matrix_market(
    mut w: impl Write,
    m: &DenseSymmetric,
    format: MtxFormat,
) -> io::Result<()> {
    let n = m.n();
    match format {
        MtxFormat::Array => {
            writeln!(w, "%%MatrixMarket matrix array real symmetric")?;
            writeln!(w, "{n} {n}")?;
            for j in 0..n {
                for i in j..n {
                    writeln!(w, "{:e}", m.get(i, j))?;
                }
            }
        }
        MtxFormat::Coordinate => {
            let entries: Vec<(usize, usize, f64)> = (0..n)
                .flat_map(|j| (j..n).map(move |i| (i, j)))
                .map(|(i, j)| (i, j, m.get(i, j)))
                .filter(|e| e.2 != 0.0 || e.2.is_sign_negative())
                .collect();
            writeln!(w, "%%MatrixMarket matrix coordinate real symmetric")?;
            writeln!(w, "{n} {n} {}", entries.len())?;
            for (i, j, v) in entries {
                writeln!(w, "{} {} {v:e}", i + 1, j + 1)?;
            }
        }
    }
    Ok(())
}

pub fn save_matrix_market(
    path: impl AsRef<Path>,
    m: &DenseSymmetric,
    format: MtxFormat,
) -> Result<(), MtxError> {
    let path = path.as_ref();
    let io_err = |e| MtxError::Io {
        path: path.display().to_string(),
        source: e,
    };
    let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
    write_matrix_market(&mut w, m, format).map_err(io_err)?;
    w.flush().map_err(io_err)
}

/// Writes a general dense matrix in `array real general` form.
pub fn write_dense_array(mut w: impl Write, m: &DenseMatrix) -> io::Result<()> {
    writeln!(w, "%%MatrixMarket matrix array real general")?;
    writeln!(w, "{} {}", m.rows(), m.cols())?;
    for v in m.as_slice() {
        writeln!(w, "{v:e}")?;
    }
    Ok(())
}
