//! Plain-text matrix files: the dimension on the first line, then one
//! `re im` pair per line in row-major order.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use threetangle_core::{CMatrix, DensityMatrix, C64};

use crate::error::{CliError, CliResult};

pub fn parse_matrix(text: &str) -> CliResult<CMatrix> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (first, dim_line) = lines.next().ok_or(CliError::Parse {
        line: 1,
        msg: "empty file".into(),
    })?;
    let dim: usize = dim_line.trim().parse().map_err(|_| CliError::Parse {
        line: first + 1,
        msg: format!("expected a dimension, found {:?}", dim_line.trim()),
    })?;
    if dim == 0 {
        return Err(CliError::Parse {
            line: first + 1,
            msg: "dimension must be positive".into(),
        });
    }
    let mut data = Vec::with_capacity(dim * dim);
    for (idx, line) in lines {
        let parse_err = |msg: String| CliError::Parse { line: idx + 1, msg };
        let mut fields = line.split_whitespace();
        let (Some(re), Some(im), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(format!("expected `re im`, found {:?}", line.trim())));
        };
        let num = |s: &str| s.parse::<f64>().map_err(|_| parse_err(format!("not a number: {s:?}")));
        data.push(C64::new(num(re)?, num(im)?));
    }
    if data.len() != dim * dim {
        return Err(CliError::Parse {
            line: 1,
            msg: format!("expected {} entries for dimension {dim}, found {}", dim * dim, data.len()),
        });
    }
    Ok(CMatrix::from_row_major(dim, dim, data))
}

pub fn format_matrix(m: &CMatrix) -> String {
    let mut out = format!("{}\n", m.rows());
    for z in m.as_slice() {
        let _ = writeln!(out, "{:.16e} {:.16e}", z.re, z.im);
    }
    out
}

pub fn read_density(path: &Path) -> CliResult<DensityMatrix> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    Ok(DensityMatrix::new(parse_matrix(&text)?)?)
}

pub fn write_density(path: &Path, rho: &DensityMatrix) -> CliResult<()> {
    fs::write(path, format_matrix(rho.matrix())).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}
