//! ```text
//! # comment
//! shape: 2 x 2
//! 1,1 = alpha
//! 2,2 = beta
//! ```
//!
//! Indices are 1-based; cells not listed are zero. Serialization lists the
//! non-zero cells in row-major order, so equal tensors give equal text.

use std::fmt::Write as _;

use super::IoError;
use crate::scalar::{parse_expr, PolyScalar, Value};
use crate::tensor::{Shape, Tensor};

pub fn serialize_tensor(t: &Tensor) -> String {
    write_cells(t.shape(), t.cells().iter().map(|c| (!c.is_zero()).then(|| c.to_string())))
}

/// Same layout for evaluated cells.
pub fn serialize_values(shape: &Shape, values: &[Value]) -> String {
    write_cells(shape, values.iter().map(|v| (!v.is_zero()).then(|| v.to_string())))
}

fn write_cells(shape: &Shape, cells: impl Iterator<Item = Option<String>>) -> String {
    let mut out = format!("shape: {shape}\n");
    for (index, cell) in shape.indices().zip(cells) {
        if let Some(cell) = cell {
            let index: Vec<String> = index.iter().map(ToString::to_string).collect();
            writeln!(out, "{} = {cell}", index.join(",")).expect("writing to a String");
        }
    }
    out
}

pub fn parse_tensor(text: &str) -> Result<Tensor, IoError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (header_line, header) = lines.next().ok_or(IoError::Syntax { line: 1, reason: "missing shape header".into() })?;
    let syntax = |line: usize, reason: String| IoError::Syntax { line, reason };
    let dims = header
        .trim()
        .strip_prefix("shape:")
        .ok_or_else(|| syntax(header_line, "expected `shape: n1 x n2 x ...`".into()))?
        .split('x')
        .map(|d| d.trim().parse::<usize>().map_err(|_| syntax(header_line, format!("bad dimension `{}`", d.trim()))))
        .collect::<Result<Vec<_>, _>>()?;
    let shape = Shape::new(dims).map_err(|e| syntax(header_line, e.to_string()))?;

    let mut cells = vec![PolyScalar::zero(); shape.cell_count()];
    let mut set = vec![false; cells.len()];
    for (line_no, line) in lines {
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| syntax(line_no, "expected `i,j,... = expr`".into()))?;
        let index = lhs
            .split(',')
            .map(|i| i.trim().parse::<usize>().map_err(|_| syntax(line_no, format!("bad index `{}`", i.trim()))))
            .collect::<Result<Vec<_>, _>>()?;
        let offset = shape.offset(&index).ok_or_else(|| IoError::ShapeMismatch {
            line: line_no,
            reason: format!("index ({}) outside shape {shape}", lhs.trim()),
        })?;
        if std::mem::replace(&mut set[offset], true) {
            return Err(syntax(line_no, format!("cell ({}) given twice", lhs.trim())));
        }
        cells[offset] = parse_expr(rhs).map_err(|e| syntax(line_no, format!("in expression `{}`: {e}", rhs.trim())))?;
    }
    Ok(Tensor::new(shape, cells).expect("cell count matches shape"))
}
