//! Labeled matrix files: a header line of column ids, then one line per row
//! holding the row id followed by numeric cells.
//!
//! The header may or may not carry a leading corner cell; both layouts of the
//! published benchmark files are accepted. Tab is the default delimiter,
//! comma-separated variants are read with [`read_labeled_matrix_with`].

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledMatrix {
    pub row_ids: Vec<String>,
    pub col_ids: Vec<String>,
    pub values: DenseMatrix,
}

pub fn read_labeled_matrix(path: &Path) -> Result<LabeledMatrix> {
    let delimiter = match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => ',',
        _ => '\t',
    };
    read_labeled_matrix_with(path, delimiter)
}

pub fn read_labeled_matrix_with(path: &Path, delimiter: char) -> Result<LabeledMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_labeled_matrix(&text, delimiter, path)
}

pub(crate) fn parse_labeled_matrix(text: &str, delimiter: char, path: &Path) -> Result<LabeledMatrix> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));

    let format_err = |message: String| Error::Format {
        path: path.to_path_buf(),
        message,
    };

    let (_, header) = lines
        .next()
        .ok_or_else(|| format_err("file is empty".into()))?;
    let header: Vec<String> = header
        .split(delimiter)
        .map(|s| s.trim().trim_matches('"').to_string())
        .collect();

    let mut row_ids = Vec::new();
    let mut data = Vec::new();
    let mut width: Option<usize> = None;
    for (line_no, line) in lines {
        let mut cells = line.split(delimiter);
        let id = cells.next().unwrap_or("").trim().trim_matches('"').to_string();
        let mut count = 0;
        for (k, cell) in cells.enumerate() {
            let cell = cell.trim();
            let v: f64 = cell.parse().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line: line_no,
                column: k + 2,
                message: format!("cell {cell:?} is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    path: path.to_path_buf(),
                    line: line_no,
                    column: k + 2,
                    message: format!("cell {cell:?} is not finite"),
                });
            }
            data.push(v);
            count += 1;
        }
        match width {
            None => width = Some(count),
            Some(w) if w != count => {
                return Err(format_err(format!(
                    "line {line_no} has {count} cells, expected {w}"
                )))
            }
            _ => {}
        }
        row_ids.push(id);
    }

    let width = width.unwrap_or(0);
    let col_ids = if header.len() == width + 1 {
        header[1..].to_vec()
    } else if header.len() == width {
        header
    } else {
        return Err(format_err(format!(
            "header has {} ids but rows have {width} cells",
            header.len()
        )));
    };
    let values = DenseMatrix::from_vec(row_ids.len(), width, data)?;
    Ok(LabeledMatrix {
        row_ids,
        col_ids,
        values,
    })
}

/// Writes the matrix in the tab-separated layout with an empty corner cell
/// and shortest round-trip float formatting.
pub fn write_labeled_matrix(path: &Path, m: &LabeledMatrix, comments: &[String]) -> Result<()> {
    let mut out = Vec::new();
    render_labeled_matrix(&mut out, m, comments).map_err(|e| Error::io(path, e))?;
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

fn render_labeled_matrix(
    out: &mut impl Write,
    m: &LabeledMatrix,
    comments: &[String],
) -> std::io::Result<()> {
    for c in comments {
        writeln!(out, "# {c}")?;
    }
    for id in &m.col_ids {
        write!(out, "\t{id}")?;
    }
    writeln!(out)?;
    for (i, id) in m.row_ids.iter().enumerate() {
        write!(out, "{id}")?;
        for v in m.values.row(i) {
            write!(out, "\t{v}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}
