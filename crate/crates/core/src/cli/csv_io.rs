//! Grid CSV: header `x,y,u`, one row per point, row-major with `y` fastest,
//! LF line endings, values in exponent notation with 17 significant digits.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::grid::ScalarGrid;

pub const HEADER: [&str; 3] = ["x", "y", "u"];

fn fmt(v: f64) -> String {
    // + 0.0 turns -0.0 into 0.0
    format!("{:.16e}", v + 0.0)
}

pub fn write_grid<W: Write>(grid: &ScalarGrid, out: W) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(HEADER)?;
    for i in 0..grid.nx {
        let x = fmt(grid.x(i));
        for j in 0..grid.ny {
            w.write_record([x.as_str(), &fmt(grid.y(j)), &fmt(grid.at(i, j))])?;
        }
    }
    w.flush()
}

/// Parses a grid CSV and recovers the uniform geometry from the coordinates.
pub fn read_grid<R: Read>(input: R) -> Result<ScalarGrid> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = rdr
        .headers()
        .map_err(|e| Error::InvalidGrid(format!("unreadable header: {e}")))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != HEADER {
        return Err(Error::InvalidGrid(format!(
            "expected header `x,y,u`, got `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows: Vec<[f64; 3]> = Vec::new();
    for (n, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::InvalidGrid(format!("row {}: {e}", n + 2)))?;
        if rec.len() != 3 {
            return Err(Error::InvalidGrid(format!("row {}: expected 3 fields", n + 2)));
        }
        let mut vals = [0.0f64; 3];
        for (k, field) in rec.iter().enumerate() {
            vals[k] = field.parse().map_err(|_| {
                Error::InvalidGrid(format!("row {}: `{field}` is not a number", n + 2))
            })?;
            if !vals[k].is_finite() {
                return Err(Error::InvalidGrid(format!("row {}: non-finite value", n + 2)));
            }
        }
        rows.push(vals);
    }
    if rows.is_empty() {
        return Err(Error::InvalidGrid("no data rows".into()));
    }

    let x0 = rows[0][0];
    let y0 = rows[0][1];
    let ny = rows.iter().take_while(|r| r[0] == x0).count();
    if !rows.len().is_multiple_of(ny) {
        return Err(Error::InvalidGrid(format!(
            "{} rows do not form complete columns of {ny} points",
            rows.len()
        )));
    }
    let nx = rows.len() / ny;
    if nx < 2 || ny < 2 {
        return Err(Error::GridTooSmall { nx, ny, min: 2 });
    }
    let hx = (rows[rows.len() - 1][0] - x0) / (nx - 1) as f64;
    let hy = (rows[ny - 1][1] - y0) / (ny - 1) as f64;
    if !(hx > 0.0 && hy > 0.0) {
        return Err(Error::InvalidGrid("coordinates must increase along both axes".into()));
    }
    let tol = 1e-9 * (hx * nx as f64).max(hy * ny as f64).max(x0.abs()).max(y0.abs());
    for (k, r) in rows.iter().enumerate() {
        let (i, j) = (k / ny, k % ny);
        if (r[0] - (x0 + i as f64 * hx)).abs() > tol || (r[1] - (y0 + j as f64 * hy)).abs() > tol {
            return Err(Error::InvalidGrid(format!(
                "row {}: point ({}, {}) is off the uniform grid (expected y fastest)",
                k + 2,
                r[0],
                r[1]
            )));
        }
    }
    let values = rows.iter().map(|r| r[2]).collect();
    ScalarGrid::new(x0, y0, hx, hy, nx, ny, values)
}
