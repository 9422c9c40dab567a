//! File formats for matrices and groups.
//!
//! Matrix text format: a header line `rows cols`, then one line per nonzero
//! entry — `row col re im`, 0-based, whitespace-separated; omitted entries
//! are zero. Matrix JSON carries the same data as
//! `{"rows": …, "cols": …, "entries": [[r, c, re, im], …]}`.
//!
//! Group text format: a line `order N`, then `N` rows of the multiplication
//! table, then any number of sections `irrep d <name>` each followed by
//! `N·d` lines of `d` complex entries (`re im` pairs) — the `d×d` matrix of
//! every element in element order, rows flattened.

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Irrep};
use crate::linalg::CMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub fn write_matrix_text(m: &CMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if v.re != 0.0 || v.im != 0.0 {
                out.push_str(&format!("{} {} {} {}\n", i, j, v.re, v.im));
            }
        }
    }
    out
}

pub fn read_matrix_text(s: &str) -> Result<CMatrix> {
    let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(Error::Parse(format!("matrix header must be 'rows cols', got '{}'", header)));
    }
    let rows: usize = dims[0].parse().map_err(|_| Error::Parse(format!("bad row count '{}'", dims[0])))?;
    let cols: usize = dims[1].parse().map_err(|_| Error::Parse(format!("bad col count '{}'", dims[1])))?;
    if rows == 0 || cols == 0 {
        return Err(Error::Parse("matrix dimensions must be positive".into()));
    }
    let mut m = CMatrix::zeros(rows, cols);
    let mut seen = vec![false; rows * cols];
    for line in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("entry line must be 'row col re im', got '{}'", line)));
        }
        let r: usize = parts[0].parse().map_err(|_| Error::Parse(format!("bad row '{}'", parts[0])))?;
        let c: usize = parts[1].parse().map_err(|_| Error::Parse(format!("bad col '{}'", parts[1])))?;
        let re: f64 = parts[2].parse().map_err(|_| Error::Parse(format!("bad real part '{}'", parts[2])))?;
        let im: f64 = parts[3].parse().map_err(|_| Error::Parse(format!("bad imag part '{}'", parts[3])))?;
        if r >= rows || c >= cols {
            return Err(Error::Parse(format!("entry ({}, {}) outside {}x{}", r, c, rows, cols)));
        }
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::Parse(format!("non-finite entry at ({}, {})", r, c)));
        }
        if std::mem::replace(&mut seen[r * cols + c], true) {
            return Err(Error::Parse(format!("duplicate entry for ({}, {})", r, c)));
        }
        m.set(r, c, Complex64::new(re, im));
    }
    Ok(m)
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, f64, f64)>,
}

pub fn write_matrix_json(m: &CMatrix) -> String {
    let mut entries = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m.get(i, j);
            if v.re != 0.0 || v.im != 0.0 {
                entries.push((i, j, v.re, v.im));
            }
        }
    }
    serde_json::to_string(&MatrixJson { rows: m.rows(), cols: m.cols(), entries }).unwrap()
}

pub fn read_matrix_json(s: &str) -> Result<CMatrix> {
    let parsed: MatrixJson =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("matrix json: {}", e)))?;
    if parsed.rows == 0 || parsed.cols == 0 {
        return Err(Error::Parse("matrix dimensions must be positive".into()));
    }
    let mut m = CMatrix::zeros(parsed.rows, parsed.cols);
    let mut seen = vec![false; parsed.rows * parsed.cols];
    for (r, c, re, im) in parsed.entries {
        if r >= parsed.rows || c >= parsed.cols {
            return Err(Error::Parse(format!(
                "entry ({}, {}) outside {}x{}",
                r, c, parsed.rows, parsed.cols
            )));
        }
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::Parse(format!("non-finite entry at ({}, {})", r, c)));
        }
        if std::mem::replace(&mut seen[r * parsed.cols + c], true) {
            return Err(Error::Parse(format!("duplicate entry for ({}, {})", r, c)));
        }
        m.set(r, c, Complex64::new(re, im));
    }
    Ok(m)
}

pub fn write_group_text(g: &FiniteGroup, irreps: &[Irrep]) -> String {
    let n = g.order();
    let mut out = format!("order {}\n", n);
    for row in g.table() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    for rep in irreps {
        let d = rep.dim();
        out.push_str(&format!("irrep {} {}\n", d, rep.name));
        for t in 0..n {
            let m = rep.mat(t);
            for i in 0..d {
                let mut cells = Vec::with_capacity(2 * d);
                for j in 0..d {
                    let v = m.get(i, j);
                    cells.push(v.re.to_string());
                    cells.push(v.im.to_string());
                }
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
    }
    out
}

pub fn read_group_text(s: &str) -> Result<(FiniteGroup, Vec<Irrep>)> {
    let mut lines = s
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .peekable();
    let header = lines.next().ok_or_else(|| Error::Parse("empty group file".into()))?;
    let n: usize = header
        .strip_prefix("order")
        .map(str::trim)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse(format!("group file must start with 'order N', got '{}'", header)))?;
    let mut table = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse("group file ends inside the multiplication table".into()))?;
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|v| v.parse().map_err(|_| Error::Parse(format!("bad table cell '{}'", v))))
            .collect::<Result<_>>()?;
        table.push(row);
    }
    let group = FiniteGroup::new("from-file", table, None)?;
    let mut irreps = Vec::new();
    while let Some(line) = lines.next() {
        let rest = line
            .strip_prefix("irrep")
            .ok_or_else(|| Error::Parse(format!("expected 'irrep d name' section, got '{}'", line)))?;
        let mut parts = rest.split_whitespace();
        let d: usize = parts
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::Parse("irrep section needs a dimension".into()))?;
        if d == 0 {
            return Err(Error::Parse("irrep dimension must be positive".into()));
        }
        let name = parts.next().unwrap_or("rep").to_string();
        let mut mats = Vec::with_capacity(n);
        for t in 0..n {
            let mut m = CMatrix::zeros(d, d);
            for i in 0..d {
                let line = lines.next().ok_or_else(|| {
                    Error::Parse(format!("irrep '{}' ends inside element {}", name, t))
                })?;
                let nums: Vec<f64> = line
                    .split_whitespace()
                    .map(|v| v.parse().map_err(|_| Error::Parse(format!("bad number '{}'", v))))
                    .collect::<Result<_>>()?;
                if nums.len() != 2 * d {
                    return Err(Error::Parse(format!(
                        "irrep '{}' row has {} numbers, expected {}",
                        name,
                        nums.len(),
                        2 * d
                    )));
                }
                for j in 0..d {
                    m.set(i, j, Complex64::new(nums[2 * j], nums[2 * j + 1]));
                }
            }
            mats.push(m);
        }
        irreps.push(Irrep::new(&name, mats));
    }
    Ok((group, irreps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{catalog, IrrepCatalog};
    use crate::linalg::gaussian;
    use crate::trial_rng;

    #[test]
    fn matrix_text_round_trip() {
        let m = gaussian(3, 4, &mut trial_rng(0x10, 0));
        let back = read_matrix_text(&write_matrix_text(&m)).unwrap();
        assert_eq!(back.rows(), 3);
        assert_eq!(back.cols(), 4);
        assert_eq!(m.sub(&back).max_abs(), 0.0);
    }

    #[test]
    fn matrix_text_sparse_and_comments() {
        let text = "2 2\n# comment\n0 1 1.5 -2\n";
        let m = read_matrix_text(text).unwrap();
        assert_eq!(m.get(0, 0), Complex64::new(0.0, 0.0));
        assert_eq!(m.get(0, 1), Complex64::new(1.5, -2.0));
    }

    #[test]
    fn matrix_text_rejects_bad_input() {
        assert!(read_matrix_text("").is_err());
        assert!(read_matrix_text("2\n").is_err());
        assert!(read_matrix_text("2 2\n5 0 1 0\n").is_err());
        assert!(read_matrix_text("2 2\n0 0 1 0\n0 0 2 0\n").is_err());
        assert!(read_matrix_text("0 3\n").is_err());
    }

    #[test]
    fn matrix_json_round_trip() {
        let m = gaussian(2, 5, &mut trial_rng(0x10, 1));
        let back = read_matrix_json(&write_matrix_json(&m)).unwrap();
        assert_eq!(m.sub(&back).max_abs(), 0.0);
        assert!(read_matrix_json("{\"rows\":1}").is_err());
    }

    #[test]
    fn group_text_round_trip_with_irreps() {
        let cat = catalog("s3").unwrap();
        let text = write_group_text(&cat.group, &cat.irreps);
        let (group, irreps) = read_group_text(&text).unwrap();
        assert_eq!(group.order(), 6);
        let rebuilt = IrrepCatalog { group, irreps };
        rebuilt.validate().unwrap();
        for (a, b) in cat.irreps.iter().zip(&rebuilt.irreps) {
            assert_eq!(a.name, b.name);
            for t in 0..6 {
                assert_eq!(a.mat(t).sub(b.mat(t)).max_abs(), 0.0);
            }
        }
    }

    #[test]
    fn group_text_rejects_bad_tables() {
        assert!(read_group_text("").is_err());
        assert!(read_group_text("order 2\n0 0\n1 1\n").is_err());
        assert!(read_group_text("order 2\n0 1\n").is_err());
    }
}
