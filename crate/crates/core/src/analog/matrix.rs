use std::fmt::Write as _;

use crate::disjunct::DisjunctMatrix;
use crate::error::{Error, Result};
use crate::spherical::SphericalParityMatrix;

/// Real parity-check matrix whose entries are `scale * {-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignMatrix {
    r: usize,
    n: usize,
    /// Row-major signs.
    entries: Vec<i8>,
    scale: f64,
    /// Nonzero column indices of each row.
    row_support: Vec<Vec<usize>>,
    col_support: Vec<Vec<usize>>,
    /// Claimed disjunct order, when the 0-1 pattern came from a disjunct matrix.
    disjunct_order: Option<usize>,
}

impl SignMatrix {
    pub fn new(r: usize, n: usize, entries: Vec<i8>, scale: f64) -> Result<Self> {
        if entries.len() != r * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {r}x{n} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|&v| !(-1..=1).contains(&v)) {
            return Err(Error::InvalidParameter("entries must lie in {-1, 0, 1}".into()));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidParameter(format!("scale {scale} must be positive")));
        }
        let mut row_support = vec![Vec::new(); r];
        let mut col_support = vec![Vec::new(); n];
        for i in 0..r {
            for j in 0..n {
                if entries[i * n + j] != 0 {
                    row_support[i].push(j);
                    col_support[j].push(i);
                }
            }
        }
        Ok(SignMatrix {
            r,
            n,
            entries,
            scale,
            row_support,
            col_support,
            disjunct_order: None,
        })
    }

    pub fn from_disjunct(h: &DisjunctMatrix) -> Self {
        let mut entries = vec![0i8; h.r() * h.n()];
        for (i, row) in h.rows().iter().enumerate() {
            for j in row.iter_ones() {
                entries[i * h.n() + j] = 1;
            }
        }
        let mut m = SignMatrix::new(h.r(), h.n(), entries, 1.0).expect("0-1 entries");
        m.disjunct_order = Some(h.order());
        m
    }

    pub fn from_spherical(h: &SphericalParityMatrix) -> Self {
        let (r, n) = (h.r(), h.n());
        let mut entries = vec![1i8; r * n];
        for (j, col) in h.column_signs().iter().enumerate() {
            for i in col.iter_ones() {
                entries[i * n + j] = -1;
            }
        }
        SignMatrix::new(r, n, entries, h.scale()).expect("sign entries")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    #[inline]
    pub fn sign(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.sign(i, j) as f64 * self.scale
    }

    pub fn row_support(&self, i: usize) -> &[usize] {
        &self.row_support[i]
    }

    pub fn col_support(&self, j: usize) -> &[usize] {
        &self.col_support[j]
    }

    pub fn disjunct_order(&self) -> Option<usize> {
        self.disjunct_order
    }

    /// True when every entry is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.entries.iter().all(|&v| v >= 0)
    }

    pub fn nnz(&self) -> usize {
        self.row_support.iter().map(Vec::len).sum()
    }

    pub fn max_row_weight(&self) -> usize {
        self.row_support.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_row_weight(&self) -> usize {
        self.row_support.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_col_weight(&self) -> usize {
        self.col_support.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The three conditions of the lambda = 2 baseline: distinct columns;
    /// exactly two nonzero entries per column, the first being +1; row
    /// weights in `{floor(2n/r), ceil(2n/r)}`.
    pub fn baseline_conditions(&self) -> [bool; 3] {
        let mut seen = std::collections::HashSet::with_capacity(self.n);
        let distinct = (0..self.n).all(|j| {
            let col: Vec<i8> = (0..self.r).map(|i| self.sign(i, j)).collect();
            seen.insert(col)
        });
        let two = self
            .col_support
            .iter()
            .enumerate()
            .all(|(j, rows)| rows.len() == 2 && self.sign(rows[0], j) == 1);
        let lo = 2 * self.n / self.r.max(1);
        let hi = (2 * self.n).div_ceil(self.r.max(1));
        let balanced = self
            .row_support
            .iter()
            .all(|cols| cols.len() == lo || cols.len() == hi);
        [distinct, two, balanced]
    }

    /// `H y^T`.
    pub fn syndrome(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.n, "vector length must match column count");
        self.row_support
            .iter()
            .enumerate()
            .map(|(i, cols)| {
                let mut acc = 0.0;
                for &j in cols {
                    if self.sign(i, j) > 0 {
                        acc += y[j];
                    } else {
                        acc -= y[j];
                    }
                }
                acc * self.scale
            })
            .collect()
    }

    /// Text form for signed matrices: `baseline r n` then r lines over `{+,-,0}`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "baseline {} {}", self.r, self.n);
        for i in 0..self.r {
            let line: String = (0..self.n)
                .map(|j| match self.sign(i, j) {
                    1 => '+',
                    -1 => '-',
                    _ => '0',
                })
                .collect();
            let _ = writeln!(s, "{line}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|e| Error::parse(1, e.to_string()));
        let (r, n) = match toks.as_slice() {
            ["baseline", r, n] => (num(r)?, num(n)?),
            _ => return Err(Error::parse(1, "expected `baseline r n`")),
        };
        let mut entries = Vec::with_capacity(r * n);
        for i in 0..r {
            let line = lines.next().ok_or_else(|| Error::parse(i + 2, "missing matrix row"))?;
            let line = line.trim_end();
            if line.chars().count() != n {
                return Err(Error::parse(i + 2, format!("expected {n} chars over {{+,-,0}}")));
            }
            for c in line.chars() {
                entries.push(match c {
                    '+' => 1,
                    '-' => -1,
                    '0' => 0,
                    other => return Err(Error::parse(i + 2, format!("unexpected char `{other}`"))),
                });
            }
        }
        SignMatrix::new(r, n, entries, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disjunct::td_disjunct;

    #[test]
    fn disjunct_view() {
        let d = td_disjunct(25, 5, 2).unwrap();
        let h = SignMatrix::from_disjunct(&d);
        assert!(h.is_binary());
        assert_eq!((h.max_row_weight(), h.max_col_weight(), h.nnz()), (5, 3, 75));
        assert_eq!(h.disjunct_order(), Some(2));
        let y: Vec<f64> = (0..25).map(|j| j as f64).collect();
        let s = h.syndrome(&y);
        for (i, row) in d.rows().iter().enumerate() {
            assert_eq!(s[i], row.iter_ones().map(|j| j as f64).sum::<f64>());
        }
    }

    #[test]
    fn text_round_trip() {
        let h = SignMatrix::new(2, 3, vec![1, -1, 0, 0, 1, 1], 1.0).unwrap();
        let text = h.to_text();
        assert_eq!(text, "baseline 2 3\n+-0\n0++\n");
        assert_eq!(SignMatrix::from_text(&text).unwrap(), h);
        assert!(SignMatrix::from_text("baseline 1 2\n+x\n").is_err());
        assert!(SignMatrix::new(1, 1, vec![2], 1.0).is_err());
    }
}
