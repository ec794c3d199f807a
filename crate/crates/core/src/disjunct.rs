//! Disjunct matrices: verifier, constructions and row-count lower bounds.
//!
//! A 0-1 matrix is D-disjunct when no column's support is contained in the
//! union of the supports of any D other columns.

use std::fmt::Write as _;

use rand::Rng;

use crate::bits::BitRow;
use crate::designs::{incidence_matrix, td_delete_groups, td_linear, td_product, td_to_packing, TransversalDesign};
use crate::error::{Error, Result};
use crate::exec::{trial_rng, Execution};
use crate::finite_field::{factorize, prime_power, FieldSpec};

/// Cap on `C(n, D) * n` for exhaustive verification.
pub const VERIFY_BUDGET: u128 = 100_000_000;
/// Cap on the number of Kautz-Singleton columns `q^(l+1)`.
pub const KS_COLUMN_BUDGET: u64 = 100_000;

#[derive(Debug, Clone)]
pub struct DisjunctMatrix {
    r: usize,
    n: usize,
    /// Row supports, each of length n.
    rows: Vec<BitRow>,
    /// Column supports, each of length r.
    cols: Vec<BitRow>,
    order: usize,
    rho: usize,
    w: usize,
    provenance: String,
}

impl PartialEq for DisjunctMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.n == other.n && self.order == other.order && self.rows == other.rows
    }
}

impl DisjunctMatrix {
    pub fn from_columns(r: usize, cols: Vec<BitRow>, order: usize, provenance: impl Into<String>) -> Result<Self> {
        if cols.iter().any(|c| c.len() != r) {
            return Err(Error::DimensionMismatch(format!("columns must have {r} entries")));
        }
        let n = cols.len();
        let mut rows = vec![BitRow::zeros(n); r];
        for (j, c) in cols.iter().enumerate() {
            for i in c.iter_ones() {
                rows[i].set(j, true);
            }
        }
        Ok(Self::assemble(r, n, rows, cols, order, provenance.into()))
    }

    pub fn from_rows(n: usize, rows: Vec<BitRow>, order: usize, provenance: impl Into<String>) -> Result<Self> {
        if rows.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch(format!("rows must have {n} entries")));
        }
        let r = rows.len();
        let mut cols = vec![BitRow::zeros(r); n];
        for (i, row) in rows.iter().enumerate() {
            for j in row.iter_ones() {
                cols[j].set(i, true);
            }
        }
        Ok(Self::assemble(r, n, rows, cols, order, provenance.into()))
    }

    fn assemble(r: usize, n: usize, rows: Vec<BitRow>, cols: Vec<BitRow>, order: usize, provenance: String) -> Self {
        let rho = rows.iter().map(BitRow::count_ones).max().unwrap_or(0);
        let w = cols.iter().map(BitRow::count_ones).max().unwrap_or(0);
        DisjunctMatrix {
            r,
            n,
            rows,
            cols,
            order,
            rho,
            w,
            provenance,
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Claimed disjunct order.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    pub fn columns(&self) -> &[BitRow] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    /// Copy with entry `(i, j)` flipped; the claimed order is kept.
    pub fn with_flipped(&self, i: usize, j: usize) -> Self {
        let mut rows = self.rows.clone();
        let v = rows[i].get(j);
        rows[i].set(j, !v);
        DisjunctMatrix::from_rows(self.n, rows, self.order, format!("{} (mutated)", self.provenance))
            .expect("same shape")
    }

    pub fn max_row_weight(&self) -> usize {
        self.rho
    }

    pub fn max_col_weight(&self) -> usize {
        self.w
    }

    pub fn min_row_weight(&self) -> usize {
        self.rows.iter().map(BitRow::count_ones).min().unwrap_or(0)
    }

    pub fn min_col_weight(&self) -> usize {
        self.cols.iter().map(BitRow::count_ones).min().unwrap_or(0)
    }

    /// (H1): every row has weight at least 2.
    pub fn satisfies_h1(&self) -> bool {
        self.min_row_weight() >= 2
    }

    pub fn columns_distinct(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.n);
        self.cols.iter().all(|c| seen.insert(c))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "disjunct {} {} {}", self.r, self.n, self.order);
        for row in &self.rows {
            let _ = writeln!(s, "{}", row.render('0', '1'));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|e| Error::parse(1, e.to_string()));
        let (r, n, d) = match toks.as_slice() {
            ["disjunct", r, n, d] => (num(r)?, num(n)?, num(d)?),
            _ => return Err(Error::parse(1, "expected `disjunct r n D`")),
        };
        let mut rows = Vec::with_capacity(r);
        for i in 0..r {
            let line = lines.next().ok_or_else(|| Error::parse(i + 2, "missing matrix row"))?;
            let row = BitRow::parse(line.trim_end(), '0', '1')
                .filter(|row| row.len() == n)
                .ok_or_else(|| Error::parse(i + 2, format!("expected {n} chars over {{0,1}}")))?;
            rows.push(row);
        }
        if let Some((k, extra)) = lines.enumerate().find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::parse(r + 2 + k, format!("unexpected trailing line `{extra}`")));
        }
        DisjunctMatrix::from_rows(n, rows, d, "file")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    /// Random spot checks: a pass is not a proof.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjunctVerdict {
    pub holds: bool,
    pub mode: VerifyMode,
    /// Column `j` and a set `J` of `D` other columns covering it.
    pub witness: Option<(usize, Vec<usize>)>,
}

/// `C(n, k)` saturating at `u128::MAX`.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn check_order(h: &DisjunctMatrix, d: usize) -> Result<()> {
    if h.n == 0 || d + 1 > h.n {
        return Err(Error::InvalidParameter(format!(
            "order {d} needs at least {} columns, matrix has {}",
            d + 1,
            h.n
        )));
    }
    Ok(())
}

/// Exact test of D-disjunctness.
///
/// For each column, searches for at most `D` other columns whose union
/// covers its support, branching on the first uncovered row. The search is
/// exhaustive, so the answer equals the definitional predicate over all
/// D-subsets; the definitional enumeration budget is still enforced.
pub fn verify_disjunct(h: &DisjunctMatrix, d: usize, exec: Execution) -> Result<DisjunctVerdict> {
    check_order(h, d)?;
    let needed = binomial_u128(h.n as u64, d as u64).saturating_mul(h.n as u128);
    if needed > VERIFY_BUDGET {
        return Err(Error::BudgetExceeded {
            needed,
            budget: VERIFY_BUDGET,
        });
    }
    let covers = exec.map_indexed(h.n, |j| {
        let mut chosen = Vec::with_capacity(d);
        find_cover(h, j, &h.cols[j], d, &mut chosen).then_some(chosen)
    });
    let witness = covers
        .into_iter()
        .enumerate()
        .find_map(|(j, c)| c.map(|c| (j, pad_witness(h.n, j, c, d))));
    Ok(DisjunctVerdict {
        holds: witness.is_none(),
        mode: VerifyMode::Exhaustive,
        witness,
    })
}

fn find_cover(h: &DisjunctMatrix, j: usize, uncovered: &BitRow, budget: usize, chosen: &mut Vec<usize>) -> bool {
    let Some(i) = uncovered.first_one() else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for k in h.rows[i].iter_ones() {
        if k == j || chosen.contains(&k) {
            continue;
        }
        let mut rest = uncovered.clone();
        rest.difference_assign(&h.cols[k]);
        chosen.push(k);
        if find_cover(h, j, &rest, budget - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Fills a cover up to exactly `d` columns with the smallest unused indices.
fn pad_witness(n: usize, j: usize, mut cover: Vec<usize>, d: usize) -> Vec<usize> {
    let mut k = 0;
    while cover.len() < d {
        if k != j && !cover.contains(&k) {
            cover.push(k);
        }
        k += 1;
        debug_assert!(k <= n);
    }
    cover.sort_unstable();
    cover
}

/// Random spot check of `samples` pairs `(j, J)`.
pub fn verify_disjunct_sampled(
    h: &DisjunctMatrix,
    d: usize,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<DisjunctVerdict> {
    check_order(h, d)?;
    let found = exec.map_indexed(samples, |t| {
        let mut rng = trial_rng(seed, t as u64);
        let j = rng.random_range(0..h.n);
        let mut others: Vec<usize> = rand::seq::index::sample(&mut rng, h.n - 1, d)
            .into_iter()
            .map(|k| if k >= j { k + 1 } else { k })
            .collect();
        others.sort_unstable();
        let mut union = BitRow::zeros(h.r);
        for &k in &others {
            union.or_assign(&h.cols[k]);
        }
        h.cols[j].is_subset_of(&union).then_some((j, others))
    });
    let witness = found.into_iter().flatten().next();
    Ok(DisjunctVerdict {
        holds: witness.is_none(),
        mode: VerifyMode::Sampled { samples, seed },
        witness,
    })
}

/// Modified Kautz-Singleton matrix from polynomials of degree at most `l`.
///
/// Column `sum_k c_k q^k` is the polynomial with coefficients `c_k`; row
/// `i*q + gamma` tests whether it takes value `gamma` at the `i`-th field
/// element, for the first `l*D + 1` elements.
pub fn ks_disjunct(f: &FieldSpec, ell: usize, d: usize) -> Result<DisjunctMatrix> {
    let q = f.order() as usize;
    if ell == 0 || d == 0 {
        return Err(Error::InvalidParameter("l and D must be positive".into()));
    }
    let points = ell * d + 1;
    if points > q {
        return Err(Error::Infeasible(format!(
            "l*D + 1 <= q violated: l*D + 1 = {points}, q = {q}"
        )));
    }
    let n = (q as u64)
        .checked_pow(ell as u32 + 1)
        .filter(|&n| n <= KS_COLUMN_BUDGET)
        .ok_or_else(|| Error::BudgetExceeded {
            needed: (q as u128).saturating_pow(ell as u32 + 1),
            budget: KS_COLUMN_BUDGET as u128,
        })? as usize;
    let r = points * q;
    let mut cols = Vec::with_capacity(n);
    let mut coeffs = vec![0u32; ell + 1];
    for idx in 0..n {
        let mut rest = idx;
        for c in coeffs.iter_mut() {
            *c = (rest % q) as u32;
            rest /= q;
        }
        let mut col = BitRow::zeros(r);
        for x in 0..points {
            let v = f.poly_eval(&coeffs, x as u32) as usize;
            col.set(x * q + v, true);
        }
        cols.push(col);
    }
    DisjunctMatrix::from_columns(r, cols, d, format!("ks q={q} l={ell} D={d}"))
}

/// Disjunct matrix with constant row weight `rho` and column weight `D+1`
/// from a resolvable transversal design on `n / rho` symbols.
pub fn td_disjunct(n: usize, rho: usize, d: usize) -> Result<DisjunctMatrix> {
    if rho == 0 || n == 0 || d == 0 {
        return Err(Error::InvalidParameter("n, rho and D must be positive".into()));
    }
    if !n.is_multiple_of(rho) {
        return Err(Error::Infeasible(format!("rho | n violated: {rho} does not divide {n}")));
    }
    if rho * rho > n {
        return Err(Error::Infeasible(format!("rho <= sqrt(n) violated: rho = {rho}, n = {n}")));
    }
    let g = n / rho;
    let g32 = u32::try_from(g).map_err(|_| Error::InvalidParameter(format!("n/rho = {g} too large")))?;
    let td = if prime_power(g32).is_some() {
        if d + 1 > rho {
            return Err(Error::Infeasible(format!(
                "D+1 <= rho violated: D+1 = {}, rho = {rho}",
                d + 1
            )));
        }
        td_linear(&FieldSpec::with_order(g32)?)?
    } else {
        let factors = factorize(g32);
        let smallest = factors
            .iter()
            .map(|&(p, e)| p.pow(e) as usize)
            .min()
            .expect("composite n/rho has factors");
        if d >= smallest.min(rho) {
            return Err(Error::Infeasible(format!(
                "D < min{{p^e, rho}} violated: D = {d}, p^e = {smallest}, rho = {rho}"
            )));
        }
        product_td(&factors, smallest)?
    };
    let packing = td_to_packing(&td, d + 1, rho)?;
    let mut h = incidence_matrix(&packing)?;
    h.order = d;
    h.provenance = format!("td n={n} rho={rho} D={d}");
    Ok(h)
}

/// Product of the linear TDs of each prime-power factor, each cut to `s` groups.
fn product_td(factors: &[(u32, u32)], s: usize) -> Result<TransversalDesign> {
    let mut acc: Option<TransversalDesign> = None;
    for &(p, e) in factors {
        let t = td_delete_groups(&td_linear(&FieldSpec::new(p, e)?)?, s)?;
        acc = Some(match acc {
            None => t,
            Some(a) => td_product(&a, &t)?,
        });
    }
    Ok(acc.expect("at least one factor"))
}

/// Basic lower bound on the rows of a (D, rho)-disjunct matrix with n columns.
pub fn lower_bound_basic(n: usize, rho: usize, d: usize) -> Result<usize> {
    if n == 0 || rho == 0 {
        return Err(Error::InvalidParameter("n and rho must be positive".into()));
    }
    if rho > d + 1 {
        Ok(((d + 1) * n).div_ceil(rho))
    } else {
        Ok(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllBound {
    pub value: f64,
    /// True when the bound is non-positive and says nothing.
    pub vacuous: bool,
}

/// `(l D + 1) / rho * (n - max{C(r, l), C(2l, l)})` evaluated at `r`.
pub fn lower_bound_ell(n: usize, rho: usize, d: usize, ell: usize, r: usize) -> Result<EllBound> {
    if ell == 0 || rho < ell * d + 1 {
        return Err(Error::InvalidParameter(format!(
            "need l >= 1 and rho >= l*D + 1 (l = {ell}, rho = {rho}, D = {d})"
        )));
    }
    let big = binomial_f64(r, ell).max(binomial_f64(2 * ell, ell));
    let value = (ell * d + 1) as f64 / rho as f64 * (n as f64 - big);
    Ok(EllBound {
        value,
        vacuous: value <= 0.0,
    })
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Definitional oracle: every D-subset of other columns, union, compare.
    fn brute_force(h: &DisjunctMatrix, d: usize) -> bool {
        fn rec(h: &DisjunctMatrix, j: usize, start: usize, left: usize, union: &BitRow) -> bool {
            if left == 0 {
                return !h.columns()[j].is_subset_of(union);
            }
            (start..h.n()).filter(|&k| k != j).all(|k| {
                let mut u = union.clone();
                u.or_assign(&h.columns()[k]);
                rec(h, j, k + 1, left - 1, &u)
            })
        }
        (0..h.n()).all(|j| rec(h, j, 0, d, &BitRow::zeros(h.r())))
    }

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::with_order(q).unwrap()
    }

    #[test]
    fn td_matrix_orders() {
        let h = td_disjunct(25, 5, 2).unwrap();
        assert_eq!((h.r(), h.n()), (15, 25));
        let v = verify_disjunct(&h, 2, Execution::Parallel).unwrap();
        assert!(v.holds && v.witness.is_none());
        assert!(brute_force(&h, 2));
        let v3 = verify_disjunct(&h, 3, Execution::Parallel).unwrap();
        assert!(!v3.holds);
        let (j, cover) = v3.witness.unwrap();
        assert_eq!(cover.len(), 3);
        assert!(!cover.contains(&j));
        let mut union = BitRow::zeros(h.r());
        for &k in &cover {
            union.or_assign(&h.columns()[k]);
        }
        assert!(h.columns()[j].is_subset_of(&union));
        assert!(!brute_force(&h, 3));
    }

    #[test]
    fn identity_is_maximally_disjunct() {
        let n = 6;
        let cols = (0..n).map(|j| BitRow::from_indices(n, [j])).collect();
        let h = DisjunctMatrix::from_columns(n, cols, n - 1, "identity").unwrap();
        assert!(verify_disjunct(&h, n - 1, Execution::Sequential).unwrap().holds);
        assert!(verify_disjunct(&h, n, Execution::Sequential).is_err());
    }

    #[test]
    fn zero_column_fails_order_zero() {
        let cols = vec![BitRow::from_indices(2, [0]), BitRow::zeros(2)];
        let h = DisjunctMatrix::from_columns(2, cols, 0, "x").unwrap();
        let v = verify_disjunct(&h, 0, Execution::Sequential).unwrap();
        assert_eq!(v.witness, Some((1, vec![])));
    }

    #[test]
    fn budget_is_enforced() {
        let n = 400;
        let cols = (0..n).map(|j| BitRow::from_indices(n, [j])).collect();
        let h = DisjunctMatrix::from_columns(n, cols, 3, "identity").unwrap();
        assert!(matches!(
            verify_disjunct(&h, 3, Execution::Parallel),
            Err(Error::BudgetExceeded { .. })
        ));
        let s = verify_disjunct_sampled(&h, 3, 500, 1, Execution::Parallel).unwrap();
        assert!(s.holds);
        assert_eq!(s.mode, VerifyMode::Sampled { samples: 500, seed: 1 });
    }

    #[test]
    fn ks_examples() {
        for (q, ell, d, r, n, rw, cw) in [
            (3, 1, 1, 6, 9, 3, 2),
            (4, 1, 2, 12, 16, 4, 3),
            (3, 2, 1, 9, 27, 9, 3),
            (5, 2, 2, 25, 125, 25, 5),
            (7, 1, 3, 28, 49, 7, 4),
        ] {
            let h = ks_disjunct(&gf(q), ell, d).unwrap();
            assert_eq!((h.r(), h.n()), (r, n), "q={q}");
            assert_eq!((h.min_row_weight(), h.max_row_weight()), (rw, rw));
            assert_eq!((h.min_col_weight(), h.max_col_weight()), (cw, cw));
            assert!(verify_disjunct(&h, d, Execution::Parallel).unwrap().holds);
            if n <= 30 {
                assert!(brute_force(&h, d));
            }
            // distinct polynomials agree on at most l points
            for a in 0..n {
                for b in a + 1..n {
                    assert!(h.columns()[a].overlap(&h.columns()[b]) <= ell);
                }
            }
        }
        assert!(matches!(ks_disjunct(&gf(3), 1, 3), Err(Error::Infeasible(_))));
    }

    #[test]
    fn product_case() {
        let h = td_disjunct(36, 6, 1).unwrap();
        assert_eq!((h.r(), h.n(), h.order()), (12, 36, 1));
        assert_eq!((h.min_row_weight(), h.max_row_weight()), (6, 6));
        assert_eq!((h.min_col_weight(), h.max_col_weight()), (2, 2));
        assert!(verify_disjunct(&h, 1, Execution::Parallel).unwrap().holds);
        assert!(brute_force(&h, 1));
        let e = td_disjunct(36, 6, 2).unwrap_err();
        assert!(e.to_string().contains("D < min{p^e, rho}"), "{e}");
    }

    #[test]
    fn td_preconditions_name_clause() {
        let e = td_disjunct(25, 5, 5).unwrap_err();
        assert!(e.to_string().contains("D+1 <= rho"), "{e}");
        assert!(td_disjunct(24, 5, 1).is_err());
        assert!(td_disjunct(20, 5, 1).is_err());
    }

    #[test]
    fn td_family_attains_basic_bound() {
        for (n, rho, d) in [(25, 5, 2), (25, 5, 4), (16, 4, 1), (49, 7, 3), (64, 8, 2), (36, 6, 1), (100, 10, 1)] {
            let h = td_disjunct(n, rho, d).unwrap();
            assert_eq!(h.r(), lower_bound_basic(n, rho, d).unwrap(), "n={n}");
            assert!(h.satisfies_h1());
            assert_eq!(h.max_col_weight(), d + 1);
            assert!(verify_disjunct(&h, d, Execution::Parallel).unwrap().holds, "n={n}");
        }
    }

    #[test]
    fn basic_bound_values() {
        assert_eq!(lower_bound_basic(25, 5, 2).unwrap(), 15);
        assert_eq!(lower_bound_basic(30, 3, 2).unwrap(), 30);
        assert_eq!(lower_bound_basic(16, 4, 2).unwrap(), 12);
        assert_eq!(ks_disjunct(&gf(4), 1, 2).unwrap().r(), 12);
    }

    #[test]
    fn ell_bound() {
        let b = lower_bound_ell(16, 4, 2, 1, 12).unwrap();
        assert!((b.value - 3.0).abs() < 1e-12 && !b.vacuous);
        let v = lower_bound_ell(27, 9, 1, 2, 9).unwrap();
        assert!(v.vacuous);
        assert!(lower_bound_ell(16, 2, 2, 1, 12).is_err());
    }

    #[test]
    fn text_round_trip_and_mutation() {
        let h = td_disjunct(25, 5, 2).unwrap();
        let text = h.to_text();
        assert!(text.starts_with("disjunct 15 25 2\n"));
        let back = DisjunctMatrix::from_text(&text).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.to_text(), text);
        // clearing a bit lowers a column weight to 2, so two others can cover it
        let i = h.columns()[0].first_one().unwrap();
        let m = h.with_flipped(i, 0);
        let v = verify_disjunct(&m, 2, Execution::Parallel).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness.as_ref().unwrap().0, 0);
        assert!(DisjunctMatrix::from_text("disjunct 2 2 1\n01\n").is_err());
        assert!(DisjunctMatrix::from_text("disjunct 1 2 1\n0x\n").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_u128(24, 2), 276);
        assert_eq!(binomial_u128(5, 7), 0);
        assert_eq!(binomial_u128(300, 150), u128::MAX);
        assert_eq!(binomial_f64(9, 2), 36.0);
    }
}
