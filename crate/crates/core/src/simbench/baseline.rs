use crate::analog::SignMatrix;
use crate::error::{Error, Result};

/// Perfect matchings of the complete graph on `r` (even) vertices, by the
/// circle method; every edge appears exactly once.
fn one_factorization(r: usize) -> Vec<Vec<(usize, usize)>> {
    let m = r - 1;
    (0..m)
        .map(|k| {
            let mut round = vec![(k.min(m), k.max(m))];
            for i in 1..r / 2 {
                let a = (k + i) % m;
                let b = (k + m - i) % m;
                round.push((a.min(b), a.max(b)));
            }
            round
        })
        .collect()
}

/// `r x n` matrix over `{-1, 0, 1}` whose columns are distinct, have exactly
/// two nonzero entries with the first equal to +1, and whose row weights
/// are `floor(2n/r)` or `ceil(2n/r)`.
///
/// Columns walk a 1-factorization of `K_r` twice, first with second entry
/// +1 and then -1. Each complete matching adds one to every row weight, so
/// any prefix is balanced.
pub fn baseline_lambda2(n: usize, r: usize) -> Result<SignMatrix> {
    if r < 2 || r % 2 == 1 {
        return Err(Error::Infeasible(format!("r must be even and at least 2, got {r}")));
    }
    if n == 0 || n > r * (r - 1) {
        return Err(Error::Infeasible(format!(
            "n <= r(r-1) violated: n = {n}, r(r-1) = {}",
            r * (r - 1)
        )));
    }
    let rounds = one_factorization(r);
    let mut entries = vec![0i8; r * n];
    let columns = [1i8, -1]
        .into_iter()
        .flat_map(|sign| rounds.iter().flatten().map(move |&(a, b)| (a, b, sign)))
        .take(n);
    for (j, (a, b, sign)) in columns.enumerate() {
        entries[a * n + j] = 1;
        entries[b * n + j] = sign;
    }
    let h = SignMatrix::new(r, n, entries, 1.0)?;
    debug_assert_eq!(h.baseline_conditions(), [true; 3]);
    Ok(h)
}
