use crate::finite_field::{factorize, prime_power};
use crate::spherical::cor8_params;

/// One requested row of the parameter summary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Table1Row {
    /// Transversal-design codes with `n / rho` a prime power.
    TdPrimePower { n: usize, rho: usize, lambda: usize },
    /// Transversal-design codes via products for general `n / rho`.
    TdProduct { n: usize, rho: usize, lambda: usize },
    /// Kautz-Singleton codes with `n = q^(l+1)`.
    KautzSingleton { q: usize, ell: usize, lambda: usize },
    /// Spherical codes with `r = 2 lambda^2 ceil(ln 2n)`.
    Spherical { n: usize, lambda: usize },
    /// Two-nonzero-per-column signed codes for lambda = 2.
    Baseline { n: usize, r: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Line {
    pub construction: &'static str,
    pub n: usize,
    pub r: Option<usize>,
    pub lambda: usize,
    /// Attainable outlier-to-noise ratio.
    pub ratio: Option<f64>,
    /// Empty when feasible, otherwise the violated condition.
    pub note: String,
}

impl Table1Line {
    pub const CSV_HEADER: &'static str = "construction,n,r,lambda,ratio,note";

    pub fn feasible(&self) -> bool {
        self.note.is_empty()
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.construction,
            self.n,
            self.r.map(|r| r.to_string()).unwrap_or_default(),
            self.lambda,
            self.ratio.map(|x| format!("{x:.6}")).unwrap_or_default(),
            self.note
        )
    }
}

fn line(construction: &'static str, n: usize, lambda: usize, r: usize, ratio: f64, issues: Vec<String>) -> Table1Line {
    let ok = issues.is_empty();
    Table1Line {
        construction,
        n,
        r: ok.then_some(r),
        lambda,
        ratio: ok.then_some(ratio),
        note: issues.join("; "),
    }
}

fn td_common(n: usize, rho: usize, lambda: usize, issues: &mut Vec<String>) {
    if rho == 0 || !n.is_multiple_of(rho) {
        issues.push("infeasible: rho must divide n".into());
    }
    if rho * rho > n {
        issues.push("infeasible: rho <= sqrt(n)".into());
    }
    if lambda == 0 || lambda > rho {
        issues.push("infeasible: lambda <= rho".into());
    }
}

/// Evaluates the row-count and outlier-ratio formulas of each requested
/// construction. Infeasible requests stay in the table with a note.
pub fn table1_report(rows: &[Table1Row]) -> Vec<Table1Line> {
    rows.iter().map(|row| table1_line(*row)).collect()
}

fn table1_line(row: Table1Row) -> Table1Line {
    match row {
        Table1Row::TdPrimePower { n, rho, lambda } => {
            let mut issues = Vec::new();
            td_common(n, rho, lambda, &mut issues);
            if issues.is_empty() && prime_power((n / rho) as u32).is_none() {
                issues.push("infeasible: n/rho must be a prime power".into());
            }
            let r = (lambda * n).checked_div(rho).unwrap_or(0);
            line("td-prime-power", n, lambda, r, 2.0 * (lambda * n) as f64 / r as f64, issues)
        }
        Table1Row::TdProduct { n, rho, lambda } => {
            let mut issues = Vec::new();
            td_common(n, rho, lambda, &mut issues);
            if issues.is_empty() {
                let smallest = factorize((n / rho) as u32)
                    .iter()
                    .map(|&(p, e)| p.pow(e) as usize)
                    .min()
                    .unwrap_or(1);
                if lambda > smallest {
                    issues.push(format!("infeasible: lambda <= min p^e = {smallest}"));
                }
            }
            let r = (lambda * n).checked_div(rho).unwrap_or(0);
            line("td-product", n, lambda, r, 2.0 * (lambda * n) as f64 / r as f64, issues)
        }
        Table1Row::KautzSingleton { q, ell, lambda } => {
            let mut issues = Vec::new();
            if prime_power(q as u32).is_none() {
                issues.push("infeasible: q must be a prime power".into());
            }
            if ell == 0 || lambda == 0 || lambda > q.div_ceil(ell.max(1)) {
                issues.push("infeasible: lambda <= ceil(q/l)".into());
            }
            let n = q.checked_pow(ell as u32 + 1).unwrap_or(usize::MAX);
            let a = (ell * lambda + 1).saturating_sub(ell);
            let r = a * q;
            line("kautz-singleton", n, lambda, r, 2.0 * (a * n) as f64 / r as f64, issues)
        }
        Table1Row::Spherical { n, lambda } => match cor8_params(n, lambda) {
            Ok(p) => line("spherical", n, lambda, p.r, 8f64.sqrt() * n as f64 / (p.r as f64).sqrt(), vec![]),
            Err(e) => line("spherical", n, lambda, 0, 0.0, vec![format!("infeasible: {e}")]),
        },
        Table1Row::Baseline { n, r } => {
            let mut issues = Vec::new();
            if r < 2 || r % 2 == 1 {
                issues.push("infeasible: r must be even".into());
            }
            if r > n || n > r * r.saturating_sub(1) {
                issues.push("infeasible: r <= n <= r(r-1)".into());
            }
            let ratio = 2.0 * (2 * n).div_ceil(r.max(1)) as f64;
            line("baseline", n, 2, r, ratio, issues)
        }
    }
}
