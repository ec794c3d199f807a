use std::path::PathBuf;

use analog_ecc::disjunct::{
    lower_bound_basic, lower_bound_ell, verify_disjunct, verify_disjunct_sampled, DisjunctMatrix, VerifyMode,
};
use analog_ecc::spherical::{
    coherence, gamma_bounds, noise_norm_monte_carlo, reports_to_csv, rip_monte_carlo, row_orthogonality_check,
    SphericalParityMatrix,
};
use analog_ecc::Error;
use anyhow::bail;
use clap::ValueEnum;

use crate::matrix_file::MatrixFile;
use crate::{read_input, Ctx, Status};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Check {
    Disjunct,
    Coherence,
    Rip,
    Rows,
    Bounds,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Matrix file (disjunct, spherical or baseline format).
    file: PathBuf,
    /// Checks to run, comma separated.
    #[arg(long = "check", value_enum, value_delimiter = ',', required = true)]
    checks: Vec<Check>,
    /// Disjunct order to test (default: the order in the file header).
    #[arg(long = "D")]
    d: Option<usize>,
    /// Fall back to this many random spot checks when exhaustive
    /// verification is over budget.
    #[arg(long)]
    sampled: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo trials for the rip check.
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Sparsity for the rip check (default: ceil(1/coherence)).
    #[arg(long)]
    lambda: Option<usize>,
    /// Coherence ceiling for the coherence check.
    #[arg(long)]
    max_coherence: Option<f64>,
}

pub fn run(args: Args, ctx: Ctx) -> anyhow::Result<Status> {
    let m = MatrixFile::parse(&read_input(&args.file)?)?;
    let (r, n) = m.dims();
    let names: Vec<String> = args.checks.iter().map(|c| format!("{c:?}").to_lowercase()).collect();
    println!(
        "# verify format={} r={r} n={n} checks={} D={:?} sampled={:?} seed={} trials={} lambda={:?}",
        m.kind(),
        names.join(","),
        args.d,
        args.sampled,
        args.seed,
        args.trials,
        args.lambda
    );
    let mut all = true;
    for check in &args.checks {
        let pass = match (check, &m) {
            (Check::Disjunct, MatrixFile::Disjunct(h)) => check_disjunct(h, &args, ctx)?,
            (Check::Rows, MatrixFile::Disjunct(h)) => rows_disjunct(h, args.d),
            (Check::Bounds, MatrixFile::Disjunct(h)) => bounds_disjunct(h, args.d)?,
            (Check::Coherence, MatrixFile::Spherical(h)) => check_coherence(h, args.max_coherence)?,
            (Check::Rip, MatrixFile::Spherical(h)) => check_rip(h, &args, ctx)?,
            (Check::Rows, MatrixFile::Spherical(h)) => {
                let ok = row_orthogonality_check(h);
                println!("rows: {} (pairwise row orthogonality)", verdict(ok));
                ok
            }
            (Check::Bounds, MatrixFile::Spherical(h)) => bounds_spherical(h)?,
            (Check::Rows, MatrixFile::Baseline(h)) => {
                let [a, b, c] = h.baseline_conditions();
                println!(
                    "rows: {} distinct_columns={a} two_nonzero_first_plus={b} balanced_rows={c}",
                    verdict(a && b && c)
                );
                a && b && c
            }
            (Check::Bounds, MatrixFile::Baseline(h)) => {
                println!(
                    "bounds: attainable ratio 2*ceil(2n/r) = {}",
                    2 * (2 * h.n()).div_ceil(h.r())
                );
                true
            }
            (c, m) => bail!("check `{c:?}` does not apply to {} matrices", m.kind()),
        };
        all &= pass;
    }
    Ok(Status::from_pass(all))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn check_disjunct(h: &DisjunctMatrix, args: &Args, ctx: Ctx) -> anyhow::Result<bool> {
    let d = args.d.unwrap_or(h.order());
    let v = match verify_disjunct(h, d, ctx.exec) {
        Ok(v) => v,
        Err(Error::BudgetExceeded { needed, budget }) => match args.sampled {
            Some(samples) => verify_disjunct_sampled(h, d, samples, args.seed, ctx.exec)?,
            None => bail!(
                "exhaustive check needs {needed} subset tests, budget is {budget}; pass --sampled N for spot checks"
            ),
        },
        Err(e) => return Err(e.into()),
    };
    let mode = match v.mode {
        VerifyMode::Exhaustive => "exhaustive".to_string(),
        VerifyMode::Sampled { samples, seed } => format!("sampled, not proven: {samples} samples, seed {seed}"),
    };
    match &v.witness {
        None => println!("disjunct D={d}: PASS ({mode})"),
        Some((j, cover)) => {
            let set: Vec<String> = cover.iter().map(|k| k.to_string()).collect();
            println!("disjunct D={d}: FAIL ({mode}) witness j={j} J={{{}}}", set.join(","));
        }
    }
    Ok(v.holds)
}

fn rows_disjunct(h: &DisjunctMatrix, d: Option<usize>) -> bool {
    let d = d.unwrap_or(h.order());
    let distinct = h.columns_distinct();
    let h1 = h.satisfies_h1();
    let weight_ok = !h1 || h.min_col_weight() > d;
    println!(
        "rows: {} r={} n={} row_weights={}..{} col_weights={}..{} distinct_columns={distinct} h1={h1}",
        verdict(distinct && weight_ok),
        h.r(),
        h.n(),
        h.min_row_weight(),
        h.max_row_weight(),
        h.min_col_weight(),
        h.max_col_weight()
    );
    distinct && weight_ok
}

fn bounds_disjunct(h: &DisjunctMatrix, d: Option<usize>) -> anyhow::Result<bool> {
    let d = d.unwrap_or(h.order());
    let (n, rho, r) = (h.n(), h.max_row_weight(), h.r());
    let basic = lower_bound_basic(n, rho, d)?;
    let mut ok = r >= basic;
    println!("bounds: basic lower bound {basic}, r = {r}: {}", verdict(r >= basic));
    for ell in 1..=8 {
        if rho < ell * d + 1 {
            break;
        }
        let b = lower_bound_ell(n, rho, d, ell, r)?;
        let pass = r as f64 >= b.value;
        ok &= pass;
        println!(
            "bounds: l={ell} lower bound {:.6}{}, r = {r}: {}",
            b.value,
            if b.vacuous { " (vacuous)" } else { "" },
            verdict(pass)
        );
    }
    Ok(ok)
}

fn check_coherence(h: &SphericalParityMatrix, ceiling: Option<f64>) -> anyhow::Result<bool> {
    let mu = coherence(h)?;
    let ok = match ceiling {
        Some(c) => mu.value() <= c,
        None => mu.max_abs_dot < mu.r as i64,
    };
    println!(
        "coherence: {} mu = {}/{} = {}{}",
        verdict(ok),
        mu.max_abs_dot,
        mu.r,
        mu.value(),
        ceiling.map(|c| format!(" (ceiling {c})")).unwrap_or_default()
    );
    Ok(ok)
}

fn default_lambda(mu: f64, n: usize) -> usize {
    if mu > 0.0 {
        ((1.0 / mu).ceil() as usize).min(n)
    } else {
        n
    }
}

fn check_rip(h: &SphericalParityMatrix, args: &Args, ctx: Ctx) -> anyhow::Result<bool> {
    let mu = coherence(h)?.value();
    let lambda = args.lambda.unwrap_or_else(|| default_lambda(mu, h.n()));
    let mut reports = rip_monte_carlo(h, lambda, args.trials, args.seed, ctx.exec)?.to_vec();
    reports.push(noise_norm_monte_carlo(h, args.trials, args.seed, ctx.exec));
    print!("{}", reports_to_csv(&reports));
    let ok = reports.iter().all(|r| r.passed());
    println!("rip: {}", verdict(ok));
    Ok(ok)
}

fn bounds_spherical(h: &SphericalParityMatrix) -> anyhow::Result<bool> {
    let mu = coherence(h)?.value();
    if !(mu > 0.0 && mu < 1.0) {
        println!("bounds: coherence {mu} outside (0,1), bounds inapplicable");
        return Ok(true);
    }
    for lambda in 1..=default_lambda(mu, h.n()).min(64) {
        let b = gamma_bounds(h.n(), h.r(), mu, lambda)?;
        println!(
            "bounds: lambda={lambda} eta={:.6} coherence_rip={} infinity_norm={}",
            b.eta, b.coherence_rip, b.infinity_norm
        );
    }
    Ok(true)
}
