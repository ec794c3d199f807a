use std::path::PathBuf;

use analog_ecc::simbench::{table1_report, Table1Line, Table1Row};
use anyhow::{bail, Context};

use crate::{write_output, Status};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Transversal-design row `n,rho,lambda` with n/rho a prime power (repeatable).
    #[arg(long = "td")]
    td: Vec<String>,
    /// Product transversal-design row `n,rho,lambda` (repeatable).
    #[arg(long = "product")]
    product: Vec<String>,
    /// Kautz-Singleton row `q,l,lambda` (repeatable).
    #[arg(long = "ks")]
    ks: Vec<String>,
    /// Spherical row `n,lambda` (repeatable).
    #[arg(long = "spherical")]
    spherical: Vec<String>,
    /// Baseline row `n,r` (repeatable).
    #[arg(long = "baseline")]
    baseline: Vec<String>,
    /// CSV output file (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn numbers<const N: usize>(text: &str) -> anyhow::Result<[usize; N]> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse().with_context(|| format!("bad number in `{text}`")))
        .collect::<anyhow::Result<_>>()?;
    match parts.try_into() {
        Ok(a) => Ok(a),
        Err(_) => bail!("`{text}` needs {N} comma-separated values"),
    }
}

fn default_rows() -> Vec<Table1Row> {
    vec![
        Table1Row::TdPrimePower { n: 25, rho: 5, lambda: 3 },
        Table1Row::TdProduct { n: 36, rho: 6, lambda: 2 },
        Table1Row::KautzSingleton { q: 4, ell: 1, lambda: 3 },
        Table1Row::KautzSingleton { q: 3, ell: 2, lambda: 2 },
        Table1Row::Spherical { n: 1024, lambda: 2 },
        Table1Row::Baseline { n: 12, r: 4 },
    ]
}

pub fn run(args: Args) -> anyhow::Result<Status> {
    let mut rows = Vec::new();
    for t in &args.td {
        let [n, rho, lambda] = numbers(t)?;
        rows.push(Table1Row::TdPrimePower { n, rho, lambda });
    }
    for t in &args.product {
        let [n, rho, lambda] = numbers(t)?;
        rows.push(Table1Row::TdProduct { n, rho, lambda });
    }
    for t in &args.ks {
        let [q, ell, lambda] = numbers(t)?;
        rows.push(Table1Row::KautzSingleton { q, ell, lambda });
    }
    for t in &args.spherical {
        let [n, lambda] = numbers(t)?;
        rows.push(Table1Row::Spherical { n, lambda });
    }
    for t in &args.baseline {
        let [n, r] = numbers(t)?;
        rows.push(Table1Row::Baseline { n, r });
    }
    if rows.is_empty() {
        rows = default_rows();
    }
    let lines = table1_report(&rows);
    let mut text = format!("# report-table1 rows={}\n{}\n", rows.len(), Table1Line::CSV_HEADER);
    for l in &lines {
        text.push_str(&l.csv_row());
        text.push('\n');
    }
    write_output(args.output.as_deref(), &text)?;
    Ok(Status::Pass)
}
