use std::path::PathBuf;

use analog_ecc::binary_codes::{gv_greedy, min_distance};
use analog_ecc::disjunct::{ks_disjunct, td_disjunct, DisjunctMatrix};
use analog_ecc::finite_field::FieldSpec;
use analog_ecc::simbench::baseline_lambda2;
use analog_ecc::spherical::{build_spherical, coherence};
use clap::Subcommand;

use crate::{write_output, Status};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(subcommand)]
    kind: Kind,
    /// Output file (default: stdout).
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Kind {
    /// Spherical matrix from a greedy binary seed code.
    Spherical {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        kappa: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Keep only the first n columns.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Kautz-Singleton style disjunct matrix from polynomials over GF(q).
    Ks {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        ell: usize,
        #[arg(long = "D")]
        d: usize,
    },
    /// Disjunct matrix from a transversal design.
    Td {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rho: usize,
        #[arg(long = "D")]
        d: usize,
    },
    /// Signed matrix with two nonzero entries per column (lambda = 2).
    Baseline2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
}

fn disjunct_summary(h: &DisjunctMatrix) -> String {
    format!(
        "r={} n={} rho={} w={} D={} row_weights={}..{} col_weights={}..{}",
        h.r(),
        h.n(),
        h.max_row_weight(),
        h.max_col_weight(),
        h.order(),
        h.min_row_weight(),
        h.max_row_weight(),
        h.min_col_weight(),
        h.max_col_weight()
    )
}

pub fn run(args: Args) -> anyhow::Result<Status> {
    let (config, text, summary) = match args.kind {
        Kind::Spherical { r, d, kappa, seed, n } => {
            let code = gv_greedy(r, d, kappa, seed)?;
            let h = build_spherical(&code, n)?;
            let mu = coherence(&h)?;
            let summary = format!(
                "r={} n={} kappa={} d_min={} coherence={}/{}{}",
                h.r(),
                h.n(),
                code.dimension(),
                min_distance(&code)?,
                mu.max_abs_dot,
                mu.r,
                if h.is_truncated() { " truncated" } else { "" }
            );
            (
                format!("construct spherical r={r} d={d} kappa={kappa} seed={seed} n={n:?}"),
                h.to_text(),
                summary,
            )
        }
        Kind::Ks { q, ell, d } => {
            let h = ks_disjunct(&FieldSpec::with_order(q)?, ell, d)?;
            (format!("construct ks q={q} ell={ell} D={d}"), h.to_text(), disjunct_summary(&h))
        }
        Kind::Td { n, rho, d } => {
            let h = td_disjunct(n, rho, d)?;
            (format!("construct td n={n} rho={rho} D={d}"), h.to_text(), disjunct_summary(&h))
        }
        Kind::Baseline2 { n, r } => {
            let h = baseline_lambda2(n, r)?;
            let [c1, c2, c3] = h.baseline_conditions();
            let summary = format!(
                "r={} n={} lambda=2 distinct_columns={c1} two_nonzero_first_plus={c2} balanced_rows={c3}",
                h.r(),
                h.n()
            );
            (format!("construct baseline2 n={n} r={r}"), h.to_text(), summary)
        }
    };
    write_output(args.output.as_deref(), &text)?;
    eprintln!("# {config}");
    eprintln!("{summary}");
    Ok(Status::Pass)
}
