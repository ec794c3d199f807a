use analog_ecc::analog::SignMatrix;
use analog_ecc::disjunct::DisjunctMatrix;
use analog_ecc::spherical::SphericalParityMatrix;
use anyhow::{bail, Context};

/// Any of the three matrix text formats, told apart by the header keyword.
#[derive(Debug, Clone)]
pub enum MatrixFile {
    Disjunct(DisjunctMatrix),
    Spherical(SphericalParityMatrix),
    Baseline(SignMatrix),
}

impl MatrixFile {
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let keyword = text.split_whitespace().next().unwrap_or("");
        Ok(match keyword {
            "disjunct" => MatrixFile::Disjunct(DisjunctMatrix::from_text(text).context("parsing disjunct matrix")?),
            "spherical" => {
                MatrixFile::Spherical(SphericalParityMatrix::from_text(text).context("parsing spherical matrix")?)
            }
            "baseline" => MatrixFile::Baseline(SignMatrix::from_text(text).context("parsing baseline matrix")?),
            other => bail!("unknown matrix format `{other}` (expected disjunct, spherical or baseline)"),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            MatrixFile::Disjunct(_) => "disjunct",
            MatrixFile::Spherical(_) => "spherical",
            MatrixFile::Baseline(_) => "baseline",
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        match self {
            MatrixFile::Disjunct(h) => (h.r(), h.n()),
            MatrixFile::Spherical(h) => (h.r(), h.n()),
            MatrixFile::Baseline(h) => (h.r(), h.n()),
        }
    }
}
