//! Analog error-correcting codes for vector-matrix multiplication on
//! resistive crossbars.
//!
//! The crate builds parity-check matrices (spherical codes from binary seed
//! codes, disjunct matrices from Reed-Solomon style and transversal-design
//! constructions), decodes outlying errors in simulated crossbar reads, and
//! verifies the combinatorial and numerical properties the decoders rely on.

pub mod analog;
pub mod binary_codes;
pub mod bits;
pub mod designs;
pub mod disjunct;
pub mod error;
pub mod exec;
pub mod finite_field;
pub mod simbench;
pub mod spherical;

pub use error::{Error, Result};
pub use exec::Execution;
