//! Real-valued codes defined by a parity-check matrix, with decoders for
//! outlying errors.
//!
//! Reads follow `y = c + eps + e` with `||eps||_inf <= 1` (the tolerable
//! threshold is normalised to 1) and `e` sparse. A decoder returns either a
//! set of error locations or the detection flag.

mod code;
mod decode;
mod height;
mod matrix;

pub use code::{code_from_parity, AnalogCode, NULL_SPACE_TOLERANCE};
pub use decode::{
    decode_detect, decode_efficient, decode_generic, height, quantize, supp_delta, DecodeOutcome, DetectDecoder,
    EfficientDecoder, GenericDecoder, GENERIC_BUDGET,
};
pub use height::{height_estimate, HeightEstimate, SNAP_RELATIVE};
pub use matrix::SignMatrix;
