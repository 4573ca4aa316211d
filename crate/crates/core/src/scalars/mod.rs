//! Exact cyclotomic arithmetic, the ring parameters a, s, v and the formal
//! normalization constant η.

mod context;
mod embed;
mod ext;
mod field;
mod json;

pub use context::{root_order, split_alpha_beta, ContextKind, ReducedParams, RingContext};
pub use embed::{embed, embed_fixed, Approx};
pub use ext::{ExtScalar, Theory};
pub use field::{cyclotomic_poly, CycScalar, CycloField};
pub use json::{complex_json, round_sig, scalar_from_json, scalar_to_json};

/// Default number of decimal digits for complex output.
pub const DEFAULT_DIGITS: u32 = 30;

impl CycScalar {
    /// Value at ζ = exp(2πi/M) within 10^{-digits}.
    pub fn embed_complex(&self, digits: u32) -> Approx {
        embed(self, digits)
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        embed(self, 20).to_c64()
    }
}
