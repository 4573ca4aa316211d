//! Scalars extended by a formal square root η with η² = ⟨Ω⟩^{-1}.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::embed::{embed_fixed, inv_sqrt_fixed, working_bits, Approx};
use super::field::CycScalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Su,
    Psu,
    Reduced,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::Su => "su",
            Theory::Psu => "psu",
            Theory::Reduced => "reduced",
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Theory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Theory> {
        match s {
            "su" => Ok(Theory::Su),
            "psu" => Ok(Theory::Psu),
            "reduced" => Ok(Theory::Reduced),
            _ => Err(Error::Parse(format!("unknown theory '{s}'"))),
        }
    }
}

/// base · η^{eta_pow} with eta_pow ∈ {0, 1}.
#[derive(Clone, Debug)]
pub struct ExtScalar {
    pub base: CycScalar,
    pub eta_pow: u8,
    pub theory: Theory,
    omega: Arc<CycScalar>,
}

impl PartialEq for ExtScalar {
    fn eq(&self, other: &Self) -> bool {
        self.theory == other.theory
            && self.omega == other.omega
            && (self.base.is_zero() && other.base.is_zero()
                || self.eta_pow == other.eta_pow && self.base == other.base)
    }
}

impl ExtScalar {
    /// `omega` is ⟨Ω⟩ of the theory, so that η² = omega^{-1}.
    pub fn new(base: CycScalar, theory: Theory, omega: Arc<CycScalar>) -> ExtScalar {
        ExtScalar { base, eta_pow: 0, theory, omega }
    }

    pub fn omega(&self) -> &Arc<CycScalar> {
        &self.omega
    }

    /// base · η^k for any integer k.
    pub fn with_eta_power(base: CycScalar, k: i64, theory: Theory, omega: Arc<CycScalar>) -> Result<ExtScalar> {
        let half = k.div_euclid(2);
        let base = &base * &omega.pow(-half)?;
        Ok(ExtScalar { base, eta_pow: k.rem_euclid(2) as u8, theory, omega })
    }

    fn check(&self, other: &ExtScalar) -> Result<()> {
        if self.theory != other.theory || self.omega != other.omega {
            return Err(Error::Mismatch(format!(
                "η of theory {} combined with η of theory {}",
                self.theory, other.theory
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &ExtScalar) -> Result<ExtScalar> {
        self.check(other)?;
        let mut base = &self.base * &other.base;
        let mut p = self.eta_pow + other.eta_pow;
        if p == 2 {
            base = base.div_ref(&self.omega)?;
            p = 0;
        }
        Ok(ExtScalar { base, eta_pow: p, theory: self.theory, omega: self.omega.clone() })
    }

    pub fn add(&self, other: &ExtScalar) -> Result<ExtScalar> {
        self.check(other)?;
        if other.base.is_zero() {
            return Ok(self.clone());
        }
        if self.base.is_zero() {
            return Ok(other.clone());
        }
        if self.eta_pow != other.eta_pow {
            return Err(Error::Mismatch("sum of η-even and η-odd terms".into()));
        }
        Ok(ExtScalar {
            base: &self.base + &other.base,
            eta_pow: self.eta_pow,
            theory: self.theory,
            omega: self.omega.clone(),
        })
    }

    pub fn scale(&self, c: &CycScalar) -> ExtScalar {
        ExtScalar { base: &self.base * c, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero()
    }

    /// Value in the complex embedding, η taken as the positive root.
    pub fn embed_complex(&self, digits: u32) -> Result<Approx> {
        let bits = working_bits(&self.base, digits).max(working_bits(&self.omega, digits));
        let b = embed_fixed(&self.base, bits);
        if self.eta_pow == 0 {
            return Ok(b);
        }
        let w = embed_fixed(&self.omega, bits);
        let tol = BigInt::from(1) << (bits / 2);
        if w.im.abs() > tol || !w.re.is_positive() {
            return Err(Error::Internal("⟨Ω⟩ is not real positive in the embedding".into()));
        }
        let eta = inv_sqrt_fixed(&w.re, bits);
        Ok(b.scale_real(&eta))
    }

    pub fn to_c64(&self) -> Result<Complex64> {
        Ok(self.embed_complex(20)?.to_c64())
    }
}
