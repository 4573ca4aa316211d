//! Parameter selection for the SU and reduced theories, quantum integers.

use std::sync::Arc;

use num_integer::Integer;

use super::field::{CycScalar, CycloField};
use crate::error::{Error, Result};

/// Data of the reduced theory: d = gcd(N,K) = αβ and the sign ε.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedParams {
    pub d: u32,
    pub n_prime: u32,
    pub k_prime: u32,
    pub alpha: u32,
    pub beta: u32,
    /// Target of (a^N s)^α.
    pub eps_alpha: i32,
    /// Target of (a^K s^{-1})^β.
    pub eps_beta: i32,
    /// N+K even with N' even: the variant with (a^N s)^α = −1.
    pub variant: bool,
    /// Root order 2N(N+K) of the companion SU context.
    pub su_order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContextKind {
    Su,
    Reduced(ReducedParams),
}

/// A cyclotomic field together with the exponents of a, s, v = s^{-N}.
#[derive(Clone, Debug)]
pub struct RingContext {
    pub field: Arc<CycloField>,
    pub n: u32,
    pub k: u32,
    pub a_exp: i64,
    pub s_exp: i64,
    pub v_exp: i64,
    pub kind: ContextKind,
}

fn check_rank_level(n: u32, k: u32) -> Result<()> {
    if n < 2 || k < 1 {
        return Err(Error::Domain(format!("rank-level ({n},{k}) needs N >= 2, K >= 1")));
    }
    Ok(())
}

/// Multiplicative order of ζ^e in the group of M-th roots of unity.
pub fn root_order(e: i64, m: u32) -> u32 {
    let m = m as i64;
    (m / e.rem_euclid(m).gcd(&m)) as u32
}

/// Split d = αβ: α collects the prime powers of d whose primes do not
/// divide `reference` (2K' normally, K' in the variant).
pub fn split_alpha_beta(d: u32, reference: u32) -> (u32, u32) {
    let mut alpha = 1;
    let mut x = d;
    let mut p = 2;
    while x > 1 {
        if x.is_multiple_of(p) {
            let mut pp = 1;
            while x.is_multiple_of(p) {
                x /= p;
                pp *= p;
            }
            if !reference.is_multiple_of(p) {
                alpha *= pp;
            }
        }
        p += 1;
    }
    (alpha, d / alpha)
}

impl RingContext {
    /// The SU(N,K) context: M = 2N(N+K), a = ζ, s = a^{-N}, v = s^{-N}.
    pub fn su(n: u32, k: u32) -> Result<RingContext> {
        check_rank_level(n, k)?;
        let m = 2 * n * (n + k);
        let field = CycloField::new(m);
        let a_exp = 1;
        let s_exp = (-(n as i64)).rem_euclid(m as i64);
        let v_exp = (-(n as i64) * s_exp).rem_euclid(m as i64);
        Ok(RingContext { field, n, k, a_exp, s_exp, v_exp, kind: ContextKind::Su })
    }

    /// The reduced context: parameters (ã, s̃) over Q(ζ_{M̃}) with M̃ a
    /// multiple of the SU order, satisfying the framing congruences.
    ///
    /// s̃ is −s^{-1} for odd d > 1 and the table value (s, resp. −s)
    /// otherwise; ã = ζ_{M̃}^e for the least e solving the congruences.
    pub fn reduced(n: u32, k: u32) -> Result<RingContext> {
        check_rank_level(n, k)?;
        let d = n.gcd(&k);
        let (np, kp) = (n / d, k / d);
        let variant = (n + k).is_multiple_of(2) && np % 2 == 0;
        let (alpha, beta) = split_alpha_beta(d, if variant { kp } else { 2 * kp });
        let eps = if (n + k).is_multiple_of(2) { -1 } else { 1 };
        let (eps_alpha, eps_beta) = if variant { (-1, 1) } else { (1, eps) };
        let m = 2 * n * (n + k);
        let mut t = 1u32;
        while t <= 64 {
            let mt = m * t;
            let mti = mt as i64;
            let s_su = -(n as i64) * t as i64;
            let s_exp = if d % 2 == 1 {
                if alpha > 1 {
                    (-s_su + mti / 2).rem_euclid(mti)
                } else {
                    (s_su + mti / 2).rem_euclid(mti)
                }
            } else {
                s_su.rem_euclid(mti)
            };
            let target = |eps: i32| if eps == 1 { 0 } else { mti / 2 };
            let found = (0..mti).find(|&e| {
                (alpha as i64 * (n as i64 * e + s_exp)).rem_euclid(mti) == target(eps_alpha)
                    && (beta as i64 * (k as i64 * e - s_exp)).rem_euclid(mti) == target(eps_beta)
            });
            if let Some(e) = found {
                let field = CycloField::new(mt);
                let v_exp = (-(n as i64) * s_exp).rem_euclid(mti);
                let ctx = RingContext {
                    field,
                    n,
                    k,
                    a_exp: e,
                    s_exp,
                    v_exp,
                    kind: ContextKind::Reduced(ReducedParams {
                        d,
                        n_prime: np,
                        k_prime: kp,
                        alpha,
                        beta,
                        eps_alpha,
                        eps_beta,
                        variant,
                        su_order: m,
                    }),
                };
                ctx.verify_framing()?;
                return Ok(ctx);
            }
            t *= 2;
        }
        Err(Error::Internal(format!("no solution of the framing congruences for ({n},{k})")))
    }

    /// Checks the framing congruences by direct exponentiation.
    pub fn verify_framing(&self) -> Result<()> {
        let a = self.a();
        let s = self.s();
        let an_s = &a.pow(self.n as i64)? * &s;
        match &self.kind {
            ContextKind::Su => {
                if !an_s.is_one() {
                    return Err(Error::Internal("a^N s != 1".into()));
                }
            }
            ContextKind::Reduced(p) => {
                let x = an_s.pow(p.alpha as i64)?;
                let y = (&a.pow(self.k as i64)? * &s.inv()?).pow(p.beta as i64)?;
                let sign = |e: i32| CycScalar::from_int(&self.field, e as i64);
                if x != sign(p.eps_alpha) || y != sign(p.eps_beta) {
                    return Err(Error::Internal("reduced framing congruences fail".into()));
                }
            }
        }
        if self.v() != s.pow(-(self.n as i64))? {
            return Err(Error::Internal("v != s^{-N}".into()));
        }
        Ok(())
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn is_reduced(&self) -> bool {
        matches!(self.kind, ContextKind::Reduced(_))
    }

    pub fn reduced_params(&self) -> Option<&ReducedParams> {
        match &self.kind {
            ContextKind::Reduced(p) => Some(p),
            ContextKind::Su => None,
        }
    }

    pub fn zeta(&self, e: i64) -> CycScalar {
        CycScalar::zeta_pow(&self.field, e)
    }

    pub fn zero(&self) -> CycScalar {
        CycScalar::zero(&self.field)
    }

    pub fn one(&self) -> CycScalar {
        CycScalar::one(&self.field)
    }

    pub fn int(&self, n: i64) -> CycScalar {
        CycScalar::from_int(&self.field, n)
    }

    pub fn a(&self) -> CycScalar {
        self.zeta(self.a_exp)
    }

    pub fn s(&self) -> CycScalar {
        self.zeta(self.s_exp)
    }

    pub fn v(&self) -> CycScalar {
        self.zeta(self.v_exp)
    }

    /// a^i s^j v^k as a single root of unity.
    pub fn monomial(&self, ai: i64, sj: i64, vk: i64) -> CycScalar {
        self.zeta(self.monomial_exp(ai, sj, vk))
    }

    pub fn monomial_exp(&self, ai: i64, sj: i64, vk: i64) -> i64 {
        let m = self.order() as i64;
        (ai.rem_euclid(m) * self.a_exp + sj.rem_euclid(m) * self.s_exp + vk.rem_euclid(m) * self.v_exp)
            .rem_euclid(m)
    }

    /// [n] = (s^n − s^{-n})/(s − s^{-1}) = Σ_{j} s^{n-1-2j}.
    pub fn qint(&self, n: i64) -> CycScalar {
        if n == 0 {
            return self.zero();
        }
        let sign = n.signum();
        let n = n.abs();
        let mut acc = self.zero();
        for j in 0..n {
            acc = acc + self.zeta((n - 1 - 2 * j) * self.s_exp);
        }
        if sign < 0 {
            -acc
        } else {
            acc
        }
    }

    pub fn qfactorial(&self, n: u32) -> CycScalar {
        (1..=n as i64).fold(self.one(), |acc, j| &acc * &self.qint(j))
    }

    /// Whether [n] is a unit; [n] = 0 exactly when s^{2n} = 1.
    pub fn qint_invertible(&self, n: i64) -> bool {
        let ord = root_order(self.s_exp, self.order()) as i64;
        (2 * n).rem_euclid(ord) != 0
    }

    pub fn qint_inv(&self, n: i64) -> Result<CycScalar> {
        self.qint(n).inv()
    }

    /// Multiplicative order of s.
    pub fn s_order(&self) -> u32 {
        root_order(self.s_exp, self.order())
    }
}
