//! Complex embedding ζ ↦ exp(2πi/M) to arbitrary precision, in binary
//! fixed point.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::CycScalar;

/// A complex number (re + i·im)·2^{-bits}.
#[derive(Clone, Debug, PartialEq)]
pub struct Approx {
    pub re: BigInt,
    pub im: BigInt,
    pub bits: u32,
}

fn fixed_to_f64(x: &BigInt, bits: u32) -> f64 {
    let b = x.bits() as i64;
    let drop = (b - 60).max(0) as u32;
    let top = (x >> drop).to_f64().unwrap_or(0.0);
    top * 2f64.powi(drop as i32 - bits as i32)
}

impl Approx {
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(fixed_to_f64(&self.re, self.bits), fixed_to_f64(&self.im, self.bits))
    }

    pub fn mul(&self, other: &Approx) -> Approx {
        assert_eq!(self.bits, other.bits);
        let re = (&self.re * &other.re - &self.im * &other.im) >> self.bits;
        let im = (&self.re * &other.im + &self.im * &other.re) >> self.bits;
        Approx { re, im, bits: self.bits }
    }

    pub fn scale_real(&self, r: &BigInt) -> Approx {
        Approx { re: (&self.re * r) >> self.bits, im: (&self.im * r) >> self.bits, bits: self.bits }
    }

    /// Decimal rendering with `digits` digits after the point.
    pub fn to_decimal(&self, digits: u32) -> (String, String) {
        (fixed_to_decimal(&self.re, self.bits, digits), fixed_to_decimal(&self.im, self.bits, digits))
    }
}

fn fixed_to_decimal(x: &BigInt, bits: u32, digits: u32) -> String {
    let scale = BigInt::from(10).pow(digits);
    let scaled = (x.abs() * &scale + (BigInt::one() << bits >> 1u32)) >> bits;
    let s = scaled.to_string();
    let s = format!("{:0>width$}", s, width = digits as usize + 1);
    let (int, frac) = s.split_at(s.len() - digits as usize);
    let sign = if x.is_negative() && !scaled.is_zero() { "-" } else { "" };
    format!("{}{}.{}", sign, int, frac)
}

/// π·2^bits.
fn pi_fixed(bits: u32) -> BigInt {
    // Machin: π = 16 atan(1/5) − 4 atan(1/239)
    let atan_inv = |x: i64| -> BigInt {
        let one = BigInt::one() << bits;
        let x2 = BigInt::from(x * x);
        let mut term = &one / BigInt::from(x);
        let mut sum = BigInt::zero();
        let mut k: i64 = 0;
        while !term.is_zero() {
            let t = &term / BigInt::from(2 * k + 1);
            if k % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
            term /= &x2;
            k += 1;
        }
        sum
    };
    atan_inv(5) * 16 - atan_inv(239) * 4
}

/// (cos θ, sin θ)·2^bits for θ = 2π·num/den, via Taylor series after
/// folding the angle into [−π/4, π/4].
fn cis_fixed(num: i64, den: i64, bits: u32) -> (BigInt, BigInt) {
    // Work in eighths of a turn: θ = 2π·num/den; octant = round(8·num/den).
    let n8 = 8 * num.rem_euclid(den);
    let oct = (n8 + den / 2) / den; // 0..=8
    let rem_num = n8 - oct * den; // θ' = (π/4)·rem_num/den, |θ'| ≤ π/8
    let pi = pi_fixed(bits);
    let theta = (&pi * BigInt::from(rem_num)) / BigInt::from(4 * den);
    let one = BigInt::one() << bits;
    let mut c = BigInt::zero();
    let mut s = BigInt::zero();
    let mut term = one.clone();
    let mut k: u64 = 0;
    while !term.is_zero() {
        match k % 4 {
            0 => c += &term,
            1 => s += &term,
            2 => c -= &term,
            _ => s -= &term,
        }
        k += 1;
        term = ((&term * &theta) >> bits) / BigInt::from(k);
    }
    // Rotate by oct·π/4.
    let h = (&one * &one * BigInt::from(2)).sqrt() >> 1u32; // √2/2 · 2^bits
    let rot = |c: &BigInt, s: &BigInt, o: i64| -> (BigInt, BigInt) {
        match o.rem_euclid(8) {
            0 => (c.clone(), s.clone()),
            1 => (((c - s) * &h) >> bits, ((c + s) * &h) >> bits),
            2 => (-s, c.clone()),
            3 => ((-(c + s) * &h) >> bits, ((c - s) * &h) >> bits),
            4 => (-c, -s),
            5 => (((s - c) * &h) >> bits, (-(c + s) * &h) >> bits),
            6 => (s.clone(), -c),
            _ => (((c + s) * &h) >> bits, ((s - c) * &h) >> bits),
        }
    };
    rot(&c, &s, oct)
}

type Table = Arc<Vec<(BigInt, BigInt)>>;

fn power_table(order: u32, deg: usize, bits: u32) -> Table {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Table>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&(order, bits)) {
        return t.clone();
    }
    let work = bits + 16;
    let t: Vec<(BigInt, BigInt)> = (0..deg)
        .map(|i| {
            let (c, s) = cis_fixed(i as i64, order as i64, work);
            (c >> 16u32, s >> 16u32)
        })
        .collect();
    let t = Arc::new(t);
    cache.lock().unwrap().insert((order, bits), t.clone());
    t
}

/// Working precision in bits for `digits` decimal digits of the value x.
pub(crate) fn working_bits(x: &CycScalar, digits: u32) -> u32 {
    let need = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32;
    let b = need + x.max_coeff_bits() as u32 + 48;
    b.div_ceil(64) * 64
}

/// Evaluates x at ζ = exp(2πi/M) with absolute error below 2^{-bits+8}.
pub fn embed_fixed(x: &CycScalar, bits: u32) -> Approx {
    let f = x.field();
    let table = power_table(f.order(), f.degree(), bits);
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (c, (zr, zi)) in x.numerators().iter().zip(table.iter()) {
        if c.is_zero() {
            continue;
        }
        re += c * zr;
        im += c * zi;
    }
    let den = x.denominator();
    Approx { re: re / den, im: im / den, bits }
}

/// Evaluates x at ζ = exp(2πi/M) with error below 10^{-digits}.
pub fn embed(x: &CycScalar, digits: u32) -> Approx {
    embed_fixed(x, working_bits(x, digits))
}

/// 2^bits/√r for a positive real fixed-point r·2^bits.
pub(crate) fn inv_sqrt_fixed(r: &BigInt, bits: u32) -> BigInt {
    assert!(r.is_positive(), "square root of a non-positive value");
    ((BigInt::one() << (3 * bits)) / r).sqrt()
}
