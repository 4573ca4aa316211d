//! Cyclotomic fields Q(ζ_M) as Q[x]/Φ_M(x) and their elements.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The field Q(ζ_M), stored through the integer coefficients of Φ_M.
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    /// Φ_M, low degree first, monic.
    phi: Vec<BigInt>,
    /// ζ^e reduced mod Φ_M for 0 <= e < M.
    powers: Vec<Vec<BigInt>>,
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CycloField {}

fn registry() -> &'static Mutex<HashMap<u32, Arc<CycloField>>> {
    static REG: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer polynomial division by a monic divisor; panics if inexact.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact cyclotomic division");
    q
}

/// Integer coefficients of the cyclotomic polynomial Φ_m, low degree first.
pub fn cyclotomic_poly(m: u32) -> Vec<BigInt> {
    assert!(m > 0);
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = BigInt::from(-1);
    p[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = div_exact_monic(&p, &cyclotomic_poly(d));
        }
    }
    p
}

impl CycloField {
    /// The shared field of order `m`; equal orders share one instance.
    pub fn new(m: u32) -> Arc<CycloField> {
        assert!(m > 0, "cyclotomic order must be positive");
        let mut reg = registry().lock().unwrap();
        if let Some(f) = reg.get(&m) {
            return f.clone();
        }
        let phi = cyclotomic_poly(m);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![BigInt::zero(); deg];
        cur[0] = BigInt::one();
        for _ in 0..m {
            powers.push(cur.clone());
            shift_once(&mut cur, &phi);
        }
        let f = Arc::new(CycloField { order: m, phi, powers });
        reg.insert(m, f.clone());
        f
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self) -> &[BigInt] {
        &self.phi
    }

    /// Reduces an integer polynomial of any length mod Φ_M.
    fn reduce(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        let deg = self.degree();
        if v.len() > deg {
            for i in (deg..v.len()).rev() {
                let c = std::mem::take(&mut v[i]);
                if c.is_zero() {
                    continue;
                }
                for j in 0..deg {
                    let pj = &self.phi[j];
                    if !pj.is_zero() {
                        v[i - deg + j] -= &c * pj;
                    }
                }
            }
            v.truncate(deg);
        }
        v.resize(deg, BigInt::zero());
        v
    }
}

/// Multiplies a reduced vector by x in place.
fn shift_once(v: &mut [BigInt], phi: &[BigInt]) {
    let deg = phi.len() - 1;
    if deg == 0 {
        return;
    }
    let top = std::mem::take(&mut v[deg - 1]);
    for i in (1..deg).rev() {
        v[i] = std::mem::take(&mut v[i - 1]);
    }
    v[0] = BigInt::zero();
    if !top.is_zero() {
        for j in 0..deg {
            if !phi[j].is_zero() {
                v[j] -= &top * &phi[j];
            }
        }
    }
}

/// Multiplies a reduced vector by x^{-1} in place, using Φ_M(0) = ±1.
fn shift_back(v: &mut [BigInt], phi: &[BigInt]) {
    let deg = phi.len() - 1;
    let low = std::mem::take(&mut v[0]);
    for i in 0..deg - 1 {
        v[i] = std::mem::take(&mut v[i + 1]);
    }
    if !low.is_zero() {
        let c = -(&low * &phi[0]);
        for j in 1..=deg {
            if !phi[j].is_zero() {
                v[j - 1] += &c * &phi[j];
            }
        }
    }
}

/// An element of Q(ζ_M) in canonical form: integer numerators over a
/// positive common denominator with overall content 1.
#[derive(Clone)]
pub struct CycScalar {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycScalar {}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycScalar[M={}](", self.field.order)?;
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}z^{}", c, i)?;
        }
        if first {
            write!(f, "0")?;
        }
        if !self.den.is_one() {
            write!(f, ")/{}", self.den)
        } else {
            write!(f, ")")
        }
    }
}

impl CycScalar {
    fn normalized(field: Arc<CycloField>, mut num: Vec<BigInt>, mut den: BigInt) -> CycScalar {
        if num.iter().all(|c| c.is_zero()) {
            return CycScalar { field, num, den: BigInt::one() };
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                g = g.gcd(c);
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den /= &g;
            }
        }
        CycScalar { field, num, den }
    }

    pub fn zero(field: &Arc<CycloField>) -> CycScalar {
        CycScalar { field: field.clone(), num: vec![BigInt::zero(); field.degree()], den: BigInt::one() }
    }

    pub fn one(field: &Arc<CycloField>) -> CycScalar {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<CycloField>, n: i64) -> CycScalar {
        Self::from_bigint(field, BigInt::from(n))
    }

    pub fn from_bigint(field: &Arc<CycloField>, n: BigInt) -> CycScalar {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = n;
        CycScalar { field: field.clone(), num, den: BigInt::one() }
    }

    pub fn from_rational(field: &Arc<CycloField>, q: &BigRational) -> CycScalar {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = q.numer().clone();
        Self::normalized(field.clone(), num, q.denom().clone())
    }

    /// Builds an element from rational coefficients in the power basis.
    /// Rejects vectors longer than deg Φ_M (non-canonical input).
    pub fn from_coeffs(field: &Arc<CycloField>, coeffs: &[BigRational]) -> Result<CycScalar> {
        if coeffs.len() > field.degree() {
            return Err(Error::NonCanonical(format!(
                "{} coefficients for a field of degree {}",
                coeffs.len(),
                field.degree()
            )));
        }
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut num = vec![BigInt::zero(); field.degree()];
        for (i, c) in coeffs.iter().enumerate() {
            num[i] = c.numer() * (&den / c.denom());
        }
        Ok(Self::normalized(field.clone(), num, den))
    }

    /// ζ^e for any integer e.
    pub fn zeta_pow(field: &Arc<CycloField>, e: i64) -> CycScalar {
        let m = field.order as i64;
        let r = e.rem_euclid(m) as usize;
        CycScalar { field: field.clone(), num: field.powers[r].clone(), den: BigInt::one() }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(|c| c.is_zero()) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_field(&self, other: &CycScalar) {
        assert_eq!(
            self.field.order, other.field.order,
            "arithmetic across cyclotomic fields of different order"
        );
    }

    fn add_sub(&self, other: &CycScalar, sign: bool) -> CycScalar {
        self.check_field(other);
        let num: Vec<BigInt> = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(x, y)| if sign { x - y } else { x + y })
                .collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(x, y)| {
                    let l = x * &other.den;
                    let r = y * &self.den;
                    if sign {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if self.den == other.den { self.den.clone() } else { &self.den * &other.den };
        Self::normalized(self.field.clone(), num, den)
    }

    pub fn mul_ref(&self, other: &CycScalar) -> CycScalar {
        self.check_field(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let deg = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * deg - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let num = self.field.reduce(prod);
        Self::normalized(self.field.clone(), num, &self.den * &other.den)
    }

    /// Multiplication by ζ^e, which only shifts and reduces.
    pub fn mul_zeta_pow(&self, e: i64) -> CycScalar {
        let m = self.field.order as i64;
        let r = e.rem_euclid(m);
        let mut v = self.num.clone();
        if 2 * r <= m {
            for _ in 0..r {
                shift_once(&mut v, &self.field.phi);
            }
        } else {
            for _ in 0..m - r {
                shift_back(&mut v, &self.field.phi);
            }
        }
        CycScalar { field: self.field.clone(), num: v, den: self.den.clone() }
    }

    pub fn scale_int(&self, k: i64) -> CycScalar {
        let k = BigInt::from(k);
        let num = self.num.iter().map(|c| c * &k).collect();
        Self::normalized(self.field.clone(), num, self.den.clone())
    }

    pub fn scale_rational(&self, q: &BigRational) -> CycScalar {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::normalized(self.field.clone(), num, &self.den * q.denom())
    }

    /// Image under the Galois automorphism ζ ↦ ζ^j, gcd(j, M) = 1.
    pub fn galois(&self, j: i64) -> CycScalar {
        let m = self.field.order as i64;
        let deg = self.field.degree();
        let mut acc = vec![BigInt::zero(); deg];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as i64 * j).rem_euclid(m) as usize;
            for (t, p) in self.field.powers[e].iter().enumerate() {
                if !p.is_zero() {
                    acc[t] += c * p;
                }
            }
        }
        Self::normalized(self.field.clone(), acc, self.den.clone())
    }

    /// Complex conjugation ζ ↦ ζ^{M-1}.
    pub fn conjugate(&self) -> CycScalar {
        self.galois(self.field.order as i64 - 1)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x].
    pub fn inv(&self) -> Result<CycScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a: Vec<BigRational> =
            self.num.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let p: Vec<BigRational> =
            self.field.phi.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let u = poly_inverse_mod(&a, &p).ok_or(Error::DivisionByZero)?;
        let mut coeffs = u;
        coeffs.resize(self.field.degree(), BigRational::zero());
        let mut r = Self::from_coeffs(&self.field, &coeffs)?;
        r = r.scale_rational(&BigRational::from_integer(self.den.clone()));
        Ok(r)
    }

    pub fn div_ref(&self, other: &CycScalar) -> Result<CycScalar> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<CycScalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_ref(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul_ref(&b);
            }
        }
        Ok(acc)
    }

    /// Re-expresses the element in Q(ζ_{M'}) for a multiple M' of M.
    pub fn lift(&self, target: &Arc<CycloField>) -> CycScalar {
        let m = self.field.order;
        assert_eq!(target.order % m, 0, "lift target order must be a multiple");
        let step = (target.order / m) as i64;
        let mut acc = CycScalar::zero(target);
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &CycScalar::zeta_pow(target, i as i64 * step).scale_bigint(c);
        }
        acc.scale_rational(&BigRational::new(BigInt::one(), self.den.clone()))
    }

    fn scale_bigint(&self, k: &BigInt) -> CycScalar {
        let num = self.num.iter().map(|c| c * k).collect();
        Self::normalized(self.field.clone(), num, self.den.clone())
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.num.iter().map(|c| c.bits()).max().unwrap_or(0)
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lead = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    trim(&mut r);
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// u with a·u ≡ 1 mod p, if gcd(a, p) = 1.
fn poly_inverse_mod(a: &[BigRational], p: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = p.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut t0: Vec<BigRational> = vec![];
    let mut t1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].clone();
    let mut u: Vec<BigRational> = t0.iter().map(|x| x / &c).collect();
    let (_, rem) = poly_divrem(&u, p);
    u = rem;
    Some(u)
}

impl Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.add_sub(rhs, false)
    }
}

impl Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.add_sub(rhs, true)
    }
}

impl Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.mul_ref(rhs)
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: CycScalar) -> CycScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycScalar> for CycScalar {
            type Output = CycScalar;
            fn $m(self, rhs: &CycScalar) -> CycScalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}
