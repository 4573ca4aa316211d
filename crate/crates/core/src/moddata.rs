//! Modular data of the SU, PSU and reduced theories: dimensions, twists,
//! S-matrices, global constants, fusion rules and Verlinde dimensions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::diagrams::{
    gamma, gamma_zero, orbit_representatives, quantum_dimension, reduced_twist, twist, Label, ReducedLabel,
    YoungDiagram,
};
use crate::error::{Error, Result};
use crate::hecke::{all_perms, framed_full_twist, path_idempotent, perm_length, row_tableau};
use crate::scalars::{CycScalar, RingContext, Theory};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skip,
}

/// One verified identity.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, ok: bool, detail: impl Into<String>) -> Check {
        Check { name: name.into(), status: if ok { CheckStatus::Pass } else { CheckStatus::Fail }, detail: detail.into() }
    }

    pub fn skip(name: &str, detail: impl Into<String>) -> Check {
        Check { name: name.into(), status: CheckStatus::Skip, detail: detail.into() }
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

/// Whether (N, K) is a spin rank-level: d = gcd(N, K) even, N/d and K/d odd.
pub fn is_spin(n: u32, k: u32) -> bool {
    let d = n.gcd(&k);
    d.is_multiple_of(2) && (n / d) % 2 == 1 && (k / d) % 2 == 1
}

/// Schur bialternant values s_λ(s^{2(μ+ρ)}) with cached denominators.
pub struct SchurEvaluator {
    ctx: Arc<RingContext>,
    perms: Vec<(Vec<u8>, bool)>,
    denominators: HashMap<Vec<u32>, CycScalar>,
}

impl SchurEvaluator {
    pub fn new(ctx: &Arc<RingContext>) -> SchurEvaluator {
        let perms = all_perms(ctx.n as usize).into_iter().map(|p| {
            let odd = perm_length(&p) % 2 == 1;
            (p, odd)
        });
        SchurEvaluator { ctx: ctx.clone(), perms: perms.collect(), denominators: HashMap::new() }
    }

    /// det(ζ^{e_ij}) by the Leibniz expansion.
    fn monomial_det(&self, exps: &[Vec<i64>]) -> CycScalar {
        let m = self.ctx.order() as i64;
        let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
        for (p, odd) in &self.perms {
            let e: i64 = p.iter().enumerate().map(|(i, &j)| exps[i][j as usize - 1]).sum::<i64>().rem_euclid(m);
            *counts.entry(e).or_insert(0) += if *odd { -1 } else { 1 };
        }
        let mut acc = self.ctx.zero();
        for (e, c) in counts {
            if c != 0 {
                acc = &acc + &self.ctx.zeta(e).scale_int(c);
            }
        }
        acc
    }

    fn alternant(&self, x: &[i64], l: &[i64]) -> CycScalar {
        let se = self.ctx.s_exp;
        let exps: Vec<Vec<i64>> = x.iter().map(|&xi| l.iter().map(|&lj| se * 2 * xi * lj).collect()).collect();
        self.monomial_det(&exps)
    }

    pub fn eval(&mut self, lambda: &YoungDiagram, mu: &YoungDiagram) -> Result<CycScalar> {
        let n = self.ctx.n as usize;
        if lambda.num_rows() > n || mu.num_rows() > n {
            return Err(Error::InvalidLabel(format!("{lambda} or {mu} has more than {n} rows")));
        }
        let rho = |i: usize| (n - 1 - i) as i64;
        let mp = mu.padded(n);
        let lp = lambda.padded(n);
        let x: Vec<i64> = (0..n).map(|i| mp[i] as i64 + rho(i)).collect();
        let l: Vec<i64> = (0..n).map(|i| lp[i] as i64 + rho(i)).collect();
        let key = mp.clone();
        if !self.denominators.contains_key(&key) {
            let r: Vec<i64> = (0..n).map(rho).collect();
            let den = self.alternant(&x, &r);
            if den.is_zero() {
                return Err(Error::Internal(format!("Vandermonde denominator vanishes at {mu}")));
            }
            self.denominators.insert(key.clone(), den.inv()?);
        }
        Ok(&self.alternant(&x, &l) * &self.denominators[&key])
    }
}

/// S_{λμ} = a^{2|λ||μ|} s^{−(N−1)|λ|} s_λ(s^{2(μ+ρ)}) ⟨μ⟩.
pub fn s_matrix_entry(ctx: &Arc<RingContext>, lambda: &YoungDiagram, mu: &YoungDiagram) -> Result<CycScalar> {
    let mut ev = SchurEvaluator::new(ctx);
    s_entry_with(ctx, &mut ev, lambda, mu)
}

fn s_entry_with(
    ctx: &RingContext,
    ev: &mut SchurEvaluator,
    lambda: &YoungDiagram,
    mu: &YoungDiagram,
) -> Result<CycScalar> {
    let (l, m) = (lambda.size() as i64, mu.size() as i64);
    let pre = ctx.monomial(2 * l * m, -(ctx.n as i64 - 1) * l, 0);
    Ok(&(&pre * &ev.eval(lambda, mu)?) * &quantum_dimension(ctx, mu)?)
}

/// Exponent of (a^N s)^{2(ijN + i|μ| + j|λ|)}.
fn reduced_s_factor(ctx: &RingContext, x: &ReducedLabel, y: &ReducedLabel) -> CycScalar {
    let n = ctx.n as i64;
    let (i, j) = (x.i as i64, y.i as i64);
    let e = 2 * (i * j * n + i * y.lambda.size() as i64 + j * x.lambda.size() as i64);
    ctx.zeta(ctx.monomial_exp(n, 1, 0) * e)
}

/// (−1)^{N(N−1)/2} · factor · (N+K)^{N−1} / Π_{j<N} (s^j − s^{−j})^{2(N−j)}.
pub fn omega_closed_form(ctx: &RingContext, factor: u32) -> Result<CycScalar> {
    let n = ctx.n as i64;
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    let num = BigInt::from(factor) * BigInt::from(ctx.n + ctx.k).pow(ctx.n - 1) * sign;
    let mut den = ctx.one();
    for j in 1..n {
        let x = ctx.monomial(0, j, 0) - ctx.monomial(0, -j, 0);
        den = &den * &x.pow(2 * (n - j))?;
    }
    CycScalar::from_bigint(&ctx.field, num).div_ref(&den)
}

#[derive(Clone, Debug)]
pub struct ModularData {
    pub theory: Theory,
    pub ctx: Arc<RingContext>,
    pub labels: Vec<Label>,
    pub dims: Vec<CycScalar>,
    pub twists: Vec<CycScalar>,
    pub s_matrix: Vec<Vec<CycScalar>>,
    pub omega: CycScalar,
    pub delta_plus: CycScalar,
    pub delta_minus: CycScalar,
    pub spin_case: bool,
    pub report: Vec<Check>,
}

impl ModularData {
    /// Assembles the data and its verification report; identity failures
    /// are recorded in the report, not raised.
    pub fn compute(n: u32, k: u32, theory: Theory) -> Result<ModularData> {
        let ctx = Arc::new(match theory {
            Theory::Reduced => RingContext::reduced(n, k)?,
            _ => RingContext::su(n, k)?,
        });
        Self::compute_in(&ctx, theory)
    }

    pub fn compute_in(ctx: &Arc<RingContext>, theory: Theory) -> Result<ModularData> {
        let (n, k) = (ctx.n, ctx.k);
        if (theory == Theory::Reduced) != ctx.is_reduced() {
            return Err(Error::Mismatch(format!("{theory} data requested in the wrong context")));
        }
        let mut ev = SchurEvaluator::new(ctx);
        let (labels, dims, twists, s_matrix) = match theory {
            Theory::Su | Theory::Psu => {
                let ds = if theory == Theory::Su { gamma(n, k) } else { gamma_zero(n, k) };
                let dims = ds.iter().map(|l| quantum_dimension(ctx, l)).collect::<Result<Vec<_>>>()?;
                let twists: Vec<CycScalar> = ds.iter().map(|l| twist(ctx, l)).collect();
                let mut s = Vec::with_capacity(ds.len());
                for l in &ds {
                    s.push(ds.iter().map(|m| s_entry_with(ctx, &mut ev, l, m)).collect::<Result<Vec<_>>>()?);
                }
                (ds.into_iter().map(Label::Diagram).collect::<Vec<_>>(), dims, twists, s)
            }
            Theory::Reduced => {
                let p = ctx.reduced_params().ok_or_else(|| Error::Internal("missing reduced parameters".into()))?;
                let reps = orbit_representatives(n, k, p.alpha, p.beta)?;
                let dims = reps.iter().map(|x| quantum_dimension(ctx, &x.lambda)).collect::<Result<Vec<_>>>()?;
                let twists: Vec<CycScalar> = reps.iter().map(|x| reduced_twist(ctx, x)).collect();
                let mut s = Vec::with_capacity(reps.len());
                for x in &reps {
                    let mut row = Vec::with_capacity(reps.len());
                    for y in &reps {
                        row.push(&reduced_s_factor(ctx, x, y) * &s_entry_with(ctx, &mut ev, &x.lambda, &y.lambda)?);
                    }
                    s.push(row);
                }
                (reps.into_iter().map(Label::Reduced).collect(), dims, twists, s)
            }
        };
        let (omega, delta_plus, delta_minus) = sums(&dims, &twists)?;
        let spin_case = theory != Theory::Su && is_spin(n, k);
        let mut data = ModularData {
            theory,
            ctx: ctx.clone(),
            labels,
            dims,
            twists,
            s_matrix,
            omega,
            delta_plus,
            delta_minus,
            spin_case,
            report: vec![],
        };
        data.report = data.verify()?;
        Ok(data)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Looks up a diagram color, mapping it to its orbit representative in
    /// the reduced theory.
    pub fn index_of_diagram(&self, lambda: &YoungDiagram) -> Option<usize> {
        match self.theory {
            Theory::Reduced => {
                let p = self.ctx.reduced_params()?;
                let x = ReducedLabel::new(0, lambda.clone());
                let orbit = crate::diagrams::zn_orbit(self.ctx.n, self.ctx.k, p.alpha, p.beta, &x);
                orbit.iter().find_map(|y| self.index_of(&Label::Reduced(y.clone())))
            }
            _ => self.index_of(&Label::Diagram(lambda.clone())),
        }
    }

    pub fn degree(&self, idx: usize) -> u32 {
        self.labels[idx].degree(self.ctx.n)
    }

    pub fn gcd(&self) -> u32 {
        self.ctx.n.gcd(&self.ctx.k)
    }

    pub fn passed(&self) -> bool {
        !self.report.iter().any(Check::failed)
    }

    /// Error listing every failed identity, if any.
    pub fn ensure_verified(&self) -> Result<()> {
        let failed: Vec<String> =
            self.report.iter().filter(|c| c.failed()).map(|c| format!("{}: {}", c.name, c.detail)).collect();
        if failed.is_empty() {
            Ok(())
        } else {
            Err(Error::Verification(format!("{} data at ({},{}): {}", self.theory, self.ctx.n, self.ctx.k, failed.join("; "))))
        }
    }

    fn closed_form_factor(&self) -> u32 {
        match self.theory {
            Theory::Su => self.ctx.n,
            Theory::Psu => 1,
            Theory::Reduced => self.gcd(),
        }
    }

    fn verify(&self) -> Result<Vec<Check>> {
        let n = self.len();
        let s = &self.s_matrix;
        let mut out = Vec::new();

        let sym = (0..n).all(|i| (0..i).all(|j| s[i][j] == s[j][i]));
        out.push(Check::new("S symmetric", sym, ""));

        let row = (0..n).all(|j| s[0][j] == self.dims[j]);
        out.push(Check::new("first row of S equals dimensions", row, ""));

        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.ctx.zero();
                for l in 0..n {
                    acc = &acc + &(&s[i][l] * &s[j][l].conjugate());
                }
                let want = if i == j { self.omega.clone() } else { self.ctx.zero() };
                if acc != want {
                    bad.push(format!("({},{})", self.labels[i], self.labels[j]));
                }
            }
        }
        let detail = if bad.is_empty() { String::new() } else { format!("{} wrong entries, first {}", bad.len(), bad[0]) };
        if self.spin_case && self.theory == Theory::Psu {
            // Γ⁰ is degenerate at spin rank-levels; only the vanishing is claimed
            out.push(Check::skip("S·conj(S) = ⟨Ω⟩·I", format!("spin rank-level; {}", if bad.is_empty() { "holds" } else { &detail })));
        } else {
            out.push(Check::new("S·conj(S) = ⟨Ω⟩·I", bad.is_empty(), detail));
        }

        let cf = omega_closed_form(&self.ctx, self.closed_form_factor())?;
        out.push(Check::new("⟨Ω⟩ closed form", cf == self.omega, ""));

        let w = self.omega.to_c64();
        out.push(Check::new("⟨Ω⟩ embeds real positive", w.re > 0.0 && w.im.abs() < 1e-12, format!("{w}")));

        let prod = &self.delta_plus * &self.delta_minus;
        if self.spin_case && self.theory == Theory::Psu {
            out.push(Check::skip("Δ₊·Δ₋ = ⟨Ω⟩", "spin rank-level"));
            out.push(Check::new("⟨U₁(Ω₀)⟩ = 0 at spin rank-level", self.delta_plus.is_zero(), ""));
        } else {
            let detail = if prod == self.omega {
                String::new()
            } else {
                match prod.div_ref(&self.omega).ok().and_then(|r| r.as_rational()) {
                    Some(r) => format!("Δ₊·Δ₋/⟨Ω⟩ = {r}"),
                    None => "ratio is irrational".into(),
                }
            };
            out.push(Check::new("Δ₊·Δ₋ = ⟨Ω⟩", prod == self.omega, detail));
        }

        match self.theory {
            Theory::Su => {
                let mut ok = true;
                for j in 0..n {
                    let mut acc = self.ctx.zero();
                    for i in 0..n {
                        acc = &acc + &(&self.dims[i] * &s[i][j]);
                    }
                    let want = if j == 0 { self.omega.clone() } else { self.ctx.zero() };
                    ok &= acc == want;
                }
                out.push(Check::new("meridian vanishing", ok, ""));

                let mut ok = true;
                for i in 0..n {
                    let star = self.labels[i].diagram().star(self.ctx.n);
                    let si = self.index_of(&Label::Diagram(star)).expect("Γ is closed under ⋆");
                    for j in 0..n {
                        ok &= s[i][j].conjugate() == s[si][j];
                    }
                }
                out.push(Check::new("orientation reversal", ok, ""));
            }
            Theory::Reduced => {
                out.push(Check::new("reduced meridian vanishing", self.reduced_meridian_vanishing()?, ""));
            }
            Theory::Psu => {}
        }
        Ok(out)
    }

    /// Σ_{u∈Γ̃} ⟨u⟩ S̃_{u,(0,λ)} = 0 for λ ∈ Γ other than the rectangles K^j.
    fn reduced_meridian_vanishing(&self) -> Result<bool> {
        let (n, k) = (self.ctx.n, self.ctx.k);
        let mut ev = SchurEvaluator::new(&self.ctx);
        for lambda in gamma(n, k) {
            let rect = lambda.rows().iter().all(|&r| r == k);
            if rect {
                continue;
            }
            let y = ReducedLabel::new(0, lambda.clone());
            let mut acc = self.ctx.zero();
            for (idx, l) in self.labels.iter().enumerate() {
                let Label::Reduced(x) = l else { unreachable!() };
                let sv = &reduced_s_factor(&self.ctx, x, &y) * &s_entry_with(&self.ctx, &mut ev, &x.lambda, &lambda)?;
                acc = &acc + &(&self.dims[idx] * &sv);
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// N^ν_{λμ} = (1/⟨Ω⟩) Σ_σ S_{λσ} S_{μσ} conj(S_{νσ}) / ⟨σ⟩ for every ν,
    /// keeping the nonzero ones.
    pub fn fusion_coefficients(&self, lambda: usize, mu: usize) -> Result<BTreeMap<usize, u64>> {
        let n = self.len();
        let inv_dims: Vec<CycScalar> = self.dims.iter().map(|d| d.inv()).collect::<Result<_>>()?;
        let inv_omega = self.omega.inv()?;
        let w: Vec<CycScalar> =
            (0..n).map(|sg| &(&self.s_matrix[lambda][sg] * &self.s_matrix[mu][sg]) * &inv_dims[sg]).collect();
        let mut out = BTreeMap::new();
        for nu in 0..n {
            let mut acc = self.ctx.zero();
            for sg in 0..n {
                acc = &acc + &(&w[sg] * &self.s_matrix[nu][sg].conjugate());
            }
            let c = (&acc * &inv_omega)
                .as_rational()
                .ok_or_else(|| Error::Verification(format!("N^{}_{{{},{}}} is irrational", self.labels[nu], self.labels[lambda], self.labels[mu])))?;
            if !c.is_integer() || c.is_negative() {
                return Err(Error::Verification(format!(
                    "N^{}_{{{},{}}} = {c} is not a nonnegative integer",
                    self.labels[nu], self.labels[lambda], self.labels[mu]
                )));
            }
            if !c.is_zero() {
                out.insert(nu, c.to_integer().to_u64().unwrap());
            }
        }
        Ok(out)
    }

    /// The genus-g Verlinde dimension, computed by both the sum over strictly
    /// decreasing sequences and ⟨Ω⟩^{g−1} Σ ⟨λ⟩^{2−2g}.
    pub fn verlinde_dimension(&self, g: u32) -> Result<CycScalar> {
        if self.theory != Theory::Su {
            return Err(Error::Unavailable("Verlinde dimensions are computed for SU data".into()));
        }
        let ctx = &self.ctx;
        let e = 1 - g as i64;
        let mut spectral = ctx.zero();
        for d in &self.dims {
            spectral = &spectral + &d.pow(2 * e)?;
        }
        spectral = &spectral * &self.omega.pow(-e)?;

        let (n, k) = (ctx.n as usize, ctx.k as usize);
        let mut sum = ctx.zero();
        for l in strictly_decreasing(n, n + k) {
            let mut p = ctx.one();
            for i in 0..n {
                for j in i + 1..n {
                    let x = ctx.monomial(0, l[j] - l[i], 0) - ctx.monomial(0, l[i] - l[j], 0);
                    p = &p * &(-(&x * &x));
                }
            }
            sum = &sum + &p.pow(e)?;
        }
        let base = BigRational::from_integer(BigInt::from(ctx.n) * BigInt::from(ctx.n + ctx.k).pow(ctx.n - 1));
        let pref = if e <= 0 { pow_rat(&base, -e) } else { pow_rat(&base.recip(), e) };
        let paper = sum.scale_rational(&pref);
        if paper != spectral {
            return Err(Error::Verification(format!("genus-{g} Verlinde forms disagree")));
        }
        Ok(paper)
    }

    /// Checks ⟨p_t⟩ = ⟨λ⟩ and the framed full-twist eigenvalue θ_λ for every
    /// diagram label with at most `max_size` cells.
    pub fn hecke_cross_check(&self, max_size: u32) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        let mut twists: HashMap<u32, crate::hecke::HeckeElement> = HashMap::new();
        for (idx, label) in self.labels.iter().enumerate() {
            let lam = label.diagram();
            if label.power() != 0 || lam.size() > max_size || lam.is_empty() {
                continue;
            }
            let p = path_idempotent(&self.ctx, &row_tableau(lam))?;
            out.push(Check::new(&format!("trace dimension {lam}"), p.markov_trace() == self.dims[idx], ""));
            let ft = match twists.get(&lam.size()) {
                Some(f) => f.clone(),
                None => {
                    let f = framed_full_twist(&self.ctx, lam.size() as usize)?;
                    twists.insert(lam.size(), f.clone());
                    f
                }
            };
            let theta = twist(&self.ctx, lam);
            out.push(Check::new(&format!("full-twist eigenvalue {lam}"), ft.mul(&p)? == p.scale(&theta), ""));
        }
        Ok(out)
    }
}

fn pow_rat(x: &BigRational, e: i64) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

/// Sequences N+K > l₁ > … > l_N = 0.
fn strictly_decreasing(n: usize, bound: usize) -> Vec<Vec<i64>> {
    fn rec(cur: &mut Vec<i64>, n: usize, top: i64, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n - 1 {
            let mut v = cur.clone();
            v.push(0);
            out.push(v);
            return;
        }
        let remaining = (n - 1 - cur.len()) as i64;
        for l in (remaining..top).rev() {
            cur.push(l);
            rec(cur, n, l, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![], n, bound as i64, &mut out);
    out
}

/// (⟨Ω⟩, Δ₊, Δ₋) = (Σ⟨λ⟩², Σθ⟨λ⟩², Σθ⁻¹⟨λ⟩²).
fn sums(dims: &[CycScalar], twists: &[CycScalar]) -> Result<(CycScalar, CycScalar, CycScalar)> {
    let field = dims[0].field().clone();
    let (mut o, mut p, mut m) = (CycScalar::zero(&field), CycScalar::zero(&field), CycScalar::zero(&field));
    for (d, t) in dims.iter().zip(twists) {
        let d2 = d * d;
        p = &p + &(t * &d2);
        m = &m + &(&t.inv()? * &d2);
        o = &o + &d2;
    }
    Ok((o, p, m))
}

/// The global constants (⟨Ω⟩, Δ₊, Δ₋) of built data.
pub fn global_constants(data: &ModularData) -> (CycScalar, CycScalar, CycScalar) {
    (data.omega.clone(), data.delta_plus.clone(), data.delta_minus.clone())
}

/// Builds and verifies; any failed identity is an error.
pub fn build_modular_data(n: u32, k: u32, theory: Theory) -> Result<ModularData> {
    let data = ModularData::compute(n, k, theory)?;
    data.ensure_verified()?;
    Ok(data)
}

impl fmt::Display for ModularData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} modular data at ({},{}) with {} labels", self.theory, self.ctx.n, self.ctx.k, self.len())
    }
}
