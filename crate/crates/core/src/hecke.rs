//! The Hecke algebra H_n on the basis of positive permutation braids, with
//! its Markov trace.
//!
//! Permutations are in one-line notation and compose as functions; the
//! braid word s_{i1}⋯s_{il} maps to s_{i1}∘⋯∘s_{il}, so right
//! multiplication by s_i swaps positions i, i+1 and left multiplication
//! swaps the values i, i+1. Products x·y stack x before y.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::diagrams::{quantum_dimension, YoungDiagram};
use crate::error::{Error, Result};
use crate::scalars::{CycScalar, RingContext};

/// Largest supported strand count (basis size 8! = 40320).
pub const MAX_STRANDS: usize = 8;

pub type Perm = Vec<u8>;

pub fn identity_perm(n: usize) -> Perm {
    (1..=n as u8).collect()
}

/// Number of inversions.
pub fn perm_length(p: &[u8]) -> usize {
    let mut l = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                l += 1;
            }
        }
    }
    l
}

/// (p∘q)(j) = p(q(j)).
pub fn compose(p: &[u8], q: &[u8]) -> Perm {
    q.iter().map(|&j| p[j as usize - 1]).collect()
}

pub fn inverse_perm(p: &[u8]) -> Perm {
    let mut inv = vec![0u8; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v as usize - 1] = i as u8 + 1;
    }
    inv
}

/// A reduced word [i1, …, il] with p = s_{i1}∘⋯∘s_{il}.
pub fn reduced_word(p: &[u8]) -> Vec<usize> {
    let mut q = p.to_vec();
    let mut word = Vec::new();
    'outer: loop {
        for i in 0..q.len().saturating_sub(1) {
            if q[i] > q[i + 1] {
                q.swap(i, i + 1);
                word.push(i + 1);
                continue 'outer;
            }
        }
        break;
    }
    word.reverse();
    word
}

/// All permutations of {1..n} in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(cur: &mut Perm, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8 + 1);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// p extended by fixed points on the right (x ⊗ 1) or shifted (1 ⊗ x).
fn embed_perm(p: &[u8], left: usize, right: usize) -> Perm {
    let mut out: Perm = (1..=left as u8).collect();
    out.extend(p.iter().map(|&v| v + left as u8));
    let n = left + p.len();
    out.extend((n as u8 + 1)..=(n + right) as u8);
    out
}

/// A linear combination of positive permutation braids w_π.
#[derive(Clone, Debug)]
pub struct HeckeElement {
    ctx: Arc<RingContext>,
    n: usize,
    terms: BTreeMap<Perm, CycScalar>,
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

fn check_strands(n: usize) -> Result<()> {
    if n > MAX_STRANDS {
        return Err(Error::Domain(format!("{n} strands exceed the cap of {MAX_STRANDS}")));
    }
    Ok(())
}

/// Exponents and constants of the quadratic relation σ² = a(s−s⁻¹)σ + a².
struct Quad {
    a1s1: i64,
    a1sm1: i64,
    a2: i64,
}

impl Quad {
    fn of(ctx: &RingContext) -> Quad {
        Quad { a1s1: ctx.monomial_exp(1, 1, 0), a1sm1: ctx.monomial_exp(1, -1, 0), a2: ctx.monomial_exp(2, 0, 0) }
    }

    /// c·a(s − s⁻¹)
    fn z(&self, c: &CycScalar) -> CycScalar {
        c.mul_zeta_pow(self.a1s1) - c.mul_zeta_pow(self.a1sm1)
    }
}

fn add_term(terms: &mut BTreeMap<Perm, CycScalar>, p: Perm, c: CycScalar) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&p) {
        Some(x) => {
            let y = &*x + &c;
            if y.is_zero() {
                terms.remove(&p);
            } else {
                *x = y;
            }
        }
        None => {
            terms.insert(p, c);
        }
    }
}

impl HeckeElement {
    pub fn zero(ctx: &Arc<RingContext>, n: usize) -> Result<HeckeElement> {
        check_strands(n)?;
        Ok(HeckeElement { ctx: ctx.clone(), n, terms: BTreeMap::new() })
    }

    pub fn identity(ctx: &Arc<RingContext>, n: usize) -> Result<HeckeElement> {
        Self::basis(ctx, identity_perm(n))
    }

    pub fn basis(ctx: &Arc<RingContext>, p: Perm) -> Result<HeckeElement> {
        check_strands(p.len())?;
        let mut terms = BTreeMap::new();
        let n = p.len();
        terms.insert(p, ctx.one());
        Ok(HeckeElement { ctx: ctx.clone(), n, terms })
    }

    /// σ_i in H_n.
    pub fn generator(ctx: &Arc<RingContext>, n: usize, i: usize) -> Result<HeckeElement> {
        if i == 0 || i >= n {
            return Err(Error::Domain(format!("generator σ_{i} outside H_{n}")));
        }
        let mut p = identity_perm(n);
        p.swap(i - 1, i);
        Self::basis(ctx, p)
    }

    /// Evaluates a braid word of signed generator indices, left to right.
    pub fn from_word(ctx: &Arc<RingContext>, n: usize, word: &[i32]) -> Result<HeckeElement> {
        let mut x = Self::identity(ctx, n)?;
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= n {
                return Err(Error::Domain(format!("generator index {g} outside 1..{}", n.saturating_sub(1))));
            }
            x = if g > 0 { x.right_gen(i) } else { x.right_gen_inv(i) };
        }
        Ok(x)
    }

    pub fn ctx(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Perm, CycScalar> {
        &self.terms
    }

    pub fn coeff(&self, p: &[u8]) -> CycScalar {
        self.terms.get(p).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_shape(&self, other: &HeckeElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Mismatch(format!("H_{} versus H_{}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.same_shape(other)?;
        let mut terms = self.terms.clone();
        for (p, c) in &other.terms {
            add_term(&mut terms, p.clone(), c.clone());
        }
        Ok(HeckeElement { terms, ..self.clone_empty() })
    }

    pub fn sub(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.add(&other.scale(&self.ctx.int(-1)))
    }

    fn clone_empty(&self) -> HeckeElement {
        HeckeElement { ctx: self.ctx.clone(), n: self.n, terms: BTreeMap::new() }
    }

    pub fn scale(&self, c: &CycScalar) -> HeckeElement {
        let mut out = self.clone_empty();
        if c.is_zero() {
            return out;
        }
        for (p, x) in &self.terms {
            out.terms.insert(p.clone(), x * c);
        }
        out
    }

    /// x·σ_i.
    pub fn right_gen(&self, i: usize) -> HeckeElement {
        let q = Quad::of(&self.ctx);
        let mut terms = BTreeMap::new();
        for (p, c) in &self.terms {
            let mut ps = p.clone();
            ps.swap(i - 1, i);
            if p[i - 1] < p[i] {
                add_term(&mut terms, ps, c.clone());
            } else {
                add_term(&mut terms, p.clone(), q.z(c));
                add_term(&mut terms, ps, c.mul_zeta_pow(q.a2));
            }
        }
        HeckeElement { terms, ..self.clone_empty() }
    }

    /// σ_i·x.
    pub fn left_gen(&self, i: usize) -> HeckeElement {
        let q = Quad::of(&self.ctx);
        let mut terms = BTreeMap::new();
        for (p, c) in &self.terms {
            let pos_i = p.iter().position(|&v| v as usize == i).unwrap();
            let pos_j = p.iter().position(|&v| v as usize == i + 1).unwrap();
            let mut sp = p.clone();
            sp.swap(pos_i, pos_j);
            if pos_i < pos_j {
                add_term(&mut terms, sp, c.clone());
            } else {
                add_term(&mut terms, p.clone(), q.z(c));
                add_term(&mut terms, sp, c.mul_zeta_pow(q.a2));
            }
        }
        HeckeElement { terms, ..self.clone_empty() }
    }

    /// x·σ_i⁻¹ with σ⁻¹ = a⁻²σ − a⁻¹(s − s⁻¹).
    pub fn right_gen_inv(&self, i: usize) -> HeckeElement {
        let ctx = &self.ctx;
        let a_m2 = ctx.monomial_exp(-2, 0, 0);
        let t = self.right_gen(i);
        let mut terms = BTreeMap::new();
        for (p, c) in &t.terms {
            add_term(&mut terms, p.clone(), c.mul_zeta_pow(a_m2));
        }
        let (e1, e2) = (ctx.monomial_exp(-1, 1, 0), ctx.monomial_exp(-1, -1, 0));
        for (p, c) in &self.terms {
            add_term(&mut terms, p.clone(), c.mul_zeta_pow(e2) - c.mul_zeta_pow(e1));
        }
        HeckeElement { terms, ..self.clone_empty() }
    }

    /// x·w_π, applying the generators of a reduced word of π.
    fn right_basis(&self, p: &[u8]) -> HeckeElement {
        let mut x = self.clone();
        for i in reduced_word(p) {
            x = x.right_gen(i);
        }
        x
    }

    pub fn mul(&self, other: &HeckeElement) -> Result<HeckeElement> {
        self.same_shape(other)?;
        let mut terms = BTreeMap::new();
        for (p, c) in &other.terms {
            let part = self.right_basis(p);
            for (q, d) in part.terms {
                add_term(&mut terms, q, &d * c);
            }
        }
        Ok(HeckeElement { terms, ..self.clone_empty() })
    }

    pub fn pow(&self, k: u32) -> Result<HeckeElement> {
        let mut acc = Self::identity(&self.ctx, self.n)?;
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// 1_left ⊗ x ⊗ 1_right.
    pub fn embed(&self, left: usize, right: usize) -> Result<HeckeElement> {
        check_strands(left + self.n + right)?;
        let terms = self.terms.iter().map(|(p, c)| (embed_perm(p, left, right), c.clone())).collect();
        Ok(HeckeElement { ctx: self.ctx.clone(), n: left + self.n + right, terms })
    }

    /// The Markov trace: the Homflypt value of the closure in S³.
    pub fn markov_trace(&self) -> CycScalar {
        let mut t = Tracer::new(&self.ctx);
        let mut acc = self.ctx.zero();
        for (p, c) in &self.terms {
            acc = &acc + &(c * &t.basis(p));
        }
        acc
    }
}

/// Memoized traces of basis braids.
struct Tracer {
    ctx: Arc<RingContext>,
    delta: CycScalar,
    curl: i64,
    memo: HashMap<Perm, CycScalar>,
}

impl Tracer {
    fn new(ctx: &Arc<RingContext>) -> Tracer {
        Tracer { ctx: ctx.clone(), delta: circle_value(ctx), curl: ctx.monomial_exp(1, 0, -1), memo: HashMap::new() }
    }

    fn basis(&mut self, p: &[u8]) -> CycScalar {
        if let Some(v) = self.memo.get(p) {
            return v.clone();
        }
        let n = p.len();
        let v = if n == 0 {
            self.ctx.one()
        } else if p[n - 1] as usize == n {
            {
            let inner = self.basis(&p[..n - 1]);
            &self.delta * &inner
        }
        } else {
            // p = p'∘s_{n-1}∘⋯∘s_q with p' ∈ S_{n-1}, q the position of n
            let q = p.iter().position(|&v| v as usize == n).unwrap() + 1;
            let mut pp = p.to_vec();
            for j in q..n {
                pp.swap(j - 1, j);
            }
            pp.pop();
            let mut x = HeckeElement::basis(&self.ctx, pp).unwrap();
            for j in (q..n - 1).rev() {
                x = x.right_gen(j);
            }
            let mut acc = self.ctx.zero();
            for (r, c) in x.terms() {
                acc = &acc + &(c * &self.basis(r));
            }
            acc.mul_zeta_pow(self.curl)
        };
        self.memo.insert(p.to_vec(), v.clone());
        v
    }
}

/// δ = (v⁻¹ − v)/(s − s⁻¹), the value of a 0-framed unknot.
pub fn circle_value(ctx: &RingContext) -> CycScalar {
    let num = ctx.monomial(0, 0, -1) - ctx.monomial(0, 0, 1);
    let den = ctx.monomial(0, 1, 0) - ctx.monomial(0, -1, 0);
    num.div_ref(&den).expect("s² ≠ 1")
}

/// Homflypt value of the closure of a braid word in H_n.
pub fn homfly_braid_closure(ctx: &Arc<RingContext>, word: &[i32], n: usize) -> Result<CycScalar> {
    Ok(HeckeElement::from_word(ctx, n, word)?.markov_trace())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymKind {
    /// f_n: σ_i f = as·f.
    F,
    /// g_n: σ_i g = −as⁻¹·g.
    G,
}

fn qint_inv_checked(ctx: &RingContext, n: i64) -> Result<CycScalar> {
    if !ctx.qint_invertible(n) {
        return Err(Error::Domain(format!("[{n}] is not invertible")));
    }
    ctx.qint_inv(n)
}

/// f_n or g_n by the recursions
/// [n+1]f_{n+1} = −[n−1]f_n⊗1 + [2][n](f_n⊗1)(1_{n−1}⊗f_2)(f_n⊗1),
/// g_{n+1} = 1⊗g_n − ([2][n]/[n+1])(1⊗g_n)(f_2⊗1_{n−1})(1⊗g_n).
pub fn symmetrizer(ctx: &Arc<RingContext>, n: usize, kind: SymKind) -> Result<HeckeElement> {
    check_strands(n)?;
    if n <= 1 {
        return HeckeElement::identity(ctx, n);
    }
    // [2]f₂ = s⁻¹·1 + a⁻¹σ₁
    let f2 = HeckeElement::identity(ctx, 2)?
        .scale(&ctx.monomial(0, -1, 0))
        .add(&HeckeElement::generator(ctx, 2, 1)?.scale(&ctx.monomial(-1, 0, 0)))?
        .scale(&qint_inv_checked(ctx, 2)?);
    let mut cur = HeckeElement::identity(ctx, 1)?;
    for m in 1..n {
        let mi = m as i64;
        cur = match kind {
            SymKind::F => {
                if m == 1 {
                    f2.clone()
                } else {
                    let a = cur.embed(0, 1)?;
                    let mid = f2.embed(m - 1, 0)?;
                    let prod = a.mul(&mid)?.mul(&a)?.scale(&(&ctx.qint(2) * &ctx.qint(mi)));
                    a.scale(&(-ctx.qint(mi - 1))).add(&prod)?.scale(&qint_inv_checked(ctx, mi + 1)?)
                }
            }
            SymKind::G => {
                let b = cur.embed(1, 0)?;
                let mid = f2.embed(0, m - 1)?;
                let c = &(&ctx.qint(2) * &ctx.qint(mi)) * &qint_inv_checked(ctx, mi + 1)?;
                b.sub(&b.mul(&mid)?.mul(&b)?.scale(&c))?
            }
        };
    }
    Ok(cur)
}

/// The explicit sums f_n = s^{−n(n−1)/2}/[n]! Σ (as⁻¹)^{−l(π)} w_π and
/// g_n = s^{n(n−1)/2}/[n]! Σ (−as)^{−l(π)} w_π.
pub fn symmetrizer_explicit(ctx: &Arc<RingContext>, n: usize, kind: SymKind) -> Result<HeckeElement> {
    check_strands(n)?;
    let mut fact = ctx.one();
    for j in 1..=n as i64 {
        fact = &fact * &ctx.qint(j);
    }
    if fact.is_zero() {
        return Err(Error::Domain(format!("[{n}]! is not invertible")));
    }
    let pre = fact.inv()?;
    let half = (n * (n - 1) / 2) as i64;
    let mut x = HeckeElement::zero(ctx, n)?;
    for p in all_perms(n) {
        let l = perm_length(&p) as i64;
        let c = match kind {
            SymKind::F => ctx.monomial(-l, l - half, 0),
            SymKind::G => ctx.monomial(-l, -l + half, 0).scale_int(if l % 2 == 0 { 1 } else { -1 }),
        };
        add_term(&mut x.terms, p, &c * &pre);
    }
    Ok(x)
}

/// J_k = σ_{k−1}⋯σ₁σ₁⋯σ_{k−1} in H_n (J₁ = 1).
pub fn jucys_murphy(ctx: &Arc<RingContext>, k: usize, n: usize) -> Result<HeckeElement> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!("J_{k} outside H_{n}")));
    }
    let mut word: Vec<i32> = (1..k as i32).rev().collect();
    word.extend(1..k as i32);
    HeckeElement::from_word(ctx, n, &word)
}

/// Eigenvalue exponent of J_k on a cell of content c: a^{2(k−1)}s^{2c}.
fn jm_exponent(ctx: &RingContext, k: usize, c: i64) -> i64 {
    ctx.monomial_exp(2 * (k as i64 - 1), 2 * c, 0)
}

/// Path idempotent of a standard tableau given as the row of each entry.
pub fn path_idempotent(ctx: &Arc<RingContext>, tableau: &[u32]) -> Result<HeckeElement> {
    let n = tableau.len();
    check_strands(n)?;
    let mut shape = YoungDiagram::empty();
    let mut p = HeckeElement::identity(ctx, 0)?;
    for (idx, &row) in tableau.iter().enumerate() {
        let k = idx + 1;
        let addable = shape.addable_cells();
        let cell = addable
            .iter()
            .find(|c| c.0 == row)
            .copied()
            .ok_or_else(|| Error::InvalidLabel(format!("entry {k} cannot go in row {row}")))?;
        p = p.embed(0, 1)?;
        let j = jucys_murphy(ctx, k, k)?;
        let target = jm_exponent(ctx, k, YoungDiagram::content(cell.0, cell.1));
        for &(i2, j2) in &addable {
            if (i2, j2) == cell {
                continue;
            }
            let other = jm_exponent(ctx, k, YoungDiagram::content(i2, j2));
            if other == target {
                return Err(Error::Domain(format!(
                    "contents {} and {} give equal eigenvalues",
                    YoungDiagram::content(cell.0, cell.1),
                    YoungDiagram::content(i2, j2)
                )));
            }
            let num = j.sub(&HeckeElement::identity(ctx, k)?.scale(&ctx.zeta(other)))?;
            let den = (ctx.zeta(target) - ctx.zeta(other)).inv()?;
            p = p.mul(&num)?.scale(&den);
        }
        shape = shape.add_cell(row)?;
    }
    Ok(p)
}

/// z_λ = Σ_{shape(t)=λ} p_t.
pub fn central_idempotent(ctx: &Arc<RingContext>, lambda: &YoungDiagram) -> Result<HeckeElement> {
    let mut z = HeckeElement::zero(ctx, lambda.size() as usize)?;
    for t in crate::diagrams::standard_tableaux(lambda) {
        z = z.add(&path_idempotent(ctx, &t)?)?;
    }
    Ok(z)
}

/// The row-reading superstandard tableau of λ.
pub fn row_tableau(lambda: &YoungDiagram) -> Vec<u32> {
    lambda.rows().iter().enumerate().flat_map(|(i, &r)| std::iter::repeat_n(i as u32 + 1, r as usize)).collect()
}

/// Unnormalized product of row blocks (kind F) or blocks of given sizes.
fn block_product(ctx: &Arc<RingContext>, sizes: &[u32], kind: SymKind) -> Result<HeckeElement> {
    let n: u32 = sizes.iter().sum();
    let mut x = HeckeElement::identity(ctx, n as usize)?;
    let mut offset = 0usize;
    for &b in sizes {
        let b = b as usize;
        let block = symmetrizer(ctx, b, kind)?.scale(&ctx.qfactorial(b as u32));
        x = x.mul(&block.embed(offset, n as usize - offset - b)?)?;
        offset += b;
    }
    Ok(x)
}

/// ỹ_λ = F_λ · w_c · G_λ · w_c⁻¹ in row-reading order, where w_c carries
/// the column-reading positions of the cells to their row-reading ones.
pub fn young_quasi_idempotent(ctx: &Arc<RingContext>, lambda: &YoungDiagram) -> Result<HeckeElement> {
    let n = lambda.size() as usize;
    check_strands(n)?;
    let f = block_product(ctx, lambda.rows(), SymKind::F)?;
    let t = lambda.transpose();
    let g = block_product(ctx, t.rows(), SymKind::G)?;
    // column-reading index of each cell in row-reading order
    let cells = lambda.cells();
    let mut col_order = cells.clone();
    col_order.sort_by_key(|&(i, j)| (j, i));
    let mut perm = vec![0u8; n];
    for (ci, cell) in col_order.iter().enumerate() {
        let ri = cells.iter().position(|c| c == cell).unwrap();
        perm[ci] = ri as u8 + 1;
    }
    let word = reduced_word(&perm);
    let w: Vec<i32> = word.iter().map(|&i| i as i32).collect();
    let winv: Vec<i32> = word.iter().rev().map(|&i| -(i as i32)).collect();
    let wc = HeckeElement::from_word(ctx, n, &w)?;
    let wci = HeckeElement::from_word(ctx, n, &winv)?;
    let y = f.mul(&wc)?.mul(&g)?.mul(&wci)?;
    let hl = lambda.hooks().iter().fold(ctx.one(), |acc, &h| &acc * &ctx.qint(h as i64));
    if y.mul(&y)? != y.scale(&hl) {
        return Err(Error::Internal(format!("ỹ² ≠ [hl]ỹ for {lambda}")));
    }
    Ok(y)
}

/// (σ₁⋯σ_{n−1})ⁿ.
pub fn full_twist(ctx: &Arc<RingContext>, n: usize) -> Result<HeckeElement> {
    let word: Vec<i32> = (0..n).flat_map(|_| 1..n as i32).collect();
    HeckeElement::from_word(ctx, n, &word)
}

/// The full twist of a ribbon band: the braid full twist with one
/// positive curl on each strand, (av⁻¹)ⁿ(σ₁⋯σ_{n−1})ⁿ.
pub fn framed_full_twist(ctx: &Arc<RingContext>, n: usize) -> Result<HeckeElement> {
    Ok(full_twist(ctx, n)?.scale(&ctx.monomial(n as i64, 0, -(n as i64))))
}

/// ⟨λ⟩ computed as the Markov trace of a path idempotent.
pub fn trace_dimension(ctx: &Arc<RingContext>, lambda: &YoungDiagram) -> Result<CycScalar> {
    Ok(path_idempotent(ctx, &row_tableau(lambda))?.markov_trace())
}

/// Hook-content dimension, re-exported for comparisons.
pub fn hook_dimension(ctx: &RingContext, lambda: &YoungDiagram) -> Result<CycScalar> {
    quantum_dimension(ctx, lambda)
}

/// [p+q] f_p⊗g_q = [p+1][q] (1_p⊗g_q)(f_{p+1}⊗1_{q−1})(1_p⊗g_q)
///   + [p][q+1] (f_p⊗1_q)(1_{p−1}⊗g_{q+1})(f_p⊗1_q), as an exact check.
pub fn two_symmetrizer_identity(ctx: &Arc<RingContext>, p: usize, q: usize) -> Result<bool> {
    if p == 0 || q == 0 {
        return Err(Error::Domain("p and q must be positive".into()));
    }
    let n = p + q;
    let fp = symmetrizer(ctx, p, SymKind::F)?;
    let gq = symmetrizer(ctx, q, SymKind::G)?;
    let lhs = fp.embed(0, q)?.mul(&gq.embed(p, 0)?)?.scale(&ctx.qint(n as i64));
    let g_side = gq.embed(p, 0)?;
    let f1 = symmetrizer(ctx, p + 1, SymKind::F)?.embed(0, q - 1)?;
    let t1 = g_side.mul(&f1)?.mul(&g_side)?.scale(&(&ctx.qint(p as i64 + 1) * &ctx.qint(q as i64)));
    let f_side = fp.embed(0, q)?;
    let g1 = symmetrizer(ctx, q + 1, SymKind::G)?.embed(p - 1, 0)?;
    let t2 = f_side.mul(&g1)?.mul(&f_side)?.scale(&(&ctx.qint(p as i64) * &ctx.qint(q as i64 + 1)));
    Ok(lhs == t1.add(&t2)?)
}

/// Result of passing a strand twice around the column object g_N.
#[derive(Clone, Debug)]
pub struct ColumnCrossing {
    /// J_{N+1}(g_N⊗1) − a^{2N}s²(g_N⊗1) is a multiple of g_{N+1}.
    pub remainder_in_g: bool,
    /// ⟨g_{N+1}⟩ = 0, so the remainder is negligible.
    pub remainder_negligible: bool,
}

impl ColumnCrossing {
    pub fn holds(&self) -> bool {
        self.remainder_in_g && self.remainder_negligible
    }
}

/// The double crossing of one strand past g_N acts by a^{2N}s² up to
/// negligible morphisms.
pub fn column_crossing_check(ctx: &Arc<RingContext>) -> Result<ColumnCrossing> {
    let n = ctx.n as usize;
    let g = symmetrizer(ctx, n, SymKind::G)?.embed(0, 1)?;
    let j = jucys_murphy(ctx, n + 1, n + 1)?;
    let rem = j.mul(&g)?.sub(&g.scale(&ctx.monomial(2 * n as i64, 2, 0)))?;
    let g1 = symmetrizer(ctx, n + 1, SymKind::G)?;
    let expected = ctx.monomial(2 * n as i64, -2 * n as i64, 0) - ctx.monomial(2 * n as i64, 2, 0);
    Ok(ColumnCrossing {
        remainder_in_g: rem == g1.scale(&expected),
        remainder_negligible: g1.markov_trace().is_zero(),
    })
}
