//! Mod-d spin and cohomological structures on surgered manifolds, refined
//! invariants, U(1) Gauss sums and the SU = U(1) × reduced check.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moddata::{is_spin, ModularData};
use crate::scalars::{CycScalar, ExtScalar, RingContext, Theory};
use crate::surgery::{colored_bracket, linking_data, normalize, tau, DegreeFilter, PlumbingGraph};

/// A diagonal form U·B·V = D with U, V unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonalization {
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
    pub diag: Vec<i64>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Smith normal form of an integer matrix, with transformation matrices.
pub fn smith_normal_form(b: &[Vec<i64>]) -> Diagonalization {
    let m = b.len();
    let n = if m == 0 { 0 } else { b[0].len() };
    let mut a: Vec<Vec<i64>> = b.to_vec();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block goes to (t, t)
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..m {
            let q = Integer::div_floor(&a[i][t], &a[t][t]);
            if q != 0 {
                for j in 0..n {
                    a[i][j] -= q * a[t][j];
                }
                for j in 0..m {
                    u[i][j] -= q * u[t][j];
                }
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..n {
            let q = Integer::div_floor(&a[t][j], &a[t][t]);
            if q != 0 {
                for i in 0..m {
                    a[i][j] -= q * a[i][t];
                }
                for i in 0..n {
                    v[i][j] -= q * v[i][t];
                }
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // enforce divisibility of the trailing block by the pivot
        if let Some(i) = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % a[t][t] != 0)) {
            for j in 0..n {
                a[t][j] += a[i][j];
            }
            for j in 0..m {
                u[t][j] += u[i][j];
            }
            continue;
        }
        if a[t][t] < 0 {
            for j in 0..n {
                a[t][j] = -a[t][j];
            }
            for j in 0..m {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    let diag = (0..m.min(n)).map(|i| a[i][i]).collect();
    Diagonalization { u, v, diag }
}

/// All c ∈ (Z/d)^m with B·c ≡ r (mod d), via the Smith form of B.
pub fn solve_mod(b: &[Vec<i64>], r: &[i64], d: u32) -> Vec<Vec<u32>> {
    let m = b.len();
    let d = d as i64;
    if m == 0 {
        return vec![vec![]];
    }
    let snf = smith_normal_form(b);
    let ur: Vec<i64> = (0..m).map(|i| (0..m).map(|j| snf.u[i][j] * r[j]).sum::<i64>().rem_euclid(d)).collect();
    // per coordinate of y = V⁻¹c, the list of admissible residues
    let mut choices: Vec<Vec<i64>> = Vec::with_capacity(m);
    for i in 0..m {
        let a = snf.diag.get(i).copied().unwrap_or(0).rem_euclid(d);
        let g = a.gcd(&d);
        if ur[i] % g != 0 {
            return vec![];
        }
        let md = d / g;
        let y0 = if md == 1 { 0 } else { (ur[i] / g * mod_inverse(a / g, md)).rem_euclid(md) };
        choices.push((0..g).map(|k| y0 + k * md).collect());
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; m];
    loop {
        let y: Vec<i64> = (0..m).map(|i| choices[i][pick[i]]).collect();
        let c: Vec<u32> = (0..m).map(|i| (0..m).map(|j| snf.v[i][j] * y[j]).sum::<i64>().rem_euclid(d) as u32).collect();
        out.push(c);
        let mut k = 0;
        loop {
            if k == m {
                out.sort();
                return out;
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    let e = a.rem_euclid(m).extended_gcd(&m);
    e.x.rem_euclid(m)
}

/// |H¹(M; Z/d)| = |ker(B mod d)| read off the Smith form.
pub fn h1_cardinality(b: &[Vec<i64>], d: u32) -> u64 {
    let snf = smith_normal_form(b);
    (0..b.len())
        .map(|i| {
            let a = snf.diag.get(i).copied().unwrap_or(0);
            (a.rem_euclid(d as i64)).gcd(&(d as i64)) as u64
        })
        .product()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    Spin,
    Coho,
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureKind::Spin => "spin",
            StructureKind::Coho => "coho",
        })
    }
}

impl FromStr for StructureKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<StructureKind> {
        match s {
            "spin" => Ok(StructureKind::Spin),
            "coho" => Ok(StructureKind::Coho),
            _ => Err(Error::Parse(format!("unknown structure kind '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinStructureSet {
    pub d: u32,
    pub b: Vec<Vec<i64>>,
    pub kind: StructureKind,
    pub solutions: Vec<Vec<u32>>,
}

fn rhs(b: &[Vec<i64>], d: u32, kind: StructureKind) -> Vec<i64> {
    match kind {
        StructureKind::Spin => (0..b.len()).map(|i| d as i64 / 2 * b[i][i]).collect(),
        StructureKind::Coho => vec![0; b.len()],
    }
}

/// Whether B·c ≡ (d/2)·diag(B) (spin) or B·c ≡ 0 (coho) modulo d.
pub fn is_characteristic(b: &[Vec<i64>], d: u32, kind: StructureKind, c: &[u32]) -> bool {
    let r = rhs(b, d, kind);
    c.len() == b.len()
        && (0..b.len()).all(|i| {
            let s: i64 = (0..b.len()).map(|j| b[i][j] * c[j] as i64).sum();
            (s - r[i]).rem_euclid(d as i64) == 0
        })
}

/// Solutions of the mod-d characteristic equation (spin) or of B·c ≡ 0
/// (coho).
pub fn characteristic_solutions(b: &[Vec<i64>], d: u32, kind: StructureKind) -> Result<SpinStructureSet> {
    if d == 0 || (kind == StructureKind::Spin && d % 2 == 1) {
        return Err(Error::Domain(format!("{kind} structures need an {} modulus, got {d}", if kind == StructureKind::Spin { "even" } else { "positive" })));
    }
    let solutions = solve_mod(b, &rhs(b, d, kind), d);
    if solutions.is_empty() {
        return Err(Error::Internal("the characteristic equation has no solution".into()));
    }
    let h1 = h1_cardinality(b, d);
    if solutions.len() as u64 != h1 {
        return Err(Error::Internal(format!("{} solutions but |H¹| = {h1}", solutions.len())));
    }
    Ok(SpinStructureSet { d, b: b.to_vec(), kind, solutions })
}

fn check_reduced(data: &ModularData, kind: StructureKind) -> Result<u32> {
    if data.theory != Theory::Reduced {
        return Err(Error::Mismatch("refined invariants need reduced data".into()));
    }
    let (n, k) = (data.ctx.n, data.ctx.k);
    match (kind, is_spin(n, k)) {
        (StructureKind::Spin, false) => Err(Error::Unavailable(format!("({n},{k}) is not a spin rank-level"))),
        (StructureKind::Coho, true) => Err(Error::Unavailable(format!("({n},{k}) is a spin rank-level"))),
        _ => Ok(data.gcd()),
    }
}

/// ⟨L(ω̃_{c₁},…,ω̃_{c_m})⟩ without η factors, for any c.
pub fn filtered_bracket(g: &PlumbingGraph, data: &ModularData, c: &[u32]) -> Result<CycScalar> {
    let f = DegreeFilter { modulus: data.gcd(), residues: c.to_vec() };
    colored_bracket(g, data, Some(&f))
}

/// δ^{−σ} ⟨L(ω̃_{c₁},…,ω̃_{c_m})⟩ for a structure vector c.
pub fn refined_tau(g: &PlumbingGraph, data: &ModularData, c: &[u32], kind: StructureKind) -> Result<ExtScalar> {
    let d = check_reduced(data, kind)?;
    let (b, sig) = linking_data(g);
    if !is_characteristic(&b, d, kind, c) {
        return Err(Error::Domain(format!(
            "{c:?} does not satisfy the mod-{d} {} equation; its bracket vanishes",
            if kind == StructureKind::Spin { "characteristic" } else { "kernel" }
        )));
    }
    let bracket = filtered_bracket(g, data, c)?;
    normalize(data, bracket, b.len() as i64, sig)
}

/// Refined invariants of every structure together with their sum and τ̃.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub records: Vec<(Vec<u32>, ExtScalar)>,
    pub total: ExtScalar,
    pub sum: ExtScalar,
}

impl Decomposition {
    pub fn holds(&self) -> bool {
        self.sum == self.total
    }
}

pub fn refined_decomposition(g: &PlumbingGraph, data: &ModularData, kind: StructureKind) -> Result<Decomposition> {
    let d = check_reduced(data, kind)?;
    let (b, _) = linking_data(g);
    let set = characteristic_solutions(&b, d, kind)?;
    let mut records = Vec::new();
    for c in set.solutions {
        let v = refined_tau(g, data, &c, kind)?;
        records.push((c, v));
    }
    let total = tau(g, data)?.value;
    let mut sum = ExtScalar::with_eta_power(data.ctx.zero(), total.eta_pow as i64, data.theory, total.omega().clone())?;
    for (_, v) in &records {
        sum = sum.add(v)?;
    }
    Ok(Decomposition { records, total, sum })
}

/// ν ↦ η̃ Σ_{deg u ≡ ν} θ_u⟨u⟩² for ν ∈ Z/d.
pub fn graded_gauss_sums(data: &ModularData) -> Result<Vec<ExtScalar>> {
    if data.theory != Theory::Reduced {
        return Err(Error::Mismatch("graded Gauss sums need reduced data".into()));
    }
    let d = data.gcd();
    let omega = std::sync::Arc::new(data.omega.clone());
    let mut parts = vec![data.ctx.zero(); d as usize];
    for i in 0..data.len() {
        let nu = (data.degree(i) % d) as usize;
        parts[nu] = &parts[nu] + &(&data.twists[i] * &(&data.dims[i] * &data.dims[i]));
    }
    parts.into_iter().map(|p| ExtScalar::with_eta_power(p, 1, Theory::Reduced, omega.clone())).collect()
}

/// Which move a blow-down undoes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlowDown {
    /// An isolated ±1 unknot.
    Isolated,
    /// A ±1 leaf attached to a vertex.
    Leaf,
    /// A ±1 vertex of degree two between two surgery vertices.
    Edge,
}

/// Blows down the ±1-framed surgery vertex `w` of a presentation carrying
/// structure `c`, returning the new presentation and the transported
/// structure.
pub fn blowdown_transform(
    g: &PlumbingGraph,
    c: &[u32],
    d: u32,
    kind: StructureKind,
    w: usize,
) -> Result<(PlumbingGraph, Vec<u32>, BlowDown)> {
    let sv = g.surgery_vertices();
    let (b, _) = linking_data(g);
    if c.len() != sv.len() {
        return Err(Error::Mismatch(format!("{} coefficients for {} components", c.len(), sv.len())));
    }
    if !is_characteristic(&b, d, kind, c) {
        return Err(Error::Domain(format!("{c:?} is not a {kind} structure")));
    }
    let slot = sv.iter().position(|&v| v == w).ok_or_else(|| Error::InvalidPresentation(format!("no surgery vertex {w}")))?;
    let eps = g.vertices[w].framing;
    if eps.abs() != 1 {
        return Err(Error::InvalidPresentation(format!("vertex {} has framing {eps}, not ±1", g.vertices[w].id)));
    }
    let id = g.vertices[w].id.clone();
    let nbrs: Vec<String> = g
        .edges
        .iter()
        .filter_map(|(a, b2)| if *a == id { Some(b2.clone()) } else if *b2 == id { Some(a.clone()) } else { None })
        .collect();
    let pos: HashMap<&str, usize> = g.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
    if nbrs.iter().any(|x| !g.vertices[pos[x.as_str()]].is_surgery()) {
        return Err(Error::InvalidPresentation("blow-down next to a link vertex is not supported".into()));
    }
    let dd = d as i64;
    let half = if kind == StructureKind::Spin { dd / 2 } else { 0 };
    // the moved component carries d/2 once its neighbours' share is removed
    let nb_sum: i64 = nbrs.iter().map(|x| c[sv.iter().position(|&v| v == pos[x.as_str()]).unwrap()] as i64).sum();
    if (c[slot] as i64 + eps * nb_sum - half).rem_euclid(dd) != 0 {
        return Err(Error::Domain(format!(
            "coefficient {} on {} is not the characteristic value",
            c[slot], g.vertices[w].id
        )));
    }
    let mut h = g.clone();
    h.edges.retain(|(a, b2)| *a != id && *b2 != id);
    for x in &nbrs {
        h.vertices[pos[x.as_str()]].framing -= eps;
    }
    let mut coeff: BTreeMap<usize, i64> = sv.iter().zip(c).map(|(&v, &x)| (v, x as i64)).collect();
    coeff.remove(&w);
    let move_kind = match nbrs.len() {
        0 => BlowDown::Isolated,
        1 => BlowDown::Leaf,
        2 => {
            // the new linking number is −ε; for ε = 1 reverse the side of the
            // second neighbour so the edge stays positive
            let (p, q) = (pos[nbrs[0].as_str()], pos[nbrs[1].as_str()]);
            if eps == 1 {
                for v in component_of(&h, q) {
                    if let Some(x) = coeff.get_mut(&v) {
                        *x = -*x;
                    }
                }
            }
            h.edges.push((h.vertices[p].id.clone(), h.vertices[q].id.clone()));
            BlowDown::Edge
        }
        _ => return Err(Error::InvalidPresentation("blow-down of a vertex of degree > 2".into())),
    };
    h.vertices.remove(w);
    let c2: Vec<u32> = coeff.values().map(|x| x.rem_euclid(dd) as u32).collect();
    Ok((h, c2, move_kind))
}

fn component_of(g: &PlumbingGraph, start: usize) -> Vec<usize> {
    let pos: HashMap<&str, usize> = g.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
    let mut seen = vec![false; g.vertices.len()];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for (a, b) in &g.edges {
            let (x, y) = (pos[a.as_str()], pos[b.as_str()]);
            let other = if x == u { y } else if y == u { x } else { continue };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    (0..g.vertices.len()).filter(|&i| seen[i]).collect()
}

/// Appends an isolated ±1 unknot carrying the characteristic value d/2
/// (spin) or 0 (coho).
pub fn blowup_isolated(g: &PlumbingGraph, c: &[u32], d: u32, kind: StructureKind, sign: i64) -> (PlumbingGraph, Vec<u32>) {
    let h = g.blow_up(sign);
    let mut c2 = c.to_vec();
    c2.push(if kind == StructureKind::Spin { d / 2 } else { 0 });
    (h, c2)
}

/// The Gauss-sum root ζ of the U(1) factor, in the SU context.
pub fn u1_root(su: &RingContext, beta: u32) -> CycScalar {
    let (n, k) = (su.n, su.k);
    let d = n.gcd(&k);
    let kk = k as i64;
    let e = kk * (beta as i64).pow(2);
    let base = if d % 2 == 0 {
        su.monomial(kk, -1, 0)
    } else {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        su.monomial(kk, -1, 0).scale_int(sign)
    };
    base.pow(e).expect("root of unity")
}

/// Σ_{j ∈ (Z/N')^m} ζ^{jᵀBj}.
pub fn gauss_sum(b: &[Vec<i64>], zeta: &CycScalar, n_prime: u32) -> CycScalar {
    let m = b.len();
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    let mut j = vec![0i64; m];
    loop {
        let q: i64 = (0..m).map(|x| (0..m).map(|y| j[x] * b[x][y] * j[y]).sum::<i64>()).sum();
        *counts.entry(q).or_insert(0) += 1;
        let mut k = 0;
        loop {
            if k == m {
                let mut acc = CycScalar::zero(zeta.field());
                for (e, c) in counts {
                    acc = &acc + &zeta.pow(e).expect("root of unity").scale_int(c);
                }
                return acc;
            }
            j[k] += 1;
            if j[k] < n_prime as i64 {
                break;
            }
            j[k] = 0;
            k += 1;
        }
    }
}

/// τ^{U(1)} = (Δ/δ)^{−σ}(η/η̃)^m Σ ζ^{jᵀBj}, evaluated in the embedding.
#[derive(Clone, Debug)]
pub struct U1Invariant {
    pub gauss_sum: CycScalar,
    pub value: Complex64,
}

// (Δ, δ, η/η̃) in the embedding
fn prefactors(su: &ModularData, reduced: &ModularData) -> (Complex64, Complex64, f64) {
    let eta = 1.0 / su.omega.to_c64().re.sqrt();
    let eta_t = 1.0 / reduced.omega.to_c64().re.sqrt();
    (su.delta_plus.to_c64() * eta, reduced.delta_plus.to_c64() * eta_t, eta / eta_t)
}

pub fn u1_invariant(b: &[Vec<i64>], su: &ModularData, reduced: &ModularData) -> Result<U1Invariant> {
    let p = reduced.ctx.reduced_params().ok_or_else(|| Error::Mismatch("second data set must be reduced".into()))?;
    if su.theory != Theory::Su {
        return Err(Error::Mismatch("first data set must be SU".into()));
    }
    let sig = crate::surgery::signature(b);
    let zeta = u1_root(&su.ctx, p.beta);
    let gs = gauss_sum(b, &zeta, p.n_prime);
    let (big, small, ratio) = prefactors(su, reduced);
    let value = (big / small).powi(-(sig as i32)) * ratio.powi(b.len() as i32) * gs.to_c64();
    Ok(U1Invariant { gauss_sum: gs, value })
}

/// g = (Δ/δ)(η̃/η), which equals the Gauss sum Σ_{j ∈ Z/N'} ζ^{j²}
/// and has |g|² = N'.
pub fn one_vertex_gauss_factor(su: &ModularData, reduced: &ModularData) -> Result<Complex64> {
    if reduced.ctx.reduced_params().is_none() || su.theory != Theory::Su {
        return Err(Error::Mismatch("expected SU and reduced data".into()));
    }
    let (big, small, ratio) = prefactors(su, reduced);
    Ok(big / small / ratio)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub su: [f64; 2],
    pub u1: [f64; 2],
    pub reduced: [f64; 2],
    pub product: [f64; 2],
    pub difference: f64,
}

impl ReductionReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.difference < tol
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Both sides of τ^{SU} = τ^{U(1)} · τ̃ in the complex embedding.
pub fn reduction_check(g: &PlumbingGraph, su: &ModularData, reduced: &ModularData) -> Result<ReductionReport> {
    let (b, _) = linking_data(g);
    let lhs = tau(g, su)?.value.to_c64()?;
    let u1 = u1_invariant(&b, su, reduced)?.value;
    let red = tau(g, reduced)?.value.to_c64()?;
    let prod = u1 * red;
    Ok(ReductionReport { su: pair(lhs), u1: pair(u1), reduced: pair(red), product: pair(prod), difference: (lhs - prod).norm() })
}
