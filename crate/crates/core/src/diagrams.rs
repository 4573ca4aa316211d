//! Young diagrams, the label sets of the theories, and the Z/N action on
//! reduced labels.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{CycScalar, RingContext};

/// A Young diagram as its weakly decreasing positive rows.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct YoungDiagram {
    rows: Vec<u32>,
}

impl TryFrom<Vec<u32>> for YoungDiagram {
    type Error = Error;
    fn try_from(rows: Vec<u32>) -> Result<Self> {
        YoungDiagram::new(rows)
    }
}

impl From<YoungDiagram> for Vec<u32> {
    fn from(d: YoungDiagram) -> Vec<u32> {
        d.rows
    }
}

/// Cell data in row-reading order; rows and columns are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramStats {
    pub cells: Vec<(u32, u32)>,
    pub hooks: Vec<u32>,
    pub contents: Vec<i64>,
    pub transpose: YoungDiagram,
    pub tableau_count: BigInt,
    pub content_sum: i64,
}

impl YoungDiagram {
    /// Trailing zero rows are dropped; anything else non-monotone is rejected.
    pub fn new(mut rows: Vec<u32>) -> Result<YoungDiagram> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) || rows.contains(&0) {
            return Err(Error::InvalidLabel(format!("{rows:?} is not weakly decreasing")));
        }
        Ok(YoungDiagram { rows })
    }

    pub fn empty() -> YoungDiagram {
        YoungDiagram { rows: vec![] }
    }

    /// The single column 1^n.
    pub fn column(n: u32) -> YoungDiagram {
        YoungDiagram { rows: vec![1; n as usize] }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// λ_i with 1-based i, zero past the last row.
    pub fn row(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.rows.get(i - 1).copied().unwrap_or(0)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn first_row(&self) -> u32 {
        self.row(1)
    }

    pub fn size(&self) -> u32 {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn transpose(&self) -> YoungDiagram {
        let w = self.first_row();
        let rows = (1..=w).map(|j| self.rows.iter().filter(|&&r| r >= j).count() as u32).collect();
        YoungDiagram { rows }
    }

    /// Cells (i, j) in row-reading order.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &r) in self.rows.iter().enumerate() {
            for j in 1..=r {
                out.push((i as u32 + 1, j));
            }
        }
        out
    }

    pub fn hook(&self, i: u32, j: u32) -> u32 {
        let t = self.transpose();
        self.row(i as usize) + t.row(j as usize) + 1 - i - j
    }

    pub fn content(i: u32, j: u32) -> i64 {
        j as i64 - i as i64
    }

    pub fn hooks(&self) -> Vec<u32> {
        let t = self.transpose();
        self.cells().into_iter().map(|(i, j)| self.row(i as usize) + t.row(j as usize) + 1 - i - j).collect()
    }

    pub fn content_sum(&self) -> i64 {
        self.cells().into_iter().map(|(i, j)| Self::content(i, j)).sum()
    }

    /// Number of standard tableaux by the hook-length formula.
    pub fn tableau_count(&self) -> BigInt {
        let mut num = BigInt::one();
        for m in 2..=self.size() {
            num *= m;
        }
        let den: BigInt = self.hooks().into_iter().map(BigInt::from).product();
        num / den
    }

    pub fn stats(&self) -> DiagramStats {
        let cells = self.cells();
        DiagramStats {
            contents: cells.iter().map(|&(i, j)| Self::content(i, j)).collect(),
            hooks: self.hooks(),
            cells,
            transpose: self.transpose(),
            tableau_count: self.tableau_count(),
            content_sum: self.content_sum(),
        }
    }

    /// Whether `other` ⊆ self.
    pub fn contains(&self, other: &YoungDiagram) -> bool {
        other.rows.len() <= self.rows.len() && other.rows.iter().zip(&self.rows).all(|(a, b)| a <= b)
    }

    /// Cells (i, j) that can be added, top to bottom.
    pub fn addable_cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in 1..=self.rows.len() + 1 {
            let r = self.row(i);
            if i == 1 || self.row(i - 1) > r {
                out.push((i as u32, r + 1));
            }
        }
        out
    }

    pub fn removable_cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in 1..=self.rows.len() {
            let r = self.row(i);
            if self.row(i + 1) < r {
                out.push((i as u32, r));
            }
        }
        out
    }

    pub fn add_cell(&self, i: u32) -> Result<YoungDiagram> {
        let mut rows = self.rows.clone();
        let i = i as usize;
        if i == rows.len() + 1 {
            rows.push(1);
        } else if i >= 1 && i <= rows.len() {
            rows[i - 1] += 1;
        } else {
            return Err(Error::InvalidLabel(format!("no row {i} to extend")));
        }
        YoungDiagram::new(rows)
    }

    /// All diagrams obtained by adding one cell.
    pub fn children(&self) -> Vec<YoungDiagram> {
        self.addable_cells().into_iter().map(|(i, _)| self.add_cell(i).unwrap()).collect()
    }

    /// Rows padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut r = self.rows.clone();
        r.resize(n.max(r.len()), 0);
        r
    }

    /// The rank-N dual: rotation of λ₁^N / λ.
    pub fn star(&self, n: u32) -> YoungDiagram {
        let l1 = self.first_row();
        let p = self.padded(n as usize);
        let rows = (0..n as usize).rev().map(|i| l1 - p[i]).collect();
        YoungDiagram::new(rows).unwrap()
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for YoungDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<YoungDiagram> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("diagram '{s}' must look like [3,2,1]")))?;
        let rows = if inner.trim().is_empty() {
            vec![]
        } else {
            inner
                .split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad row '{x}' in '{s}'"))))
                .collect::<Result<Vec<_>>>()?
        };
        YoungDiagram::new(rows)
    }
}

/// (1^N)^{⊗i} ⊗ λ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReducedLabel {
    pub i: u32,
    pub lambda: YoungDiagram,
}

impl ReducedLabel {
    pub fn new(i: u32, lambda: YoungDiagram) -> ReducedLabel {
        ReducedLabel { i, lambda }
    }

    pub fn degree(&self, n: u32) -> u32 {
        self.i * n + self.lambda.size()
    }

    /// Dual label: λ⋆ with the power of 1^N that makes the total degree
    /// a multiple of Nα.
    pub fn star(&self, n: u32, alpha: u32) -> ReducedLabel {
        let l1 = self.lambda.first_row();
        let i = (-(self.i as i64) - l1 as i64).rem_euclid(alpha as i64) as u32;
        ReducedLabel { i, lambda: self.lambda.star(n) }
    }
}

impl fmt::Display for ReducedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.lambda)
    }
}

/// A simple-object label of any theory.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Diagram(YoungDiagram),
    Reduced(ReducedLabel),
}

impl Label {
    pub fn diagram(&self) -> &YoungDiagram {
        match self {
            Label::Diagram(d) => d,
            Label::Reduced(r) => &r.lambda,
        }
    }

    pub fn power(&self) -> u32 {
        match self {
            Label::Diagram(_) => 0,
            Label::Reduced(r) => r.i,
        }
    }

    /// Grading degree: |λ|, or iN + |λ| for reduced labels.
    pub fn degree(&self, n: u32) -> u32 {
        match self {
            Label::Diagram(d) => d.size(),
            Label::Reduced(r) => r.degree(n),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Label::Diagram(d) => serde_json::json!(d.to_string()),
            Label::Reduced(r) => serde_json::json!({"i": r.i, "lambda": d_rows(&r.lambda)}),
        }
    }
}

fn d_rows(d: &YoungDiagram) -> Vec<u32> {
    d.rows().to_vec()
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Diagram(d) => d.fmt(f),
            Label::Reduced(r) => r.fmt(f),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sector {
    /// Γ̄: λ₁ ≤ K and at most N rows.
    Bar,
    /// Γ: λ₁ ≤ K and fewer than N rows.
    Strict,
    /// Γ⁰: members of Γ with |λ| ≡ 0 mod N.
    Zero,
    /// Γ̇: pairs (i, λ) with 0 ≤ i < α and λ ∈ Γ.
    Dotted,
}

impl FromStr for Sector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sector> {
        match s {
            "bar" => Ok(Sector::Bar),
            "strict" => Ok(Sector::Strict),
            "zero" => Ok(Sector::Zero),
            "dotted" => Ok(Sector::Dotted),
            _ => Err(Error::Parse(format!("unknown sector '{s}'"))),
        }
    }
}

/// Diagrams with at most `max_rows` rows and at most `max_cols` columns,
/// in lexicographic order of row sequences.
pub fn diagrams_in_box(max_rows: u32, max_cols: u32) -> Vec<YoungDiagram> {
    fn rec(prefix: &mut Vec<u32>, max_rows: u32, bound: u32, out: &mut BTreeSet<YoungDiagram>) {
        out.insert(YoungDiagram { rows: prefix.clone() });
        if prefix.len() as u32 == max_rows {
            return;
        }
        for r in 1..=bound {
            prefix.push(r);
            rec(prefix, max_rows, r, out);
            prefix.pop();
        }
    }
    let mut out = BTreeSet::new();
    rec(&mut vec![], max_rows, max_cols, &mut out);
    out.into_iter().collect()
}

pub fn gamma_bar(n: u32, k: u32) -> Vec<YoungDiagram> {
    diagrams_in_box(n, k)
}

pub fn gamma(n: u32, k: u32) -> Vec<YoungDiagram> {
    diagrams_in_box(n - 1, k)
}

pub fn gamma_zero(n: u32, k: u32) -> Vec<YoungDiagram> {
    gamma(n, k).into_iter().filter(|d| d.size() % n == 0).collect()
}

pub fn gamma_dotted(n: u32, k: u32, alpha: u32) -> Vec<ReducedLabel> {
    let g = gamma(n, k);
    (0..alpha).flat_map(|i| g.iter().map(move |l| ReducedLabel::new(i, l.clone()))).collect()
}

/// Labels of a sector; `alpha` is needed for the dotted sector.
pub fn enumerate_sector(n: u32, k: u32, sector: Sector, alpha: Option<u32>) -> Result<Vec<Label>> {
    Ok(match sector {
        Sector::Bar => gamma_bar(n, k).into_iter().map(Label::Diagram).collect(),
        Sector::Strict => gamma(n, k).into_iter().map(Label::Diagram).collect(),
        Sector::Zero => gamma_zero(n, k).into_iter().map(Label::Diagram).collect(),
        Sector::Dotted => {
            let alpha = alpha.ok_or_else(|| Error::Unavailable("dotted sector needs α".into()))?;
            gamma_dotted(n, k, alpha).into_iter().map(Label::Reduced).collect()
        }
    })
}

/// Π_cells [N + cn(c)] / [hl(c)] in the given context.
pub fn quantum_dimension(ctx: &RingContext, lambda: &YoungDiagram) -> Result<CycScalar> {
    let n = ctx.n as i64;
    let t = lambda.transpose();
    let mut num = ctx.one();
    let mut den = ctx.one();
    for (i, j) in lambda.cells() {
        let hl = lambda.row(i as usize) + t.row(j as usize) + 1 - i - j;
        if !ctx.qint_invertible(hl as i64) {
            return Err(Error::Domain(format!("hook length {hl} at cell ({i},{j}) of {lambda} is not invertible")));
        }
        num = &num * &ctx.qint(n + YoungDiagram::content(i, j));
        den = &den * &ctx.qint(hl as i64);
    }
    num.div_ref(&den)
}

/// Π_cells (v^{-1}s^{cn} − v s^{-cn}) / (s^{hl} − s^{-hl}), the form valid
/// for a general framing parameter v.
pub fn quantum_dimension_general(ctx: &RingContext, lambda: &YoungDiagram) -> Result<CycScalar> {
    let t = lambda.transpose();
    let mut num = ctx.one();
    let mut den = ctx.one();
    for (i, j) in lambda.cells() {
        let hl = (lambda.row(i as usize) + t.row(j as usize) + 1 - i - j) as i64;
        let cn = YoungDiagram::content(i, j);
        num = &num * &(ctx.monomial(0, cn, -1) - ctx.monomial(0, -cn, 1));
        den = &den * &(ctx.monomial(0, hl, 0) - ctx.monomial(0, -hl, 0));
    }
    num.div_ref(&den)
}

/// Exponent of ζ in θ_λ = a^{|λ|²} v^{-|λ|} s^{2Σcn}.
pub fn twist_exponent(ctx: &RingContext, lambda: &YoungDiagram) -> i64 {
    let n = lambda.size() as i64;
    ctx.monomial_exp(n * n, 2 * lambda.content_sum(), -n)
}

pub fn twist(ctx: &RingContext, lambda: &YoungDiagram) -> CycScalar {
    ctx.zeta(twist_exponent(ctx, lambda))
}

/// θ_{(i,λ)} = θ_{1^N}^i θ_λ (a^N s)^{2N·C(i,2) + 2i|λ|}.
pub fn reduced_twist(ctx: &RingContext, x: &ReducedLabel) -> CycScalar {
    let n = ctx.n as i64;
    let i = x.i as i64;
    let col = twist_exponent(ctx, &YoungDiagram::column(ctx.n));
    let ans = ctx.monomial_exp(n, 1, 0);
    let e = i * col + twist_exponent(ctx, &x.lambda) + ans * (2 * n * (i * (i - 1) / 2) + 2 * i * x.lambda.size() as i64);
    ctx.zeta(e)
}

/// Generator of the Z/N action on Γ̇: add a row of K cells, then trade
/// every full column of height N for a copy of 1^N.
pub fn zn_action(n: u32, k: u32, alpha: u32, x: &ReducedLabel) -> ReducedLabel {
    let l = x.lambda.padded(n as usize - 1);
    let m = l[n as usize - 2];
    let mut rows = vec![k - m];
    rows.extend(l[..n as usize - 2].iter().map(|r| r - m));
    ReducedLabel { i: (x.i + m) % alpha, lambda: YoungDiagram::new(rows).unwrap() }
}

/// Orbit of x under the β-th power of the generator.
pub fn zn_orbit(n: u32, k: u32, alpha: u32, beta: u32, x: &ReducedLabel) -> Vec<ReducedLabel> {
    let mut orbit = vec![x.clone()];
    let mut y = x.clone();
    loop {
        for _ in 0..beta {
            y = zn_action(n, k, alpha, &y);
        }
        if &y == x {
            return orbit;
        }
        orbit.push(y.clone());
    }
}

/// Lexicographic minima of the orbits of the β-th power, in order; errors
/// if some orbit does not have exactly αN' elements.
pub fn orbit_representatives(n: u32, k: u32, alpha: u32, beta: u32) -> Result<Vec<ReducedLabel>> {
    let d = alpha * beta;
    let size = alpha * (n / d);
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for x in gamma_dotted(n, k, alpha) {
        if seen.contains(&x) {
            continue;
        }
        let orbit = zn_orbit(n, k, alpha, beta, &x);
        if orbit.len() as u32 != size {
            return Err(Error::Internal(format!("orbit of {x} has {} elements, expected {size}", orbit.len())));
        }
        reps.push(orbit.iter().min().unwrap().clone());
        seen.extend(orbit);
    }
    reps.sort();
    Ok(reps)
}

/// Standard tableaux of shape λ, each as the sequence of rows in which
/// 1, 2, …, |λ| are placed.
pub fn standard_tableaux(lambda: &YoungDiagram) -> Vec<Vec<u32>> {
    fn rec(target: &YoungDiagram, cur: &YoungDiagram, path: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur == target {
            out.push(path.clone());
            return;
        }
        for (i, _) in cur.addable_cells() {
            let next = cur.add_cell(i).unwrap();
            if target.contains(&next) {
                path.push(i);
                rec(target, &next, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(lambda, &YoungDiagram::empty(), &mut vec![], &mut out);
    out
}
