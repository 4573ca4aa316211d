//! Plumbing forests as surgery presentations and the invariants τ of the
//! SU, PSU and reduced theories.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::diagrams::{Label, ReducedLabel, YoungDiagram};
use crate::error::{Error, Result};
use crate::moddata::{Check, ModularData};
use crate::scalars::{CycScalar, ExtScalar, Theory};

/// Color of a link vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkColor {
    pub lambda: Vec<u32>,
    #[serde(default, skip_serializing_if = "is_zero_u32")]
    pub i: u32,
}

fn is_zero_u32(x: &u32) -> bool {
    *x == 0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub framing: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub link: Option<LinkColor>,
}

impl Vertex {
    pub fn surgery(id: &str, framing: i64) -> Vertex {
        Vertex { id: id.into(), framing, link: None }
    }

    pub fn is_surgery(&self) -> bool {
        self.link.is_none()
    }
}

/// A framed forest of unknots, plumbed along edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlumbingGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(String, String)>,
}

impl PlumbingGraph {
    pub fn empty() -> PlumbingGraph {
        PlumbingGraph { vertices: vec![], edges: vec![] }
    }

    /// Single surgery vertex U_f.
    pub fn unknot(framing: i64) -> PlumbingGraph {
        PlumbingGraph { vertices: vec![Vertex::surgery("v0", framing)], edges: vec![] }
    }

    /// Linear chain of surgery vertices.
    pub fn chain(framings: &[i64]) -> PlumbingGraph {
        let vertices: Vec<Vertex> =
            framings.iter().enumerate().map(|(i, &f)| Vertex::surgery(&format!("v{i}"), f)).collect();
        let edges = (1..framings.len()).map(|i| (format!("v{}", i - 1), format!("v{i}"))).collect();
        PlumbingGraph { vertices, edges }
    }

    /// Surgery forest from framings and index pairs.
    pub fn from_parts(framings: &[i64], edges: &[(usize, usize)]) -> Result<PlumbingGraph> {
        let g = PlumbingGraph {
            vertices: framings.iter().enumerate().map(|(i, &f)| Vertex::surgery(&format!("v{i}"), f)).collect(),
            edges: edges.iter().map(|&(u, v)| (format!("v{u}"), format!("v{v}"))).collect(),
        };
        g.validate()?;
        Ok(g)
    }

    pub fn from_json(v: &Value) -> Result<PlumbingGraph> {
        let g: PlumbingGraph =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("plumbing graph: {e}")))?;
        g.validate()?;
        Ok(g)
    }

    pub fn parse(text: &str) -> Result<PlumbingGraph> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("plumbing graph: {e}")))?;
        Self::from_json(&v)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("graph serializes")
    }

    fn index(&self) -> HashMap<&str, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let idx = self.index();
        if idx.len() != self.vertices.len() {
            return Err(Error::InvalidPresentation("duplicate vertex id".into()));
        }
        for v in &self.vertices {
            if let Some(c) = &v.link {
                YoungDiagram::new(c.lambda.clone())
                    .map_err(|_| Error::InvalidLabel(format!("link color {:?} of {} is not a diagram", c.lambda, v.id)))?;
            }
        }
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for (a, b) in &self.edges {
            let (Some(&u), Some(&v)) = (idx.get(a.as_str()), idx.get(b.as_str())) else {
                return Err(Error::InvalidPresentation(format!("edge ({a},{b}) names an unknown vertex")));
            };
            if u == v {
                return Err(Error::InvalidPresentation(format!("loop at {a}")));
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return Err(Error::InvalidPresentation("not a plumbing forest: cycle detected".into()));
            }
            parent[ru] = rv;
        }
        Ok(())
    }

    /// Indices of surgery vertices, in input order.
    pub fn surgery_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| self.vertices[i].is_surgery()).collect()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let idx = self.index();
        let mut adj = vec![vec![]; self.vertices.len()];
        for (a, b) in &self.edges {
            let (u, v) = (idx[a.as_str()], idx[b.as_str()]);
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Disjoint union, with ids of `other` prefixed to stay distinct.
    pub fn disjoint_union(&self, other: &PlumbingGraph) -> PlumbingGraph {
        let mut g = self.clone();
        let rename = |s: &str| format!("r.{s}");
        for v in &other.vertices {
            g.vertices.push(Vertex { id: rename(&v.id), ..v.clone() });
        }
        for (a, b) in &other.edges {
            g.edges.push((rename(a), rename(b)));
        }
        g
    }

    fn fresh_id(&self) -> String {
        let mut k = self.vertices.len();
        loop {
            let id = format!("b{k}");
            if self.vertices.iter().all(|v| v.id != id) {
                return id;
            }
            k += 1;
        }
    }

    /// Adds an isolated ±1-framed unknot.
    pub fn blow_up(&self, sign: i64) -> PlumbingGraph {
        let mut g = self.clone();
        g.vertices.push(Vertex::surgery(&self.fresh_id(), sign.signum()));
        g
    }

    /// Adds a ±1 leaf at `v` and shifts the framing of `v` by the same sign.
    pub fn blow_up_leaf(&self, v: usize, sign: i64) -> Result<PlumbingGraph> {
        if v >= self.vertices.len() || !self.vertices[v].is_surgery() {
            return Err(Error::InvalidPresentation(format!("no surgery vertex {v}")));
        }
        let e = sign.signum();
        let mut g = self.clone();
        g.vertices[v].framing += e;
        let id = self.fresh_id();
        g.vertices.push(Vertex::surgery(&id, e));
        g.edges.push((self.vertices[v].id.clone(), id));
        Ok(g)
    }

    /// Replaces the edge (u, v) by u – w – v with w framed ±1, shifting the
    /// framings of u and v by the same sign.
    pub fn blow_up_edge(&self, edge: usize, sign: i64) -> Result<PlumbingGraph> {
        let (a, b) =
            self.edges.get(edge).cloned().ok_or_else(|| Error::InvalidPresentation(format!("no edge {edge}")))?;
        let idx = self.index();
        let (u, v) = (idx[a.as_str()], idx[b.as_str()]);
        if !self.vertices[u].is_surgery() || !self.vertices[v].is_surgery() {
            return Err(Error::InvalidPresentation("edge blow-up needs surgery endpoints".into()));
        }
        let e = sign.signum();
        let mut g = self.clone();
        g.vertices[u].framing += e;
        g.vertices[v].framing += e;
        let id = self.fresh_id();
        g.vertices.push(Vertex::surgery(&id, e));
        g.edges.remove(edge);
        g.edges.push((a, id.clone()));
        g.edges.push((id, b));
        Ok(g)
    }
}

/// Linking matrix of the surgery vertices and its signature.
pub fn linking_data(g: &PlumbingGraph) -> (Vec<Vec<i64>>, i64) {
    let sv = g.surgery_vertices();
    let pos: HashMap<usize, usize> = sv.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut b = vec![vec![0i64; sv.len()]; sv.len()];
    for (i, &v) in sv.iter().enumerate() {
        b[i][i] = g.vertices[v].framing;
    }
    let idx = g.index();
    for (x, y) in &g.edges {
        if let (Some(&i), Some(&j)) = (pos.get(&idx[x.as_str()]), pos.get(&idx[y.as_str()])) {
            b[i][j] += 1;
            b[j][i] += 1;
        }
    }
    let sig = signature(&b);
    (b, sig)
}

/// Signature of a symmetric integer matrix by rational congruence
/// diagonalization.
pub fn signature(b: &[Vec<i64>]) -> i64 {
    let n = b.len();
    let mut a: Vec<Vec<BigRational>> =
        b.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let mut sig = 0;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row/column k += row/column j makes the pivot 2a_kj
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[k][c] += t;
                }
                for r in 0..n {
                    let t = a[r][j].clone();
                    a[r][k] += t;
                }
            } else {
                continue;
            }
        }
        let p = a[k][k].clone();
        sig += if p.is_positive() { 1 } else { -1 };
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &p;
            for c in k..n {
                let t = &f * &a[k][c];
                a[r][c] -= t;
            }
        }
        for c in k + 1..n {
            a[k][c] = BigRational::zero();
        }
        for r in k + 1..n {
            a[r][k] = BigRational::zero();
        }
    }
    sig
}

/// Degree residues imposed on surgery vertices, in surgery-vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeFilter {
    pub modulus: u32,
    pub residues: Vec<u32>,
}

fn resolve_color(data: &ModularData, v: &Vertex, c: &LinkColor) -> Result<usize> {
    let lambda = YoungDiagram::new(c.lambda.clone())?;
    let found = match data.theory {
        Theory::Reduced => {
            if c.i == 0 {
                data.index_of_diagram(&lambda)
            } else {
                data.index_of(&Label::Reduced(ReducedLabel::new(c.i, lambda.clone())))
            }
        }
        _ if c.i == 0 => data.index_of(&Label::Diagram(lambda.clone())),
        _ => None,
    };
    found.ok_or_else(|| Error::InvalidLabel(format!("color {lambda} (i={}) of vertex {} is not a {} label", c.i, v.id, data.theory)))
}

/// Allowed colors and weights of each vertex.
struct VertexTable {
    colors: Vec<Vec<usize>>,
    weights: Vec<Vec<CycScalar>>,
}

fn vertex_table(g: &PlumbingGraph, data: &ModularData, filter: Option<&DegreeFilter>) -> Result<VertexTable> {
    g.validate()?;
    let sv = g.surgery_vertices();
    if let Some(f) = filter {
        let grading = match data.theory {
            Theory::Reduced => data.gcd(),
            _ => data.ctx.n,
        };
        if f.modulus == 0 || grading % f.modulus != 0 {
            return Err(Error::Mismatch(format!("filter modulus {} does not divide the grading modulus {grading}", f.modulus)));
        }
        if f.residues.len() != sv.len() {
            return Err(Error::Mismatch(format!("{} residues for {} surgery vertices", f.residues.len(), sv.len())));
        }
    }
    let adj = g.adjacency();
    let mut slot = vec![usize::MAX; g.vertices.len()];
    for (i, &v) in sv.iter().enumerate() {
        slot[v] = i;
    }
    let mut colors = Vec::with_capacity(g.vertices.len());
    let mut weights = Vec::with_capacity(g.vertices.len());
    for (vi, v) in g.vertices.iter().enumerate() {
        let deg = adj[vi].len() as i64;
        let (cs, extra) = match &v.link {
            Some(c) => (vec![resolve_color(data, v, c)?], 1 - deg),
            None => {
                let cs: Vec<usize> = match filter {
                    Some(f) => (0..data.len())
                        .filter(|&c| data.degree(c) % f.modulus == f.residues[slot[vi]] % f.modulus)
                        .collect(),
                    None => (0..data.len()).collect(),
                };
                (cs, 2 - deg)
            }
        };
        let mut ws = Vec::with_capacity(cs.len());
        for &c in &cs {
            ws.push(&data.dims[c].pow(extra)? * &data.twists[c].pow(v.framing)?);
        }
        colors.push(cs);
        weights.push(ws);
    }
    Ok(VertexTable { colors, weights })
}

/// ⟨L(Ω,…,Ω)⟩ for the plumbing link by leaf elimination: Σ over colorings of
/// Π_v ⟨c_v⟩^{2−deg v} θ_{c_v}^{m_v} Π_{edges} S_{c_u c_v}.
pub fn colored_bracket(g: &PlumbingGraph, data: &ModularData, filter: Option<&DegreeFilter>) -> Result<CycScalar> {
    let t = vertex_table(g, data, filter)?;
    let adj = g.adjacency();
    let n = g.vertices.len();
    let mut visited = vec![false; n];
    let mut total = data.ctx.one();
    for root in 0..n {
        if visited[root] {
            continue;
        }
        // iterative DFS order, children processed before parents
        let mut order = vec![];
        let mut parent = vec![usize::MAX; n];
        let mut stack = vec![root];
        visited[root] = true;
        while let Some(u) = stack.pop() {
            order.push(u);
            for &w in &adj[u] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = u;
                    stack.push(w);
                }
            }
        }
        let mut msg: Vec<Option<Vec<CycScalar>>> = vec![None; n];
        for &u in order.iter().rev() {
            let mut m = t.weights[u].clone();
            for &w in &adj[u] {
                if parent[w] != u {
                    continue;
                }
                let child = msg[w].take().expect("child processed");
                for (ci, &c) in t.colors[u].iter().enumerate() {
                    let mut acc = data.ctx.zero();
                    for (cj, &d) in t.colors[w].iter().enumerate() {
                        acc = &acc + &(&data.s_matrix[c][d] * &child[cj]);
                    }
                    m[ci] = &m[ci] * &acc;
                }
            }
            msg[u] = Some(m);
        }
        let root_msg = msg[root].take().unwrap();
        let mut sum = data.ctx.zero();
        for x in root_msg {
            sum = &sum + &x;
        }
        total = &total * &sum;
    }
    Ok(total)
}

/// The same sum expanded over all colorings.
pub fn colored_bracket_bruteforce(
    g: &PlumbingGraph,
    data: &ModularData,
    filter: Option<&DegreeFilter>,
) -> Result<CycScalar> {
    let t = vertex_table(g, data, filter)?;
    let idx = g.index();
    let edges: Vec<(usize, usize)> = g.edges.iter().map(|(a, b)| (idx[a.as_str()], idx[b.as_str()])).collect();
    let n = g.vertices.len();
    let mut choice = vec![0usize; n];
    let mut total = data.ctx.zero();
    if t.colors.iter().any(|c| c.is_empty()) {
        return Ok(total);
    }
    loop {
        let mut term = data.ctx.one();
        for v in 0..n {
            term = &term * &t.weights[v][choice[v]];
        }
        for &(u, v) in &edges {
            term = &term * &data.s_matrix[t.colors[u][choice[u]]][t.colors[v][choice[v]]];
        }
        total = &total + &term;
        let mut k = 0;
        loop {
            if k == n {
                return Ok(total);
            }
            choice[k] += 1;
            if choice[k] < t.colors[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

#[derive(Clone, Debug)]
pub struct SurgeryInvariantResult {
    pub value: ExtScalar,
    pub theory: Theory,
    pub signature: i64,
    pub bracket: CycScalar,
    pub report: Vec<Check>,
}

/// η^{m−σ} Δ₊^{−σ} times a bracket, in the η-extension of the theory.
pub fn normalize(data: &ModularData, bracket: CycScalar, m: i64, sig: i64) -> Result<ExtScalar> {
    if data.delta_plus.is_zero() && sig != 0 {
        return Err(Error::Unavailable(format!("{} at ({},{}): ⟨U₁(Ω)⟩ vanishes", data.theory, data.ctx.n, data.ctx.k)));
    }
    let base = &bracket * &data.delta_plus.pow(-sig)?;
    ExtScalar::with_eta_power(base, m - sig, data.theory, std::sync::Arc::new(data.omega.clone()))
}

/// τ = (ηΔ₊)^{−σ} η^m ⟨L(Ω,…,Ω)⟩.
pub fn tau(g: &PlumbingGraph, data: &ModularData) -> Result<SurgeryInvariantResult> {
    if data.theory == Theory::Psu && data.spin_case {
        return Err(Error::Unavailable(format!(
            "PSU at spin rank-level ({},{}): ⟨U₁(Ω₀)⟩ = 0, so τ is undefined",
            data.ctx.n, data.ctx.k
        )));
    }
    let (b, sig) = linking_data(g);
    let bracket = colored_bracket(g, data, None)?;
    let mut report = Vec::new();
    if g.vertices.len() <= 4 {
        let brute = colored_bracket_bruteforce(g, data, None)?;
        report.push(Check::new("leaf elimination matches full sum", brute == bracket, ""));
    }
    let value = normalize(data, bracket.clone(), b.len() as i64, sig)?;
    Ok(SurgeryInvariantResult { value, theory: data.theory, signature: sig, bracket, report })
}

/// Bundled example presentations.
pub fn bundled_manifests() -> BTreeMap<&'static str, PlumbingGraph> {
    let raw: [(&str, &str); 7] = [
        ("s3_empty", include_str!("../manifests/s3_empty.json")),
        ("u0", include_str!("../manifests/u0.json")),
        ("u1", include_str!("../manifests/u1.json")),
        ("u-2", include_str!("../manifests/u-2.json")),
        ("chain_-2_-2", include_str!("../manifests/chain_-2_-2.json")),
        ("chain_0_0", include_str!("../manifests/chain_0_0.json")),
        ("tree5", include_str!("../manifests/tree5.json")),
    ];
    raw.into_iter().map(|(k, v)| (k, PlumbingGraph::parse(v).expect("bundled manifest parses"))).collect()
}
