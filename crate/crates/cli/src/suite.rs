//! The bundled verification suite: every identity applicable at (N, K).

use std::fmt;
use std::str::FromStr;

use hecke_tqft::diagrams::gamma;
use hecke_tqft::moddata::{is_spin, Check, CheckStatus, ModularData};
use hecke_tqft::refine::{
    filtered_bracket, graded_gauss_sums, is_characteristic, one_vertex_gauss_factor,
    reduction_check, refined_decomposition, StructureKind,
};
use hecke_tqft::scalars::Theory;
use hecke_tqft::surgery::{bundled_manifests, linking_data, tau, PlumbingGraph};
use hecke_tqft::Result;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    Quick,
    Full,
}

impl FromStr for Depth {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Depth, String> {
        match s {
            "quick" => Ok(Depth::Quick),
            "full" => Ok(Depth::Full),
            _ => Err(format!("depth must be quick or full, got '{s}'")),
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Depth::Quick { "quick" } else { "full" })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Gate {
    pub group: String,
    pub anchor: String,
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

struct Gates(Vec<Gate>);

impl Gates {
    fn push(&mut self, group: &str, anchor: &str, c: Check) {
        self.0.push(Gate { group: group.into(), anchor: anchor.into(), name: c.name, status: c.status, detail: c.detail });
    }

    fn check(&mut self, group: &str, anchor: &str, name: &str, r: Result<bool>) {
        let c = match r {
            Ok(ok) => Check::new(name, ok, ""),
            Err(e) => Check::new(name, false, e.to_string()),
        };
        self.push(group, anchor, c);
    }
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

fn random_forest(rng: &mut StdRng) -> PlumbingGraph {
    let m = rng.gen_range(1..=4);
    let framings: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
    let mut edges = Vec::new();
    for v in 1..m {
        if rng.gen_bool(0.7) {
            edges.push((rng.gen_range(0..v), v));
        }
    }
    PlumbingGraph::from_parts(&framings, &edges).expect("forest")
}

fn is_one(g: &PlumbingGraph, data: &ModularData) -> Result<bool> {
    let v = tau(g, data)?.value;
    Ok(v.eta_pow == 0 && v.base == data.ctx.one())
}

pub fn run(n: u32, k: u32, depth: Depth) -> Result<Vec<Gate>> {
    let full = depth == Depth::Full;
    let d = n.gcd(&k);
    let mut gates = Gates(Vec::new());
    let su = ModularData::compute(n, k, Theory::Su)?;
    let psu = ModularData::compute(n, k, Theory::Psu)?;
    let red = ModularData::compute(n, k, Theory::Reduced)?;
    let manifests = bundled_manifests();

    let expected = factorial(n + k - 1) / (factorial(n - 1) * factorial(k));
    gates.push("counts", "|Γ| = (N+K−1)!/((N−1)!K!)", Check::new("SU labels", gamma(n, k).len() as u128 == expected, format!("{expected}")));
    let expected_red = d as u128 * factorial(n + k - 1) / (factorial(n) * factorial(k));
    gates.push("counts", "|Γ̃| = d(N+K−1)!/(N!K!)", Check::new("reduced labels", red.len() as u128 == expected_red, format!("{expected_red}")));

    for data in [&su, &psu, &red] {
        let group = format!("{} modular data", data.theory.name());
        for c in &data.report {
            gates.push(&group, "modular data identities", c.clone());
        }
    }

    for g in 0..=3 {
        let r = su.verlinde_dimension(g).map(|v| {
            v.as_rational().is_some_and(|q| q.is_integer() && q >= num_rational::BigRational::from_integer(0.into()))
                && (g != 1 || v == su.ctx.int(su.len() as i64))
        });
        gates.check("verlinde", "Σ_λ S_{0λ}^{2−2g} = ⟨Ω⟩^{g−1}Σ⟨λ⟩^{2−2g}", &format!("genus {g}"), r);
    }
    if full {
        let mut ok = Ok(true);
        'outer: for l in 0..su.len() {
            for m in 0..su.len() {
                if let Err(e) = su.fusion_coefficients(l, m) {
                    ok = Err(e);
                    break 'outer;
                }
            }
        }
        gates.check("fusion", "N^ν_{λμ} ∈ ℕ", "all SU fusion coefficients", ok);
    }

    match su.hecke_cross_check(if full { 4 } else { 3 }) {
        Ok(list) => list.into_iter().for_each(|c| gates.push("hecke", "trace = dimension, twist = θ", c)),
        Err(e) => gates.push("hecke", "trace = dimension, twist = θ", Check::new("Hecke cross-check", false, e.to_string())),
    }

    let anchors = ["S³ = ∅", "S³ = U₁", "S³ = U₋₁"];
    for data in [&su, &psu, &red] {
        for (name, anchor) in ["s3_empty", "u1", "u-1"].iter().zip(anchors) {
            let g = if *name == "u-1" { PlumbingGraph::unknot(-1) } else { manifests[name].clone() };
            let label = format!("{} τ({anchor}) = 1", data.theory.name());
            if data.theory == Theory::Psu && data.spin_case {
                gates.push("normalization", "τ(S³) = 1", Check::skip(&label, "PSU spin rank-level: τ undefined"));
            } else {
                gates.check("normalization", "τ(S³) = 1", &label, is_one(&g, data));
            }
        }
    }
    if full {
        let mut rng = StdRng::seed_from_u64(2024);
        for trial in 0..5 {
            let g = random_forest(&mut rng);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let up = g.blow_up_leaf(rng.gen_range(0..g.vertices.len()), sign).expect("leaf");
            for data in [&su, &red] {
                let r = (|| Ok(tau(&g, data)?.value == tau(&up, data)?.value))();
                gates.check("kirby", "blow-up invariance", &format!("{} forest {trial}", data.theory.name()), r);
            }
        }
    }

    let kind = if is_spin(n, k) { StructureKind::Spin } else { StructureKind::Coho };
    let names: &[&str] = if full { &["u0", "u-2", "chain_-2_-2", "chain_0_0"] } else { &["u0", "u-2"] };
    for name in names {
        let g = &manifests[name];
        let r = refined_decomposition(g, &red, kind).map(|dec| dec.holds());
        gates.check("refinement", "τ̃ = Σ_σ τ̃(σ)", &format!("{kind} decomposition {name}"), r);
        let r = (|| {
            let (b, _) = linking_data(g);
            let mut ok = true;
            for c in vectors(b.len(), d) {
                if !is_characteristic(&b, d, kind, &c) {
                    ok &= filtered_bracket(g, &red, &c)?.is_zero();
                }
            }
            Ok(ok)
        })();
        gates.check("refinement", "non-characteristic brackets vanish", &format!("vanishing {name}"), r);
    }
    let live = if kind == StructureKind::Spin { d / 2 } else { 0 };
    let r = graded_gauss_sums(&red).map(|parts| parts.iter().enumerate().all(|(nu, p)| p.is_zero() == (nu as u32 != live)));
    gates.check("refinement", "⟨U₁(ω̃_ν)⟩ = 0 off the live degree", &format!("graded Gauss sums (live ν = {live})"), r);

    let names: &[&str] = if full { &["u0", "u1", "chain_-2_-2", "chain_0_0", "tree5"] } else { &["u0", "u1"] };
    for name in names {
        let r = reduction_check(&manifests[name], &su, &red);
        let c = match r {
            Ok(rep) => Check::new(&format!("reduction {name}"), rep.holds(1e-9), format!("|difference| = {:.3e}", rep.difference)),
            Err(e) => Check::new(&format!("reduction {name}"), false, e.to_string()),
        };
        gates.push("reduction", "τ^SU = τ^U(1)·τ̃", c);
    }
    let np = n / d;
    let c = match one_vertex_gauss_factor(&su, &red) {
        Ok(g) => Check::new("|g|² = N'", (g.norm_sqr() - np as f64).abs() < 1e-12, format!("{:.15}", g.norm_sqr())),
        Err(e) => Check::new("|g|² = N'", false, e.to_string()),
    };
    gates.push("reduction", "Gauss sum modulus", c);
    Ok(gates.0)
}

fn vectors(m: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out.into_iter().flat_map(|v: Vec<u32>| (0..d).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}
