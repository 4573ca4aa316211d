#![allow(clippy::needless_range_loop)]

use hecke_tqft::moddata::ModularData;
use hecke_tqft::refine::*;
use hecke_tqft::scalars::Theory;
use hecke_tqft::surgery::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn data(n: u32, k: u32, th: Theory) -> ModularData {
    ModularData::compute(n, k, th).unwrap()
}

fn manifest(name: &str) -> PlumbingGraph {
    bundled_manifests()[name].clone()
}

fn brute_solutions(b: &[Vec<i64>], r: &[i64], d: u32) -> Vec<Vec<u32>> {
    let m = b.len();
    let total = (d as usize).pow(m as u32);
    let mut out = vec![];
    for idx in 0..total {
        let c: Vec<u32> = (0..m).map(|i| (idx / (d as usize).pow(i as u32) % d as usize) as u32).collect();
        let ok = (0..m).all(|i| {
            let s: i64 = (0..m).map(|j| b[i][j] * c[j] as i64).sum();
            (s - r[i]).rem_euclid(d as i64) == 0
        });
        if ok {
            out.push(c);
        }
    }
    out.sort();
    out
}

fn all_vectors(m: usize, d: u32) -> Vec<Vec<u32>> {
    brute_solutions(&vec![vec![0; m]; m], &vec![0; m], d)
}

#[test]
fn characteristic_examples() {
    let s = characteristic_solutions(&[vec![1]], 2, StructureKind::Spin).unwrap();
    assert_eq!(s.solutions, vec![vec![1]]);
    let s = characteristic_solutions(&[vec![0]], 2, StructureKind::Spin).unwrap();
    assert_eq!(s.solutions, vec![vec![0], vec![1]]);
    let s = characteristic_solutions(&[vec![-2, 1], vec![1, -2]], 2, StructureKind::Spin).unwrap();
    assert_eq!(s.solutions, vec![vec![0, 0]]);
    assert_eq!(characteristic_solutions(&[], 2, StructureKind::Spin).unwrap().solutions, vec![Vec::<u32>::new()]);
    assert!(characteristic_solutions(&[vec![1]], 3, StructureKind::Spin).is_err());
}

#[test]
fn smith_form_is_a_factorization() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..30 {
        let m = rng.gen_range(1..=4);
        let b: Vec<Vec<i64>> = (0..m).map(|_| (0..m).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let snf = smith_normal_form(&b);
        let mul = |x: &Vec<Vec<i64>>, y: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            (0..m).map(|i| (0..m).map(|j| (0..m).map(|k| x[i][k] * y[k][j]).sum()).collect()).collect()
        };
        let prod = mul(&mul(&snf.u, &b), &snf.v);
        for i in 0..m {
            for j in 0..m {
                let want = if i == j { snf.diag[i] } else { 0 };
                assert_eq!(prod[i][j], want, "{b:?}");
            }
        }
        for w in snf.diag.windows(2) {
            if w[0] != 0 {
                assert_eq!(w[1] % w[0], 0, "{:?}", snf.diag);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]
    #[test]
    fn solution_count_matches_smith_form(
        m in 1usize..=3,
        entries in prop::collection::vec(-5i64..=5, 9),
        d in prop::sample::select(vec![2u32, 3, 4, 6]),
    ) {
        let mut b = vec![vec![0; m]; m];
        let mut e = entries.iter();
        for i in 0..m {
            for j in i..m {
                let x = *e.next().unwrap();
                b[i][j] = x;
                b[j][i] = x;
            }
        }
        let h1 = h1_cardinality(&b, d);
        let zero = brute_solutions(&b, &vec![0; m], d);
        prop_assert_eq!(zero.len() as u64, h1);
        let kinds: &[StructureKind] = if d % 2 == 0 { &[StructureKind::Spin, StructureKind::Coho] } else { &[StructureKind::Coho] };
        for &kind in kinds {
            let set = characteristic_solutions(&b, d, kind).unwrap();
            let r: Vec<i64> = (0..m).map(|i| if kind == StructureKind::Spin { d as i64 / 2 * b[i][i] } else { 0 }).collect();
            prop_assert_eq!(&set.solutions, &brute_solutions(&b, &r, d));
            prop_assert_eq!(set.solutions.len() as u64, h1);
        }
    }
}

#[test]
fn decomposition_and_vanishing() {
    let cases = [(2, 2, StructureKind::Spin), (3, 3, StructureKind::Coho), (2, 4, StructureKind::Coho)];
    for (n, k, kind) in cases {
        let red = data(n, k, Theory::Reduced);
        for name in ["u0", "u-2", "chain_-2_-2", "chain_0_0"] {
            let g = manifest(name);
            let dec = refined_decomposition(&g, &red, kind).unwrap();
            assert!(dec.holds(), "({n},{k}) {name}");
            let (b, _) = linking_data(&g);
            for c in all_vectors(b.len(), red.gcd()) {
                if !is_characteristic(&b, red.gcd(), kind, &c) {
                    assert!(filtered_bracket(&g, &red, &c).unwrap().is_zero(), "({n},{k}) {name} {c:?}");
                    assert!(refined_tau(&g, &red, &c, kind).is_err());
                }
            }
        }
    }
}

#[test]
fn refined_examples() {
    let red = data(2, 2, Theory::Reduced);
    let u0 = manifest("u0");
    let dec = refined_decomposition(&u0, &red, StructureKind::Spin).unwrap();
    assert_eq!(dec.records.len(), 2);
    assert!(dec.holds());
    assert!(filtered_bracket(&manifest("u1"), &red, &[0]).unwrap().is_zero());
    let e = refined_tau(&manifest("u1"), &red, &[0], StructureKind::Spin).unwrap_err();
    assert!(e.to_string().contains("characteristic"), "{e}");
    let empty = refined_tau(&PlumbingGraph::empty(), &red, &[], StructureKind::Spin).unwrap();
    assert_eq!(empty.to_c64().unwrap(), num_complex::Complex64::new(1.0, 0.0));
    assert!(refined_tau(&u0, &red, &[0], StructureKind::Coho).is_err());
    let red33 = data(3, 3, Theory::Reduced);
    assert!(refined_tau(&u0, &red33, &[0], StructureKind::Spin).is_err());
}

#[test]
fn graded_gauss_sum_vanishing() {
    for (n, k, live) in [(2, 2, 1usize), (3, 3, 0), (2, 4, 0), (2, 6, 1)] {
        let red = data(n, k, Theory::Reduced);
        let parts = graded_gauss_sums(&red).unwrap();
        assert_eq!(parts.len(), red.gcd() as usize);
        for (nu, p) in parts.iter().enumerate() {
            assert_eq!(p.is_zero(), nu != live, "({n},{k}) ν={nu}");
        }
        let total = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| acc.add(p).unwrap());
        let u1 = tau(&manifest("u1"), &red).unwrap();
        assert_eq!(total.base, u1.bracket, "({n},{k})");
    }
}

#[test]
fn blowdown_examples() {
    let (g, c, mv) = blowdown_transform(&manifest("u1"), &[1], 2, StructureKind::Spin, 0).unwrap();
    assert!(g.vertices.is_empty() && c.is_empty());
    assert_eq!(mv, BlowDown::Isolated);
    assert!(blowdown_transform(&manifest("u1"), &[0], 2, StructureKind::Spin, 0).is_err());
    assert!(blowdown_transform(&manifest("u0"), &[0], 2, StructureKind::Spin, 0).is_err());
}

#[test]
fn blowup_invariance_on_u0() {
    let red = data(2, 2, Theory::Reduced);
    let u0 = manifest("u0");
    for c in [vec![0], vec![1]] {
        let before = refined_tau(&u0, &red, &c, StructureKind::Spin).unwrap();
        for sign in [1, -1] {
            let (g, c2) = blowup_isolated(&u0, &c, 2, StructureKind::Spin, sign);
            assert_eq!(refined_tau(&g, &red, &c2, StructureKind::Spin).unwrap(), before);
            let (back, c3, _) = blowdown_transform(&g, &c2, 2, StructureKind::Spin, 1).unwrap();
            assert_eq!(c3, c);
            assert_eq!(back.vertices.len(), 1);
        }
    }
}

#[test]
fn blowdown_is_a_bijection_and_preserves_invariants() {
    let mut rng = StdRng::seed_from_u64(11);
    let cases = [(2, 2, StructureKind::Spin), (3, 3, StructureKind::Coho)];
    for (n, k, kind) in cases {
        let red = data(n, k, Theory::Reduced);
        let d = red.gcd();
        for _ in 0..6 {
            let m = rng.gen_range(1..=3);
            let framings: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
            let edges: Vec<(usize, usize)> = (1..m).map(|v| (rng.gen_range(0..v), v)).collect();
            let base = PlumbingGraph::from_parts(&framings, &edges).unwrap();
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let up = match rng.gen_range(0..3) {
                0 => base.blow_up(sign),
                1 => base.blow_up_leaf(rng.gen_range(0..m), sign).unwrap(),
                _ if m > 1 => base.blow_up_edge(0, sign).unwrap(),
                _ => base.blow_up(sign),
            };
            let w = up.vertices.len() - 1;
            let (b_up, _) = linking_data(&up);
            let (b_base, _) = linking_data(&base);
            let up_set = characteristic_solutions(&b_up, d, kind).unwrap();
            let base_set = characteristic_solutions(&b_base, d, kind).unwrap();
            assert_eq!(up_set.solutions.len(), base_set.solutions.len());
            let mut images = vec![];
            for c in &up_set.solutions {
                let (down, c2, _) = blowdown_transform(&up, c, d, kind, w).unwrap();
                let (b_down, _) = linking_data(&down);
                assert!(is_characteristic(&b_down, d, kind, &c2), "{up:?} {c:?} -> {c2:?}");
                assert_eq!(
                    refined_tau(&up, &red, c, kind).unwrap(),
                    refined_tau(&down, &red, &c2, kind).unwrap(),
                    "({n},{k}) {up:?} {c:?}"
                );
                images.push(c2);
            }
            images.sort();
            images.dedup();
            assert_eq!(images.len(), up_set.solutions.len());
        }
    }
}

#[test]
fn u1_examples() {
    let su = data(2, 2, Theory::Su);
    let red = data(2, 2, Theory::Reduced);
    let e = u1_invariant(&[], &su, &red).unwrap().value;
    assert!((e - 1.0).norm() < 1e-12);
    let z = u1_invariant(&[vec![0]], &su, &red).unwrap().value;
    let ratio = (red.omega.to_c64().re / su.omega.to_c64().re).sqrt();
    let np = red.ctx.reduced_params().unwrap().n_prime as f64;
    assert!((z - ratio * np).norm() < 1e-12, "{z}");
}

#[test]
fn gauss_factor_modulus() {
    for (n, k) in [(2, 2), (3, 3), (2, 4), (2, 3), (3, 2), (4, 2), (2, 6)] {
        let su = data(n, k, Theory::Su);
        let red = data(n, k, Theory::Reduced);
        let g = one_vertex_gauss_factor(&su, &red).unwrap();
        let p = red.ctx.reduced_params().unwrap();
        let direct = gauss_sum(&[vec![1]], &u1_root(&su.ctx, p.beta), p.n_prime).to_c64();
        assert!((g - direct).norm() < 1e-12, "({n},{k}) {g} vs {direct}");
        assert!((g.norm_sqr() - p.n_prime as f64).abs() < 1e-12, "({n},{k}) |g|² = {}", g.norm_sqr());
    }
}

#[test]
fn reduction_formula() {
    for (n, k) in [(2, 2), (3, 3)] {
        let su = data(n, k, Theory::Su);
        let red = data(n, k, Theory::Reduced);
        for name in ["u0", "u1", "chain_-2_-2", "chain_0_0", "tree5"] {
            let r = reduction_check(&manifest(name), &su, &red).unwrap();
            assert!(r.holds(1e-9), "({n},{k}) {name}: {r:?}");
        }
    }
    let su = data(2, 3, Theory::Su);
    let red = data(2, 3, Theory::Reduced);
    let psu = data(2, 3, Theory::Psu);
    for name in ["u0", "u1", "chain_-2_-2", "tree5"] {
        let g = manifest(name);
        assert!(reduction_check(&g, &su, &red).unwrap().holds(1e-9), "(2,3) {name}");
        let a = tau(&g, &red).unwrap().value.to_c64().unwrap();
        let b = tau(&g, &psu).unwrap().value.to_c64().unwrap();
        assert!((a - b).norm() < 1e-9, "(2,3) {name}: {a} vs {b}");
    }
}
