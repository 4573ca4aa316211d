use std::sync::Arc;

use hecke_tqft::diagrams::{quantum_dimension, standard_tableaux, twist, YoungDiagram};
use hecke_tqft::hecke::*;
use hecke_tqft::scalars::{CycScalar, RingContext};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn ctx(n: u32, k: u32) -> Arc<RingContext> {
    Arc::new(RingContext::su(n, k).unwrap())
}

fn yd(rows: &[u32]) -> YoungDiagram {
    YoungDiagram::new(rows.to_vec()).unwrap()
}

fn random_element(c: &Arc<RingContext>, n: usize, rng: &mut StdRng) -> HeckeElement {
    let mut x = HeckeElement::zero(c, n).unwrap();
    let perms = all_perms(n);
    for _ in 0..4 {
        let p = perms[rng.gen_range(0..perms.len())].clone();
        let coef = c.zeta(rng.gen_range(0..c.order() as i64)).scale_int(rng.gen_range(-3..=3));
        x = x.add(&HeckeElement::basis(c, p).unwrap().scale(&coef)).unwrap();
    }
    x
}

#[test]
fn quadratic_relation() {
    let c = ctx(2, 3);
    let s1 = HeckeElement::generator(&c, 2, 1).unwrap();
    let z = c.a() * (c.s() - c.s().inv().unwrap());
    let expected = s1.scale(&z).add(&HeckeElement::identity(&c, 2).unwrap().scale(&c.monomial(2, 0, 0))).unwrap();
    assert_eq!(s1.mul(&s1).unwrap(), expected);
}

#[test]
fn lengths_add() {
    let c = ctx(2, 3);
    let x = HeckeElement::generator(&c, 3, 1).unwrap().mul(&HeckeElement::generator(&c, 3, 2).unwrap()).unwrap();
    assert_eq!(x.terms().len(), 1);
    let (p, coef) = x.terms().iter().next().unwrap();
    assert!(coef.is_one());
    assert_eq!(perm_length(p), 2);
    assert_eq!(x, HeckeElement::from_word(&c, 3, &[1, 2]).unwrap());
}

#[test]
fn braid_relations() {
    let c = ctx(3, 2);
    let l = HeckeElement::from_word(&c, 4, &[1, 2, 1]).unwrap();
    let r = HeckeElement::from_word(&c, 4, &[2, 1, 2]).unwrap();
    assert_eq!(l, r);
    let a = HeckeElement::from_word(&c, 4, &[1, 3]).unwrap();
    let b = HeckeElement::from_word(&c, 4, &[3, 1]).unwrap();
    assert_eq!(a, b);
    assert_eq!(HeckeElement::from_word(&c, 2, &[1, -1]).unwrap(), HeckeElement::identity(&c, 2).unwrap());
    assert_eq!(HeckeElement::from_word(&c, 3, &[-2, 2]).unwrap(), HeckeElement::identity(&c, 3).unwrap());
}

#[test]
fn cube_of_generator() {
    let c = ctx(2, 3);
    let s1 = HeckeElement::generator(&c, 2, 1).unwrap();
    let direct = s1.mul(&s1).unwrap().mul(&s1).unwrap();
    assert_eq!(HeckeElement::from_word(&c, 2, &[1, 1, 1]).unwrap(), direct);
    // σ³ = (z² + a²)σ + a²z with z = a(s − s⁻¹)
    let z = c.a() * (c.s() - c.s().inv().unwrap());
    let a2 = c.monomial(2, 0, 0);
    let expected = s1
        .scale(&(&(&z * &z) + &a2))
        .add(&HeckeElement::identity(&c, 2).unwrap().scale(&(&a2 * &z)))
        .unwrap();
    assert_eq!(direct, expected);
}

#[test]
fn left_and_right_generators_agree_with_mul() {
    let c = ctx(2, 2);
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..10 {
        let x = random_element(&c, 4, &mut rng);
        for i in 1..4 {
            let g = HeckeElement::generator(&c, 4, i).unwrap();
            assert_eq!(x.left_gen(i), g.mul(&x).unwrap());
            assert_eq!(x.right_gen(i), x.mul(&g).unwrap());
        }
    }
}

#[test]
fn associativity() {
    let c = ctx(2, 3);
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..50 {
        let x = random_element(&c, 4, &mut rng);
        let y = random_element(&c, 4, &mut rng);
        let z = random_element(&c, 4, &mut rng);
        assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }
}

#[test]
fn strand_mismatch_and_range_errors() {
    let c = ctx(2, 2);
    let x = HeckeElement::identity(&c, 2).unwrap();
    let y = HeckeElement::identity(&c, 3).unwrap();
    assert!(x.mul(&y).is_err());
    assert!(HeckeElement::from_word(&c, 2, &[2]).is_err());
    assert!(HeckeElement::from_word(&c, 2, &[0]).is_err());
    assert!(HeckeElement::identity(&c, 9).is_err());
}

#[test]
fn trace_examples() {
    let c = ctx(3, 2);
    let delta = circle_value(&c);
    assert_eq!(delta, c.qint(3));
    assert_eq!(HeckeElement::identity(&c, 1).unwrap().markov_trace(), delta);
    assert_eq!(homfly_braid_closure(&c, &[], 1).unwrap(), delta);
    assert_eq!(homfly_braid_closure(&c, &[1], 2).unwrap(), &c.monomial(1, 0, -1) * &delta);
    // ⟨f₂⟩ = (s⁻¹δ² + v⁻¹δ)/[2]
    let f2 = symmetrizer(&c, 2, SymKind::F).unwrap();
    let expected = (&(&c.monomial(0, -1, 0) * &(&delta * &delta)) + &(&c.monomial(0, 0, -1) * &delta))
        .div_ref(&c.qint(2))
        .unwrap();
    assert_eq!(f2.markov_trace(), expected);
    assert_eq!(expected, quantum_dimension(&c, &yd(&[2])).unwrap());
}

#[test]
fn trefoil_skein() {
    // a⁻¹⟨σ³⟩ − a⟨σ⟩ = (s − s⁻¹)⟨σ²⟩
    for (n, k) in [(2, 3), (3, 2), (2, 2)] {
        let c = ctx(n, k);
        let t3 = homfly_braid_closure(&c, &[1, 1, 1], 2).unwrap();
        let t2 = homfly_braid_closure(&c, &[1, 1], 2).unwrap();
        let t1 = homfly_braid_closure(&c, &[1], 2).unwrap();
        let lhs = &(&c.monomial(-1, 0, 0) * &t3) - &(&c.a() * &t1);
        assert_eq!(lhs, &(c.s() - c.s().inv().unwrap()) * &t2);
    }
}

#[test]
fn markov_property() {
    let c = ctx(2, 3);
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..10 {
        let x = random_element(&c, 3, &mut rng);
        let y = x.embed(0, 1).unwrap().right_gen(3);
        assert_eq!(y.markov_trace(), &c.monomial(1, 0, -1) * &x.markov_trace());
        let y = x.embed(0, 1).unwrap().right_gen_inv(3);
        assert_eq!(y.markov_trace(), &c.monomial(-1, 0, 1) * &x.markov_trace());
    }
}

#[test]
fn trace_symmetry() {
    let c = ctx(2, 3);
    let mut rng = StdRng::seed_from_u64(5);
    for i in 0..100 {
        let n = 2 + i % 4;
        let x = random_element(&c, n, &mut rng);
        let y = random_element(&c, n, &mut rng);
        assert_eq!(x.mul(&y).unwrap().markov_trace(), y.mul(&x).unwrap().markov_trace());
    }
}

#[test]
fn symmetrizers() {
    let c = ctx(3, 2);
    let f2 = symmetrizer(&c, 2, SymKind::F).unwrap();
    let g2 = symmetrizer(&c, 2, SymKind::G).unwrap();
    let base = HeckeElement::identity(&c, 2)
        .unwrap()
        .scale(&c.monomial(0, -1, 0))
        .add(&HeckeElement::generator(&c, 2, 1).unwrap().scale(&c.monomial(-1, 0, 0)))
        .unwrap();
    assert_eq!(f2.scale(&c.qint(2)), base);
    assert_eq!(f2.add(&g2).unwrap(), HeckeElement::identity(&c, 2).unwrap());
    for n in 1..=4 {
        for kind in [SymKind::F, SymKind::G] {
            let x = symmetrizer(&c, n, kind).unwrap();
            assert_eq!(x, symmetrizer_explicit(&c, n, kind).unwrap(), "n={n} {kind:?}");
            assert_eq!(x.mul(&x).unwrap(), x);
            let ev = match kind {
                SymKind::F => c.monomial(1, 1, 0),
                SymKind::G => -c.monomial(1, -1, 0),
            };
            for i in 1..n {
                let g = HeckeElement::generator(&c, n, i).unwrap();
                assert_eq!(g.mul(&x).unwrap(), x.scale(&ev));
                assert_eq!(x.mul(&g).unwrap(), x.scale(&ev));
            }
        }
    }
    // [5] = 0 at (3,2): f₅ is unavailable
    assert!(symmetrizer(&c, 5, SymKind::F).is_err());
}

#[test]
fn jucys_murphy_on_symmetrizers() {
    let c = ctx(2, 3);
    let j2 = jucys_murphy(&c, 2, 2).unwrap();
    let f2 = symmetrizer(&c, 2, SymKind::F).unwrap();
    let g2 = symmetrizer(&c, 2, SymKind::G).unwrap();
    assert_eq!(j2.mul(&f2).unwrap(), f2.scale(&c.monomial(2, 2, 0)));
    assert_eq!(j2.mul(&g2).unwrap(), g2.scale(&c.monomial(2, -2, 0)));
    assert_eq!(path_idempotent(&c, &[1, 1]).unwrap(), f2);
    assert_eq!(path_idempotent(&c, &[1, 2]).unwrap(), g2);
    assert!(path_idempotent(&c, &[2]).is_err());
}

#[test]
fn path_idempotents_complete_and_orthogonal() {
    let c = ctx(3, 2);
    for n in 1..=4usize {
        let mut tabs = Vec::new();
        for lam in hecke_tqft::diagrams::diagrams_in_box(n as u32, n as u32) {
            if lam.size() as usize == n {
                tabs.extend(standard_tableaux(&lam).into_iter().map(|t| (lam.clone(), t)));
            }
        }
        let ps: Vec<_> = tabs.iter().map(|(_, t)| path_idempotent(&c, t).unwrap()).collect();
        let mut sum = HeckeElement::zero(&c, n).unwrap();
        for p in &ps {
            sum = sum.add(p).unwrap();
        }
        assert_eq!(sum, HeckeElement::identity(&c, n).unwrap());
        for (i, p) in ps.iter().enumerate() {
            assert_eq!(p.mul(p).unwrap(), *p);
            if n <= 3 {
                for q in &ps[i + 1..] {
                    assert!(p.mul(q).unwrap().is_zero());
                }
            }
            let (lam, _) = &tabs[i];
            assert_eq!(p.markov_trace(), quantum_dimension(&c, lam).unwrap());
        }
    }
}

#[test]
fn central_idempotents_are_central() {
    let c = ctx(2, 3);
    let z = central_idempotent(&c, &yd(&[2, 1])).unwrap();
    for i in 1..3 {
        let g = HeckeElement::generator(&c, 3, i).unwrap();
        assert_eq!(g.mul(&z).unwrap(), z.mul(&g).unwrap());
    }
    assert_eq!(z.mul(&z).unwrap(), z);
}

#[test]
fn full_twist_eigenvalues() {
    for (n, k) in [(2, 3), (3, 2)] {
        let c = ctx(n, k);
        for size in 1..=4u32 {
            let ft = framed_full_twist(&c, size as usize).unwrap();
            for lam in hecke_tqft::diagrams::diagrams_in_box(size, size) {
                if lam.size() != size {
                    continue;
                }
                for t in standard_tableaux(&lam) {
                    let p = path_idempotent(&c, &t).unwrap();
                    assert_eq!(ft.mul(&p).unwrap(), p.scale(&twist(&c, &lam)), "{lam}");
                }
            }
        }
    }
}

#[test]
fn quasi_idempotents() {
    let c = ctx(3, 2);
    assert_eq!(young_quasi_idempotent(&c, &yd(&[1])).unwrap(), HeckeElement::identity(&c, 1).unwrap());
    let y2 = young_quasi_idempotent(&c, &yd(&[2])).unwrap();
    assert_eq!(y2, symmetrizer(&c, 2, SymKind::F).unwrap().scale(&c.qint(2)));
    for rows in [vec![2], vec![1, 1], vec![2, 1], vec![3, 1], vec![2, 2], vec![2, 1, 1]] {
        let lam = yd(&rows);
        let y = young_quasi_idempotent(&c, &lam).unwrap();
        let hl: CycScalar = lam.hooks().iter().fold(c.one(), |acc, &h| &acc * &c.qint(h as i64));
        assert_eq!(y.mul(&y).unwrap(), y.scale(&hl), "{lam}");
    }
}

#[test]
fn branching() {
    let c = ctx(2, 3);
    for n in 1..=3u32 {
        for lam in hecke_tqft::diagrams::diagrams_in_box(n, n) {
            if lam.size() != n {
                continue;
            }
            for t in standard_tableaux(&lam) {
                let p = path_idempotent(&c, &t).unwrap().embed(0, 1).unwrap();
                let mut sum = HeckeElement::zero(&c, n as usize + 1).unwrap();
                for mu in lam.children() {
                    let z = central_idempotent(&c, &mu).unwrap();
                    sum = sum.add(&p.mul(&z).unwrap().mul(&p).unwrap()).unwrap();
                }
                assert_eq!(sum, p);
            }
        }
    }
}

#[test]
fn two_symmetrizers() {
    let c = ctx(3, 3);
    assert!(two_symmetrizer_identity(&c, 1, 1).unwrap());
    assert!(two_symmetrizer_identity(&c, 2, 1).unwrap());
    assert!(two_symmetrizer_identity(&c, 1, 2).unwrap());
}

#[test]
fn column_object_crossing() {
    for (n, k) in [(2, 3), (3, 2)] {
        let c = ctx(n, k);
        let r = column_crossing_check(&c).unwrap();
        assert!(r.remainder_in_g, "({n},{k})");
        assert!(r.remainder_negligible, "({n},{k})");
    }
}

#[test]
fn perm_helpers() {
    for p in all_perms(4) {
        let w = reduced_word(&p);
        assert_eq!(w.len(), perm_length(&p));
        let mut q = identity_perm(4);
        for i in w {
            q.swap(i - 1, i);
        }
        assert_eq!(q, p);
        assert_eq!(compose(&p, &inverse_perm(&p)), identity_perm(4));
    }
}
