use hecke_tqft::diagrams::*;
use hecke_tqft::scalars::RingContext;
use num_bigint::BigInt;
use proptest::prelude::*;

fn yd(rows: &[u32]) -> YoungDiagram {
    YoungDiagram::new(rows.to_vec()).unwrap()
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Tableau count by removing corners, independent of the hook formula.
fn corner_count(l: &YoungDiagram) -> u64 {
    if l.is_empty() {
        return 1;
    }
    l.removable_cells()
        .into_iter()
        .map(|(i, _)| {
            let mut rows = l.rows().to_vec();
            rows[i as usize - 1] -= 1;
            corner_count(&YoungDiagram::new(rows).unwrap())
        })
        .sum()
}

#[test]
fn stats_of_small_diagrams() {
    let s = yd(&[2, 1]).stats();
    assert_eq!(s.cells.len(), 3);
    assert_eq!(s.hooks, vec![3, 1, 1]);
    assert_eq!(s.contents, vec![0, 1, -1]);
    assert_eq!(s.transpose, yd(&[2, 1]));
    assert_eq!(s.tableau_count, BigInt::from(2));
    let s = yd(&[4]).stats();
    assert_eq!(s.hooks, vec![4, 3, 2, 1]);
    assert_eq!(s.tableau_count, BigInt::from(1));
    assert_eq!(yd(&[3, 2]).tableau_count(), BigInt::from(5));
    assert_eq!(corner_count(&yd(&[3, 2])), 5);
    assert_eq!(standard_tableaux(&yd(&[3, 2])).len(), 5);
}

#[test]
fn parse_and_display() {
    let d: YoungDiagram = "[3,2,1]".parse().unwrap();
    assert_eq!(d.to_string(), "[3,2,1]");
    assert_eq!("[]".parse::<YoungDiagram>().unwrap(), YoungDiagram::empty());
    assert!("[1,2]".parse::<YoungDiagram>().is_err());
    assert!("3,2".parse::<YoungDiagram>().is_err());
}

#[test]
fn sectors() {
    assert_eq!(gamma(2, 2), vec![yd(&[]), yd(&[1]), yd(&[2])]);
    assert_eq!(gamma_zero(2, 2), vec![yd(&[]), yd(&[2])]);
    assert_eq!(gamma_bar(2, 2).len(), 6);
    for (n, k) in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (4, 2), (4, 4)] {
        let want = factorial((n + k - 1) as u64) / (factorial((n - 1) as u64) * factorial(k as u64));
        assert_eq!(gamma(n, k).len() as u64, want);
        let g = gamma(n, k);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
    assert!(enumerate_sector(2, 2, Sector::Dotted, None).is_err());
    assert_eq!(enumerate_sector(3, 3, Sector::Dotted, Some(3)).unwrap().len(), 30);
}

#[test]
fn quantum_dimensions() {
    for (n, k) in [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2)] {
        let c = RingContext::su(n, k).unwrap();
        assert!(quantum_dimension(&c, &yd(&[])).unwrap().is_one());
        assert_eq!(quantum_dimension(&c, &yd(&[1])).unwrap(), c.qint(n as i64));
        for j in 1..=k {
            let rows = vec![j; n as usize];
            assert!(quantum_dimension(&c, &YoungDiagram::new(rows).unwrap()).unwrap().is_one());
        }
        for l in gamma_bar(n, k) {
            let q = quantum_dimension(&c, &l).unwrap();
            assert_eq!(q, quantum_dimension_general(&c, &l).unwrap());
            assert_eq!(q, quantum_dimension(&c, &l.star(n)).unwrap(), "star of {l}");
            assert!(!q.is_zero());
            let mut rows = l.padded(n as usize);
            if l.num_rows() < n as usize && l.first_row() < k {
                // 1^N + ν has the same dimension as ν
                for r in rows.iter_mut() {
                    *r += 1;
                }
                let big = YoungDiagram::new(rows).unwrap();
                assert_eq!(quantum_dimension(&c, &big).unwrap(), q);
            }
        }
    }
    let c = RingContext::su(2, 2).unwrap();
    assert!(quantum_dimension(&c, &yd(&[2])).unwrap().is_one());
    assert!(quantum_dimension(&c, &yd(&[4])).is_err());
}

#[test]
fn dimensions_vanish_outside_the_box() {
    let c = RingContext::su(2, 2).unwrap();
    for l in diagrams_in_box(3, 3) {
        if l.hooks().into_iter().any(|h| h % 4 == 0) {
            continue;
        }
        let q = quantum_dimension(&c, &l).unwrap();
        let outside = l.first_row() > 2 || l.num_rows() > 2;
        assert_eq!(q.is_zero(), outside, "{l}");
    }
}

#[test]
fn twists() {
    let c = RingContext::su(2, 2).unwrap();
    assert!(twist(&c, &yd(&[])).is_one());
    assert_eq!(twist(&c, &yd(&[1])), &c.a() * &c.v().inv().unwrap());
    assert_eq!(twist(&c, &yd(&[2])), c.int(-1));
    let r = RingContext::reduced(3, 3).unwrap();
    let x = ReducedLabel::new(0, yd(&[2, 1]));
    assert_eq!(reduced_twist(&r, &x), twist(&r, &yd(&[2, 1])));
}

#[test]
fn star_involution() {
    assert_eq!(yd(&[]).star(3), yd(&[]));
    assert_eq!(yd(&[1]).star(3), yd(&[1, 1]));
    let x = ReducedLabel::new(0, yd(&[1]));
    assert_eq!(x.star(2, 1), x);
    for (n, k, alpha) in [(3, 3, 3), (2, 2, 1), (4, 2, 2), (3, 6, 3)] {
        for l in gamma(n, k) {
            assert_eq!(l.star(n).star(n), l);
        }
        for x in gamma_dotted(n, k, alpha) {
            let y = x.star(n, alpha);
            assert_eq!(y.star(n, alpha), x);
            assert_eq!((x.degree(n) + y.degree(n)) % (n * alpha), 0);
        }
    }
}

#[test]
fn zn_action_and_orbits() {
    let x0 = ReducedLabel::new(0, yd(&[]));
    assert_eq!(zn_action(2, 2, 1, &x0), ReducedLabel::new(0, yd(&[2])));
    let x1 = ReducedLabel::new(0, yd(&[1]));
    assert_eq!(zn_action(2, 2, 1, &x1), x1);
    assert_eq!(orbit_representatives(2, 2, 1, 2).unwrap().len(), 3);
    let reps = orbit_representatives(3, 3, 3, 1).unwrap();
    assert_eq!(reps.len(), 10);
    for (n, k) in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (4, 2), (2, 6), (3, 6), (6, 3), (4, 4), (4, 6)] {
        let r = RingContext::reduced(n, k).unwrap();
        let p = r.reduced_params().unwrap().clone();
        let reps = orbit_representatives(n, k, p.alpha, p.beta).unwrap();
        let want = p.d as u64 * factorial((n + k - 1) as u64) / (factorial(n as u64) * factorial(k as u64));
        assert_eq!(reps.len() as u64, want, "({n},{k})");
        for x in gamma_dotted(n, k, p.alpha) {
            let mut y = x.clone();
            for _ in 0..n {
                y = zn_action(n, k, p.alpha, &y);
            }
            if p.alpha == 1 || n % p.alpha == 0 {
                assert_eq!(y, x);
            }
            // the degree mod d is constant on orbits
            let z = zn_orbit(n, k, p.alpha, p.beta, &x);
            assert!(z.iter().all(|w| w.degree(n) % p.d == x.degree(n) % p.d));
        }
    }
}

proptest! {
    #[test]
    fn hook_formula_matches_corner_recursion(rows in prop::collection::vec(1u32..6, 0..5)) {
        let mut rows = rows;
        rows.sort_unstable_by(|a, b| b.cmp(a));
        let l = YoungDiagram::new(rows).unwrap();
        prop_assert_eq!(l.tableau_count(), BigInt::from(corner_count(&l)));
        prop_assert_eq!(l.transpose().transpose(), l.clone());
        let mut h = l.hooks();
        let mut ht = l.transpose().hooks();
        h.sort_unstable();
        ht.sort_unstable();
        prop_assert_eq!(h, ht);
    }
}
