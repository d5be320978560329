use super::*;
use crate::catalog;
use crate::density::LatticeSet;
use crate::lattice::{Cell, CellSource, Configuration, Dim, FiniteSet, Pattern};
use crate::Budget;

#[test]
fn example1_moves_the_impulse() {
    let t = catalog::example1();
    let x = Configuration::constant(Dim::One, 0).with_override(Cell::d1(0), 1).unwrap();
    let y = evaluate_window(&t, &x, &FiniteSet::interval(-2, 2)).unwrap();
    assert_eq!(y.values(), &[0, 1, 1, 1, 0]);
    let x = Configuration::constant(Dim::One, 0).with_override(Cell::d1(2), 1).unwrap();
    let y = evaluate_window(&t, &x, &FiniteSet::interval(-3, 3)).unwrap();
    assert_eq!(y.values(), &[0, 0, 0, 0, 0, 0, 1]);
}

#[test]
fn identity_and_fixed_point() {
    let id = catalog::identity(Dim::Two, 3);
    let x = Configuration::constant(Dim::Two, 2).with_override(Cell::d2(1, 0), 1).unwrap();
    let f = FiniteSet::rect(-1, 1, -1, 1);
    assert_eq!(evaluate_window(&id, &x, &f).unwrap(), x.restrict(&f));
    let t = catalog::example2_tau();
    let z = Configuration::constant(Dim::Two, 0);
    assert_eq!(evaluate_window(&t, &z, &f).unwrap(), Pattern::constant(f, 0));
}

#[test]
fn example1_image_windows() {
    let t = catalog::example1();
    let b = Budget::default();
    let g = image_window(&t, &FiniteSet::interval(-1, 1), None, &b).unwrap();
    let pats: Vec<Vec<u8>> = g.iter().map(|p| p.values().to_vec()).collect();
    assert_eq!(pats, vec![vec![0, 0, 0], vec![1, 1, 1]]);
    for k in 2..=5 {
        let g = image_window(&t, &FiniteSet::interval(-k, k), None, &b).unwrap();
        assert_eq!(g.len() as u64, 1 << (2 * k - 1), "k = {k}");
    }
}

#[test]
fn example3_image_is_binary() {
    let t = catalog::example3();
    let g = image_window(&t, &FiniteSet::interval(0, 3), None, &Budget::default()).unwrap();
    assert_eq!(g.len(), 16);
    assert!(g.iter().all(|p| p.values().iter().all(|&v| v < 2)));
}

#[test]
fn image_respects_cylinder() {
    let id = catalog::identity(Dim::One, 2);
    let u = Cylinder::new(LatticeSet::progression(2, 0).unwrap(), 1).unwrap();
    let g = image_window(&id, &FiniteSet::interval(0, 3), Some(&u), &Budget::default()).unwrap();
    assert_eq!(g.len(), 4);
    assert!(g.iter().all(|p| p.values()[0] == 1 && p.values()[2] == 1));
}

#[test]
fn budget_refusal_is_explicit() {
    let t = catalog::example1();
    let b = Budget::default().with_max_patterns(100);
    let err = image_window(&t, &FiniteSet::interval(-5, 5), None, &b).unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn example2_sigma_witness() {
    let s = catalog::example2_sigma();
    let u = Cylinder::full(Dim::Two);
    let r = preinjectivity_witness(&s, &u, 2, 3, &Budget::default()).unwrap();
    let w = r.witness().expect("a witness");
    assert_eq!(w.support, FiniteSet::new(Dim::Two, [Cell::d2(0, -1), Cell::d2(0, 0)]).unwrap());
    assert_eq!(w.q1.values(), &[1, 1]);
    assert_eq!(w.q2.values(), &[0, 0]);
    assert!(w.context.values().iter().all(|&v| v == 0));
    assert!(w.verify(&s, &u).unwrap());
}

#[test]
fn example1_has_no_witness() {
    let t = catalog::example1();
    let r = preinjectivity_witness(&t, &Cylinder::full(Dim::One), 3, 4, &Budget::default()).unwrap();
    assert!(matches!(r, WitnessSearch::NoneUpToBound { support_bound: 3, .. }), "{r:?}");
}

#[test]
fn example3_witness_on_any_cylinder() {
    let t = catalog::example3();
    let u = Cylinder::new(LatticeSet::progression(2, 0).unwrap(), 1).unwrap();
    let r = preinjectivity_witness(&t, &u, 1, 2, &Budget::default()).unwrap();
    let w = r.witness().unwrap();
    assert_eq!(w.support.len(), 1);
    assert!(!u.is_pinned(w.support.cells()[0]));
    assert_eq!((w.q1.values(), w.q2.values()), (&[2][..], &[0][..]));
    assert!(w.verify(&t, &u).unwrap());
}

#[test]
fn tampered_witness_fails_verification() {
    let s = catalog::example2_sigma();
    let u = Cylinder::full(Dim::Two);
    let mut w = preinjectivity_witness(&s, &u, 2, 3, &Budget::default()).unwrap().witness().unwrap().clone();
    w.q1 = Pattern::new(w.support.clone(), vec![1, 0]).unwrap();
    assert!(!w.verify(&s, &u).unwrap());
}

#[test]
fn witness_search_reports_partial_progress() {
    let s = catalog::example2_sigma();
    let b = Budget::default().with_max_patterns(40);
    let r = preinjectivity_witness(&s, &Cylinder::full(Dim::Two), 2, 3, &b).unwrap();
    assert!(matches!(r, WitnessSearch::Partial { .. }), "{r:?}");
}

#[test]
fn open_probe_examples() {
    let b = Budget::default();
    let id = catalog::identity(Dim::One, 2);
    let q = image_open_probe(&id, &FiniteSet::singleton(Cell::d1(0)), &FiniteSet::interval(-1, 1), &b).unwrap();
    assert_eq!(q.unwrap().values(), &[0]);

    let t = catalog::example1();
    let q = image_open_probe(&t, &FiniteSet::interval(-1, 1), &FiniteSet::interval(-2, 2), &b).unwrap();
    assert_eq!(q.unwrap().values(), &[0, 0, 0]);

    let t2 = catalog::example2_tau();
    let e = FiniteSet::rect(0, 0, -1, 1);
    let w = FiniteSet::rect(-1, 1, -1, 1);
    assert_eq!(image_open_probe(&t2, &e, &w, &b).unwrap(), None);
}

#[test]
fn example2_tau_image_respects_diagonal() {
    let t = catalog::example2_tau();
    let f = FiniteSet::rect(-1, 1, -1, 1);
    let g = image_window(&t, &f, None, &Budget::default()).unwrap();
    for p in g.iter() {
        for m in -1..=1 {
            let d = p.get(&Cell::d2(m, m)).unwrap();
            for n in [m - 1, m + 1] {
                if let Some(v) = p.get(&Cell::d2(m, n)) {
                    assert_eq!(v, d);
                }
            }
        }
    }
    // every other constraint-free cell is free: 9 cells, 4 tied to the diagonal
    assert_eq!(g.len(), 1 << 5);
}
