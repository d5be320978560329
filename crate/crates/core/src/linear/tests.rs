use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::catalog;
use crate::density::LatticeSet;
use crate::engine::evaluate_window;
use crate::lattice::{BoxFolner, Cell, Configuration, Dim, FiniteSet, Pattern};
use crate::quasitiling::QuasiTiling;
use crate::{Budget, Rational};

fn r(a: i128, b: i128) -> Rational {
    Rational::new(a, b)
}

fn interval_tiling(memory: FiniteSet, len: i64, count: i64) -> QuasiTiling {
    let placements: Vec<(usize, Cell)> = (0..count).map(|i| (0, Cell::d1(i * len))).collect();
    QuasiTiling::from_placements(
        memory,
        FiniteSet::interval(0, len * count - 1),
        vec![FiniteSet::interval(0, len - 1)],
        &placements,
    )
    .unwrap()
}

#[test]
fn xor_pair_window_matrix() {
    let nuca = catalog::linear_xor_pair();
    let wm = window_matrix(&nuca, &FiniteSet::interval(0, 2)).unwrap();
    assert_eq!((wm.matrix.rows(), wm.matrix.cols()), (3, 4));
    assert_eq!(wm.rank(&nuca), 3);
    for i in 0..3 {
        let expected: Vec<u8> = (0..4).map(|j| u8::from(j == i || j == i + 1)).collect();
        assert_eq!(wm.matrix.row(i), expected.as_slice());
    }
}

#[test]
fn identity_and_zero_ranks() {
    let f5 = Field::new(5).unwrap();
    let m = FiniteSet::rect(-1, 1, -1, 1);
    let id = LinearAssignment::uniform(f5, LinearRule::projection("id", f5, m.clone(), 2, Cell::d2(0, 0)).unwrap());
    let window = FiniteSet::rect(0, 2, 0, 3);
    let wm = window_matrix(&id, &window).unwrap();
    assert_eq!(wm.rank(&id), 24);
    for (i, c) in window.iter().enumerate() {
        let j = wm.input.index_of(c).unwrap();
        for a in 0..2 {
            for col in 0..wm.matrix.cols() {
                assert_eq!(wm.matrix.get(i * 2 + a, col), u8::from(col == j * 2 + a));
            }
        }
    }
    let zero = catalog::linear_zero(Dim::Two);
    assert_eq!(window_matrix(&zero, &window).unwrap().rank(&zero), 0);
}

#[test]
fn mdim_profiles() {
    let budget = Budget::default();
    let folner = BoxFolner::centered(Dim::One);
    let xor = mdim_sequence(&catalog::linear_xor_pair(), &folner, 6, &budget).unwrap();
    assert!(xor.rows.iter().all(|row| row.ratio == r(1, 1)));

    let ex1 = mdim_sequence(&catalog::linear_example1(), &folner, 8, &budget).unwrap();
    for row in &ex1.rows {
        assert_eq!(row.rank, row.size - 2, "n = {}", row.n);
        assert_eq!(row.rank + row.nullity, row.size + 2);
    }

    let off3 = mdim_sequence(&catalog::linear_identity_off(3), &folner, 30, &budget).unwrap();
    for row in &off3.rows {
        let k = row.radius;
        let multiples = (-k..=k).filter(|n| n % 3 == 0).count();
        assert_eq!(row.rank, row.size - multiples);
    }
    let last = off3.rows.last().unwrap().ratio;
    assert!((last - r(2, 3)).abs() < r(1, 50));
}

#[test]
fn mdim_budget_truncates() {
    let budget = Budget::default().with_max_window(5);
    let rep = mdim_sequence(&catalog::linear_xor_pair(), &BoxFolner::centered(Dim::One), 6, &budget).unwrap();
    assert_eq!(rep.rows.len(), 2);
    assert!(rep.truncated.is_some());
}

#[test]
fn kernel_search_examples() {
    let budget = Budget::default();
    let empty = LatticeSet::Empty(Dim::One);
    let xor = kernel_preinjectivity(&catalog::linear_xor_pair(), &empty, 12, 12, &budget).unwrap();
    assert!(matches!(xor, KernelSearch::NoneUpToBound { support_bound: 12, .. }));

    let zero = catalog::linear_zero(Dim::One);
    let found = kernel_preinjectivity(&zero, &empty, 1, 3, &budget).unwrap();
    let w = found.witness().unwrap();
    assert_eq!(w.support, FiniteSet::singleton(Cell::d1(-3)));
    assert_eq!(w.values, vec![1]);
    assert!(w.verify(&zero, &empty).unwrap());

    let off3 = catalog::linear_identity_off(3);
    let s = LatticeSet::progression(3, 0).unwrap();
    assert!(kernel_preinjectivity(&off3, &s, 20, 15, &budget).unwrap().witness().is_none());
    let w = kernel_preinjectivity(&off3, &empty, 20, 15, &budget).unwrap();
    let w = w.witness().unwrap();
    assert_eq!(w.support.len(), 1);
    assert_eq!(w.support.cells()[0].x() % 3, 0);
    assert!(w.verify(&off3, &empty).unwrap());
    assert!(!w.verify(&off3, &s).unwrap());

    let ex1 = catalog::linear_example1();
    assert!(kernel_preinjectivity(&ex1, &empty, 8, 6, &budget).unwrap().witness().is_none());
}

#[test]
fn strip_of_pair_sums_has_no_finite_kernel() {
    // Pair sums along the row y = 0, identity elsewhere: kernel elements would be constant rows.
    let f2 = Field::new(2).unwrap();
    let m = FiniteSet::rect(0, 1, 0, 0);
    let id = LinearRule::projection("id", f2, m.clone(), 1, Cell::d2(0, 0)).unwrap();
    let sum = LinearRule::scalar("sum", f2, m, 1, &[1, 1]).unwrap();
    let strip = LatticeSet::coset(Dim::Two, vec![Cell::d2(1, 0)], Cell::d2(0, 0)).unwrap();
    let nuca = LinearAssignment::new(f2, id, vec![(strip, sum)]).unwrap();
    let empty = LatticeSet::Empty(Dim::Two);
    let res = kernel_preinjectivity(&nuca, &empty, 4, 3, &Budget::default()).unwrap();
    assert!(res.witness().is_none(), "{res:?}");
}

#[test]
fn locus_identity_off_three() {
    let nuca = catalog::linear_identity_off(3);
    let tiling = interval_tiling(FiniteSet::singleton(Cell::d1(0)), 30, 10);
    let locus = preinjectivity_locus(&nuca, &tiling, r(2, 5), &Budget::default()).unwrap();
    assert!(locus.all_injective());
    for t in &locus.tiles {
        assert_eq!(t.status, TileStatus::Used);
        assert_eq!(t.kernel_dim, 10);
        assert!(t.pinned.iter().all(|c| c.x() % 3 == 0));
    }
    assert_eq!(locus.density, r(1, 3));
    assert!(locus.meets_target());
    assert!(locus.warnings.is_empty());
}

#[test]
fn locus_xor_pair_pins_one_cell_per_tile() {
    let nuca = catalog::linear_xor_pair();
    let tiling = interval_tiling(FiniteSet::interval(0, 1), 30, 10);
    let locus = preinjectivity_locus(&nuca, &tiling, r(1, 10), &Budget::default()).unwrap();
    for t in &locus.tiles {
        assert_eq!(t.e.len(), 28);
        assert_eq!(t.em.len(), 29);
        assert_eq!(t.kernel_dim, 1);
        assert_eq!(t.pinned.len(), 1);
        assert!(t.injective);
    }
    assert_eq!(locus.density, r(2, 30));
    let s = locus.lattice_set();
    let res = kernel_preinjectivity(&nuca, &s, 12, 40, &Budget::default()).unwrap();
    assert!(res.witness().is_none());
}

#[test]
fn locus_zero_rule_flags_full_pinning() {
    let nuca = catalog::linear_zero(Dim::One);
    let tiling = interval_tiling(FiniteSet::interval(-1, 1), 20, 5);
    let locus = preinjectivity_locus(&nuca, &tiling, r(1, 2), &Budget::default()).unwrap();
    for t in &locus.tiles {
        assert_eq!(t.pinned, t.em);
    }
    assert_eq!(locus.density, r(1, 1));
    assert!(!locus.meets_target());
    assert!(locus.warnings.iter().any(|w| w.contains("no d < 1")));
}

#[test]
fn locus_reports_small_and_overlapping_tiles() {
    let nuca = catalog::linear_xor_pair();
    let tiling = QuasiTiling::from_placements(
        FiniteSet::interval(0, 1),
        FiniteSet::interval(0, 39),
        vec![FiniteSet::interval(0, 1), FiniteSet::interval(0, 9)],
        &[(0, Cell::d1(0)), (1, Cell::d1(10)), (1, Cell::d1(15))],
    )
    .unwrap();
    let locus = preinjectivity_locus(&nuca, &tiling, r(1, 2), &Budget::default()).unwrap();
    assert_eq!(locus.tiles[0].status, TileStatus::TooSmall);
    assert_eq!(locus.tiles[1].status, TileStatus::Used);
    assert_eq!(locus.tiles[2].status, TileStatus::Overlaps(1));
}

#[test]
fn locus_warns_for_vector_alphabets() {
    let f2 = Field::new(2).unwrap();
    let rule = LinearRule::scalar("sum", f2, FiniteSet::interval(0, 1), 2, &[1, 1]).unwrap();
    let nuca = LinearAssignment::uniform(f2, rule);
    let locus = preinjectivity_locus(&nuca, &interval_tiling(FiniteSet::interval(0, 1), 10, 3), r(1, 2), &Budget::default()).unwrap();
    assert!(locus.warnings.iter().any(|w| w.contains("k = 2")));
    assert!(locus.all_injective());
}

fn random_nuca(rng: &mut ChaCha8Rng, p: u64, k: usize) -> LinearAssignment {
    let field = Field::new(p).unwrap();
    let m = FiniteSet::interval(-1, 1);
    let mut rule = |name: &str| {
        let coeffs = (0..m.len())
            .map(|_| {
                let rows: Vec<Vec<u8>> = (0..k).map(|_| (0..k).map(|_| rng.gen_range(0..p as u8)).collect()).collect();
                Matrix::from_rows(k, &rows)
            })
            .collect();
        LinearRule::new(name, field, m.clone(), k, coeffs).unwrap()
    };
    let default = rule("a");
    let other = rule("b");
    LinearAssignment::new(field, default, vec![(LatticeSet::progression(2, 1).unwrap(), other)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn window_matrix_agrees_with_tables(seed in any::<u64>(), params in prop::sample::select(vec![(2u64, 1usize), (3, 1), (5, 1), (2, 2), (3, 2)])) {
        let (p, k) = params;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nuca = random_nuca(&mut rng, p, k);
        let tables = nuca.to_rule_assignment().unwrap();
        let window = FiniteSet::interval(-3, 4);
        let wm = window_matrix(&nuca, &window).unwrap();
        let q = nuca.symbol_count().unwrap();
        let symbols: Vec<u8> = (0..wm.input.len()).map(|_| rng.gen_range(0..q)).collect();
        let x: Vec<u8> = symbols.iter().flat_map(|&s| nuca.decode(s)).collect();
        let y = wm.apply(&nuca, &x);
        let input = Pattern::new(wm.input.clone(), symbols).unwrap();
        let config = Configuration::constant(Dim::One, 0).with_pattern(&input).unwrap();
        let image = evaluate_window(&tables, &config, &window).unwrap();
        let expected: Vec<u8> = image.values().iter().flat_map(|&s| nuca.decode(s)).collect();
        prop_assert_eq!(y, expected);
    }

    #[test]
    fn rank_is_monotone_and_nullity_exact(seed in any::<u64>(), a in -5i64..0, b in 0i64..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nuca = random_nuca(&mut rng, 3, 1);
        let small = window_matrix(&nuca, &FiniteSet::interval(a, b)).unwrap();
        let big = window_matrix(&nuca, &FiniteSet::interval(a - 2, b + 1)).unwrap();
        prop_assert!(small.rank(&nuca) <= big.rank(&nuca));
        let null = small.matrix.null_space(nuca.field());
        prop_assert_eq!(small.rank(&nuca) + null.rows(), small.matrix.cols());
    }

    #[test]
    fn symbol_encoding_round_trips(v in prop::collection::vec(0u8..3, 3)) {
        let f3 = Field::new(3).unwrap();
        let nuca = LinearAssignment::uniform(f3, LinearRule::zero("z", f3, FiniteSet::interval(0, 0), 3).unwrap());
        prop_assert_eq!(nuca.decode(nuca.encode(&v)), v.clone());
        prop_assert_eq!(nuca.encode(&v), v[0] * 9 + v[1] * 3 + v[2]);
    }
}
