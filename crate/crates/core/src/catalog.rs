//! The worked examples as ready-made objects.

use crate::density::LatticeSet;
use crate::engine::{RuleAssignment, RuleTable};
use crate::lattice::{Cell, Dim, FiniteSet};
use crate::linear::{Field, LinearAssignment, LinearRule};
use crate::sft::Sft;

fn expect<T>(r: crate::Result<T>) -> T {
    r.expect("catalog entries are well formed")
}

/// `τ(x)(n) = x(n+1)` for `n <= -1`, `x(0)` at `0`, `x(n-1)` for `n >= 1`.
pub fn example1() -> RuleAssignment {
    let m = FiniteSet::interval(-1, 1);
    let id = expect(RuleTable::projection("identity", m.clone(), 2, Cell::d1(0)));
    let from_right = expect(RuleTable::projection("from_right", m.clone(), 2, Cell::d1(1)));
    let from_left = expect(RuleTable::projection("from_left", m, 2, Cell::d1(-1)));
    expect(RuleAssignment::new(
        id,
        vec![
            (expect(LatticeSet::half_space(Cell::d1(-1), 1)), from_right),
            (expect(LatticeSet::half_space(Cell::d1(1), 1)), from_left),
        ],
    ))
}

fn column_memory() -> FiniteSet {
    FiniteSet::rect(0, 0, -1, 1)
}

fn below_diagonal() -> LatticeSet {
    expect(LatticeSet::half_space(Cell::d2(1, -1), 1))
}

fn above_diagonal() -> LatticeSet {
    expect(LatticeSet::half_space(Cell::d2(-1, 1), 1))
}

/// The injective, non-surjective NUCA `τ` on `Z^2`.
pub fn example2_tau() -> RuleAssignment {
    let m = column_memory();
    let id = expect(RuleTable::projection("identity", m.clone(), 2, Cell::d2(0, 0)));
    let up = expect(RuleTable::projection("from_above", m.clone(), 2, Cell::d2(0, 1)));
    let down = expect(RuleTable::projection("from_below", m, 2, Cell::d2(0, -1)));
    expect(RuleAssignment::new(id, vec![(below_diagonal(), up), (above_diagonal(), down)]))
}

/// The surjective, non-pre-injective NUCA `σ` on `Z^2`.
pub fn example2_sigma() -> RuleAssignment {
    let m = column_memory();
    let xor = expect(RuleTable::from_fn("xor3", m.clone(), 2, |x| x[0] ^ x[1] ^ x[2]));
    let down = expect(RuleTable::projection("from_below", m.clone(), 2, Cell::d2(0, -1)));
    let up = expect(RuleTable::projection("from_above", m, 2, Cell::d2(0, 1)));
    expect(RuleAssignment::new(xor, vec![(below_diagonal(), down), (above_diagonal(), up)]))
}

/// `τ(x)(n) = x(n)` unless `x(n) = 2`, in which case `0`; alphabet `{0,1,2}`.
pub fn example3() -> RuleAssignment {
    let m = FiniteSet::singleton(Cell::d1(0));
    RuleAssignment::uniform(expect(RuleTable::from_fn("erase_two", m, 3, |x| if x[0] == 2 { 0 } else { x[0] })))
}

/// The identity cellular automaton with memory `{0}`.
pub fn identity(dim: Dim, alphabet: u8) -> RuleAssignment {
    let m = FiniteSet::singleton(Cell::origin(dim));
    RuleAssignment::uniform(expect(RuleTable::projection("identity", m, alphabet, Cell::origin(dim))))
}

fn f2() -> Field {
    expect(Field::new(2))
}

/// `x(n) + x(n+1)` over `F_2`.
pub fn linear_xor_pair() -> LinearAssignment {
    let m = FiniteSet::interval(0, 1);
    LinearAssignment::uniform(f2(), expect(LinearRule::scalar("xor_pair", f2(), m, 1, &[1, 1])))
}

/// [`example1`] as a linear NUCA over `F_2`.
pub fn linear_example1() -> LinearAssignment {
    let m = FiniteSet::interval(-1, 1);
    let id = expect(LinearRule::projection("identity", f2(), m.clone(), 1, Cell::d1(0)));
    let from_right = expect(LinearRule::projection("from_right", f2(), m.clone(), 1, Cell::d1(1)));
    let from_left = expect(LinearRule::projection("from_left", f2(), m, 1, Cell::d1(-1)));
    expect(LinearAssignment::new(
        f2(),
        id,
        vec![
            (expect(LatticeSet::half_space(Cell::d1(-1), 1)), from_right),
            (expect(LatticeSet::half_space(Cell::d1(1), 1)), from_left),
        ],
    ))
}

/// Identity over `F_2` except the zero map on `modulus·Z`.
pub fn linear_identity_off(modulus: i64) -> LinearAssignment {
    let m = FiniteSet::singleton(Cell::d1(0));
    let id = expect(LinearRule::scalar("identity", f2(), m.clone(), 1, &[1]));
    let zero = expect(LinearRule::zero("zero", f2(), m, 1));
    expect(LinearAssignment::new(f2(), id, vec![(expect(LatticeSet::progression(modulus, 0)), zero)]))
}

/// The zero map over `F_2` with memory `[-1,1]^d`.
pub fn linear_zero(dim: Dim) -> LinearAssignment {
    let m = FiniteSet::centered_box(dim, 1);
    LinearAssignment::uniform(f2(), expect(LinearRule::zero("zero", f2(), m, 1)))
}

/// Binary words of `Z` with no two adjacent `1`s.
pub fn golden_mean() -> Sft {
    expect(Sft::from_forbidden(FiniteSet::interval(0, 1), 2, &[vec![1, 1]]))
}

/// Binary configurations of `Z^2` with no two horizontally or vertically adjacent `1`s.
pub fn hard_square() -> Sft {
    let window = FiniteSet::rect(0, 1, 0, 1);
    let cells = window.cells().to_vec();
    let adjacent = |i: usize, j: usize| {
        let d = cells[i] - cells[j];
        d.x().abs() + d.y().abs() == 1
    };
    expect(Sft::from_fn(window, 2, |w| {
        (0..4).all(|i| (i + 1..4).all(|j| !adjacent(i, j) || w[i] == 0 || w[j] == 0))
    }))
}

/// The two alternating configurations `...0101...`.
pub fn period_two() -> Sft {
    expect(Sft::from_allowed(FiniteSet::interval(0, 1), 2, &[vec![0, 1], vec![1, 0]]))
}
