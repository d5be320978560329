//! Natural and Banach densities of lattice subsets.

mod exact;
mod set;
mod syntax;

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

pub use exact::{asymptotic, Asymptotic, Sector, MAX_PERIOD_CELLS};
pub use set::{LatticeSet, Subgroup};
pub(crate) use syntax::{parse_at, parse_cell, parse_set};

use crate::error::{Error, Result};
use crate::lattice::{check_dim, BoxFolner, Cell, Dim};
use crate::Rational;

/// A density value labeled by how it was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityValue {
    Exact(Rational),
    /// Read off a finite window prefix; not a limit.
    Estimate(Rational),
    /// No closed form; the true value lies in `[lo, hi]`.
    Bracket { lo: Rational, hi: Rational },
}

impl DensityValue {
    fn from_interval(lo: Rational, hi: Rational) -> DensityValue {
        if lo == hi {
            DensityValue::Exact(lo)
        } else {
            DensityValue::Bracket { lo, hi }
        }
    }

    pub fn exact(&self) -> Option<Rational> {
        match self {
            DensityValue::Exact(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DensityValue::Exact(_))
    }

    /// Certified enclosure; `None` for estimates.
    pub fn interval(&self) -> Option<(Rational, Rational)> {
        match self {
            DensityValue::Exact(v) => Some((*v, *v)),
            DensityValue::Bracket { lo, hi } => Some((*lo, *hi)),
            DensityValue::Estimate(_) => None,
        }
    }

    /// Kind label used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            DensityValue::Exact(_) => "exact",
            DensityValue::Estimate(_) => "estimate",
            DensityValue::Bracket { .. } => "bracket",
        }
    }
}

impl fmt::Display for DensityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DensityValue::Exact(v) | DensityValue::Estimate(v) => write!(f, "{v}"),
            DensityValue::Bracket { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

/// `|S ∩ F_n| / |F_n|` for one window of a Følner sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowRatio {
    pub n: usize,
    pub radius: i64,
    pub count: u64,
    pub size: u64,
    pub ratio: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub dim: Dim,
    pub window_ratios: Vec<WindowRatio>,
    /// Natural densities along the Følner sequence; absent for pure Banach queries.
    pub upper_natural: Option<DensityValue>,
    pub lower_natural: Option<DensityValue>,
    pub upper_banach: DensityValue,
    pub lower_banach: DensityValue,
    /// Max and min of the ratios over the last half of the prefix.
    pub tail_max: Option<Rational>,
    pub tail_min: Option<Rational>,
    /// Common period used by the closed form, when one applies.
    pub period: Option<u64>,
}

/// Counts `S ∩ (center + [-k,k]^d)`.
pub fn count_in_box(set: &LatticeSet, center: Cell, k: i64) -> u64 {
    match set.dim() {
        Dim::One => (-k..=k).filter(|&x| set.contains(Cell::d1(center.x() + x))).count() as u64,
        Dim::Two => {
            let row = |y: i64| {
                (-k..=k)
                    .filter(|&x| set.contains(Cell::d2(center.x() + x, center.y() + y)))
                    .count() as u64
            };
            if k >= 64 {
                (-k..=k).into_par_iter().map(row).sum()
            } else {
                (-k..=k).map(row).sum()
            }
        }
    }
}

fn box_size(dim: Dim, k: i64) -> u64 {
    let side = (2 * k + 1) as u64;
    match dim {
        Dim::One => side,
        Dim::Two => side * side,
    }
}

/// `|S ∩ (g + [-k,k]^d)| / (2k+1)^d`.
pub fn window_ratio(set: &LatticeSet, center: Cell, k: i64) -> Result<Rational> {
    check_dim(set.dim(), center.dim())?;
    if k < 0 {
        return Err(Error::Invalid("window radius must be nonnegative".into()));
    }
    Ok(Rational::new(
        count_in_box(set, center, k) as i128,
        box_size(set.dim(), k) as i128,
    ))
}

/// Min and max of the window ratio over the given translates of a box of
/// radius `k`; a sampled bracket for the Banach densities at that scale.
pub fn translate_ratio_range(set: &LatticeSet, k: i64, translates: &[Cell]) -> Result<(Rational, Rational)> {
    if translates.is_empty() {
        return Err(Error::Invalid("at least one translate is required".into()));
    }
    let ratios = translates
        .iter()
        .map(|g| window_ratio(set, *g, k))
        .collect::<Result<Vec<_>>>()?;
    Ok((
        *ratios.iter().min().expect("nonempty"),
        *ratios.iter().max().expect("nonempty"),
    ))
}

/// Window ratios along `folner` for `n = 1..=n_max`.
pub fn window_ratios(set: &LatticeSet, folner: &BoxFolner, n_max: usize) -> Result<Vec<WindowRatio>> {
    check_dim(set.dim(), folner.dim())?;
    let origin = Cell::origin(set.dim());
    (1..=n_max)
        .map(|n| {
            let radius = folner.radius(n)?;
            let count = count_in_box(set, origin, radius);
            let size = box_size(set.dim(), radius);
            Ok(WindowRatio {
                n,
                radius,
                count,
                size,
                ratio: Rational::new(count as i128, size as i128),
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    fn point(v: Rational) -> Interval {
        Interval { lo: v, hi: v }
    }

    fn flip(self) -> Interval {
        let one = Rational::one();
        Interval {
            lo: one - self.hi,
            hi: one - self.lo,
        }
    }
}

/// Enclosures of (lower, upper) Banach density.
fn banach_bracket(set: &LatticeSet) -> (Interval, Interval) {
    if let Some(a) = asymptotic(set) {
        return (Interval::point(a.lower_banach), Interval::point(a.upper_banach));
    }
    let zero = Rational::zero();
    let one = Rational::one();
    let clamp = |v: Rational| v.max(zero).min(one);
    match set {
        LatticeSet::Coset {
            subgroup: Subgroup::Full(l),
            ..
        } => {
            let v = Rational::new(1, l.index() as i128);
            (Interval::point(v), Interval::point(v))
        }
        LatticeSet::Union(parts) => {
            let b: Vec<_> = parts.iter().map(banach_bracket).collect();
            let sum_hi = clamp(b.iter().map(|x| x.1.hi).sum());
            let lower = Interval {
                lo: b.iter().map(|x| x.0.lo).max().unwrap_or(zero),
                hi: sum_hi,
            };
            let upper = Interval {
                lo: b.iter().map(|x| x.1.lo).max().unwrap_or(zero),
                hi: sum_hi,
            };
            (lower, upper)
        }
        LatticeSet::Intersection(parts) => {
            let b: Vec<_> = parts.iter().map(banach_bracket).collect();
            let slack = Rational::from_integer(b.len() as i128 - 1);
            let lo = clamp(b.iter().map(|x| x.0.lo).sum::<Rational>() - slack);
            let lower = Interval {
                lo,
                hi: b.iter().map(|x| x.0.hi).min().unwrap_or(one),
            };
            let upper = Interval {
                lo,
                hi: b.iter().map(|x| x.1.hi).min().unwrap_or(one),
            };
            (lower, upper)
        }
        LatticeSet::Complement(s) => {
            let (lower, upper) = banach_bracket(s);
            (upper.flip(), lower.flip())
        }
        LatticeSet::Difference(a, b) => banach_bracket(&LatticeSet::intersection(vec![
            (**a).clone(),
            LatticeSet::complement((**b).clone()),
        ])),
        // every other atom has a closed form with period 1
        _ => (Interval { lo: zero, hi: one }, Interval { lo: zero, hi: one }),
    }
}

fn tail_extremes(ratios: &[WindowRatio]) -> Option<(Rational, Rational)> {
    if ratios.is_empty() {
        return None;
    }
    let tail = &ratios[ratios.len() / 2..];
    Some((
        tail.iter().map(|w| w.ratio).min().expect("nonempty"),
        tail.iter().map(|w| w.ratio).max().expect("nonempty"),
    ))
}

/// Window ratios and natural densities along centered boxes, plus Banach densities.
pub fn natural_density(set: &LatticeSet, folner: &BoxFolner, n_max: usize) -> Result<DensityReport> {
    set.validate()?;
    if n_max == 0 {
        return Err(Error::Invalid("n_max must be at least 1".into()));
    }
    let ratios = window_ratios(set, folner, n_max)?;
    let tail = tail_extremes(&ratios);
    let exact = asymptotic(set);
    let (upper_natural, lower_natural) = match &exact {
        Some(a) => (DensityValue::Exact(a.natural), DensityValue::Exact(a.natural)),
        None => {
            let (lo, hi) = tail.expect("n_max >= 1");
            (DensityValue::Estimate(hi), DensityValue::Estimate(lo))
        }
    };
    let (lower, upper) = banach_bracket(set);
    Ok(DensityReport {
        dim: set.dim(),
        window_ratios: ratios,
        upper_natural: Some(upper_natural),
        lower_natural: Some(lower_natural),
        upper_banach: DensityValue::from_interval(upper.lo, upper.hi),
        lower_banach: DensityValue::from_interval(lower.lo, lower.hi),
        tail_min: tail.map(|t| t.0),
        tail_max: tail.map(|t| t.1),
        period: exact.map(|a| a.period),
    })
}

/// Upper and lower Banach densities; independent of any Følner sequence.
pub fn banach_density(set: &LatticeSet) -> Result<DensityReport> {
    set.validate()?;
    let (lower, upper) = banach_bracket(set);
    Ok(DensityReport {
        dim: set.dim(),
        window_ratios: Vec::new(),
        upper_natural: None,
        lower_natural: None,
        upper_banach: DensityValue::from_interval(upper.lo, upper.hi),
        lower_banach: DensityValue::from_interval(lower.lo, lower.hi),
        tail_min: None,
        tail_max: None,
        period: asymptotic(set).map(|a| a.period),
    })
}

/// Outcome of [`density_laws_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawsVerdict {
    pub checks: usize,
    /// First violated instance, if any.
    pub violation: Option<String>,
}

impl LawsVerdict {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

struct Checker {
    checks: usize,
    violation: Option<String>,
}

impl Checker {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.violation.is_none() {
            self.violation = Some(what());
        }
    }
}

/// Checks the complement identity, subadditivity of upper densities and the
/// chain `0 <= lower Banach <= lower natural <= upper natural <= upper Banach <= 1`
/// on every window of the prefix and on the closed-form values.
pub fn density_laws_check(s: &LatticeSet, t: &LatticeSet, folner: &BoxFolner, n_max: usize) -> Result<LawsVerdict> {
    check_dim(s.dim(), t.dim())?;
    let sc = LatticeSet::complement(s.clone());
    let st = LatticeSet::union(vec![s.clone(), t.clone()]);
    let rs = natural_density(s, folner, n_max)?;
    let rsc = natural_density(&sc, folner, n_max)?;
    let rt = natural_density(t, folner, n_max)?;
    let rst = natural_density(&st, folner, n_max)?;
    let one = Rational::one();
    let zero = Rational::zero();
    let mut c = Checker {
        checks: 0,
        violation: None,
    };

    for i in 0..n_max {
        let (a, b) = (&rs.window_ratios[i], &rsc.window_ratios[i]);
        c.check(a.ratio + b.ratio == one, || {
            format!("window n={}: ratio(S) + ratio(complement S) = {} != 1", a.n, a.ratio + b.ratio)
        });
        let (u, ts) = (&rst.window_ratios[i], &rt.window_ratios[i]);
        c.check(u.ratio <= a.ratio + ts.ratio, || {
            format!("window n={}: ratio(S u T) = {} > {} + {}", a.n, u.ratio, a.ratio, ts.ratio)
        });
    }

    let iv = |v: &Option<DensityValue>| v.as_ref().and_then(DensityValue::interval);
    // complement identities
    if let (Some(us), Some(lc)) = (iv(&rs.upper_natural), iv(&rsc.lower_natural)) {
        c.check(us.0 + lc.0 <= one && one <= us.1 + lc.1, || {
            format!("upper natural(S) + lower natural(complement S) = {} + {} != 1", us.0, lc.0)
        });
    }
    if let (Some(us), Some(lc)) = (rs.upper_banach.interval(), rsc.lower_banach.interval()) {
        c.check(us.0 + lc.0 <= one && one <= us.1 + lc.1, || {
            format!("upper Banach(S) + lower Banach(complement S) = {} + {} != 1", us.0, lc.0)
        });
    }
    // subadditivity
    if let (Some(u), Some(a), Some(b)) = (iv(&rst.upper_natural), iv(&rs.upper_natural), iv(&rt.upper_natural)) {
        c.check(u.0 <= a.1 + b.1, || format!("upper natural(S u T) = {} > {} + {}", u.0, a.1, b.1));
    }
    if let (Some(u), Some(a), Some(b)) = (
        rst.upper_banach.interval(),
        rs.upper_banach.interval(),
        rt.upper_banach.interval(),
    ) {
        c.check(u.0 <= a.1 + b.1, || format!("upper Banach(S u T) = {} > {} + {}", u.0, a.1, b.1));
    }
    // chains
    for (name, r) in [("S", &rs), ("T", &rt), ("S u T", &rst), ("complement S", &rsc)] {
        let mut chain: Vec<(Rational, Rational)> = vec![(zero, zero)];
        chain.extend(r.lower_banach.interval());
        chain.extend(iv(&r.lower_natural));
        chain.extend(iv(&r.upper_natural));
        chain.extend(r.upper_banach.interval());
        chain.push((one, one));
        for w in chain.windows(2) {
            c.check(w[0].0 <= w[1].1, || {
                format!("density chain broken for {name}: {} > {}", w[0].0, w[1].1)
            });
        }
    }
    Ok(LawsVerdict {
        checks: c.checks,
        violation: c.violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FiniteSet;

    fn r(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn odd_integers_have_density_half() {
        let s = LatticeSet::progression(2, 1).unwrap();
        let rep = natural_density(&s, &BoxFolner::centered(Dim::One), 5).unwrap();
        assert_eq!(rep.upper_natural, Some(DensityValue::Exact(r(1, 2))));
        assert_eq!(rep.lower_banach, DensityValue::Exact(r(1, 2)));
        // [-1,1] holds -1 and 1
        assert_eq!(rep.window_ratios[0].ratio, r(2, 3));
    }

    #[test]
    fn finite_sets_have_density_zero() {
        let s = LatticeSet::Finite(FiniteSet::interval(-3, 7));
        let rep = natural_density(&s, &BoxFolner::centered(Dim::One), 3).unwrap();
        assert_eq!(rep.upper_natural, Some(DensityValue::Exact(r(0, 1))));
        assert_eq!(rep.upper_banach, DensityValue::Exact(r(0, 1)));
    }

    #[test]
    fn squares_window_ratios_shrink() {
        let s = LatticeSet::powers(2, 0).unwrap();
        let f = BoxFolner::centered(Dim::One);
        let rep = natural_density(&s, &f, 400).unwrap();
        let k = rep.window_ratios.last().unwrap().radius as f64;
        let tail = rep.tail_max.unwrap();
        assert!((*tail.numer() as f64) / (*tail.denom() as f64) <= 3.0 / k.sqrt());
        assert_eq!(rep.upper_banach, DensityValue::Exact(r(0, 1)));
    }

    #[test]
    fn banach_examples() {
        let diag = LatticeSet::coset(Dim::Two, vec![Cell::d2(1, 1)], Cell::d2(0, 0)).unwrap();
        let b = banach_density(&diag).unwrap();
        assert_eq!((b.lower_banach, b.upper_banach), (DensityValue::Exact(r(0, 1)), DensityValue::Exact(r(0, 1))));

        let h = LatticeSet::half_space(Cell::d2(1, -1), 1).unwrap();
        let b = banach_density(&h).unwrap();
        assert_eq!((b.lower_banach, b.upper_banach), (DensityValue::Exact(r(0, 1)), DensityValue::Exact(r(1, 1))));

        let three = LatticeSet::progression(3, 0).unwrap();
        let b = banach_density(&three).unwrap();
        assert_eq!((b.lower_banach, b.upper_banach), (DensityValue::Exact(r(1, 3)), DensityValue::Exact(r(1, 3))));
    }

    #[test]
    fn inclusion_exclusion_four_six() {
        let u = LatticeSet::union(vec![
            LatticeSet::progression(4, 0).unwrap(),
            LatticeSet::progression(6, 0).unwrap(),
        ]);
        assert_eq!(asymptotic(&u).unwrap().natural, r(1, 3));
        let v = density_laws_check(
            &LatticeSet::progression(4, 0).unwrap(),
            &LatticeSet::progression(6, 0).unwrap(),
            &BoxFolner::centered(Dim::One),
            20,
        )
        .unwrap();
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn half_line_chain() {
        let s = LatticeSet::half_space(Cell::d1(1), 0).unwrap();
        let rep = natural_density(&s, &BoxFolner::centered(Dim::One), 10).unwrap();
        assert_eq!(rep.upper_natural, Some(DensityValue::Exact(r(1, 2))));
        assert_eq!(rep.lower_banach, DensityValue::Exact(r(0, 1)));
        assert_eq!(rep.upper_banach, DensityValue::Exact(r(1, 1)));
        let v = density_laws_check(&s, &LatticeSet::progression(2, 1).unwrap(), &BoxFolner::centered(Dim::One), 10)
            .unwrap();
        assert!(v.passed(), "{v:?}");
    }

    #[test]
    fn bracket_when_period_is_too_large() {
        let big = |a: i64| LatticeSet::progression(a, 0).unwrap();
        // lcm exceeds the enumeration cap
        let s = LatticeSet::union(vec![big(2_000_003), big(2_000_029)]);
        let b = banach_density(&s).unwrap();
        match b.upper_banach {
            DensityValue::Bracket { lo, hi } => {
                assert_eq!(lo, r(1, 2_000_003));
                assert_eq!(hi, r(1, 2_000_003) + r(1, 2_000_029));
            }
            other => panic!("expected a bracket, got {other:?}"),
        }
    }

    #[test]
    fn translated_windows_match() {
        let s = LatticeSet::union(vec![
            LatticeSet::half_space(Cell::d2(2, 1), -3).unwrap(),
            LatticeSet::coset(Dim::Two, vec![Cell::d2(3, 0), Cell::d2(1, 2)], Cell::d2(0, 1)).unwrap(),
        ]);
        let g = Cell::d2(5, -7);
        let t = s.translate(g).unwrap();
        for c in [Cell::d2(0, 0), Cell::d2(-4, 9)] {
            assert_eq!(window_ratio(&t, c + g, 6).unwrap(), window_ratio(&s, c, 6).unwrap());
        }
    }
}
