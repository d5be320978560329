//! Greedy ε-disjoint quasi-tilings of finite boxes with interior tiles
//! `T_i° = T_i^{-M}`.

use crate::error::{Error, Result};
use crate::lattice::{check_dim, Cell, Dim, FiniteSet};
use crate::Rational;

/// One placed tile `T = center + shape`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub center: Cell,
    /// Index into the shape list.
    pub shape: usize,
    pub tile: FiniteSet,
    /// `T^{-M}`.
    pub interior: FiniteSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiTiling {
    pub memory: FiniteSet,
    pub region: FiniteSet,
    pub shapes: Vec<FiniteSet>,
    pub tiles: Vec<Tile>,
}

impl QuasiTiling {
    /// Builds a tiling from explicit placements, recomputing tiles and interiors.
    pub fn from_placements(
        memory: FiniteSet,
        region: FiniteSet,
        shapes: Vec<FiniteSet>,
        placements: &[(usize, Cell)],
    ) -> Result<QuasiTiling> {
        check_dim(region.dim(), memory.dim())?;
        for s in &shapes {
            check_dim(region.dim(), s.dim())?;
        }
        let mut tiles = Vec::with_capacity(placements.len());
        for &(shape, center) in placements {
            let s = shapes
                .get(shape)
                .ok_or_else(|| Error::Invalid(format!("tile refers to missing shape {shape}")))?;
            let tile = s.translate(center)?;
            let interior = tile.interior(&memory)?;
            tiles.push(Tile {
                center,
                shape,
                tile,
                interior,
            });
        }
        Ok(QuasiTiling {
            memory,
            region,
            shapes,
            tiles,
        })
    }

    pub fn dim(&self) -> Dim {
        self.region.dim()
    }

    /// `(∪ T_i) ∩ region`.
    pub fn covered(&self) -> FiniteSet {
        self.union_within(|t| &t.tile)
    }

    /// `(∪ T_i°) ∩ region`.
    pub fn interior_covered(&self) -> FiniteSet {
        self.union_within(|t| &t.interior)
    }

    fn union_within(&self, pick: impl Fn(&Tile) -> &FiniteSet) -> FiniteSet {
        let mut cells: Vec<Cell> = self
            .tiles
            .iter()
            .flat_map(|t| pick(t).iter().copied())
            .filter(|c| self.region.contains(c))
            .collect();
        cells.sort_unstable();
        cells.dedup();
        FiniteSet::new(self.dim(), cells).expect("cells share the region dimension")
    }

    /// `|(∪ T_i) ∩ region| / |region|`.
    pub fn covering_ratio(&self) -> Rational {
        ratio(self.covered().len(), self.region.len())
    }

    /// Number of distinct shapes actually used.
    pub fn shapes_used(&self) -> usize {
        let mut used: Vec<usize> = self.tiles.iter().map(|t| t.shape).collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    }
}

fn ratio(a: usize, b: usize) -> Rational {
    if b == 0 {
        Rational::from_integer(1)
    } else {
        Rational::new(a as i128, b as i128)
    }
}

/// Output of [`construct`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub tiling: QuasiTiling,
    /// Achieved `|(∪T_i) ∩ region| / |region|`.
    pub covering: Rational,
    /// `max(0, 1 - ε - covering)`.
    pub deficit: Rational,
    /// Shapes with `|T^{-M}| <= (1-ε)|T|`; their tiles fail clause (i) at `ε`.
    pub thin_shapes: Vec<usize>,
}

/// Greedy placement, largest shape first, centers scanned in lexicographic
/// order. A translate is placed when it lies in the region, meets the
/// covered cells in fewer than `ε|T|` cells, and its interior misses every
/// earlier interior.
pub fn construct(shapes: &[FiniteSet], epsilon: Rational, memory: &FiniteSet, region: &FiniteSet) -> Result<Construction> {
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    if epsilon <= zero || epsilon >= one {
        return Err(Error::Invalid("epsilon must lie strictly between 0 and 1".into()));
    }
    if shapes.is_empty() {
        return Err(Error::Invalid("at least one shape is required".into()));
    }
    if !region.is_box() {
        return Err(Error::Precondition("the tiling region must be a box".into()));
    }
    check_dim(region.dim(), memory.dim())?;
    for s in shapes {
        check_dim(region.dim(), s.dim())?;
        if s.is_empty() {
            return Err(Error::Invalid("shapes must be nonempty".into()));
        }
    }
    let (lo, hi) = region.bounds().ok_or_else(|| Error::Precondition("the tiling region is empty".into()))?;
    let fits = |s: &FiniteSet| {
        let (a, b) = s.bounds().expect("nonempty shape");
        (0..region.dim().rank()).all(|i| b.coords()[i] - a.coords()[i] <= hi.coords()[i] - lo.coords()[i])
    };
    if !shapes.iter().any(fits) {
        return Err(Error::Precondition("every shape is larger than the region".into()));
    }

    let mut order: Vec<usize> = (0..shapes.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(shapes[i].len()));
    let mut covered = vec![false; region.len()];
    let mut inner = vec![false; region.len()];
    let mut placements = Vec::new();
    let mut skipped = Vec::new();
    for &si in &order {
        let shape = &shapes[si];
        let interior = shape.interior(memory)?;
        if Rational::from_integer(interior.len() as i128) <= (one - epsilon) * Rational::from_integer(shape.len() as i128) {
            skipped.push(si);
        }
        let anchor = shape.bounds().expect("nonempty shape").0;
        for &corner in region.iter() {
            let g = corner - anchor;
            let idx: Option<Vec<usize>> = shape.iter().map(|&c| region.index_of(&(c + g))).collect();
            let Some(idx) = idx else { continue };
            let overlap = idx.iter().filter(|&&i| covered[i]).count();
            if Rational::from_integer(overlap as i128) >= epsilon * Rational::from_integer(shape.len() as i128) {
                continue;
            }
            let int_idx: Vec<usize> = interior
                .iter()
                .map(|&c| region.index_of(&(c + g)).expect("interior lies in the tile"))
                .collect();
            if int_idx.iter().any(|&i| inner[i]) {
                continue;
            }
            for &i in &idx {
                covered[i] = true;
            }
            for &i in &int_idx {
                inner[i] = true;
            }
            placements.push((si, g));
        }
    }
    let tiling = QuasiTiling::from_placements(memory.clone(), region.clone(), shapes.to_vec(), &placements)?;
    let covering = ratio(covered.iter().filter(|&&b| b).count(), region.len());
    let deficit = (one - epsilon - covering).max(zero);
    skipped.sort_unstable();
    Ok(Construction {
        tiling,
        covering,
        deficit,
        thin_shapes: skipped,
    })
}

/// Per-clause result of [`verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingVerdict {
    /// (i) `|T_i°| > (1-α)|T_i|` for every tile; else the first failing tile.
    pub interiors_large: std::result::Result<(), usize>,
    /// (ii) interiors pairwise disjoint; else the first overlapping pair.
    pub interiors_disjoint: std::result::Result<(), (usize, usize)>,
    /// (iii) measured covering of the region.
    pub covering: Rational,
    pub covering_ok: bool,
}

impl TilingVerdict {
    pub fn passed(&self) -> bool {
        self.interiors_large.is_ok() && self.interiors_disjoint.is_ok() && self.covering_ok
    }
}

fn first_overlap(t: &QuasiTiling) -> std::result::Result<(), (usize, usize)> {
    let mut owner: std::collections::HashMap<Cell, usize> = std::collections::HashMap::new();
    let mut worst: Option<(usize, usize)> = None;
    for (j, tile) in t.tiles.iter().enumerate() {
        for c in tile.interior.iter() {
            if let Some(&i) = owner.get(c) {
                let pair = (i, j);
                if worst.is_none_or(|w| (pair.1, pair.0) < (w.1, w.0)) {
                    worst = Some(pair);
                }
            } else {
                owner.insert(*c, j);
            }
        }
        if worst.is_some() {
            break;
        }
    }
    match worst {
        Some(p) => Err(p),
        None => Ok(()),
    }
}

/// Checks clauses (i)-(iii) of an α-disjoint, β-covering quasi-tiling on the region.
pub fn verify(t: &QuasiTiling, alpha: Rational, beta: Rational) -> TilingVerdict {
    let one = Rational::from_integer(1);
    let interiors_large = match t.tiles.iter().position(|tile| {
        Rational::from_integer(tile.interior.len() as i128) <= (one - alpha) * Rational::from_integer(tile.tile.len() as i128)
    }) {
        Some(i) => Err(i),
        None => Ok(()),
    };
    let covering = t.covering_ratio();
    TilingVerdict {
        interiors_large,
        interiors_disjoint: first_overlap(t),
        covering,
        covering_ok: covering >= beta,
    }
}

/// Result of [`ab_covering_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbVerdict {
    /// `|(∪T_i°) ∩ region| / |region|`.
    pub ratio: Rational,
    /// `αβ - slack`.
    pub threshold: Rational,
    pub passed: bool,
}

/// Checks that the interiors cover at least `αβ - slack` of the region.
/// Refuses unless every `|T_i°| >= α|T_i|`, the interiors are disjoint and
/// the tiles cover at least `β` of the region.
pub fn ab_covering_check(t: &QuasiTiling, alpha: Rational, beta: Rational, slack: Rational) -> Result<AbVerdict> {
    if let Some(i) = t.tiles.iter().position(|tile| {
        Rational::from_integer(tile.interior.len() as i128) < alpha * Rational::from_integer(tile.tile.len() as i128)
    }) {
        return Err(Error::Precondition(format!(
            "tile {i} has |interior| < alpha |tile|; the covering hypothesis does not hold"
        )));
    }
    if let Err((i, j)) = first_overlap(t) {
        return Err(Error::Precondition(format!("interiors of tiles {i} and {j} overlap")));
    }
    let cov = t.covering_ratio();
    if cov < beta {
        return Err(Error::Precondition(format!("tiles cover {cov} of the region, below beta = {beta}")));
    }
    let ratio = ratio(t.interior_covered().len(), t.region.len());
    let threshold = alpha * beta - slack;
    Ok(AbVerdict {
        ratio,
        threshold,
        passed: ratio >= threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    fn m1() -> FiniteSet {
        FiniteSet::interval(-1, 1)
    }

    #[test]
    fn exact_interval_tiling() {
        let c = construct(&[FiniteSet::interval(0, 9)], r(1, 10), &m1(), &FiniteSet::interval(0, 99)).unwrap();
        let t = &c.tiling;
        assert_eq!(t.tiles.len(), 10);
        assert_eq!(c.covering, r(1, 1));
        assert_eq!(c.thin_shapes, vec![0]);
        for (i, tile) in t.tiles.iter().enumerate() {
            assert_eq!(tile.interior, FiniteSet::interval(10 * i as i64 + 1, 10 * i as i64 + 8));
        }
        assert!(verify(t, r(1, 2), r(1, 1)).passed());
        let ab = ab_covering_check(t, r(8, 10), r(1, 1), r(0, 1)).unwrap();
        assert_eq!(ab.ratio, r(80, 100));
        assert!(ab.passed);
    }

    #[test]
    fn two_scales_cover_most_of_the_region() {
        let shapes = [FiniteSet::interval(0, 9), FiniteSet::interval(0, 29)];
        let c = construct(&shapes, r(1, 5), &m1(), &FiniteSet::interval(0, 100)).unwrap();
        assert!(c.covering >= r(4, 5));
        assert_eq!(verify(&c.tiling, r(1, 5), r(4, 5)).covering, c.covering);
        let v = verify(&c.tiling, r(1, 5), r(4, 5));
        assert!(v.interiors_disjoint.is_ok() && v.covering_ok);
        assert_eq!(c.thin_shapes, vec![0]);
    }

    #[test]
    fn shapes_larger_than_region_fail() {
        let e = construct(&[FiniteSet::interval(0, 20)], r(1, 10), &m1(), &FiniteSet::interval(0, 9)).unwrap_err();
        assert!(matches!(e, Error::Precondition(_)));
    }

    #[test]
    fn verify_catches_overlaps_and_empty_tilings() {
        let shapes = vec![FiniteSet::interval(0, 9)];
        let t = QuasiTiling::from_placements(m1(), FiniteSet::interval(0, 20), shapes.clone(), &[(0, Cell::d1(0)), (0, Cell::d1(5))])
            .unwrap();
        assert_eq!(verify(&t, r(1, 2), r(1, 2)).interiors_disjoint, Err((0, 1)));
        let empty = QuasiTiling::from_placements(m1(), FiniteSet::interval(0, 20), shapes, &[]).unwrap();
        let v = verify(&empty, r(1, 2), r(1, 10));
        assert!(!v.covering_ok && !v.passed());
    }

    #[test]
    fn single_tile_with_trivial_memory() {
        let region = FiniteSet::rect(0, 4, 0, 4);
        let t = QuasiTiling::from_placements(
            FiniteSet::singleton(Cell::d2(0, 0)),
            region.clone(),
            vec![region],
            &[(0, Cell::d2(0, 0))],
        )
        .unwrap();
        let ab = ab_covering_check(&t, r(1, 1), r(1, 1), r(0, 1)).unwrap();
        assert_eq!(ab.ratio, r(1, 1));
    }

    #[test]
    fn two_dimensional_construction() {
        let m = FiniteSet::rect(-1, 1, -1, 1);
        let shapes = [FiniteSet::rect(0, 9, 0, 9), FiniteSet::rect(0, 19, 0, 19)];
        let c = construct(&shapes, r(2, 5), &m, &FiniteSet::rect(0, 49, 0, 49)).unwrap();
        let v = verify(&c.tiling, r(2, 5), c.covering);
        assert!(v.passed(), "{v:?}");
    }
}
