//! Per-tile extraction of a set `S` on which pinning to zero makes the NUCA
//! pre-injective.

use rayon::prelude::*;

use crate::budget::Budget;
use crate::density::LatticeSet;
use crate::error::Result;
use crate::lattice::{check_dim, Cell, FiniteSet};
use crate::quasitiling::QuasiTiling;
use crate::Rational;

use super::rule::LinearAssignment;
use super::window::restricted_matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TileStatus {
    Used,
    /// `E_i` is empty.
    TooSmall,
    /// `E_i M` meets `E_j M` for an earlier used tile `j`.
    Overlaps(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileLocus {
    pub tile: usize,
    pub status: TileStatus,
    /// `E_i = T_i^{-M'M'}` with `M' = M ∪ {0}`.
    pub e: FiniteSet,
    /// `E_i M'`.
    pub em: FiniteSet,
    pub kernel_dim: usize,
    pub rank: usize,
    /// `S_i ⊆ E_i M'`.
    pub pinned: FiniteSet,
    /// The tile map is injective once `S_i` is pinned to zero.
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Locus {
    pub region: FiniteSet,
    pub tiles: Vec<TileLocus>,
    /// `S ∩ region`.
    pub set: FiniteSet,
    /// `|S ∩ region| / |region|`.
    pub density: Rational,
    pub target: Rational,
    pub warnings: Vec<String>,
}

impl Locus {
    pub fn meets_target(&self) -> bool {
        self.density <= self.target
    }

    pub fn all_injective(&self) -> bool {
        self.tiles.iter().filter(|t| t.status == TileStatus::Used).all(|t| t.injective)
    }

    /// `S` as a subset of the whole lattice: the extracted cells plus everything off the region.
    pub fn lattice_set(&self) -> LatticeSet {
        LatticeSet::union(vec![
            LatticeSet::Finite(self.set.clone()),
            LatticeSet::complement(LatticeSet::Finite(self.region.clone())),
        ])
    }
}

/// Builds `S = region \ ∪(E_i M' \ S_i)` from the null spaces of the tile maps.
pub fn preinjectivity_locus(nuca: &LinearAssignment, tiling: &QuasiTiling, d: Rational, budget: &Budget) -> Result<Locus> {
    check_dim(nuca.dim(), tiling.dim())?;
    let field = nuca.field();
    let k = nuca.k();
    let mp = nuca.memory().union(&FiniteSet::singleton(Cell::origin(nuca.dim())));
    let mp2 = mp.minkowski(&mp)?;

    let mut tiles = Vec::with_capacity(tiling.tiles.len());
    let mut taken: Vec<bool> = vec![false; tiling.region.len()];
    let mut owner: std::collections::HashMap<Cell, usize> = std::collections::HashMap::new();
    for (i, t) in tiling.tiles.iter().enumerate() {
        let e = t.tile.interior(&mp2)?;
        let em = e.minkowski(&mp)?;
        let mut status = TileStatus::Used;
        if e.is_empty() {
            status = TileStatus::TooSmall;
        } else if let Some(j) = em.iter().find_map(|c| owner.get(c).copied()) {
            status = TileStatus::Overlaps(j);
        } else {
            for &c in em.iter() {
                owner.insert(c, i);
            }
        }
        tiles.push(TileLocus {
            tile: i,
            status,
            pinned: FiniteSet::empty(nuca.dim()),
            e,
            em,
            kernel_dim: 0,
            rank: 0,
            injective: false,
        });
    }

    budget.check_time("extracting the pre-injectivity locus")?;
    tiles
        .par_iter_mut()
        .filter(|t| t.status == TileStatus::Used)
        .try_for_each(|t| -> Result<()> {
            budget.check_time("extracting the pre-injectivity locus")?;
            let m = restricted_matrix(nuca, &t.e, &t.em)?;
            let null = m.null_space(field);
            let mut basis = null.clone();
            let pivots = basis.rref(field);
            let mut cells: Vec<Cell> = pivots.iter().map(|&c| t.em.cells()[c / k]).collect();
            cells.dedup();
            t.pinned = FiniteSet::new(nuca.dim(), cells)?;
            t.kernel_dim = null.rows();
            t.rank = m.cols() - null.rows();
            let keep: Vec<usize> = (0..m.cols()).filter(|&c| !t.pinned.contains(&t.em.cells()[c / k])).collect();
            t.injective = m.select_columns(&keep).rank(field) == keep.len();
            Ok(())
        })?;

    for t in tiles.iter().filter(|t| t.status == TileStatus::Used) {
        for c in t.em.iter() {
            if !t.pinned.contains(c) {
                if let Some(i) = tiling.region.index_of(c) {
                    taken[i] = true;
                }
            }
        }
    }
    let set = FiniteSet::new(
        nuca.dim(),
        tiling.region.iter().zip(&taken).filter(|(_, &t)| !t).map(|(&c, _)| c),
    )?;
    let density = if tiling.region.is_empty() {
        Rational::from_integer(1)
    } else {
        Rational::new(set.len() as i128, tiling.region.len() as i128)
    };

    let mut warnings = Vec::new();
    if k > 1 {
        warnings.push(format!(
            "vector dimension k = {k} > 1: whole cells are pinned and the density bound is only established for k = 1"
        ));
    }
    let used: Vec<&TileLocus> = tiles.iter().filter(|t| t.status == TileStatus::Used).collect();
    if used.is_empty() {
        warnings.push("no tile is large enough to carry a tile map; S is the whole region".into());
    } else if used.iter().all(|t| t.rank == 0) {
        warnings.push("every tile map is zero; every cell must be pinned, so no d < 1 is achievable".into());
    }
    let skipped = tiles.iter().filter(|t| t.status != TileStatus::Used).count();
    if skipped > 0 {
        warnings.push(format!("{skipped} tile(s) skipped"));
    }
    Ok(Locus {
        region: tiling.region.clone(),
        tiles,
        set,
        density,
        target: d,
        warnings,
    })
}
