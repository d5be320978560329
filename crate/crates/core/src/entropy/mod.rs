//! Pattern-count entropy profiles along box Følner sequences and the
//! counting certificate for pre-injective restrictions.

use std::fmt;

use rayon::prelude::*;

use crate::budget::{saturating_pow, Budget};
use crate::density::count_in_box;
use crate::engine::{context_cells, image_window, Cylinder, PreinjWitness, RuleAssignment, WindowPlan};
use crate::enumerate::par_chunks;
use crate::error::{Error, Result};
use crate::lattice::{check_dim, BoxFolner, Cell, Dim, FiniteSet, KeyCodec, Pattern, Symbol};
use crate::Rational;

/// Anything whose patterns on a window can be counted exactly.
pub trait PatternCounter: Sync {
    fn dim(&self) -> Dim;
    fn alphabet(&self) -> u8;
    /// `|X_F|`.
    fn count(&self, window: &FiniteSet, budget: &Budget) -> Result<u128>;
    /// Short description for reports.
    fn label(&self) -> String;
}

/// The full shift `A^G`.
#[derive(Clone, Copy, Debug)]
pub struct FullShift {
    pub dim: Dim,
    pub alphabet: u8,
}

impl PatternCounter for FullShift {
    fn dim(&self) -> Dim {
        self.dim
    }

    fn alphabet(&self) -> u8 {
        self.alphabet
    }

    fn count(&self, window: &FiniteSet, _budget: &Budget) -> Result<u128> {
        let n = saturating_pow(self.alphabet as u128, window.len());
        if n == u128::MAX {
            return Err(Error::budget("counting full-shift patterns", "overflow", "2^128"));
        }
        Ok(n)
    }

    fn label(&self) -> String {
        format!("full shift over {} symbols", self.alphabet)
    }
}

/// `im τ|_U` counted through exact image windows.
#[derive(Clone, Debug)]
pub struct ImageCounter<'a> {
    pub nuca: &'a RuleAssignment,
    pub cylinder: Option<&'a Cylinder>,
}

impl PatternCounter for ImageCounter<'_> {
    fn dim(&self) -> Dim {
        self.nuca.dim()
    }

    fn alphabet(&self) -> u8 {
        self.nuca.alphabet()
    }

    fn count(&self, window: &FiniteSet, budget: &Budget) -> Result<u128> {
        Ok(image_window(self.nuca, window, self.cylinder, budget)?.len() as u128)
    }

    fn label(&self) -> String {
        match self.cylinder {
            Some(_) => "image of the restriction to a cylinder".into(),
            None => "image".into(),
        }
    }
}

/// One window of an entropy profile.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyWindow {
    pub n: usize,
    pub radius: i64,
    pub size: usize,
    /// Exact pattern count.
    pub count: u128,
    /// `ln(count) / size`.
    pub value: f64,
    /// `value / ln |A|`.
    pub normalized: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    pub source: String,
    pub alphabet: u8,
    pub window_values: Vec<EntropyWindow>,
    /// Set when the budget stopped the sequence early.
    pub truncated: Option<String>,
}

/// `ln(count) / size`, with `0` for an empty window.
pub fn log_ratio(count: u128, size: usize) -> f64 {
    if size == 0 || count == 0 {
        0.0
    } else {
        (count as f64).ln() / size as f64
    }
}

fn normalize(value: f64, alphabet: u8) -> f64 {
    if alphabet <= 1 {
        0.0
    } else {
        value / (alphabet as f64).ln()
    }
}

/// Exact counts along `folner`; a budget failure truncates the prefix.
pub fn entropy_sequence(
    source: &dyn PatternCounter,
    folner: &BoxFolner,
    n_max: usize,
    budget: &Budget,
) -> Result<EntropyReport> {
    check_dim(source.dim(), folner.dim())?;
    let mut rows = Vec::new();
    let mut truncated = None;
    for n in 1..=n_max {
        let radius = folner.radius(n)?;
        let window = FiniteSet::centered_box(source.dim(), radius);
        match source.count(&window, budget) {
            Ok(count) => {
                let value = log_ratio(count, window.len());
                rows.push(EntropyWindow {
                    n,
                    radius,
                    size: window.len(),
                    count,
                    value,
                    normalized: normalize(value, source.alphabet()),
                });
            }
            Err(e) if e.is_budget() => {
                truncated = Some(format!("stopped at n={n}: {e}"));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(EntropyReport {
        source: source.label(),
        alphabet: source.alphabet(),
        window_values: rows,
        truncated,
    })
}

/// Per-thread state: image keys with family index, input and output buffers, count.
type ChunkState = (Vec<(u128, u64)>, Vec<Symbol>, Vec<Symbol>, u64);

/// Outcome of the counting certificate on one window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateB {
    /// `F \ S`.
    pub free: FiniteSet,
    /// Cells where images can differ: `(F \ S) - M`.
    pub compared: FiniteSet,
    /// `|Z| = |A|^{|F \ S|}`.
    pub family_size: u128,
    /// `|τ(Z)|`.
    pub image_size: u128,
    /// First collision in enumeration order when the certificate fails.
    pub witness: Option<PreinjWitness>,
}

impl CertificateB {
    pub fn passed(&self) -> bool {
        self.image_size == self.family_size
    }
}

impl fmt::Display for CertificateB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: |tau(Z)| = {} of |Z| = {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.image_size,
            self.family_size
        )
    }
}

/// Enumerates `Z = {p} × A^{F \ S} × {filler}^{elsewhere}` and counts
/// distinct images. PASS iff `τ` is injective on `Z`.
pub fn theorem_b_window_certificate(
    nuca: &RuleAssignment,
    cylinder: &Cylinder,
    window: &FiniteSet,
    filler: Symbol,
    budget: &Budget,
) -> Result<CertificateB> {
    check_dim(nuca.dim(), cylinder.dim())?;
    check_dim(nuca.dim(), window.dim())?;
    let q = nuca.alphabet();
    if filler >= q {
        return Err(Error::Invalid(format!("filler {filler} is outside the alphabet")));
    }
    cylinder.check_alphabet(q)?;
    let free = window.filter(|c| !cylinder.is_pinned(*c));
    budget.check_window("enumerating the certificate family", free.len())?;
    let m = nuca.memory();
    let compared = free.minkowski(&m.negate())?;
    let plan = WindowPlan::new(nuca, &compared)?;
    let input = plan.input();
    let mut base = vec![0 as Symbol; input.len()];
    let mut free_pos = Vec::with_capacity(free.len());
    for (i, &c) in input.iter().enumerate() {
        if free.contains(&c) {
            free_pos.push(i);
        } else {
            base[i] = cylinder.pinned(c).unwrap_or(filler);
        }
    }
    let codec = KeyCodec::new(q, compared.len())?;
    let parts = par_chunks(
        budget,
        "enumerating the certificate family",
        q,
        free.len(),
        || (Vec::new(), base.clone(), vec![0; compared.len()], 0u64),
        |(keys, x, out, _): &mut ChunkState, digits| {
            for (&i, &d) in free_pos.iter().zip(digits) {
                x[i] = d;
            }
            plan.eval(x, out);
            let idx = digits.iter().fold(0u64, |a, &d| a * q as u64 + d as u64);
            keys.push((codec.encode(out), idx));
        },
    )?;
    let mut all: Vec<(u128, u64)> = parts.into_iter().flat_map(|p| p.0).collect();
    let family_size = all.len() as u128;
    all.par_sort_unstable();
    let mut image_size: u128 = 0;
    let mut first: Option<(u64, u64)> = None;
    for group in all.chunk_by(|a, b| a.0 == b.0) {
        image_size += 1;
        if group.len() > 1 && first.is_none_or(|(z1, _)| group[1].1 < z1) {
            first = Some((group[1].1, group[0].1));
        }
    }
    let witness = match first {
        None => None,
        Some((z1, z2)) => {
            let decode = |idx: u64| crate::enumerate::Odometer::at(q, free.len(), idx).digits().to_vec();
            let (v1, v2) = (decode(z1), decode(z2));
            let diff: Vec<Cell> = free
                .iter()
                .zip(v1.iter().zip(&v2))
                .filter(|(_, (a, b))| a != b)
                .map(|(c, _)| *c)
                .collect();
            let support = FiniteSet::new(nuca.dim(), diff)?;
            let pick = |v: &[Symbol]| Pattern::from_fn(support.clone(), |c| v[free.index_of(&c).expect("E ⊆ F \\ S")]);
            let ctx = context_cells(&support, m)?;
            let context = Pattern::from_fn(ctx, |c| match free.index_of(&c) {
                Some(i) => v1[i],
                None => cylinder.pinned(c).unwrap_or(filler),
            });
            Some(PreinjWitness {
                q1: pick(&v1),
                q2: pick(&v2),
                support,
                context,
                filler,
            })
        }
    };
    Ok(CertificateB {
        free,
        compared,
        family_size,
        image_size,
        witness,
    })
}

/// One row of [`theorem_b_bound_compare`].
#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub n: usize,
    pub radius: i64,
    pub size: usize,
    /// `|S ∩ F_n|`.
    pub pinned: u64,
    /// `|Γ_{F_n}(U)|`, exact.
    pub count: u128,
    /// `ln(count) / |F_n|`.
    pub entropy: f64,
    /// `1 - |S ∩ F_n| / |F_n|`.
    pub free_fraction: Rational,
    /// `free_fraction · ln |A|`.
    pub bound: f64,
    /// `count >= |A|^{|F_n| - |S ∩ F_n|}`, decided on integers.
    pub meets_bound: bool,
    /// Counting certificate on `F_n`.
    pub certificate: Option<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundComparison {
    pub rows: Vec<BoundRow>,
    pub truncated: Option<String>,
}

/// Side-by-side restricted-image entropy and `(1 - |S∩F_n|/|F_n|) ln |A|`
/// per window, with the counting certificate's verdict.
pub fn theorem_b_bound_compare(
    nuca: &RuleAssignment,
    cylinder: &Cylinder,
    folner: &BoxFolner,
    n_max: usize,
    filler: Symbol,
    budget: &Budget,
) -> Result<BoundComparison> {
    check_dim(nuca.dim(), folner.dim())?;
    let q = nuca.alphabet();
    let mut rows = Vec::new();
    let mut truncated = None;
    for n in 1..=n_max {
        let radius = folner.radius(n)?;
        let window = FiniteSet::centered_box(nuca.dim(), radius);
        let step = || -> Result<BoundRow> {
            let count = image_window(nuca, &window, Some(cylinder), budget)?.len() as u128;
            let pinned = count_in_box(cylinder.set(), Cell::origin(nuca.dim()), radius);
            let size = window.len();
            let free_fraction = Rational::new(size as i128 - pinned as i128, size as i128);
            let target = saturating_pow(q as u128, size - pinned as usize);
            let certificate = match theorem_b_window_certificate(nuca, cylinder, &window, filler, budget) {
                Ok(c) => Some(c.passed()),
                Err(e) if e.is_budget() => None,
                Err(e) => return Err(e),
            };
            Ok(BoundRow {
                n,
                radius,
                size,
                pinned,
                count,
                entropy: log_ratio(count, size),
                free_fraction,
                bound: (size - pinned as usize) as f64 / size as f64 * (q as f64).ln(),
                meets_bound: count >= target,
                certificate,
            })
        };
        match step() {
            Ok(r) => rows.push(r),
            Err(e) if e.is_budget() => {
                truncated = Some(format!("stopped at n={n}: {e}"));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(BoundComparison { rows, truncated })
}

/// Min and max of `ln |Γ_{g+F}| / |F|` over translates `g ∈ [-R,R]^d` of
/// `F = [-k,k]^d`; a sampled estimate of the Banach mean entropies at scale `k`.
pub fn banach_entropy_estimate(
    source: &ImageCounter<'_>,
    k: i64,
    translate_radius: i64,
    budget: &Budget,
) -> Result<(f64, f64)> {
    let dim = source.dim();
    let base = FiniteSet::centered_box(dim, k);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &g in FiniteSet::centered_box(dim, translate_radius).iter() {
        let v = log_ratio(source.count(&base.translate(g)?, budget)?, base.len());
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok((lo, hi))
}
