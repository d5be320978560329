//! Window matrices and rank profiles.

use crate::budget::Budget;
use crate::error::Result;
use crate::lattice::{BoxFolner, FiniteSet};
use crate::Rational;

use super::matrix::Matrix;
use super::rule::LinearAssignment;

/// Matrix of `A^{F+M} → A^F`; row `i·k + a` is component `a` of output cell
/// `i`, column `j·k + b` is component `b` of input cell `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowMatrix {
    pub output: FiniteSet,
    pub input: FiniteSet,
    pub k: usize,
    pub matrix: Matrix,
}

impl WindowMatrix {
    pub fn rank(&self, nuca: &LinearAssignment) -> usize {
        self.matrix.rank(nuca.field())
    }

    pub fn apply(&self, nuca: &LinearAssignment, x: &[u8]) -> Vec<u8> {
        self.matrix.mul_vec(nuca.field(), x)
    }
}

/// Exact matrix of the restriction of the NUCA to the window `F`.
pub fn window_matrix(nuca: &LinearAssignment, window: &FiniteSet) -> Result<WindowMatrix> {
    crate::lattice::check_dim(nuca.dim(), window.dim())?;
    let input = window.minkowski(nuca.memory())?;
    let matrix = restricted_matrix(nuca, window, &input)?;
    Ok(WindowMatrix {
        output: window.clone(),
        input,
        k: nuca.k(),
        matrix,
    })
}

/// Outputs on `output` as a map from inputs on `columns`, other inputs zero.
pub(crate) fn restricted_matrix(nuca: &LinearAssignment, output: &FiniteSet, columns: &FiniteSet) -> Result<Matrix> {
    let k = nuca.k();
    let mut m = Matrix::zeros(output.len() * k, columns.len() * k);
    for (i, &g) in output.iter().enumerate() {
        let rule = nuca.rule_at(g);
        for (off, b) in nuca.memory().iter().zip(rule.coeffs()) {
            let Some(j) = columns.index_of(&(g + *off)) else { continue };
            for a in 0..k {
                for c in 0..k {
                    m.set(i * k + a, j * k + c, b.get(a, c));
                }
            }
        }
    }
    Ok(m)
}

/// One row of [`mdim_sequence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdimRow {
    pub n: usize,
    pub radius: i64,
    pub size: usize,
    pub rank: usize,
    pub nullity: usize,
    /// `rank / (|F_n| k)`.
    pub ratio: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdimReport {
    pub rows: Vec<MdimRow>,
    /// Set when a budget stopped the sequence early.
    pub truncated: Option<String>,
}

/// `dim τ(A^G)|_{F_n} / (|F_n| k)` for `n = 1..=n_max`.
pub fn mdim_sequence(nuca: &LinearAssignment, folner: &BoxFolner, n_max: usize, budget: &Budget) -> Result<MdimReport> {
    crate::lattice::check_dim(nuca.dim(), folner.dim())?;
    let mut rows = Vec::new();
    let mut truncated = None;
    for n in 1..=n_max {
        let window = folner.window(n)?;
        let step = || -> Result<MdimRow> {
            budget.check_time("computing window ranks")?;
            budget.check_window("computing window ranks", window.len())?;
            let input_len = window.minkowski(nuca.memory())?.len();
            let entries = (window.len() * nuca.k()) as u128 * (input_len * nuca.k()) as u128;
            budget.check_patterns("allocating a window matrix", entries)?;
            let wm = window_matrix(nuca, &window)?;
            let rank = wm.rank(nuca);
            let size = window.len();
            Ok(MdimRow {
                n,
                radius: folner.radius(n)?,
                size,
                rank,
                nullity: wm.matrix.cols() - rank,
                ratio: Rational::new(rank as i128, (size * nuca.k()) as i128),
            })
        };
        match step() {
            Ok(row) => rows.push(row),
            Err(e) if e.is_budget() => {
                truncated = Some(e.to_string());
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(MdimReport { rows, truncated })
}
