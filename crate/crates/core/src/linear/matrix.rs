//! Dense matrices over `F_p` with exact row reduction.

use rayon::prelude::*;

use super::field::Field;

/// Row-major dense matrix with entries in `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Rows at or above this count are eliminated in parallel.
const PAR_ROWS: usize = 256;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics unless every row has `cols` entries.
    pub fn from_rows(cols: usize, rows: &[Vec<u8>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// `A v`.
    pub fn mul_vec(&self, field: Field, v: &[u8]) -> Vec<u8> {
        assert_eq!(v.len(), self.cols, "vector length does not match the column count");
        (0..self.rows)
            .map(|r| {
                let s: u64 = self.row(r).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % field.order() as u64) as u8
            })
            .collect()
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    /// Reduces `self` in place to reduced row-echelon form; returns the pivot columns.
    pub fn rref(&mut self, field: Field) -> Vec<usize> {
        let p = field.order() as u32;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(found) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if found != r {
                for j in c..cols {
                    self.data.swap(found * cols + j, r * cols + j);
                }
            }
            let inv = field.inv(self.get(r, c)) as u32;
            for j in c..cols {
                let v = &mut self.data[r * cols + j];
                *v = (*v as u32 * inv % p) as u8;
            }
            let pivot_row: Vec<u8> = self.row(r)[c..].to_vec();
            let eliminate = |i: usize, row: &mut [u8]| {
                if i == r {
                    return;
                }
                let f = row[c] as u32;
                if f == 0 {
                    return;
                }
                let neg = p - f;
                for (x, &y) in row[c..].iter_mut().zip(&pivot_row) {
                    *x = ((*x as u32 + neg * y as u32) % p) as u8;
                }
            };
            if self.rows >= PAR_ROWS {
                self.data.par_chunks_mut(cols).enumerate().for_each(|(i, row)| eliminate(i, row));
            } else {
                self.data.chunks_mut(cols).enumerate().for_each(|(i, row)| eliminate(i, row));
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: Field) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.clone().rref(field).len()
    }

    /// Basis of `{v : A v = 0}` as the rows of a matrix in reduced row-echelon form.
    pub fn null_space(&self, field: Field) -> Matrix {
        let mut a = self.clone();
        let pivots = a.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut basis = Matrix::zeros(free.len(), self.cols);
        for (b, &f) in free.iter().enumerate() {
            basis.set(b, f, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                basis.set(b, pc, field.neg(a.get(i, f)));
            }
        }
        basis.rref(field);
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn banded_xor_matrix() {
        let f2 = Field::new(2).unwrap();
        let m = Matrix::from_rows(4, &[vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 1]]);
        assert_eq!(m.rank(f2), 3);
        let n = m.null_space(f2);
        assert_eq!(n.rows(), 1);
        assert_eq!(n.row(0), &[1, 1, 1, 1]);
    }

    #[test]
    fn identity_and_zero() {
        let f3 = Field::new(3).unwrap();
        assert_eq!(Matrix::identity(5).rank(f3), 5);
        assert_eq!(Matrix::zeros(4, 6).rank(f3), 0);
        assert_eq!(Matrix::zeros(4, 6).null_space(f3).rows(), 6);
    }

    proptest! {
        #[test]
        fn rank_nullity(p in prop::sample::select(vec![2u64, 3, 5, 7]), rows in 1usize..12, cols in 1usize..12, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let field = Field::new(p).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let data: Vec<Vec<u8>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(0..p as u8)).collect()).collect();
            let m = Matrix::from_rows(cols, &data);
            let n = m.null_space(field);
            prop_assert_eq!(m.rank(field) + n.rows(), cols);
            for b in 0..n.rows() {
                prop_assert!(m.mul_vec(field, n.row(b)).iter().all(|&v| v == 0));
            }
        }
    }
}
