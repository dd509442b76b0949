//! Dense matrices of arbitrary-precision rationals with exact rank and
//! kernel computations.

use num::{One, Signed, Zero};

use super::AlgebraError;
use crate::rational::{bit_size, Rational};

/// Dense row-major matrix over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, AlgebraError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(AlgebraError::RaggedRows {
                    row: i,
                    expected: ncols,
                    got: r.len(),
                });
            }
        }
        Ok(ExactMatrix {
            rows: nrows,
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: Vec<Rational>,
    ) -> Result<Self, AlgebraError> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Integer-entry convenience constructor, mostly for tests.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&n| crate::rational::rat(n)).collect())
            .collect();
        Self::from_rows(rows).expect("literal rows are rectangular")
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        assert!(r < self.rows);
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn column_is_zero(&self, c: usize) -> bool {
        (0..self.rows).all(|r| self.get(r, c).is_zero())
    }

    /// Matrix formed by the selected columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                m.set(r, j, self.get(r, c).clone());
            }
        }
        m
    }

    #[must_use]
    pub fn permuted_rows(&self, perm: &[usize]) -> ExactMatrix {
        assert_eq!(perm.len(), self.rows);
        let rows = perm.iter().map(|&r| self.row(r).to_vec()).collect();
        ExactMatrix::from_rows(rows).expect("permutation preserves shape")
    }

    #[must_use]
    pub fn permuted_columns(&self, perm: &[usize]) -> ExactMatrix {
        assert_eq!(perm.len(), self.cols);
        self.select_columns(perm)
    }

    pub fn scale_row(&mut self, r: usize, factor: &Rational) {
        for c in 0..self.cols {
            let v = self.get(r, c) * factor;
            self.set(r, c, v);
        }
    }

    pub fn scale_column(&mut self, c: usize, factor: &Rational) {
        for r in 0..self.rows {
            let v = self.get(r, c) * factor;
            self.set(r, c, v);
        }
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut work: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut lead = 0;
        for col in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(pivot) = pick_pivot(&work, lead, col) else {
                continue;
            };
            work.swap(lead, pivot);
            eliminate_below(&mut work, lead, col);
            lead += 1;
        }
        lead
    }

    /// Reduced row echelon form; returns the reduced rows and pivot columns.
    fn rref(&self) -> (Vec<Vec<Rational>>, Vec<usize>) {
        let mut work: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(pivot) = pick_pivot(&work, lead, col) else {
                continue;
            };
            work.swap(lead, pivot);
            let inv = work[lead][col].recip();
            for c in col..self.cols {
                work[lead][c] = &work[lead][c] * &inv;
            }
            for r in 0..self.rows {
                if r != lead && !work[r][col].is_zero() {
                    let factor = work[r][col].clone();
                    for c in col..self.cols {
                        work[r][c] = &work[r][c] - &factor * &work[lead][c];
                    }
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (work, pivots)
    }

    /// Basis of the right null space; empty iff the columns are independent.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (rref, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -rref[i][f].clone();
                }
                v
            })
            .collect()
    }
}

/// Pivot choice: the nonzero entry of smallest bit size, to keep the
/// intermediate fractions small.
fn pick_pivot(work: &[Vec<Rational>], lead: usize, col: usize) -> Option<usize> {
    (lead..work.len())
        .filter(|&r| !work[r][col].is_zero())
        .min_by_key(|&r| bit_size(&work[r][col]))
}

fn eliminate_below(work: &mut [Vec<Rational>], lead: usize, col: usize) {
    let cols = work[lead].len();
    for r in lead + 1..work.len() {
        if work[r][col].is_zero() {
            continue;
        }
        let factor = &work[r][col] / &work[lead][col];
        for c in col..cols {
            work[r][c] = &work[r][c] - &factor * &work[lead][c];
        }
    }
}

/// Exact rank of `a` over the rationals.
pub fn matrix_rank(a: &ExactMatrix) -> usize {
    a.rank()
}

/// Basis of the right null space of `a`.
pub fn kernel_basis(a: &ExactMatrix) -> Vec<Vec<Rational>> {
    a.kernel_basis()
}

/// True when `v` and `w` are nonzero scalar multiples of each other.
pub fn parallel_vectors(v: &[Rational], w: &[Rational]) -> bool {
    if v.len() != w.len() {
        return false;
    }
    let Some(i) = v.iter().position(|x| !x.is_zero()) else {
        return w.iter().all(Zero::is_zero);
    };
    if w[i].is_zero() {
        return false;
    }
    let scale = &w[i] / &v[i];
    v.iter().zip(w).all(|(a, b)| &(a * &scale) == b)
}

/// True when `v` has the expected absolute values entrywise after scaling so
/// that its first nonzero entry has absolute value matching `expected`.
pub fn matches_magnitudes(v: &[Rational], expected: &[i64]) -> bool {
    if v.len() != expected.len() {
        return false;
    }
    let expected: Vec<Rational> = expected.iter().map(|&n| crate::rational::rat(n)).collect();
    let Some(i) = v.iter().position(|x| !x.is_zero()) else {
        return expected.iter().all(Zero::is_zero);
    };
    if expected[i].is_zero() {
        return false;
    }
    let scale = (&expected[i] / &v[i]).abs();
    v.iter()
        .zip(&expected)
        .all(|(a, b)| (a * &scale).abs() == b.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(ExactMatrix::identity(3).rank(), 3);
        assert_eq!(ExactMatrix::zeros(4, 5).rank(), 0);
        assert_eq!(ExactMatrix::zeros(0, 3).rank(), 0);
        assert_eq!(ExactMatrix::zeros(3, 0).rank(), 0);
    }

    #[test]
    fn rank_detects_dependent_rows() {
        let a = ExactMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let a = ExactMatrix::from_rows(vec![
            vec![crate::rational::ratio(1, 2), rat(1)],
            vec![crate::rational::ratio(1, 3), crate::rational::ratio(2, 3)],
        ])
        .unwrap();
        // second row = 2/3 of the first
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn kernel_of_independent_columns_is_empty() {
        assert!(ExactMatrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_vector_solves_system() {
        let a = ExactMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 1]]);
        let basis = a.kernel_basis();
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        for r in 0..a.num_rows() {
            let dot: Rational = (0..a.num_cols()).map(|c| a.get(r, c) * &v[c]).sum();
            assert!(dot.is_zero());
        }
        assert!(parallel_vectors(v, &[rat(1), rat(-1), rat(1)]));
    }

    #[test]
    fn parallel_and_magnitude_checks() {
        let v = vec![rat(2), rat(-2), rat(4)];
        assert!(parallel_vectors(&v, &[rat(-1), rat(1), rat(-2)]));
        assert!(!parallel_vectors(&v, &[rat(1), rat(1), rat(2)]));
        assert!(matches_magnitudes(&v, &[1, 1, 2]));
        assert!(!matches_magnitudes(&v, &[1, 2, 2]));
    }

    #[test]
    fn select_and_permute() {
        let a = ExactMatrix::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6]]);
        let sel = a.select_columns(&[2, 0]);
        assert_eq!(sel.get(0, 0), &rat(3));
        assert_eq!(sel.get(1, 1), &rat(4));
        let p = a.permuted_rows(&[1, 0]);
        assert_eq!(p.get(0, 0), &rat(4));
    }
}
