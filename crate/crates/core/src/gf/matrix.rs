use std::fmt;

use rand::Rng;

use super::{FieldElement, FieldSpec, GfError};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct MatrixGF {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<FieldElement>,
}

/// Output of [`MatrixGF::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: MatrixGF,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

/// A solution of `A x = y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    /// One solution; free variables are set to zero.
    pub x: Vec<FieldElement>,
    /// `true` iff `rank(A) = cols`, so `x` is the only solution.
    pub unique: bool,
    /// Dimension of the solution space of the homogeneous system.
    pub nullity: usize,
}

impl MatrixGF {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixGF {
            rows,
            cols,
            field: field.clone(),
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<FieldElement>,
    ) -> Result<Self, GfError> {
        if data.len() != rows * cols {
            return Err(GfError::ShapeMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(&bad) = data.iter().find(|&&v| !field.contains(v)) {
            return Err(GfError::NotInField {
                value: bad,
                order: field.order(),
            });
        }
        Ok(MatrixGF {
            rows,
            cols,
            field: field.clone(),
            data,
        })
    }

    pub fn from_rows(
        field: &FieldSpec,
        cols: usize,
        rows: &[Vec<FieldElement>],
    ) -> Result<Self, GfError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(GfError::ShapeMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    /// Uniformly random matrix.
    pub fn random<R: Rng + ?Sized>(
        field: &FieldSpec,
        rows: usize,
        cols: usize,
        rng: &mut R,
    ) -> Self {
        let q = field.order();
        let data = (0..rows * cols).map(|_| rng.random_range(0..q)).collect();
        MatrixGF {
            rows,
            cols,
            field: field.clone(),
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn as_slice(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<FieldElement> {
        self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        debug_assert!(self.field.contains(v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Stacks `parts` vertically. All parts must share the column count and field.
    pub fn vstack<'a, I>(field: &FieldSpec, cols: usize, parts: I) -> Result<Self, GfError>
    where
        I: IntoIterator<Item = &'a MatrixGF>,
    {
        let mut data = Vec::new();
        let mut rows = 0;
        for part in parts {
            if part.cols != cols {
                return Err(GfError::ShapeMismatch {
                    expected: cols,
                    found: part.cols,
                });
            }
            if part.field != *field {
                return Err(GfError::FieldMismatch);
            }
            data.extend_from_slice(&part.data);
            rows += part.rows;
        }
        Ok(MatrixGF {
            rows,
            cols,
            field: field.clone(),
            data,
        })
    }

    pub fn sub(&self, other: &MatrixGF) -> Result<Self, GfError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(GfError::ShapeMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        if self.field != other.field {
            return Err(GfError::FieldMismatch);
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.sub(a, b))
            .collect();
        Ok(MatrixGF {
            data,
            ..self.clone()
        })
    }

    pub fn mul(&self, other: &MatrixGF) -> Result<Self, GfError> {
        if self.cols != other.rows {
            return Err(GfError::ShapeMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        if self.field != other.field {
            return Err(GfError::FieldMismatch);
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[FieldElement]) -> Result<Vec<FieldElement>, GfError> {
        if x.len() != self.cols {
            return Err(GfError::ShapeMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row echelon form. Pivots are taken column by column, using the
    /// first row (top-down) with a nonzero entry in that column.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivot_cols = m.reduce_in_place(self.cols);
        let rank = pivot_cols.len();
        Rref {
            matrix: m,
            rank,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.reduce_in_place(self.cols).len()
    }

    /// Gauss-Jordan elimination restricted to the first `ncols` columns.
    fn reduce_in_place(&mut self, ncols: usize) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]).expect("pivot is nonzero");
            if inv != 1 {
                for j in c..cols {
                    self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = f.mul(factor, self.data[r * cols + j]);
                    self.data[i * cols + j] = f.sub(self.data[i * cols + j], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Solves `self * x = y`.
    pub fn solve(&self, y: &[FieldElement]) -> Result<LinearSolution, GfError> {
        if y.len() != self.rows {
            return Err(GfError::ShapeMismatch {
                expected: self.rows,
                found: y.len(),
            });
        }
        let n = self.cols;
        let mut aug = Self::zeros(&self.field, self.rows, n + 1);
        for r in 0..self.rows {
            aug.data[r * (n + 1)..r * (n + 1) + n].copy_from_slice(self.row(r));
            aug.data[r * (n + 1) + n] = y[r];
        }
        let pivots = aug.reduce_in_place(n);
        let rank = pivots.len();
        if (rank..self.rows).any(|r| aug.get(r, n) != 0) {
            return Err(GfError::Inconsistent);
        }
        let mut x = vec![0; n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, n);
        }
        Ok(LinearSolution {
            x,
            unique: rank == n,
            nullity: n - rank,
        })
    }

    /// Keeps the first `k` rows.
    pub fn truncate_rows(&mut self, k: usize) {
        self.rows = self.rows.min(k);
        self.data.truncate(self.rows * self.cols);
    }
}

impl fmt::Debug for MatrixGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "MatrixGF {}x{} over {:?}",
            self.rows, self.cols, self.field
        )?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        for n in 0..6 {
            assert_eq!(MatrixGF::identity(&gf(3), n).rank(), n);
        }
    }

    #[test]
    fn zero_matrix_rank_zero() {
        assert_eq!(MatrixGF::zeros(&gf(2), 4, 3).rank(), 0);
    }

    #[test]
    fn dependent_rows_over_gf2() {
        let f = gf(2);
        let m = MatrixGF::from_rows(&f, 3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
        assert_eq!(r.matrix.row(0), &[1, 0, 1]);
        assert_eq!(r.matrix.row(1), &[0, 1, 1]);
        assert_eq!(r.matrix.row(2), &[0, 0, 0]);
    }

    #[test]
    fn solve_identity() {
        let f = gf(5);
        let y = vec![4, 0, 2];
        let s = MatrixGF::identity(&f, 3).solve(&y).unwrap();
        assert_eq!(s.x, y);
        assert!(s.unique);
    }

    #[test]
    fn solve_zero_inconsistent() {
        let f = gf(2);
        let a = MatrixGF::zeros(&f, 2, 2);
        assert_eq!(a.solve(&[1, 0]), Err(GfError::Inconsistent));
        let s = a.solve(&[0, 0]).unwrap();
        assert!(!s.unique);
        assert_eq!(s.nullity, 2);
    }

    #[test]
    fn solve_round_trip_tall_system() {
        let f = gf(4);
        let a = MatrixGF::from_rows(
            &f,
            3,
            &[vec![1, 2, 3], vec![0, 1, 1], vec![2, 0, 1], vec![3, 3, 0]],
        )
        .unwrap();
        assert_eq!(a.rank(), 3);
        let x = vec![3, 1, 2];
        let y = a.mul_vec(&x).unwrap();
        let s = a.solve(&y).unwrap();
        assert!(s.unique);
        assert_eq!(s.x, x);
    }

    #[test]
    fn from_vec_validates() {
        let f = gf(3);
        assert!(MatrixGF::from_vec(&f, 2, 2, vec![0, 1, 2]).is_err());
        assert!(MatrixGF::from_vec(&f, 1, 2, vec![0, 3]).is_err());
    }
}
