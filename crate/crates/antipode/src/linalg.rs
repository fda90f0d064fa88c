//! Exact dense linear algebra over the scalar fields.
//!
//! Everything downstream (skew-primitive spaces, conjugation matrices,
//! membership tests) reduces to reduced row echelon form over an exact field,
//! so ranks and kernels are true statements, not numerical estimates.

use crate::scalar::{FieldDescriptor, Scalar};

/// A dense row-major matrix over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldDescriptor,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: &FieldDescriptor, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn from_rows(field: &FieldDescriptor, rows: Vec<Vec<Scalar>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            assert_eq!(row.len(), n_cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix {
            field: field.clone(),
            rows: n_rows,
            cols: n_cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero(&self.field);
                for (c, entry) in v.iter().enumerate() {
                    acc = acc.add(&self.get(r, c).mul(entry));
                }
                acc
            })
            .collect()
    }

    pub fn mul_matrix(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c).add(&a.mul(other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn identity(field: &FieldDescriptor, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                let want = if r == c {
                    Scalar::one(&self.field)
                } else {
                    Scalar::zero(&self.field)
                };
                if self.get(r, c) != &want {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced row echelon form together with the pivot column indices.
    /// Deterministic: scans columns left to right, picks the first nonzero
    /// pivot row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let found = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(src) = found else { continue };
            // Swap into place.
            if src != pivot_row {
                for c in 0..m.cols {
                    let a = m.get(pivot_row, c).clone();
                    let b = m.get(src, c).clone();
                    m.set(pivot_row, c, b);
                    m.set(src, c, a);
                }
            }
            // Scale pivot row to make the pivot 1.
            let inv = m
                .get(pivot_row, col)
                .inv()
                .expect("pivot is nonzero by selection");
            for c in 0..m.cols {
                let v = m.get(pivot_row, c).mul(&inv);
                m.set(pivot_row, c, v);
            }
            // Eliminate the column everywhere else.
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in 0..m.cols {
                    let v = m.get(r, c).sub(&factor.mul(m.get(pivot_row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of {x : Ax = 0}, one vector per free column, each with a 1 in
    /// its free coordinate. Deterministic and canonical given the column
    /// order.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let zero = Scalar::zero(&self.field);
        let one = Scalar::one(&self.field);
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![zero.clone(); self.cols];
            v[free] = one.clone();
            for (i, &p) in pivots.iter().enumerate() {
                // Row i reads x_p + Σ r[i,c]·x_c = 0 over free columns c.
                v[p] = r.get(i, free).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of Ax = b, or `None` if the system is inconsistent.
    /// Free variables are set to zero, so the answer is deterministic.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zero(&self.field, self.rows, self.cols + 1);
        for (r, rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs.clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(&self.field); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qs(field: &FieldDescriptor, vals: &[i64]) -> Vec<Scalar> {
        vals.iter()
            .map(|&v| Scalar::from_integer(field, v))
            .collect()
    }

    #[test]
    fn rref_known_system() {
        let f = FieldDescriptor::rationals();
        let m = Matrix::from_rows(
            &f,
            vec![qs(&f, &[1, 2, 3]), qs(&f, &[2, 4, 6]), qs(&f, &[1, 0, 1])],
        );
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
        // Echelon shape: pivot entries are 1 and alone in their column.
        for (i, &p) in pivots.iter().enumerate() {
            assert!(r.get(i, p).is_one());
            for row in 0..m.rows() {
                if row != i {
                    assert!(r.get(row, p).is_zero());
                }
            }
        }
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f = FieldDescriptor::prime_field(5).unwrap();
        let m = Matrix::from_rows(&f, vec![qs(&f, &[1, 2, 3, 4]), qs(&f, &[2, 4, 1, 3])]);
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len() + m.rank(), m.cols());
        for v in &kernel {
            for entry in m.apply(v) {
                assert!(entry.is_zero());
            }
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = FieldDescriptor::rationals();
        let m = Matrix::from_rows(&f, vec![qs(&f, &[1, 1]), qs(&f, &[1, -1])]);
        let x = m.solve(&qs(&f, &[3, 1])).unwrap();
        assert_eq!(x, qs(&f, &[2, 1]));
        let singular = Matrix::from_rows(&f, vec![qs(&f, &[1, 1]), qs(&f, &[2, 2])]);
        assert!(singular.solve(&qs(&f, &[1, 3])).is_none());
        assert!(singular.solve(&qs(&f, &[1, 2])).is_some());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Rank–nullity plus exactness of the kernel on random F_7 matrices.
        #[test]
        fn rank_nullity_and_kernel_exactness(
            entries in proptest::collection::vec(0i64..7, 12),
        ) {
            let f = FieldDescriptor::prime_field(7).unwrap();
            let rows: Vec<Vec<Scalar>> = entries
                .chunks(4)
                .map(|ch| ch.iter().map(|&v| Scalar::from_integer(&f, v)).collect())
                .collect();
            let m = Matrix::from_rows(&f, rows);
            let kernel = m.kernel_basis();
            prop_assert_eq!(m.rank() + kernel.len(), m.cols());
            for v in &kernel {
                for entry in m.apply(v) {
                    prop_assert!(entry.is_zero());
                }
            }
            // Any solution returned for a random right-hand side checks out.
            let b: Vec<Scalar> = (0..m.rows())
                .map(|i| Scalar::from_integer(&f, entries[i] % 7))
                .collect();
            if let Some(x) = m.solve(&b) {
                prop_assert_eq!(m.apply(&x), b);
            }
        }

        /// RREF is a projection: applying it twice changes nothing.
        #[test]
        fn rref_idempotent(entries in proptest::collection::vec(-5i64..5, 12)) {
            let f = FieldDescriptor::rationals();
            let rows: Vec<Vec<Scalar>> = entries
                .chunks(3)
                .map(|ch| ch.iter().map(|&v| Scalar::from_integer(&f, v)).collect())
                .collect();
            let m = Matrix::from_rows(&f, rows);
            let (r1, p1) = m.rref();
            let (r2, p2) = r1.rref();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(p1, p2);
        }
    }
}
