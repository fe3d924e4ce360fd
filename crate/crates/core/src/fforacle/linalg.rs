//! Row vectors, matrices, and canonical reduced-row-echelon subspace bases
//! over an ambient finite field. The echelon form is fully reduced and
//! pivot-sorted, so equality of subspaces is equality of representations.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::field::{AmbientField, El};

/// Dense row-major matrix. Vectors act as rows: (v M)[k] = sum_i v[i] M[i][k].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<El>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &AmbientField, n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> El {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: El) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[El] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// v M for a row vector v.
    pub fn apply(&self, field: &AmbientField, v: &[El]) -> Vec<El> {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![0 as El; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0 {
                continue;
            }
            let row = self.row(i);
            for (o, &m) in out.iter_mut().zip(row.iter()) {
                if m != 0 {
                    *o = field.add(*o, field.mul(vi, m));
                }
            }
        }
        out
    }

    pub fn matmul(&self, field: &AmbientField, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            let v = self.apply_row_of(field, i, other);
            for (j, &x) in v.iter().enumerate() {
                out.set(i, j, x);
            }
        }
        out
    }

    fn apply_row_of(&self, field: &AmbientField, i: usize, other: &Matrix) -> Vec<El> {
        other.apply(field, self.row(i))
    }
}

/// Canonical subspace basis in reduced row-echelon form: rows sorted by
/// pivot column, every pivot is 1 and is the only nonzero entry in its
/// column.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceBasis {
    cols: usize,
    rows: Vec<Vec<El>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn new(cols: usize) -> SubspaceBasis {
        SubspaceBasis { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<El>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of v after elimination against the basis.
    pub fn reduce(&self, field: &AmbientField, v: &[El]) -> Vec<El> {
        let mut v = v.to_vec();
        for (row, &piv) in self.rows.iter().zip(self.pivots.iter()) {
            let c = v[piv];
            if c != 0 {
                for (vi, &ri) in v.iter_mut().zip(row.iter()) {
                    if ri != 0 {
                        *vi = field.sub(*vi, field.mul(c, ri));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, field: &AmbientField, v: &[El]) -> bool {
        self.reduce(field, v).iter().all(|&c| c == 0)
    }

    pub fn contains_basis(&self, field: &AmbientField, other: &SubspaceBasis) -> bool {
        other.rows.iter().all(|row| self.contains(field, row))
    }

    /// Insert v, maintaining canonical RREF. Returns true when the
    /// dimension grew.
    pub fn insert(&mut self, field: &AmbientField, v: &[El]) -> bool {
        let mut v = self.reduce(field, v);
        let Some(piv) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = field.inv(v[piv]);
        for c in v.iter_mut() {
            if *c != 0 {
                *c = field.mul(*c, inv);
            }
        }
        // eliminate the new pivot from existing rows
        for row in self.rows.iter_mut() {
            let c = row[piv];
            if c != 0 {
                for (ri, &vi) in row.iter_mut().zip(v.iter()) {
                    if vi != 0 {
                        *ri = field.sub(*ri, field.mul(c, vi));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, v);
        true
    }

    /// When every row is a single unit coordinate, the set of pivot
    /// coordinates; None otherwise. Coordinate-split subspaces (the ones
    /// the weight-vector lemma guarantees) always pass this.
    pub fn coordinate_support(&self) -> Option<BTreeSet<usize>> {
        let mut out = BTreeSet::new();
        for (row, &piv) in self.rows.iter().zip(self.pivots.iter()) {
            let nonzero = row.iter().filter(|&&c| c != 0).count();
            if nonzero != 1 {
                return None;
            }
            out.insert(piv);
        }
        Some(out)
    }
}

/// Unit coordinate vector.
pub fn unit_vector(dim: usize, field: &AmbientField, idx: usize) -> Vec<El> {
    let mut v = vec![0 as El; dim];
    v[idx] = field.one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_is_canonical() {
        let field = AmbientField::new(3, 2).unwrap();
        let g = field.multiplicative_generator();
        // two spanning sets of the same plane in F_9^3
        let a1 = vec![field.one(), g, field.zero()];
        let a2 = vec![field.zero(), field.one(), g];
        let mut basis1 = SubspaceBasis::new(3);
        basis1.insert(&field, &a1);
        basis1.insert(&field, &a2);
        let mut sum = vec![0; 3];
        for i in 0..3 {
            sum[i] = field.add(field.mul(g, a1[i]), a2[i]);
        }
        let mut basis2 = SubspaceBasis::new(3);
        basis2.insert(&field, &sum);
        basis2.insert(&field, &a1);
        assert_eq!(basis1, basis2);
        assert_eq!(basis1.dim(), 2);
        assert!(basis1.contains(&field, &sum));
    }

    #[test]
    fn insert_rejects_dependent_vectors() {
        let field = AmbientField::new(2, 4).unwrap();
        let mut basis = SubspaceBasis::new(2);
        assert!(basis.insert(&field, &[field.one(), field.one()]));
        assert!(!basis.insert(&field, &[field.one(), field.one()]));
        assert!(basis.insert(&field, &[field.zero(), field.one()]));
        assert!(!basis.insert(&field, &[field.one(), field.zero()]));
        assert_eq!(basis.dim(), 2);
    }

    #[test]
    fn coordinate_support_detection() {
        let field = AmbientField::new(2, 2).unwrap();
        let mut split = SubspaceBasis::new(3);
        split.insert(&field, &unit_vector(3, &field, 0));
        split.insert(&field, &unit_vector(3, &field, 2));
        assert_eq!(
            split.coordinate_support(),
            Some(BTreeSet::from([0usize, 2]))
        );
        let mut skew = SubspaceBasis::new(3);
        skew.insert(&field, &[field.one(), field.one(), field.zero()]);
        assert_eq!(skew.coordinate_support(), None);
    }

    #[test]
    fn matrix_row_action() {
        let field = AmbientField::new(5, 1).unwrap();
        let two = field.from_scalar(2);
        let three = field.from_scalar(3);
        let mut m = Matrix::zero(2, 2);
        m.set(0, 0, two);
        m.set(0, 1, field.one());
        m.set(1, 1, three);
        let v = vec![field.one(), field.one()];
        let image = m.apply(&field, &v);
        assert_eq!(image, vec![two, field.from_scalar(4)]);
        let id = Matrix::identity(&field, 2);
        assert_eq!(m.matmul(&field, &id), m);
    }
}
