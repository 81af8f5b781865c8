//! Dense exact linear algebra over a [`Field`].
//!
//! Every echelon form produced here is the unique reduced row-echelon form,
//! so two row-equivalent matrices always produce identical output.

pub mod modp;
mod multimodular;
mod subspace;

pub use multimodular::{rank_sparse, rref_multimodular};
pub use subspace::GradedSubspace;

use crate::field::Field;

/// Rational matrices at most this large (rows times columns) are reduced by
/// direct fraction arithmetic; larger ones go through modular images.
pub const DIRECT_RATIONAL_LIMIT: usize = 120;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn zeros<K: Field<Elem = E>>(field: &K, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<K: Field<Elem = E>>(field: &K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Builds a matrix from rows of length `cols`.
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Matrix {
            rows: n,
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

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [E] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[E]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        self.row_iter().map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul<K: Field<Elem = E>>(&self, field: &K, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows, "incompatible shapes");
        let mut out = Matrix::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if field.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !field.is_zero(b) {
                        let t = field.mul(a, b);
                        out[(i, j)] = field.add(&out[(i, j)], &t);
                    }
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn apply<K: Field<Elem = E>>(&self, field: &K, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        self.row_iter().map(|r| dot(field, r, v)).collect()
    }

    pub fn is_zero<K: Field<Elem = E>>(&self, field: &K) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn map<F, T: Clone>(&self, f: F) -> Matrix<T>
    where
        F: Fn(&E) -> T,
    {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<E> std::ops::Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> std::ops::IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<K: Field>(field: &K, a: &[K::Elem], b: &[K::Elem]) -> K::Elem {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !field.is_zero(x) && !field.is_zero(y) {
            acc = field.add(&acc, &field.mul(x, y));
        }
    }
    acc
}

/// A reduced row-echelon basis: `basis` has one row per pivot, each row has
/// a 1 in its pivot column and every other row has 0 there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon<E> {
    basis: Matrix<E>,
    pivots: Vec<usize>,
}

impl<E: Clone> Echelon<E> {
    pub(crate) fn from_parts(basis: Matrix<E>, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(basis.rows(), pivots.len());
        Echelon { basis, pivots }
    }

    pub fn basis(&self) -> &Matrix<E> {
        &self.basis
    }

    pub fn into_basis(self) -> Matrix<E> {
        self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.basis.cols()
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Subtracts the basis multiples that clear every pivot coordinate of
    /// `v`. The result is zero iff `v` lies in the row space.
    pub fn reduce<K: Field<Elem = E>>(&self, field: &K, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols());
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if field.is_zero(&c) {
                continue;
            }
            for (j, b) in self.basis.row(r).iter().enumerate() {
                if !field.is_zero(b) {
                    out[j] = field.sub(&out[j], &field.mul(&c, b));
                }
            }
        }
        out
    }
}

/// Gauss-Jordan elimination, pivoting on the first nonzero entry of each
/// column in turn. Every intermediate value is an exact field element.
pub fn rref_direct<K: Field>(field: &K, m: &Matrix<K::Elem>) -> Echelon<K::Elem> {
    let mut rows: Vec<Vec<K::Elem>> = m
        .row_iter()
        .filter(|r| r.iter().any(|x| !field.is_zero(x)))
        .map(|r| r.to_vec())
        .collect();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(next, found);
        let inv = field.inv(&rows[next][c]).expect("pivot is nonzero");
        for x in rows[next].iter_mut().skip(c) {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !field.is_zero(&pivot_row[j]) {
                    row[j] = field.sub(&row[j], &field.mul(&factor, &pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        next += 1;
    }
    rows.truncate(next);
    Echelon::from_parts(Matrix::from_rows(rows, cols), pivots)
}

/// Right null space `{ v : m v = 0 }`, returned as a canonical row basis.
pub fn kernel<K: Field>(field: &K, m: &Matrix<K::Elem>) -> Matrix<K::Elem> {
    let ech = field.rref(m);
    kernel_from_echelon(field, &ech)
}

pub fn kernel_from_echelon<K: Field>(field: &K, ech: &Echelon<K::Elem>) -> Matrix<K::Elem> {
    let cols = ech.cols();
    let free = ech.free_columns();
    let mut out = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![field.zero(); cols];
        v[f] = field.one();
        for (r, &p) in ech.pivots().iter().enumerate() {
            let b = &ech.basis()[(r, f)];
            if !field.is_zero(b) {
                v[p] = field.neg(b);
            }
        }
        out.push(v);
    }
    // The vectors are independent but not yet reduced against each other.
    field.rref(&Matrix::from_rows(out, cols)).into_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    #[test]
    fn identity_is_its_own_rref() {
        let id = Matrix::identity(&Rationals, 3);
        let e = Rationals.rref(&id);
        assert_eq!(e.basis(), &id);
        assert_eq!(e.rank(), 3);
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let z = Matrix::zeros(&Rationals, 2, 5);
        let e = Rationals.rref(&z);
        assert_eq!(e.rank(), 0);
        assert_eq!(kernel(&Rationals, &z).rows(), 5);
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let id = Matrix::identity(&Rationals, 4);
        assert_eq!(kernel(&Rationals, &id).rows(), 0);
    }

    #[test]
    fn kernel_of_single_row() {
        let m = Matrix::from_rows(vec![vec![q(1), q(1)]], 2);
        let k = kernel(&Rationals, &m);
        assert_eq!(k, Matrix::from_rows(vec![vec![q(1), q(-1)]], 2));
    }

    #[test]
    fn rref_is_idempotent_mod_p() {
        let f = PrimeField::new(13).unwrap();
        let m = Matrix::from_rows(vec![vec![2, 4, 6], vec![1, 5, 0], vec![3, 9, 6]], 3);
        let once = f.rref(&m);
        let twice = f.rref(once.basis());
        assert_eq!(once, twice);
    }

    #[test]
    fn reduce_detects_membership() {
        let m = Matrix::from_rows(vec![vec![q(1), q(2), q(3)], vec![q(0), q(1), q(1)]], 3);
        let e = Rationals.rref(&m);
        let inside = vec![q(2), q(5), q(7)];
        assert!(e.reduce(&Rationals, &inside).iter().all(|x| x == &q(0)));
        let outside = vec![q(0), q(0), q(1)];
        assert!(e.reduce(&Rationals, &outside).iter().any(|x| x != &q(0)));
    }
}
