//! dense matrices, echelon forms, super block matrices.

use std::fmt;

use crate::error::LinalgError;
use crate::linalg::scalar::{sign, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.data[r * self.cols..(r + 1) * self.cols].iter().map(|x| format!("{x:?}")).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    pub reduced: Matrix<S>,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from integer entries.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let v = rows.iter().map(|r| r.iter().map(|&x| S::from_i64(x)).collect()).collect();
        Self::from_rows(v).expect("ragged literal")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, cols: &[Vec<S>]) -> Self {
        Self::from_fn(nrows, cols.len(), |r, c| cols[c][r].clone())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_at(&mut self, r: usize, c: usize, v: S) {
        let i = r * self.cols + c;
        self.data[i] += v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, o: &Self) -> Result<Self, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, a.clone() * b.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>, LinalgError> {
        if self.cols != v.len() {
            return Err(LinalgError::Shape(format!("{}x{} * vec {}", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = S::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, o: &Self) -> Result<Self, LinalgError> {
        self.same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, LinalgError> {
        self.same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        })
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * s.clone()).collect() }
    }

    pub fn pow(&self, e: u64) -> Result<Self, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::Shape("power of non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut m = Self::zeros(self.rows + o.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..o.rows {
            for c in 0..o.cols {
                m.set(self.rows + r, self.cols + c, o.get(r, c).clone());
            }
        }
        m
    }

    pub fn kronecker(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |r, c| {
            self.get(r / o.rows, c / o.cols).clone() * o.get(r % o.rows, c % o.cols).clone()
        })
    }

    /// Stack rows of `o` below `self`.
    pub fn vstack(&self, o: &Self) -> Result<Self, LinalgError> {
        if self.cols != o.cols && self.rows > 0 && o.rows > 0 {
            return Err(LinalgError::Shape("vstack column mismatch".into()));
        }
        let cols = if self.rows > 0 { self.cols } else { o.cols };
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(Matrix { rows: self.rows + o.rows, cols, data })
    }

    fn same_shape(&self, o: &Self) -> Result<(), LinalgError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(LinalgError::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    /// Reduced row echelon form by Gauss-Jordan elimination.
    pub fn rref(&self) -> Echelon<S> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m.get(row, col).inv().unwrap();
            for c in col..m.cols {
                let v = m.get(row, c).clone() * inv.clone();
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(row, c).clone();
                    if !v.is_zero() {
                        m.add_at(r, c, -(f.clone() * v));
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Row rank via forward elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m.get(row, col).inv().unwrap();
            for r in row + 1..m.rows {
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                let f = f * inv.clone();
                for c in col..m.cols {
                    let v = m.get(row, c).clone();
                    if !v.is_zero() {
                        m.add_at(r, c, -(f.clone() * v));
                    }
                }
            }
            row += 1;
        }
        row
    }

    /// Null space basis: one vector per free column of the reduced form,
    /// scaled so its first nonzero entry is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<S>> {
        let Echelon { reduced, pivots } = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -reduced.get(r, free).clone();
            }
            normalize_leading(&mut v);
            out.push(v);
        }
        out
    }

    /// Canonical solution of `self * x = rhs` (free variables zero), or `None`.
    pub fn solve(&self, rhs: &[S]) -> Result<Option<Vec<S>>, LinalgError> {
        if rhs.len() != self.rows {
            return Err(LinalgError::Shape(format!("rhs length {} vs {} rows", rhs.len(), self.rows)));
        }
        let aug = Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs[r].clone()
            }
        });
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = reduced.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Two-sided inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                S::one()
            } else {
                S::zero()
            }
        });
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| reduced.get(r, n + c).clone()))
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, o: &Self) -> Result<Self, LinalgError> {
        if self.rows != o.rows {
            return Err(LinalgError::Shape(format!("{} vs {} rows", self.rows, o.rows)));
        }
        Ok(Self::from_fn(self.rows, self.cols + o.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                o.get(r, c - self.cols).clone()
            }
        }))
    }

    /// Basis of the column space in reduced form.
    pub fn column_space(&self) -> Vec<Vec<S>> {
        let e = self.transpose().rref();
        (0..e.pivots.len()).map(|r| e.reduced.row(r).to_vec()).collect()
    }
}

/// Scale so the first nonzero entry equals one.
pub fn normalize_leading<S: Scalar>(v: &mut [S]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        let inv = lead.inv().unwrap();
        for x in v.iter_mut() {
            *x = x.clone() * inv.clone();
        }
    }
}

/// Reduced echelon basis of the span of `vecs` (all of length `n`).
pub fn span_basis<S: Scalar>(n: usize, vecs: &[Vec<S>]) -> Vec<Vec<S>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_fn(vecs.len(), n, |r, c| vecs[r][c].clone());
    let e = m.rref();
    (0..e.pivots.len()).map(|r| e.reduced.row(r).to_vec()).collect()
}

pub fn span_dim<S: Scalar>(n: usize, vecs: &[Vec<S>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    Matrix::from_fn(vecs.len(), n, |r, c| vecs[r][c].clone()).rank()
}

/// Matrix over a Z/2-graded space, stored as four blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperMatrix<S> {
    pub row_dims: (usize, usize),
    pub col_dims: (usize, usize),
    /// even-even, even-odd, odd-even, odd-odd
    pub blocks: [Matrix<S>; 4],
}

impl<S: Scalar> SuperMatrix<S> {
    pub fn zeros(row_dims: (usize, usize), col_dims: (usize, usize)) -> Self {
        SuperMatrix {
            row_dims,
            col_dims,
            blocks: [
                Matrix::zeros(row_dims.0, col_dims.0),
                Matrix::zeros(row_dims.0, col_dims.1),
                Matrix::zeros(row_dims.1, col_dims.0),
                Matrix::zeros(row_dims.1, col_dims.1),
            ],
        }
    }

    /// Split a dense matrix with the even coordinates listed first.
    pub fn from_dense(row_dims: (usize, usize), col_dims: (usize, usize), m: &Matrix<S>) -> Result<Self, LinalgError> {
        if m.rows() != row_dims.0 + row_dims.1 || m.cols() != col_dims.0 + col_dims.1 {
            return Err(LinalgError::Shape("block dims do not match matrix".into()));
        }
        let (re, ce) = (row_dims.0, col_dims.0);
        let blk = |r0: usize, nr: usize, c0: usize, nc: usize| Matrix::from_fn(nr, nc, |r, c| m.get(r0 + r, c0 + c).clone());
        Ok(SuperMatrix {
            row_dims,
            col_dims,
            blocks: [
                blk(0, re, 0, ce),
                blk(0, re, ce, col_dims.1),
                blk(re, row_dims.1, 0, ce),
                blk(re, row_dims.1, ce, col_dims.1),
            ],
        })
    }

    pub fn to_dense(&self) -> Matrix<S> {
        let (re, ce) = (self.row_dims.0, self.col_dims.0);
        Matrix::from_fn(self.row_dims.0 + self.row_dims.1, self.col_dims.0 + self.col_dims.1, |r, c| {
            match (r < re, c < ce) {
                (true, true) => self.blocks[0].get(r, c).clone(),
                (true, false) => self.blocks[1].get(r, c - ce).clone(),
                (false, true) => self.blocks[2].get(r - re, c).clone(),
                (false, false) => self.blocks[3].get(r - re, c - ce).clone(),
            }
        })
    }

    /// Parity if homogeneous: `Some(false)` even, `Some(true)` odd; zero counts as both (reported even).
    pub fn parity(&self) -> Option<bool> {
        let even = self.blocks[1].is_zero() && self.blocks[2].is_zero();
        let odd = self.blocks[0].is_zero() && self.blocks[3].is_zero();
        match (even, odd) {
            (true, _) => Some(false),
            (false, true) => Some(true),
            _ => None,
        }
    }

    pub fn is_homogeneous_of(&self, odd: bool) -> bool {
        if odd {
            self.blocks[0].is_zero() && self.blocks[3].is_zero()
        } else {
            self.blocks[1].is_zero() && self.blocks[2].is_zero()
        }
    }

    /// Super-commutator of homogeneous matrices of parities `pa`, `pb`.
    pub fn supercommutator(a: &Matrix<S>, pa: bool, b: &Matrix<S>, pb: bool) -> Result<Matrix<S>, LinalgError> {
        let ab = a.mul(b)?;
        let ba = b.mul(a)?;
        ab.sub(&ba.scale(&sign::<S>(pa && pb)))
    }

    /// Supertrace of a square even matrix.
    pub fn supertrace(&self) -> S {
        let mut acc = S::zero();
        for i in 0..self.row_dims.0 {
            acc += self.blocks[0].get(i, i).clone();
        }
        for i in 0..self.row_dims.1 {
            acc -= self.blocks[3].get(i, i).clone();
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{Const, Fp, Q};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    type F3 = Fp<Const<3>>;
    type F5 = Fp<Const<5>>;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::<F3>::identity(2).rank(), 2);
        assert_eq!(Matrix::<F3>::zeros(3, 4).rank(), 0);
        assert_eq!(Matrix::<F5>::from_ints(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn inverse_examples() {
        let a = Matrix::<F5>::from_ints(&[&[1, 2], &[3, 4]]);
        let b = a.inverse().unwrap();
        assert_eq!(a.mul(&b).unwrap(), Matrix::identity(2));
        assert!(Matrix::<F5>::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(a.hstack(&a).unwrap().cols(), 4);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::<F3>::identity(3).kernel_basis().is_empty());
        let k = Matrix::<F3>::zeros(3, 3).kernel_basis();
        assert_eq!(k.len(), 3);
        assert_eq!(k[0], vec![F3::one(), F3::zero(), F3::zero()]);
        let k = Matrix::<F3>::from_ints(&[&[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![F3::from_i64(1), F3::from_i64(2)]]);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::<F5>::identity(2);
        let e1 = vec![F5::one(), F5::zero()];
        assert_eq!(id.solve(&e1).unwrap(), Some(e1.clone()));
        assert_eq!(Matrix::<F5>::zeros(2, 2).solve(&e1).unwrap(), None);
        let m = Matrix::<F5>::from_ints(&[&[1, 2], &[2, 4]]);
        let rhs = vec![F5::from_i64(1), F5::from_i64(2)];
        assert_eq!(m.solve(&rhs).unwrap(), Some(vec![F5::one(), F5::zero()]));
        assert!(m.solve(&[F5::one()]).is_err());
    }

    #[test]
    fn rational_kernel() {
        let m = Matrix::<Q>::from_ints(&[&[2, 4, 6], &[1, 2, 3]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn super_blocks() {
        let m = Matrix::<F3>::from_ints(&[&[0, 1], &[0, 0]]);
        let s = SuperMatrix::from_dense((1, 1), (1, 1), &m).unwrap();
        assert_eq!(s.parity(), Some(true));
        assert_eq!(s.to_dense(), m);
        let id = SuperMatrix::from_dense((1, 1), (1, 1), &Matrix::<F3>::identity(2)).unwrap();
        assert!(id.supertrace().is_zero());
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix<F5>> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0i64..5, r * c).prop_map(move |v| {
                Matrix::from_fn(r, c, |i, j| F5::from_i64(v[i * c + j]))
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(m.rref().pivots.len(), m.rank());
        }

        #[test]
        fn solve_is_exact(m in arb_matrix(), seed in proptest::collection::vec(0i64..5, 7)) {
            let x: Vec<F5> = (0..m.cols()).map(|i| F5::from_i64(seed[i])).collect();
            let rhs = m.mul_vec(&x).unwrap();
            let sol = m.solve(&rhs).unwrap().expect("consistent system");
            prop_assert_eq!(m.mul_vec(&sol).unwrap(), rhs);
        }

        #[test]
        fn deterministic(m in arb_matrix()) {
            prop_assert_eq!(m.kernel_basis(), m.clone().kernel_basis());
        }
    }
}
