//! Finite-dimensional supermodules, basis ordered even block first.

use crate::error::AlgebraError;
use crate::linalg::{sign, Matrix, Scalar, SuperMatrix};

use super::algebra::{LieSuperalgebra, Violation};

#[derive(Clone, Debug, PartialEq)]
pub struct Supermodule<S> {
    pub dims: (usize, usize),
    pub rho: Vec<SuperMatrix<S>>,
}

impl<S: Scalar> Supermodule<S> {
    pub fn from_dense(dims: (usize, usize), mats: &[Matrix<S>]) -> Result<Self, AlgebraError> {
        let rho = mats.iter().map(|m| SuperMatrix::from_dense(dims, dims, m)).collect::<Result<Vec<_>, _>>()?;
        Ok(Supermodule { dims, rho })
    }

    pub fn dim(&self) -> usize {
        self.dims.0 + self.dims.1
    }

    pub fn is_odd(&self, i: usize) -> bool {
        i >= self.dims.0
    }

    pub fn dense(&self, i: usize) -> Matrix<S> {
        self.rho[i].to_dense()
    }

    pub fn dense_all(&self) -> Vec<Matrix<S>> {
        self.rho.iter().map(|m| m.to_dense()).collect()
    }

    /// `rho(v)` for a Lie algebra element `v`.
    pub fn act(&self, v: &[S]) -> Matrix<S> {
        let mut acc = Matrix::zeros(self.dim(), self.dim());
        for (c, m) in v.iter().zip(&self.rho) {
            if !c.is_zero() {
                acc = acc.add(&m.to_dense().scale(c)).expect("square");
            }
        }
        acc
    }

    /// `k^{1|0}` or `k^{0|1}` with zero action.
    pub fn trivial(g: &LieSuperalgebra<S>, odd: bool) -> Self {
        let dims = if odd { (0, 1) } else { (1, 0) };
        Supermodule { dims, rho: (0..g.dim()).map(|_| SuperMatrix::zeros(dims, dims)).collect() }
    }

    /// The defining representation of a matrix-realized algebra.
    pub fn natural(g: &LieSuperalgebra<S>) -> Result<Self, AlgebraError> {
        let r = g.realization().ok_or_else(|| AlgebraError::InvalidParameters("no matrix realization".into()))?;
        Ok(Supermodule { dims: r[0].row_dims, rho: r.to_vec() })
    }

    pub fn adjoint(g: &LieSuperalgebra<S>) -> Self {
        let mut order = g.even_indices();
        order.extend(g.odd_indices());
        let n = g.dim();
        let mats: Vec<Matrix<S>> = (0..n)
            .map(|z| {
                Matrix::from_fn(n, n, |r, c| {
                    let w = g.bracket(&g.basis_vector(z), &g.basis_vector(order[c]));
                    w[order[r]].clone()
                })
            })
            .collect();
        Supermodule::from_dense(g.dims(), &mats).expect("homogeneous")
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        // even(self) even(o) odd(self) odd(o)
        let (a, b) = (self, o);
        let dims = (a.dims.0 + b.dims.0, a.dims.1 + b.dims.1);
        let place = |src: usize, i: usize| -> usize {
            match (src, i) {
                (0, i) if i < a.dims.0 => i,
                (0, i) => a.dims.0 + b.dims.0 + (i - a.dims.0),
                (_, i) if i < b.dims.0 => a.dims.0 + i,
                (_, i) => dims.0 + a.dims.1 + (i - b.dims.0),
            }
        };
        let n = dims.0 + dims.1;
        let mats: Vec<Matrix<S>> = (0..a.rho.len())
            .map(|z| {
                let mut m = Matrix::zeros(n, n);
                for (src, md) in [(0, a.dense(z)), (1, b.dense(z))] {
                    for r in 0..md.rows() {
                        for c in 0..md.cols() {
                            m.set(place(src, r), place(src, c), md.get(r, c).clone());
                        }
                    }
                }
                m
            })
            .collect();
        Supermodule::from_dense(dims, &mats).expect("homogeneous")
    }

    /// `z(a x b) = za x b + (-1)^{|z||a|} a x zb`.
    pub fn tensor(&self, g: &LieSuperalgebra<S>, o: &Self) -> Self {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for want_odd in [false, true] {
            for a in 0..self.dim() {
                for b in 0..o.dim() {
                    if (self.is_odd(a) ^ o.is_odd(b)) == want_odd {
                        pairs.push((a, b));
                    }
                }
            }
        }
        let n = pairs.len();
        let index = |a: usize, b: usize| pairs.iter().position(|&q| q == (a, b)).expect("pair");
        let evens = pairs.iter().filter(|(a, b)| !(self.is_odd(*a) ^ o.is_odd(*b))).count();
        let mats: Vec<Matrix<S>> = (0..g.dim())
            .map(|z| {
                let (ma, mb) = (self.dense(z), o.dense(z));
                let mut m = Matrix::zeros(n, n);
                for (c, &(a, b)) in pairs.iter().enumerate() {
                    for r in 0..self.dim() {
                        let v = ma.get(r, a);
                        if !v.is_zero() {
                            m.add_at(index(r, b), c, v.clone());
                        }
                    }
                    let s = sign::<S>(g.odd[z] && self.is_odd(a));
                    for r in 0..o.dim() {
                        let v = mb.get(r, b);
                        if !v.is_zero() {
                            m.add_at(index(a, r), c, v.clone() * s.clone());
                        }
                    }
                }
                m
            })
            .collect();
        Supermodule::from_dense((evens, n - evens), &mats).expect("homogeneous")
    }

    /// `Pi M = k^{0|1} x M`.
    pub fn parity_shift(&self, g: &LieSuperalgebra<S>) -> Self {
        Supermodule::trivial(g, true).tensor(g, self)
    }
}

/// Bracket, parity and restricted compatibility of `m`; empty report means valid.
pub fn check_supermodule<S: Scalar>(g: &LieSuperalgebra<S>, m: &Supermodule<S>) -> Vec<Violation> {
    let mut out = Vec::new();
    if m.rho.len() != g.dim() {
        out.push(Violation { identity: "one matrix per basis element", witness: vec![m.rho.len()] });
        return out;
    }
    let dense = m.dense_all();
    for i in 0..g.dim() {
        if !m.rho[i].is_homogeneous_of(g.odd[i]) {
            out.push(Violation { identity: "parity", witness: vec![i] });
        }
        for j in 0..g.dim() {
            let sc = SuperMatrix::supercommutator(&dense[i], g.odd[i], &dense[j], g.odd[j]).expect("square");
            if sc != m.act(&g.bracket(&g.basis_vector(i), &g.basis_vector(j))) {
                out.push(Violation { identity: "bracket", witness: vec![i, j] });
            }
        }
    }
    let p = S::characteristic();
    if p > 0 && g.is_restricted() {
        for i in g.even_indices() {
            if let Ok(img) = g.pmap_basis(i) {
                if dense[i].pow(p as u64).expect("square") != m.act(img) {
                    out.push(Violation { identity: "restricted", witness: vec![i] });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_example, build_gl, ExampleId};
    use crate::{F3, F5};

    #[test]
    fn standard_modules_valid() {
        let g = build_gl::<F3>(1, 1).unwrap();
        let nat = Supermodule::natural(&g).unwrap();
        assert!(check_supermodule(&g, &nat).is_empty());
        let ad = Supermodule::adjoint(&g);
        assert!(check_supermodule(&g, &ad).is_empty());
        assert!(check_supermodule(&g, &Supermodule::trivial(&g, false)).is_empty());
        let t = nat.tensor(&g, &ad);
        assert_eq!(t.dims, (4, 4));
        assert!(check_supermodule(&g, &t).is_empty());
        let pi = nat.parity_shift(&g);
        assert_eq!(pi.dims, (1, 1));
        assert!(check_supermodule(&g, &pi).is_empty());
        let s = nat.direct_sum(&pi);
        assert!(check_supermodule(&g, &s).is_empty());
        let g2 = build_gl::<F5>(2, 1).unwrap();
        let n2 = Supermodule::natural(&g2).unwrap();
        assert!(check_supermodule(&g2, &n2.tensor(&g2, &n2)).is_empty());
    }

    #[test]
    fn broken_module_reported() {
        let g = build_gl::<F3>(1, 1).unwrap();
        let mut nat = Supermodule::natural(&g).unwrap();
        nat.rho[0] = SuperMatrix::zeros((1, 1), (1, 1));
        assert!(!check_supermodule(&g, &nat).is_empty());
    }

    #[test]
    fn odd_square_zero_action() {
        // [y, y] = 0 forces rho(y)^2 = 0
        let g = build_example::<F3>(&ExampleId::Ex532).unwrap();
        let ad = Supermodule::adjoint(&g);
        assert!(check_supermodule(&g, &ad).is_empty());
        let y = ad.dense(0);
        assert!(y.mul(&y).unwrap().is_zero());
    }
}
