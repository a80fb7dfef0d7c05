//! Lie superalgebras by sparse structure constants, optional p-map and matrix realization.

use crate::error::AlgebraError;
use crate::linalg::{sign, span_basis, Matrix, Scalar, SuperMatrix};

/// Coefficient vector over the basis.
pub type LieElement<S> = Vec<S>;

#[derive(Clone, Debug, PartialEq)]
pub struct LieSuperalgebra<S> {
    pub names: Vec<String>,
    pub odd: Vec<bool>,
    brackets: Vec<Vec<(usize, S)>>,
    /// Images `e_i^[p]` for even basis elements; `None` for an unrestricted algebra.
    pmap: Option<Vec<Option<LieElement<S>>>>,
    realization: Option<Vec<SuperMatrix<S>>>,
}

/// One violated axiom with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: &'static str,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExampleId {
    OddAbelian(usize),
    Ex312,
    Ex531,
    Ex532,
    Ex533 { n: usize, alphas: Vec<i64> },
}

impl<S: Scalar> LieSuperalgebra<S> {
    /// Abelian algebra on the given basis, unrestricted.
    pub fn abelian(names: Vec<String>, odd: Vec<bool>) -> Self {
        let n = names.len();
        assert_eq!(n, odd.len());
        LieSuperalgebra { names, odd, brackets: vec![Vec::new(); n * n], pmap: None, realization: None }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn dims(&self) -> (usize, usize) {
        let o = self.odd.iter().filter(|&&b| b).count();
        (self.dim() - o, o)
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.odd[i]).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.odd[i]).collect()
    }

    pub fn basis_vector(&self, i: usize) -> LieElement<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[i] = S::one();
        v
    }

    pub fn zero(&self) -> LieElement<S> {
        vec![S::zero(); self.dim()]
    }

    /// Set `[e_i, e_j]` without touching `[e_j, e_i]`.
    pub fn set_bracket_raw(&mut self, i: usize, j: usize, v: &[(usize, S)]) {
        let n = self.dim();
        self.brackets[i * n + j] = v.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
    }

    /// Set `[e_i, e_j]` and `[e_j, e_i] = -(-1)^{|i||j|} [e_i, e_j]`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: &[(usize, S)]) {
        self.set_bracket_raw(i, j, v);
        if i != j {
            let s = -sign::<S>(self.odd[i] && self.odd[j]);
            let w: Vec<(usize, S)> = v.iter().map(|(k, c)| (*k, c.clone() * s.clone())).collect();
            self.set_bracket_raw(j, i, &w);
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.brackets[i * self.dim() + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> S {
        self.bracket_basis(i, j).iter().find(|(t, _)| *t == k).map(|(_, c)| c.clone()).unwrap_or_else(S::zero)
    }

    pub fn bracket(&self, a: &[S], b: &[S]) -> LieElement<S> {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += x.clone() * y.clone() * c.clone();
                }
            }
        }
        out
    }

    /// Parity of a nonzero homogeneous element, `None` for mixed or zero elements.
    pub fn parity_of(&self, a: &[S]) -> Option<bool> {
        let mut p = None;
        for (i, x) in a.iter().enumerate() {
            if !x.is_zero() {
                match p {
                    None => p = Some(self.odd[i]),
                    Some(q) if q != self.odd[i] => return None,
                    _ => {}
                }
            }
        }
        p
    }

    pub fn set_pmap(&mut self, images: Vec<Option<LieElement<S>>>) {
        self.pmap = Some(images);
    }

    pub fn is_restricted(&self) -> bool {
        self.pmap.is_some()
    }

    /// `e_i^[p]` for an even basis element.
    pub fn pmap_basis(&self, i: usize) -> Result<&LieElement<S>, AlgebraError> {
        self.pmap
            .as_ref()
            .and_then(|m| m.get(i))
            .and_then(|v| v.as_ref())
            .ok_or_else(|| AlgebraError::NoPMap(self.names[i].clone()))
    }

    pub fn realization(&self) -> Option<&[SuperMatrix<S>]> {
        self.realization.as_deref()
    }

    pub fn set_realization(&mut self, r: Vec<SuperMatrix<S>>) {
        self.realization = Some(r);
    }

    pub fn even_part_abelian(&self) -> bool {
        let ev = self.even_indices();
        ev.iter().all(|&i| ev.iter().all(|&j| self.bracket_basis(i, j).is_empty()))
    }

    /// `ad(a)` as a matrix acting on coefficient columns.
    pub fn ad_matrix(&self, a: &[S]) -> Matrix<S> {
        let n = self.dim();
        let cols: Vec<Vec<S>> = (0..n).map(|j| self.bracket(a, &self.basis_vector(j))).collect();
        Matrix::from_columns(n, &cols)
    }

    /// `v^[p]` for even `v`, extended from the basis by Jacobson's formula.
    pub fn jacobson_p_power(&self, v: &[S]) -> Result<LieElement<S>, AlgebraError> {
        if self.parity_of(v) == Some(true) {
            return Err(AlgebraError::NotHomogeneous("p-map applies to even elements".into()));
        }
        let p = S::characteristic();
        if p == 0 {
            return Err(AlgebraError::NoPMap("characteristic 0".into()));
        }
        let mut acc = self.zero();
        let mut partial = self.zero();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut a = self.zero();
            a[i] = c.clone();
            let ap = self.pmap_basis(i)?.iter().map(|x| x.clone() * c.pow(p as u64)).collect::<Vec<S>>();
            let corr = self.jacobson_corrections(&a, &partial, p);
            for k in 0..self.dim() {
                acc[k] += ap[k].clone() + corr[k].clone();
            }
            partial[i] = c.clone();
        }
        Ok(acc)
    }

    /// `sum_i s_i(a, b)` where `i s_i(a, b)` is the `lambda^{i-1}` coefficient of `ad(lambda a + b)^{p-1}(a)`.
    fn jacobson_corrections(&self, a: &[S], b: &[S], p: u32) -> LieElement<S> {
        let n = self.dim();
        if b.iter().all(|x| x.is_zero()) {
            return self.zero();
        }
        let p = p as usize;
        let mut poly: Vec<Vec<S>> = vec![a.to_vec()];
        for _ in 0..(p - 1) {
            let mut next = vec![self.zero(); poly.len() + 1];
            for (k, w) in poly.iter().enumerate() {
                let wa = self.bracket(a, w);
                let wb = self.bracket(b, w);
                for t in 0..n {
                    next[k + 1][t] += wa[t].clone();
                    next[k][t] += wb[t].clone();
                }
            }
            poly = next;
        }
        let mut out = self.zero();
        for i in 1..p {
            let inv = S::from_i64(i as i64).inv().expect("i < p");
            for t in 0..n {
                out[t] += poly[i - 1][t].clone() * inv.clone();
            }
        }
        out
    }

    /// Every violated axiom with a witness; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let par = self.odd[i] ^ self.odd[j];
                if self.bracket_basis(i, j).iter().any(|(k, _)| self.odd[*k] != par) {
                    out.push(Violation { identity: "parity", witness: vec![i, j] });
                }
                let s = -sign::<S>(self.odd[i] && self.odd[j]);
                let ij = self.bracket(&self.basis_vector(i), &self.basis_vector(j));
                let ji = self.bracket(&self.basis_vector(j), &self.basis_vector(i));
                if ij.iter().zip(&ji).any(|(a, b)| *a != b.clone() * s.clone()) {
                    out.push(Violation { identity: "antisymmetry", witness: vec![i, j] });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // (-1)^{|x||z|}[x,[y,z]] + (-1)^{|y||x|}[y,[z,x]] + (-1)^{|z||y|}[z,[x,y]] = 0
                    let (x, y, z) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    let t1 = self.bracket(&x, &self.bracket(&y, &z));
                    let t2 = self.bracket(&y, &self.bracket(&z, &x));
                    let t3 = self.bracket(&z, &self.bracket(&x, &y));
                    let s1 = sign::<S>(self.odd[i] && self.odd[k]);
                    let s2 = sign::<S>(self.odd[j] && self.odd[i]);
                    let s3 = sign::<S>(self.odd[k] && self.odd[j]);
                    if (0..n).any(|t| !(s1.clone() * t1[t].clone() + s2.clone() * t2[t].clone() + s3.clone() * t3[t].clone()).is_zero()) {
                        out.push(Violation { identity: "jacobi", witness: vec![i, j, k] });
                    }
                }
            }
        }
        let p = S::characteristic();
        if let Some(pm) = &self.pmap {
            for i in self.even_indices() {
                let img = match pm.get(i).and_then(|v| v.as_ref()) {
                    Some(v) => v,
                    None => {
                        out.push(Violation { identity: "p-map defined on even basis", witness: vec![i] });
                        continue;
                    }
                };
                if self.parity_of(img) == Some(true) {
                    out.push(Violation { identity: "p-map parity", witness: vec![i] });
                }
                if p > 0 {
                    // ad(x^[p]) = ad(x)^p
                    let lhs = self.ad_matrix(img);
                    let rhs = self.ad_matrix(&self.basis_vector(i)).pow(p as u64).expect("square");
                    if lhs != rhs {
                        out.push(Violation { identity: "ad(x^[p]) = ad(x)^p", witness: vec![i] });
                    }
                }
            }
        }
        if let Some(r) = &self.realization {
            let dense: Vec<Matrix<S>> = r.iter().map(|m| m.to_dense()).collect();
            for i in 0..n {
                if !r[i].is_homogeneous_of(self.odd[i]) {
                    out.push(Violation { identity: "realization parity", witness: vec![i] });
                }
                for j in 0..n {
                    let sc = SuperMatrix::supercommutator(&dense[i], self.odd[i], &dense[j], self.odd[j]).expect("square");
                    if sc != self.realize(&self.bracket(&self.basis_vector(i), &self.basis_vector(j)), &dense) {
                        out.push(Violation { identity: "realization bracket", witness: vec![i, j] });
                    }
                }
            }
            if p > 0 && self.pmap.is_some() {
                for i in self.even_indices() {
                    if let Ok(img) = self.pmap_basis(i) {
                        if dense[i].pow(p as u64).expect("square") != self.realize(img, &dense) {
                            out.push(Violation { identity: "realization p-map", witness: vec![i] });
                        }
                    }
                }
            }
        }
        out
    }

    fn realize(&self, v: &[S], dense: &[Matrix<S>]) -> Matrix<S> {
        let mut acc = Matrix::zeros(dense[0].rows(), dense[0].cols());
        for (c, m) in v.iter().zip(dense) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c)).expect("same shape");
            }
        }
        acc
    }

    /// Image of an element under the matrix realization.
    pub fn realize_element(&self, v: &[S]) -> Option<Matrix<S>> {
        let dense: Vec<Matrix<S>> = self.realization.as_ref()?.iter().map(|m| m.to_dense()).collect();
        Some(self.realize(v, &dense))
    }

    /// Smallest subalgebra containing `generators`, closed under bracket and p-map.
    /// Generators are first split into homogeneous parts. The result lists odd basis vectors
    /// before even ones; the matrix has the basis vectors as columns.
    pub fn restricted_subalgebra(&self, generators: &[LieElement<S>]) -> Result<(Self, Matrix<S>), AlgebraError> {
        let n = self.dim();
        let mut basis: Vec<LieElement<S>> = Vec::new();
        let mut queue: Vec<LieElement<S>> = Vec::new();
        for g in generators {
            for odd in [true, false] {
                let part: Vec<S> = (0..n).map(|i| if self.odd[i] == odd { g[i].clone() } else { S::zero() }).collect();
                queue.push(part);
            }
        }
        let half = S::from_i64(2).inv().expect("odd characteristic");
        let restricted = self.is_restricted() && S::characteristic() > 0;
        while let Some(v) = queue.pop() {
            if v.iter().all(|x| x.is_zero()) {
                continue;
            }
            let mut cand = basis.clone();
            cand.push(v.clone());
            if span_basis(n, &cand).len() == basis.len() {
                continue;
            }
            for b in &basis {
                queue.push(self.bracket(b, &v));
            }
            let vv = self.bracket(&v, &v);
            queue.push(if self.parity_of(&v) == Some(true) { vv.iter().map(|x| x.clone() * half.clone()).collect() } else { vv });
            if restricted && self.parity_of(&v) == Some(false) {
                queue.push(self.jacobson_p_power(&v)?);
            }
            basis.push(v);
        }
        let mut ordered: Vec<LieElement<S>> = basis.iter().filter(|v| self.parity_of(v) == Some(true)).cloned().collect();
        ordered.extend(basis.iter().filter(|v| self.parity_of(v) == Some(false)).cloned());
        let m = ordered.len();
        let incl = Matrix::from_columns(n, &ordered);
        let coords = |w: &[S]| -> Result<Vec<S>, AlgebraError> {
            incl.solve(w)?.ok_or_else(|| AlgebraError::NotSubalgebra("closure failed".into()))
        };
        let names: Vec<String> = (0..m).map(|i| format!("b{i}")).collect();
        let odd: Vec<bool> = ordered.iter().map(|v| self.parity_of(v) == Some(true)).collect();
        let mut sub = LieSuperalgebra::abelian(names, odd.clone());
        for i in 0..m {
            for j in 0..m {
                let c = coords(&self.bracket(&ordered[i], &ordered[j]))?;
                let sparse: Vec<(usize, S)> = c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
                sub.set_bracket_raw(i, j, &sparse);
            }
        }
        if restricted {
            let mut images = vec![None; m];
            for i in 0..m {
                if !odd[i] {
                    images[i] = Some(coords(&self.jacobson_p_power(&ordered[i])?)?);
                }
            }
            sub.set_pmap(images);
        }
        if let Some(r) = &self.realization {
            let dense: Vec<Matrix<S>> = r.iter().map(|x| x.to_dense()).collect();
            let (rd, cd) = (r[0].row_dims, r[0].col_dims);
            let mats = ordered
                .iter()
                .map(|v| SuperMatrix::from_dense(rd, cd, &self.realize(v, &dense)))
                .collect::<Result<Vec<_>, _>>()?;
            sub.set_realization(mats);
        }
        Ok((sub, incl))
    }
}

/// `gl(m|n)` on matrix units `e_ij` (row-major), p-map by matrix power.
pub fn build_gl<S: Scalar>(m: usize, n: usize) -> Result<LieSuperalgebra<S>, AlgebraError> {
    if m + n == 0 {
        return Err(AlgebraError::InvalidParameters("gl(0|0)".into()));
    }
    let d = m + n;
    let sector = |i: usize| i >= m;
    let mut names = Vec::new();
    let mut odd = Vec::new();
    let mut mats = Vec::new();
    for i in 0..d {
        for j in 0..d {
            names.push(format!("e{}{}", i + 1, j + 1));
            odd.push(sector(i) != sector(j));
            let mut e = Matrix::zeros(d, d);
            e.set(i, j, S::one());
            mats.push(e);
        }
    }
    let mut g = LieSuperalgebra::abelian(names, odd.clone());
    let idx = |i: usize, j: usize| i * d + j;
    for a in 0..d * d {
        for b in 0..d * d {
            let (i, j) = (a / d, a % d);
            let (k, l) = (b / d, b % d);
            let mut v: Vec<(usize, S)> = Vec::new();
            // e_ij e_kl - (-1)^{|a||b|} e_kl e_ij
            if j == k {
                v.push((idx(i, l), S::one()));
            }
            if l == i {
                let s = -sign::<S>(odd[a] && odd[b]);
                match v.iter_mut().find(|(t, _)| *t == idx(k, j)) {
                    Some(e) => e.1 += s,
                    None => v.push((idx(k, j), s)),
                }
            }
            g.set_bracket_raw(a, b, &v);
        }
    }
    if S::characteristic() > 0 {
        let p = S::characteristic() as u64;
        let images = (0..d * d)
            .map(|a| {
                if odd[a] {
                    None
                } else {
                    let pw = mats[a].pow(p).expect("square");
                    Some((0..d * d).map(|b| pw.get(b / d, b % d).clone()).collect())
                }
            })
            .collect();
        g.set_pmap(images);
    }
    let supers = mats.iter().map(|x| SuperMatrix::from_dense((m, n), (m, n), x)).collect::<Result<Vec<_>, _>>()?;
    g.set_realization(supers);
    Ok(g)
}

/// The named small algebras. Basis order puts odd `y` first, then the even elements.
pub fn build_example<S: Scalar>(id: &ExampleId) -> Result<LieSuperalgebra<S>, AlgebraError> {
    let p = S::characteristic();
    if p == 2 {
        return Err(AlgebraError::InvalidParameters("characteristic 2".into()));
    }
    let needs_p = |name: &str| -> Result<(), AlgebraError> {
        if p == 0 {
            Err(AlgebraError::InvalidParameters(format!("{name} needs positive characteristic")))
        } else {
            Ok(())
        }
    };
    let two = S::from_i64(2);
    Ok(match id {
        ExampleId::OddAbelian(d) => {
            if *d == 0 {
                return Err(AlgebraError::InvalidParameters("odd_abelian needs d >= 1".into()));
            }
            let mut g = LieSuperalgebra::abelian((1..=*d).map(|i| format!("y{i}")).collect(), vec![true; *d]);
            g.set_pmap(vec![None; *d]);
            g
        }
        ExampleId::Ex312 => {
            let mut g = LieSuperalgebra::abelian(vec!["y".into(), "x".into()], vec![true, false]);
            g.set_bracket(0, 0, &[(1, two)]);
            g
        }
        ExampleId::Ex531 => {
            needs_p("ex_5_3_1")?;
            let mut g = LieSuperalgebra::abelian(vec!["y".into(), "x".into()], vec![true, false]);
            g.set_bracket(0, 0, &[(1, two)]);
            g.set_pmap(vec![None, Some(vec![S::zero(), S::one()])]);
            g
        }
        ExampleId::Ex532 => {
            needs_p("ex_5_3_2")?;
            let mut g = LieSuperalgebra::abelian(vec!["y".into(), "x".into()], vec![true, false]);
            g.set_bracket(0, 1, &[(0, S::one())]);
            g.set_pmap(vec![None, Some(vec![S::zero(), S::one()])]);
            g
        }
        ExampleId::Ex533 { n, alphas } => {
            needs_p("ex_5_3_3")?;
            if alphas.len() != n + 1 {
                return Err(AlgebraError::InvalidParameters(format!("expected {} alphas, got {}", n + 1, alphas.len())));
            }
            let mut names = vec!["y".to_string()];
            names.extend((0..=*n).map(|i| format!("x{i}")));
            let mut g = LieSuperalgebra::abelian(names, std::iter::once(true).chain(std::iter::repeat_n(false, n + 1)).collect());
            let dim = n + 2;
            // x_i^[p] = x_{i+1}, x_n^[p] = sum alpha_i x_i
            let last: Vec<S> = std::iter::once(S::zero()).chain(alphas.iter().map(|&a| S::from_i64(a))).collect();
            let mut images = vec![None; dim];
            for i in 0..=*n {
                images[i + 1] = Some(if i < *n {
                    let mut v = vec![S::zero(); dim];
                    v[i + 2] = S::one();
                    v
                } else {
                    last.clone()
                });
            }
            let x0p = images[1].clone().expect("set");
            let bracket: Vec<(usize, S)> =
                x0p.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c * two.clone())).collect();
            g.set_bracket(0, 0, &bracket);
            g.set_pmap(images);
            g
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F3, F5, F7, Q};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn vecf<S: Scalar>(v: &[i64]) -> Vec<S> {
        v.iter().map(|&x| S::from_i64(x)).collect()
    }

    #[test]
    fn gl_brackets() {
        let g = build_gl::<F3>(1, 1).unwrap();
        // basis e11 e12 e21 e22
        assert_eq!(g.bracket(&g.basis_vector(1), &g.basis_vector(2)), vecf::<F3>(&[1, 0, 0, 1]));
        assert_eq!(g.bracket(&g.basis_vector(0), &g.basis_vector(1)), vecf::<F3>(&[0, 1, 0, 0]));
        assert!(build_gl::<F3>(2, 0).unwrap().odd.iter().all(|o| !o));
        assert!(g.validate().is_empty());
    }

    #[test]
    fn gl_valid_small() {
        fn all<S: Scalar>() {
            for (m, n) in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 0), (2, 2), (3, 1), (0, 3)] {
                let g = build_gl::<S>(m, n).unwrap();
                assert!(g.validate().is_empty(), "gl({m}|{n}): {:?}", g.validate());
            }
        }
        all::<F3>();
        all::<F5>();
        all::<F7>();
        assert!(build_gl::<Q>(1, 1).unwrap().validate().is_empty());
    }

    #[test]
    fn corrupted_gl_is_reported() {
        let mut g = build_gl::<F5>(1, 1).unwrap();
        let c = g.structure_constant(1, 2, 0);
        let mut v: Vec<(usize, F5)> = g.bracket_basis(1, 2).to_vec();
        for e in &mut v {
            if e.0 == 0 {
                e.1 = -c;
            }
        }
        g.set_bracket_raw(1, 2, &v);
        let report = g.validate();
        assert!(report.iter().any(|r| r.identity == "antisymmetry"));
        assert!(report.iter().any(|r| r.identity == "realization bracket"));
    }

    #[test]
    fn odd_abelian_valid() {
        let g = build_example::<F3>(&ExampleId::OddAbelian(2)).unwrap();
        assert!(g.validate().is_empty());
        assert_eq!(g.dims(), (0, 2));
    }

    #[test]
    fn examples_valid() {
        for id in [
            ExampleId::Ex312,
            ExampleId::Ex531,
            ExampleId::Ex532,
            ExampleId::Ex533 { n: 0, alphas: vec![1] },
            ExampleId::Ex533 { n: 2, alphas: vec![1, 2, 0] },
        ] {
            let g = build_example::<F3>(&id).unwrap();
            assert!(g.validate().is_empty(), "{id:?}");
            let g = build_example::<F5>(&id).unwrap();
            assert!(g.validate().is_empty(), "{id:?}");
        }
        let g = build_example::<F3>(&ExampleId::Ex312).unwrap();
        assert_eq!(g.dims(), (1, 1));
        assert!(!g.is_restricted());
        assert!(build_example::<Q>(&ExampleId::Ex531).is_err());
        assert!(build_example::<F3>(&ExampleId::Ex533 { n: 1, alphas: vec![1] }).is_err());
    }

    #[test]
    fn p_powers() {
        let g = build_gl::<F3>(1, 1).unwrap();
        assert_eq!(g.jacobson_p_power(&g.basis_vector(0)).unwrap(), g.basis_vector(0));
        let g2 = build_gl::<F3>(2, 0).unwrap();
        assert!(g2.jacobson_p_power(&g2.basis_vector(1)).unwrap().iter().all(|c| c.is_zero()));
        let a = build_example::<F5>(&ExampleId::Ex533 { n: 1, alphas: vec![1, 1] }).unwrap();
        let v = vecf::<F5>(&[0, 2, 3]);
        // abelian even part: p-semilinear
        assert_eq!(a.jacobson_p_power(&v).unwrap(), vecf::<F5>(&[0, 3, 2 + 3]));
        assert!(build_example::<F3>(&ExampleId::Ex312).unwrap().jacobson_p_power(&vecf::<F3>(&[0, 1])).is_err());
    }

    #[test]
    fn subalgebras() {
        let g = build_gl::<F3>(1, 1).unwrap();
        let beta = vecf::<F3>(&[0, 1, 1, 0]);
        let (s, incl) = g.restricted_subalgebra(std::slice::from_ref(&beta)).unwrap();
        assert_eq!(s.dims(), (1, 1));
        assert_eq!(incl.column(0), beta);
        assert_eq!(incl.column(1), vecf::<F3>(&[1, 0, 0, 1]));
        let ex = build_example::<F3>(&ExampleId::Ex531).unwrap();
        assert_eq!(s.bracket(&s.basis_vector(0), &s.basis_vector(0)), ex.bracket(&ex.basis_vector(0), &ex.basis_vector(0)));
        assert_eq!(s.pmap_basis(1).unwrap(), ex.pmap_basis(1).unwrap());
        assert!(s.validate().is_empty());
        let (z, _) = g.restricted_subalgebra(&[g.zero()]).unwrap();
        assert_eq!(z.dim(), 0);
        let (h, _) = g.restricted_subalgebra(&[g.basis_vector(0)]).unwrap();
        assert_eq!(h.dims(), (1, 0));
        assert!(h.validate().is_empty());
    }

    fn element(g: &LieSuperalgebra<F3>, coeffs: &[i64], odd: bool) -> Vec<F3> {
        (0..g.dim()).map(|i| if g.odd[i] == odd { F3::from_i64(coeffs[i % coeffs.len()]) } else { F3::zero() }).collect()
    }

    proptest! {
        #[test]
        fn jacobson_matches_matrix_power(m in 1usize..3, n in 0usize..2, coeffs in proptest::collection::vec(0i64..3, 9)) {
            let g = build_gl::<F3>(m, n).unwrap();
            let v = element(&g, &coeffs, false);
            let pv = g.jacobson_p_power(&v).unwrap();
            let mv = g.realize_element(&v).unwrap().pow(3).unwrap();
            prop_assert_eq!(g.realize_element(&pv).unwrap(), mv);
        }

        #[test]
        fn closure_is_fixed_point(c1 in proptest::collection::vec(0i64..3, 4), c2 in proptest::collection::vec(0i64..3, 4)) {
            let g = build_gl::<F3>(1, 1).unwrap();
            let gens = vec![vecf::<F3>(&c1), vecf::<F3>(&c2)];
            let (s, incl) = g.restricted_subalgebra(&gens).unwrap();
            prop_assert!(s.validate().is_empty());
            let cols: Vec<Vec<F3>> = (0..incl.cols()).map(|j| incl.column(j)).collect();
            let (s2, incl2) = g.restricted_subalgebra(&cols).unwrap();
            prop_assert_eq!(s2.dim(), s.dim());
            prop_assert_eq!(incl2.rank(), incl.rank());
            prop_assert!(F3::one() != F3::zero());
        }
    }
}
