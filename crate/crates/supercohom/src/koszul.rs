//! The Koszul cochain complex `C(g, M) = M (x) Lambda_s(g*)` and its cohomology.
//!
//! On dual generators `d(z_k*) = 1/2 sum_{i,j} (-1)^{|i||j|} c_ij^k z_i* z_j*`, extended as a
//! derivation with `d(ab) = d(a) b + (-1)^{deg a} a d(b)`. On coefficients
//! `d(m) = sum_k A_k(m) (x) z_k*`, where for a supermodule `A_k(m) = -(-1)^{|k||m|} z_k.m`,
//! the sign matching the pairing under which `d(z_k*)` is the transpose of the bracket.

use std::collections::HashMap;

use crate::error::AlgebraError;
use crate::lie::{build_gl, LieSuperalgebra, Supermodule};
use crate::linalg::{sign, Matrix, Scalar};
use crate::superalg::{AlgebraElement, GeneratorSpec, GradedAlgebra, SuperMonomial};

/// Sign type of the Koszul differential: odd degree, even parity.
const DIFF_TYPE: (bool, bool) = (true, false);

/// A cochain: one `Lambda_s(g*)` component per coefficient basis vector.
pub type Cochain<S> = Vec<AlgebraElement<S>>;

/// `Lambda_s(g*)`: one degree-1 generator per basis element, with the basis element's parity.
pub fn dual_algebra<S: Scalar>(g: &LieSuperalgebra<S>) -> GradedAlgebra {
    GradedAlgebra::new(g.names.iter().zip(&g.odd).map(|(n, &o)| GeneratorSpec::new(format!("{n}*"), o, 1)).collect())
        .expect("degree-1 generators")
}

/// Coefficient data: module parities and the maps `A_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Coefficients<S> {
    pub odd: Vec<bool>,
    pub maps: Vec<Matrix<S>>,
}

impl<S: Scalar> Coefficients<S> {
    pub fn trivial(g: &LieSuperalgebra<S>) -> Self {
        Coefficients { odd: vec![false], maps: vec![Matrix::zeros(1, 1); g.dim()] }
    }

    pub fn from_module(g: &LieSuperalgebra<S>, m: &Supermodule<S>) -> Self {
        let odd: Vec<bool> = (0..m.dim()).map(|i| m.is_odd(i)).collect();
        let maps = (0..g.dim())
            .map(|k| {
                let r = m.dense(k);
                Matrix::from_fn(m.dim(), m.dim(), |a, b| -(r.get(a, b).clone() * sign::<S>(g.odd[k] && odd[b])))
            })
            .collect();
        Coefficients { odd, maps }
    }

    /// The coadjoint coefficients of `gl(m|n)` on the dual basis `X_ij`:
    /// `d(X_ij) = sum_r X_rj (x) X_ir - (-1)^{|ir||rj|} X_ir (x) X_rj`.
    pub fn gl_coadjoint(g: &LieSuperalgebra<S>, m: usize, n: usize) -> Self {
        let d = m + n;
        let idx = |i: usize, j: usize| i * d + j;
        let mut maps = vec![Matrix::zeros(d * d, d * d); d * d];
        for i in 0..d {
            for j in 0..d {
                for r in 0..d {
                    maps[idx(i, r)].add_at(idx(r, j), idx(i, j), S::one());
                    let s = sign::<S>(g.odd[idx(i, r)] && g.odd[idx(r, j)]);
                    maps[idx(r, j)].add_at(idx(i, r), idx(i, j), -s);
                }
            }
        }
        Coefficients { odd: g.odd.clone(), maps }
    }

    pub fn dim(&self) -> usize {
        self.odd.len()
    }
}

/// The sparse differential on `Lambda_s(g*)` and on cochains.
#[derive(Clone, Debug)]
pub struct KoszulDifferential<S: Scalar> {
    pub lambda: GradedAlgebra,
    pub coefficients: Coefficients<S>,
    gen_images: Vec<AlgebraElement<S>>,
}

impl<S: Scalar> KoszulDifferential<S> {
    pub fn new(g: &LieSuperalgebra<S>, coefficients: Coefficients<S>) -> Result<Self, AlgebraError> {
        if coefficients.maps.len() != g.dim() {
            return Err(AlgebraError::InvalidParameters("one coefficient map per basis element".into()));
        }
        let lambda = dual_algebra(g);
        let n = g.dim();
        let half = S::from_i64(2).inv().ok_or_else(|| AlgebraError::InvalidParameters("characteristic 2".into()))?;
        let mut gen_images = vec![AlgebraElement::zero(); n];
        for i in 0..n {
            for j in 0..n {
                let s = sign::<S>(g.odd[i] && g.odd[j]) * half.clone();
                let prod = lambda.mul(&AlgebraElement::generator(n, i), &AlgebraElement::generator(n, j));
                for (k, c) in g.bracket_basis(i, j) {
                    gen_images[*k].add_scaled(&prod, &(c.clone() * s.clone()));
                }
            }
        }
        Ok(KoszulDifferential { lambda, coefficients, gen_images })
    }

    pub fn generator_image(&self, k: usize) -> &AlgebraElement<S> {
        &self.gen_images[k]
    }

    /// Differential on `Lambda_s(g*)` with trivial coefficients.
    pub fn apply_lambda(&self, a: &AlgebraElement<S>) -> AlgebraElement<S> {
        let imgs = |k: usize| self.gen_images[k].clone();
        self.lambda.derivation_elem(DIFF_TYPE, &imgs, a)
    }

    /// `d(sum_i m_i (x) F_i) = sum_i d(m_i) F_i + m_i (x) d(F_i)`.
    pub fn apply(&self, c: &Cochain<S>) -> Cochain<S> {
        let dm = self.coefficients.dim();
        let n = self.lambda.ngens();
        let mut out = vec![AlgebraElement::zero(); dm];
        for (i, f) in c.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            out[i].add_scaled(&self.apply_lambda(f), &S::one());
            for (k, a) in self.coefficients.maps.iter().enumerate() {
                let zf = self.lambda.mul_mono_elem(&SuperMonomial::generator(n, k), f);
                if zf.is_zero() {
                    continue;
                }
                for j in 0..dm {
                    let v = a.get(j, i);
                    if !v.is_zero() {
                        out[j].add_scaled(&zf, v);
                    }
                }
            }
        }
        out
    }

    /// Cochain `m_i (x) F`.
    pub fn cochain(&self, i: usize, f: AlgebraElement<S>) -> Cochain<S> {
        let mut c = vec![AlgebraElement::zero(); self.coefficients.dim()];
        c[i] = f;
        c
    }

    /// Right multiplication of every component by `f`.
    pub fn mul_right(&self, c: &Cochain<S>, f: &AlgebraElement<S>) -> Cochain<S> {
        c.iter().map(|x| self.lambda.mul(x, f)).collect()
    }
}

/// The complex up to `max_degree`, with dense differentials `d_n: C^n -> C^{n+1}`.
#[derive(Clone, Debug)]
pub struct KoszulComplex<S: Scalar> {
    pub differential: KoszulDifferential<S>,
    pub max_degree: u32,
    pub bases: Vec<Vec<(usize, SuperMonomial)>>,
    pub matrices: Vec<Matrix<S>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub dims: Vec<(u32, usize)>,
    pub truncation: u32,
}

impl<S: Scalar> KoszulComplex<S> {
    pub fn build(g: &LieSuperalgebra<S>, coefficients: Coefficients<S>, max_degree: u32) -> Result<Self, AlgebraError> {
        if max_degree < 1 {
            return Err(AlgebraError::InvalidParameters("max_degree must be at least 1".into()));
        }
        let differential = KoszulDifferential::new(g, coefficients)?;
        let dm = differential.coefficients.dim();
        let bases: Vec<Vec<(usize, SuperMonomial)>> = (0..=max_degree)
            .map(|n| {
                let mons = differential.lambda.monomial_basis(n);
                (0..dm).flat_map(|i| mons.iter().map(move |m| (i, m.clone()))).collect()
            })
            .collect();
        let mut matrices = Vec::new();
        for n in 0..max_degree as usize {
            let target: HashMap<&(usize, SuperMonomial), usize> = bases[n + 1].iter().enumerate().map(|(r, b)| (b, r)).collect();
            let mut mat = Matrix::zeros(bases[n + 1].len(), bases[n].len());
            for (col, (i, m)) in bases[n].iter().enumerate() {
                let img = differential.apply(&differential.cochain(*i, AlgebraElement::monomial(m.clone(), S::one())));
                for (j, f) in img.iter().enumerate() {
                    for (mm, c) in f.terms() {
                        mat.set(target[&(j, mm.clone())], col, c.clone());
                    }
                }
            }
            matrices.push(mat);
        }
        for n in 0..matrices.len().saturating_sub(1) {
            if !matrices[n + 1].mul(&matrices[n])?.is_zero() {
                return Err(AlgebraError::IdentityFailed(format!("d^2 != 0 from degree {n}")));
            }
        }
        Ok(KoszulComplex { differential, max_degree, bases, matrices })
    }

    pub fn trivial(g: &LieSuperalgebra<S>, max_degree: u32) -> Result<Self, AlgebraError> {
        Self::build(g, Coefficients::trivial(g), max_degree)
    }

    pub fn with_module(g: &LieSuperalgebra<S>, m: &Supermodule<S>, max_degree: u32) -> Result<Self, AlgebraError> {
        Self::build(g, Coefficients::from_module(g, m), max_degree)
    }

    /// `dim H^n` for `n < max_degree`.
    pub fn cohomology(&self) -> CohomologyTable {
        let ranks: Vec<usize> = self.matrices.iter().map(|m| m.rank()).collect();
        let dims = (0..self.max_degree)
            .map(|n| {
                let n = n as usize;
                let ker = self.bases[n].len() - ranks[n];
                let im = if n == 0 { 0 } else { ranks[n - 1] };
                (n as u32, ker - im)
            })
            .collect();
        CohomologyTable { dims, truncation: self.max_degree }
    }

    /// Coordinates of a cochain in the degree-`n` basis.
    pub fn coordinates(&self, n: u32, c: &Cochain<S>) -> Result<Vec<S>, AlgebraError> {
        let basis = &self.bases[n as usize];
        let idx: HashMap<&(usize, SuperMonomial), usize> = basis.iter().enumerate().map(|(r, b)| (b, r)).collect();
        let mut v = vec![S::zero(); basis.len()];
        for (i, f) in c.iter().enumerate() {
            for (m, x) in f.terms() {
                let r = idx.get(&(i, m.clone())).ok_or_else(|| AlgebraError::Grading(format!("cochain not of degree {n}")))?;
                v[*r] = x.clone();
            }
        }
        Ok(v)
    }

    /// Whether a degree-`n` cochain lies in the image of `d_{n-1}`.
    pub fn is_coboundary(&self, n: u32, c: &Cochain<S>) -> Result<bool, AlgebraError> {
        let v = self.coordinates(n, c)?;
        if n == 0 {
            return Ok(v.iter().all(|x| x.is_zero()));
        }
        Ok(self.matrices[n as usize - 1].solve(&v)?.is_some())
    }
}

/// `dim H^n(g, M)` for `n < max_degree`.
pub fn cohomology<S: Scalar>(g: &LieSuperalgebra<S>, m: Option<&Supermodule<S>>, max_degree: u32) -> Result<CohomologyTable, AlgebraError> {
    let c = match m {
        Some(m) => KoszulComplex::with_module(g, m, max_degree)?,
        None => KoszulComplex::trivial(g, max_degree)?,
    };
    Ok(c.cohomology())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PPowerCertificate<S: Scalar> {
    pub degree: u32,
    pub cochain: AlgebraElement<S>,
    pub is_cocycle: bool,
    pub is_coboundary: bool,
}

/// `f^p` for `f` homogeneous in the odd dual generators, checked to be a cocycle.
pub fn ppower_cocycle<S: Scalar>(complex: &KoszulComplex<S>, g: &LieSuperalgebra<S>, f: &AlgebraElement<S>) -> Result<PPowerCertificate<S>, AlgebraError> {
    let p = S::characteristic();
    if p == 0 {
        return Err(AlgebraError::InvalidParameters("p-power needs positive characteristic".into()));
    }
    if complex.differential.coefficients.dim() != 1 {
        return Err(AlgebraError::InvalidParameters("trivial coefficients expected".into()));
    }
    let lam = &complex.differential.lambda;
    let mut degree = None;
    for (m, _) in f.terms() {
        if m.exps().iter().enumerate().any(|(i, &e)| e > 0 && !g.odd[i]) {
            return Err(AlgebraError::InvalidParameters("f must involve odd dual generators only".into()));
        }
        let d = lam.degree(m);
        if *degree.get_or_insert(d) != d {
            return Err(AlgebraError::NotHomogeneous("f must be homogeneous".into()));
        }
    }
    let d = degree.unwrap_or(0) * p;
    if d > complex.max_degree {
        return Err(AlgebraError::Truncation(d as usize, complex.max_degree as usize));
    }
    let fp = lam.pow(f, p);
    let is_cocycle = complex.differential.apply_lambda(&fp).is_zero();
    let is_coboundary = complex.is_coboundary(d, &vec![fp.clone()])?;
    Ok(PPowerCertificate { degree: d, cochain: fp, is_cocycle, is_coboundary })
}

/// Dual generator `X_ij` (zero-based) in `Lambda_s(gl(m|n)*)`.
fn x<S: Scalar>(d: usize, i: usize, j: usize) -> AlgebraElement<S> {
    AlgebraElement::generator(d * d, i * d + j)
}

fn permutations(m: usize) -> Vec<(Vec<usize>, bool)> {
    if m == 0 {
        return vec![(vec![], false)];
    }
    let mut out = Vec::new();
    for (perm, odd) in permutations(m - 1) {
        for pos in 0..=perm.len() {
            let mut q = perm.clone();
            q.insert(pos, m - 1);
            // inserting at pos moves the new largest entry past len - pos smaller ones
            out.push((q, odd ^ ((perm.len() - pos) % 2 == 1)));
        }
    }
    out
}

/// `str = sum_r X_rr - sum_r X_{r+m, r+m}` in `gl(m|m)`.
pub fn gl_supertrace<S: Scalar>(m: usize) -> AlgebraElement<S> {
    let d = 2 * m;
    let mut s = AlgebraElement::zero();
    for r in 0..m {
        s.add_scaled(&x(d, r, r), &S::one());
        s.add_scaled(&x(d, r + m, r + m), &-S::one());
    }
    s
}

/// `f1 = sum_sigma sgn(sigma) X_{sigma(1), m+1} ... X_{sigma(m), 2m}`.
pub fn f1_cochain<S: Scalar>(lam: &GradedAlgebra, m: usize) -> AlgebraElement<S> {
    let d = 2 * m;
    let mut f = AlgebraElement::zero();
    for (perm, odd) in permutations(m) {
        let mut t = AlgebraElement::one(d * d);
        for (l, &s) in perm.iter().enumerate() {
            t = lam.mul(&t, &x(d, s, m + l));
        }
        f.add_scaled(&t, &sign::<S>(odd));
    }
    f
}

/// `f2 = sum_i sum_sigma sgn(sigma) X_{sigma(i), m+i} (x) prod_{l != i} X_{sigma(l), m+l}` in `C(g, g*)`.
pub fn f2_cochain<S: Scalar>(kd: &KoszulDifferential<S>, m: usize) -> Cochain<S> {
    let d = 2 * m;
    let lam = &kd.lambda;
    let mut c = vec![AlgebraElement::zero(); d * d];
    for (perm, odd) in permutations(m) {
        for i in 0..m {
            let mut t = AlgebraElement::one(d * d);
            for (l, &s) in perm.iter().enumerate() {
                if l != i {
                    t = lam.mul(&t, &x(d, s, m + l));
                }
            }
            c[perm[i] * d + m + i].add_scaled(&t, &sign::<S>(odd));
        }
    }
    c
}

/// `d(f1) = str * f1` in `Lambda_s(gl(m|m)*)` against an arbitrary trace form.
pub fn check_f1_with_trace<S: Scalar>(m: usize, trace: &AlgebraElement<S>) -> Result<bool, AlgebraError> {
    let g = build_gl::<S>(m, m)?;
    let kd = KoszulDifferential::new(&g, Coefficients::trivial(&g))?;
    let f1 = f1_cochain(&kd.lambda, m);
    Ok(kd.apply_lambda(&f1) == kd.lambda.mul(trace, &f1))
}

pub fn verify_f1_identity<S: Scalar>(m: usize) -> Result<bool, AlgebraError> {
    check_f1_with_trace(m, &gl_supertrace::<S>(m))
}

fn str_cochain<S: Scalar>(kd: &KoszulDifferential<S>, m: usize, f: &AlgebraElement<S>) -> Cochain<S> {
    let d = 2 * m;
    let mut c = vec![AlgebraElement::zero(); d * d];
    for r in 0..m {
        c[r * d + r].add_scaled(f, &S::one());
        c[(r + m) * d + r + m].add_scaled(f, &-S::one());
    }
    let _ = kd;
    c
}

/// `d(f2) = -str (x) f1 + (-1)^{m-1} f2 * str` in `C(gl(m|m), gl(m|m)*)`.
pub fn verify_f2_identity<S: Scalar>(m: usize) -> Result<bool, AlgebraError> {
    let g = build_gl::<S>(m, m)?;
    let kd = KoszulDifferential::new(&g, Coefficients::gl_coadjoint(&g, m, m))?;
    let f1 = f1_cochain(&kd.lambda, m);
    let f2 = f2_cochain(&kd, m);
    let st = gl_supertrace::<S>(m);
    let lhs = kd.apply(&f2);
    let a = str_cochain(&kd, m, &f1);
    let b = kd.mul_right(&f2, &st);
    let sb = sign::<S>((m - 1) % 2 == 1);
    let rhs: Cochain<S> = a.iter().zip(&b).map(|(u, v)| u.scaled(&-S::one()).plus(&v.scaled(&sb))).collect();
    Ok(lhs == rhs)
}

/// `d(-f2 f1^{p-1}) = str (x) f1^p`.
pub fn verify_f2_consequence<S: Scalar>(m: usize) -> Result<bool, AlgebraError> {
    let p = S::characteristic();
    if p == 0 {
        return Err(AlgebraError::InvalidParameters("positive characteristic required".into()));
    }
    let g = build_gl::<S>(m, m)?;
    let kd = KoszulDifferential::new(&g, Coefficients::gl_coadjoint(&g, m, m))?;
    let f1 = f1_cochain(&kd.lambda, m);
    let f2 = f2_cochain(&kd, m);
    let f1pm1 = kd.lambda.pow(&f1, p - 1);
    let c: Cochain<S> = kd.mul_right(&f2, &f1pm1).iter().map(|u| u.scaled(&-S::one())).collect();
    let lhs = kd.apply(&c);
    let rhs = str_cochain(&kd, m, &kd.lambda.mul(&f1pm1, &f1));
    Ok(lhs == rhs)
}

/// Restriction `Lambda_s(g*) -> Lambda_s(a*)` along an embedding whose columns are the images of
/// the basis of `a`; one matrix per degree `0..=max_degree`, checked to commute with `d`.
pub fn restrict_cochains<S: Scalar>(
    g: &LieSuperalgebra<S>,
    a: &LieSuperalgebra<S>,
    embedding: &Matrix<S>,
    max_degree: u32,
) -> Result<Vec<Matrix<S>>, AlgebraError> {
    let (n, k) = (g.dim(), a.dim());
    if embedding.rows() != n || embedding.cols() != k {
        return Err(AlgebraError::NotSubalgebra("embedding shape".into()));
    }
    for j in 0..k {
        let col = embedding.column(j);
        if col.iter().enumerate().any(|(i, c)| !c.is_zero() && g.odd[i] != a.odd[j]) {
            return Err(AlgebraError::NotSubalgebra(format!("basis vector {j} changes parity")));
        }
    }
    for i in 0..k {
        for j in 0..k {
            let lhs = embedding.mul_vec(&a.bracket(&a.basis_vector(i), &a.basis_vector(j)))?;
            let rhs = g.bracket(&embedding.column(i), &embedding.column(j));
            if lhs != rhs {
                return Err(AlgebraError::NotSubalgebra(format!("bracket of {i}, {j} not preserved")));
            }
        }
    }
    let src = KoszulComplex::trivial(g, max_degree)?;
    let tgt = KoszulComplex::trivial(a, max_degree)?;
    let lam_a = &tgt.differential.lambda;
    let images: Vec<AlgebraElement<S>> = (0..n)
        .map(|i| {
            let mut e = AlgebraElement::zero();
            for j in 0..k {
                e.add_scaled(&AlgebraElement::generator(k, j), embedding.get(i, j));
            }
            e
        })
        .collect();
    let mut maps = Vec::new();
    for d in 0..=max_degree as usize {
        let cols: Vec<Vec<S>> = src.bases[d]
            .iter()
            .map(|(_, m)| {
                let mut img = AlgebraElement::one(k);
                for (i, &e) in m.exps().iter().enumerate() {
                    for _ in 0..e {
                        img = lam_a.mul(&img, &images[i]);
                    }
                }
                tgt.coordinates(d as u32, &vec![img])
            })
            .collect::<Result<_, _>>()?;
        maps.push(Matrix::from_columns(tgt.bases[d].len(), &cols));
    }
    for d in 0..max_degree as usize {
        if maps[d + 1].mul(&src.matrices[d])? != tgt.matrices[d].mul(&maps[d])? {
            return Err(AlgebraError::IdentityFailed(format!("restriction does not commute with d in degree {d}")));
        }
    }
    Ok(maps)
}
