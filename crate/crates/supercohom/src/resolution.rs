//! The free resolution `X(g) = V(g) (x) A(g) (x) Gamma(g_0[2])` of the trivial module for a
//! restricted Lie superalgebra with abelian even part, and the dual complex computing
//! `H(V(g), k)`.
//!
//! `A(g) = Lambda(g_0) (x) Gamma(g_1)`; in monomials the exterior generators `<x>` come first,
//! then the divided powers `g_b(y)`, then the degree-2 divided powers `g_c(x)`.
//! On `W(g) = V(g) # A(g)`:
//! `d(1 (x) a) = sum_z z (x) i_z(a) - 1/2 sum_{z,z'} 1 (x) [z,z'] i_{z'} i_z(a)`,
//! with `i_z` the contraction derivation. The twisted differential is
//! `d_t(w (x) g) = d(w) (x) g + (-1)^{deg w} sum_i [w t(g_1(x_i))] (x) g/g_1(x_i)`,
//! `t(g_1(x)) = x^{p-1}<x> - <x^[p]>`, and `t` vanishes on `Gamma^{>=2}`.

use std::collections::{BTreeMap, HashMap};

use crate::error::AlgebraError;
use crate::koszul::CohomologyTable;
use crate::lie::{LieSuperalgebra, Pbw, PbwElement};
use crate::linalg::{binomial, sign, Matrix, Scalar};
use crate::superalg::{AlgebraElement, GeneratorSpec, GradedAlgebra, SuperMonomial};

/// `sum v (x) m` with `v` in V(g) and `m` a monomial of `A(g) (x) Gamma(g_0[2])`.
pub type XElement<S> = BTreeMap<SuperMonomial, PbwElement<S>>;

fn x_add<S: Scalar>(x: &mut XElement<S>, m: SuperMonomial, v: &PbwElement<S>, c: &S) {
    if c.is_zero() || v.is_zero() {
        return;
    }
    let e = x.entry(m.clone()).or_insert_with(PbwElement::zero);
    e.add_scaled(v, c);
    if e.is_zero() {
        x.remove(&m);
    }
}

/// Generator layout of `A(g) (x) Gamma(g_0[2])` and its dual.
#[derive(Clone, Debug)]
pub struct MayLayout {
    pub algebra: GradedAlgebra,
    pub dual: GradedAlgebra,
    /// Generator index of the `A(g)` copy of each basis element.
    pub a_index: Vec<usize>,
    /// Generator index of the `Gamma(g_0[2])` copy of each even basis element.
    pub gamma_index: Vec<Option<usize>>,
    pub n_exterior: usize,
    pub n_a: usize,
}

impl MayLayout {
    pub fn new<S: Scalar>(g: &LieSuperalgebra<S>) -> Self {
        let ev = g.even_indices();
        let od = g.odd_indices();
        let mut gens = Vec::new();
        let mut dual = Vec::new();
        let mut a_index = vec![0; g.dim()];
        let mut gamma_index = vec![None; g.dim()];
        for &i in &ev {
            a_index[i] = gens.len();
            gens.push(GeneratorSpec::new(g.names[i].clone(), false, 1));
            dual.push(GeneratorSpec::new(format!("{}*", g.names[i]), false, 1));
        }
        for &i in &od {
            a_index[i] = gens.len();
            gens.push(GeneratorSpec::divided(g.names[i].clone(), true, 1));
            dual.push(GeneratorSpec::new(format!("{}*", g.names[i]), true, 1));
        }
        let n_a = gens.len();
        for &i in &ev {
            gamma_index[i] = Some(gens.len());
            gens.push(GeneratorSpec::divided(g.names[i].clone(), false, 2));
            dual.push(GeneratorSpec::new(format!("{}*", g.names[i]), false, 2));
        }
        MayLayout {
            algebra: GradedAlgebra::new(gens).expect("positive degrees"),
            dual: GradedAlgebra::new(dual).expect("positive degrees"),
            a_index,
            gamma_index,
            n_exterior: ev.len(),
            n_a,
        }
    }

    /// `(sum a_i, sum b, sum c_i)`: exterior, odd and Gamma weights.
    pub fn weights(&self, m: &SuperMonomial) -> (u32, u32, u32) {
        let e = m.exps();
        (
            e[..self.n_exterior].iter().sum(),
            e[self.n_exterior..self.n_a].iter().sum(),
            e[self.n_a..].iter().sum(),
        )
    }

    /// Sign identifying the dual of a monomial with the same monomial in
    /// `Lambda_s(g*) (x) S(g_0*[2])`.
    pub fn dual_sign(&self, m: &SuperMonomial) -> bool {
        let (a, b, c) = self.weights(m);
        ((a * b) + a * a.saturating_sub(1) / 2 + c) % 2 == 1
    }
}

/// Images of `g_1(x_i)` for the even basis elements; zero on `Gamma^{>=2}`.
#[derive(Clone, Debug)]
pub struct TwistingCochain<S: Scalar> {
    pub images: Vec<Option<XElement<S>>>,
}

/// `t(g_1(x)) = x^{p-1}<x> - <x^[p]>`, with the checks `e t = 0`, `d t = 0` and `d (t u t) = 0`.
pub fn build_twisting_cochain<S: Scalar>(g: &LieSuperalgebra<S>) -> Result<TwistingCochain<S>, AlgebraError> {
    let res = MayResolution::new_unchecked(g, 2)?;
    Ok(res.twisting.clone())
}

pub struct MayResolution<'a, S: Scalar> {
    pub g: &'a LieSuperalgebra<S>,
    pub pbw: Pbw<'a, S>,
    pub layout: MayLayout,
    pub twisting: TwistingCochain<S>,
    pub truncation: u32,
    /// Free V(g)-basis of `X_n`.
    pub bases: Vec<Vec<SuperMonomial>>,
    /// `d_t(1 (x) m)` for each basis monomial of degree `n >= 1`.
    pub differentials: Vec<Vec<XElement<S>>>,
}

impl<'a, S: Scalar> MayResolution<'a, S> {
    fn new_unchecked(g: &'a LieSuperalgebra<S>, truncation: u32) -> Result<Self, AlgebraError> {
        let p = S::characteristic();
        if p == 0 || !g.is_restricted() {
            return Err(AlgebraError::InvalidParameters("a restricted algebra in positive characteristic is required".into()));
        }
        if !g.even_part_abelian() {
            return Err(AlgebraError::OutOfScope("twisting cochain for non-abelian even part".into()));
        }
        let pbw = Pbw::new(g, true)?;
        let layout = MayLayout::new(g);
        let n = layout.algebra.ngens();
        let mut images = vec![None; g.dim()];
        for i in g.even_indices() {
            let mut t = XElement::new();
            let mut xp = pbw.one();
            for _ in 0..p - 1 {
                xp = pbw.mul_elem_gen(&xp, pbw.position(i));
            }
            x_add(&mut t, SuperMonomial::generator(n, layout.a_index[i]), &xp, &S::one());
            for (k, c) in g.pmap_basis(i)?.iter().enumerate() {
                x_add(&mut t, SuperMonomial::generator(n, layout.a_index[k]), &pbw.one(), &-c.clone());
            }
            images[i] = Some(t);
        }
        Ok(MayResolution {
            g,
            pbw,
            layout,
            twisting: TwistingCochain { images },
            truncation,
            bases: Vec::new(),
            differentials: Vec::new(),
        })
    }

    fn a_element(&self, v: &[S]) -> AlgebraElement<S> {
        let n = self.layout.algebra.ngens();
        let mut e = AlgebraElement::zero();
        for (k, c) in v.iter().enumerate() {
            e.add_scaled(&AlgebraElement::generator(n, self.layout.a_index[k]), c);
        }
        e
    }

    fn contract(&self, z: usize, a: &AlgebraElement<S>) -> AlgebraElement<S> {
        let n = self.layout.algebra.ngens();
        let gi = self.layout.a_index[z];
        let img = |k: usize| if k == gi { AlgebraElement::one(n) } else { AlgebraElement::zero() };
        self.layout.algebra.derivation_elem((true, self.g.odd[z]), &img, a)
    }

    /// Right adjoint action of an even basis element on `A(g)`.
    fn right_ad(&self, x: usize, a: &AlgebraElement<S>) -> AlgebraElement<S> {
        let g = self.g;
        let imgs: Vec<AlgebraElement<S>> = (0..self.layout.algebra.ngens())
            .map(|k| match self.layout.a_index.iter().position(|&t| t == k) {
                Some(w) => self.a_element(&g.bracket(&g.basis_vector(w), &g.basis_vector(x))),
                None => AlgebraElement::zero(),
            })
            .collect();
        let img = |k: usize| imgs[k].clone();
        self.layout.algebra.derivation_elem((false, false), &img, a)
    }

    /// `d` on `W(g)`, for `1 (x) m`; Gamma factors ride along.
    pub fn koszul_part(&self, m: &SuperMonomial) -> XElement<S> {
        let g = self.g;
        let mut out = XElement::new();
        let a = AlgebraElement::monomial(m.clone(), S::one());
        let half = S::from_i64(2).inv().expect("odd characteristic");
        let mut contractions = Vec::with_capacity(g.dim());
        for z in 0..g.dim() {
            let iz = self.contract(z, &a);
            for (mm, c) in iz.terms() {
                x_add(&mut out, mm.clone(), &self.pbw.generator(z), c);
            }
            contractions.push(iz);
        }
        for z in 0..g.dim() {
            if contractions[z].is_zero() {
                continue;
            }
            for zp in 0..g.dim() {
                let br = g.bracket_basis(z, zp);
                if br.is_empty() {
                    continue;
                }
                let inner = self.contract(zp, &contractions[z]);
                if inner.is_zero() {
                    continue;
                }
                let mut v = g.zero();
                for (k, c) in br {
                    v[*k] = c.clone();
                }
                let prod = self.layout.algebra.mul(&self.a_element(&v), &inner);
                for (mm, c) in prod.terms() {
                    x_add(&mut out, mm.clone(), &self.pbw.one(), &-(c.clone() * half.clone()));
                }
            }
        }
        out
    }

    /// `d_t(1 (x) m)`.
    pub fn dt_basis(&self, m: &SuperMonomial) -> XElement<S> {
        let mut out = self.koszul_part(m);
        let lay = &self.layout;
        let alg = &lay.algebra;
        let a_mono = m.restrict(|k| k < lay.n_a);
        let (wa, wb, _) = lay.weights(m);
        let s = sign::<S>((wa + wb) % 2 == 1);
        let a = AlgebraElement::monomial(a_mono, S::one());
        for i in self.g.even_indices() {
            let gi = lay.gamma_index[i].expect("even");
            let c = m.exponent(gi);
            if c == 0 {
                continue;
            }
            let rest = AlgebraElement::monomial(m.restrict(|k| k >= lay.n_a).with_exponent(gi, c - 1), S::one());
            let t = self.twisting.images[i].as_ref().expect("even");
            for (b, v) in t {
                let b_el = AlgebraElement::monomial(b.clone(), S::one());
                for (vm, vc) in v.terms() {
                    // (1 (x) a)(x^k (x) b) = sum_j C(k, j) x^j (x) (a <| x^{k-j}) b for commuting even x's
                    self.smash_terms(&a, vm, &mut |u: &SuperMonomial, ar: &AlgebraElement<S>, coef: S| {
                        let prod = alg.mul(&alg.mul(ar, &b_el), &rest);
                        let u_el = PbwElement::monomial(u.clone(), S::one());
                        for (mm, cc) in prod.terms() {
                            x_add(&mut out, mm.clone(), &u_el, &(cc.clone() * coef.clone() * vc.clone() * s.clone()));
                        }
                    });
                }
            }
        }
        out
    }

    /// Expand `a . v` for a PBW monomial `v` in the even generators.
    fn smash_terms(&self, a: &AlgebraElement<S>, v: &SuperMonomial, f: &mut dyn FnMut(&SuperMonomial, &AlgebraElement<S>, S)) {
        let ev = self.g.even_indices();
        let n = self.g.dim();
        // iterate over all splittings j_l <= k_l
        let ks: Vec<u32> = ev.iter().map(|&i| v.exponent(self.pbw.position(i))).collect();
        let mut js = vec![0u32; ks.len()];
        loop {
            let mut coef = S::one();
            let mut u = SuperMonomial::one(n);
            let mut ar = a.clone();
            for (l, &i) in ev.iter().enumerate() {
                coef *= binomial::<S>(ks[l] as u64, js[l] as u64);
                u = u.with_exponent(self.pbw.position(i), js[l]);
                for _ in 0..(ks[l] - js[l]) {
                    ar = self.right_ad(i, &ar);
                }
            }
            if !coef.is_zero() && !ar.is_zero() {
                f(&u, &ar, coef);
            }
            let mut l = 0;
            loop {
                if l == js.len() {
                    return;
                }
                if js[l] < ks[l] {
                    js[l] += 1;
                    break;
                }
                js[l] = 0;
                l += 1;
            }
        }
    }

    /// `sum_m v_m d_t(1 (x) m)`.
    pub fn apply(&self, x: &XElement<S>) -> XElement<S> {
        let mut out = XElement::new();
        for (m, v) in x {
            for (mm, w) in &self.dt_basis(m) {
                x_add(&mut out, mm.clone(), &self.pbw.mul(v, w), &S::one());
            }
        }
        out
    }

    pub fn augmentation(v: &PbwElement<S>, n: usize) -> S {
        v.coefficient(&SuperMonomial::one(n))
    }

    pub fn format(&self, x: &XElement<S>) -> String {
        if x.is_empty() {
            return "0".into();
        }
        x.iter()
            .map(|(m, v)| format!("({}) {}", self.pbw.format(v), self.layout.algebra.format_monomial(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn check_twisting(&self) -> Result<(), AlgebraError> {
        let ev = self.g.even_indices();
        for &i in &ev {
            let t = self.twisting.images[i].as_ref().expect("even");
            // t lands in homological degree 1, so e t = 0 by degree; d t = x^p - x^[p]
            if !self.apply_w(t).is_empty() {
                return Err(AlgebraError::IdentityFailed(format!("d t(g_1({})) != 0", self.g.names[i])));
            }
        }
        // d (t u t) on Gamma^2: products t_i t_j in W(g_0)
        for (k, &i) in ev.iter().enumerate() {
            for &j in &ev[k..] {
                let prod = self.w_product(self.twisting.images[i].as_ref().expect("even"), self.twisting.images[j].as_ref().expect("even"));
                if !self.apply_w(&prod).is_empty() {
                    return Err(AlgebraError::IdentityFailed(format!(
                        "d (t u t) != 0 at g_1({}) g_1({})",
                        self.g.names[i], self.g.names[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// `d` on `W(g)` extended V-linearly.
    fn apply_w(&self, x: &XElement<S>) -> XElement<S> {
        let mut out = XElement::new();
        for (m, v) in x {
            for (mm, w) in &self.koszul_part(m) {
                x_add(&mut out, mm.clone(), &self.pbw.mul(v, w), &S::one());
            }
        }
        out
    }

    /// Product in `W(g_0) = V(g_0) (x) Lambda(g_0)` (commutative smash for abelian `g_0`).
    fn w_product(&self, a: &XElement<S>, b: &XElement<S>) -> XElement<S> {
        let mut out = XElement::new();
        for (ma, va) in a {
            for (mb, vb) in b {
                if let Some((c, m)) = self.layout.algebra.mul_mono::<S>(ma, mb) {
                    x_add(&mut out, m, &self.pbw.mul(va, vb), &c);
                }
            }
        }
        out
    }

    /// Field-level matrix of `d_n: X_n -> X_{n-1}` through the PBW basis of V(g).
    pub fn field_matrix(&self, n: usize) -> Matrix<S> {
        let vb = self.pbw.restricted_basis();
        let vidx: HashMap<&SuperMonomial, usize> = vb.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let tgt: HashMap<&SuperMonomial, usize> = self.bases[n - 1].iter().enumerate().map(|(i, m)| (m, i)).collect();
        let dv = vb.len();
        let mut mat = Matrix::zeros(dv * self.bases[n - 1].len(), dv * self.bases[n].len());
        for (k, _) in self.bases[n].iter().enumerate() {
            let d = &self.differentials[n][k];
            for (bi, b) in vb.iter().enumerate() {
                let bel = PbwElement::monomial(b.clone(), S::one());
                for (mm, v) in d {
                    let prod = self.pbw.mul(&bel, v);
                    for (pm, c) in prod.terms() {
                        mat.set(tgt[mm] * dv + vidx[pm], k * dv + bi, c.clone());
                    }
                }
            }
        }
        mat
    }

    /// `dim H_i(X)` for `0 <= i < truncation`.
    pub fn homology(&self) -> Vec<usize> {
        let dv = self.pbw.restricted_basis().len();
        let ranks: Vec<usize> =
            (0..=self.truncation as usize).map(|n| if n == 0 { 0 } else { self.field_matrix(n).rank() }).collect();
        (0..self.truncation as usize).map(|i| dv * self.bases[i].len() - ranks[i] - ranks[i + 1]).collect()
    }

    /// Exactness in degrees `1..truncation` and `H_0 = k`.
    pub fn check_exactness(&self) -> Result<(), AlgebraError> {
        for (i, h) in self.homology().into_iter().enumerate() {
            let want = if i == 0 { 1 } else { 0 };
            if h != want {
                return Err(AlgebraError::IdentityFailed(format!("H_{i}(X) has dimension {h}")));
            }
        }
        Ok(())
    }

    /// `d_t^2 = 0` on every basis monomial of degree `2..=truncation`.
    pub fn check_square_zero(&self) -> Result<(), AlgebraError> {
        for n in 2..=self.truncation as usize {
            for (k, m) in self.bases[n].iter().enumerate() {
                let mut out = XElement::new();
                for (mm, v) in &self.differentials[n][k] {
                    let idx = self.bases[n - 1].iter().position(|b| b == mm).expect("degree drops by one");
                    for (m2, w) in &self.differentials[n - 1][idx] {
                        x_add(&mut out, m2.clone(), &self.pbw.mul(v, w), &S::one());
                    }
                }
                if !out.is_empty() {
                    return Err(AlgebraError::IdentityFailed(format!(
                        "d_t^2 != 0 on {}",
                        self.layout.algebra.format_monomial(m)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Dual differential `C^n -> C^{n+1}` on the monomial basis of `Lambda_s(g*) (x) S(g_0*[2])`.
    pub fn dual_matrix(&self, n: usize) -> Matrix<S> {
        let nv = self.g.dim();
        let src: HashMap<&SuperMonomial, usize> = self.bases[n].iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = Matrix::zeros(self.bases[n + 1].len(), self.bases[n].len());
        for (r, tm) in self.bases[n + 1].iter().enumerate() {
            for (sm, v) in &self.differentials[n + 1][r] {
                let e = Self::augmentation(v, nv);
                if !e.is_zero() {
                    let s = sign::<S>(self.layout.dual_sign(tm) ^ self.layout.dual_sign(sm));
                    mat.set(r, src[sm], e * s);
                }
            }
        }
        mat
    }

    /// Dual complex up to degree `truncation - 1`, with `(d_t*)^2 = 0` checked.
    pub fn dual_complex(&self) -> Result<DualComplex<S>, AlgebraError> {
        let matrices: Vec<Matrix<S>> = (0..self.truncation as usize).map(|n| self.dual_matrix(n)).collect();
        for n in 0..matrices.len().saturating_sub(1) {
            if !matrices[n + 1].mul(&matrices[n])?.is_zero() {
                return Err(AlgebraError::IdentityFailed(format!("(d_t*)^2 != 0 from degree {n}")));
            }
        }
        Ok(DualComplex { algebra: self.layout.dual.clone(), bases: self.bases.clone(), matrices, truncation: self.truncation })
    }
}

/// Build `X(g)` up to homological degree `truncation`; `d_t^2 = 0` and the twisting cochain
/// are always checked, exactness only on request.
pub fn build_resolution<S: Scalar>(g: &LieSuperalgebra<S>, truncation: u32, check_exact: bool) -> Result<MayResolution<'_, S>, AlgebraError> {
    let mut r = MayResolution::new_unchecked(g, truncation)?;
    r.check_twisting()?;
    r.bases = (0..=truncation).map(|n| r.layout.algebra.monomial_basis(n)).collect();
    let mut diffs = vec![Vec::new()];
    for n in 1..=truncation as usize {
        diffs.push(r.bases[n].iter().map(|m| r.dt_basis(m)).collect());
    }
    r.differentials = diffs;
    r.check_square_zero()?;
    if check_exact {
        r.check_exactness()?;
    }
    Ok(r)
}

#[derive(Clone, Debug)]
pub struct DualComplex<S> {
    pub algebra: GradedAlgebra,
    pub bases: Vec<Vec<SuperMonomial>>,
    /// `d_t*: C^n -> C^{n+1}` for `n < truncation`.
    pub matrices: Vec<Matrix<S>>,
    pub truncation: u32,
}

impl<S: Scalar> DualComplex<S> {
    pub fn coordinates(&self, n: usize, a: &AlgebraElement<S>) -> Result<Vec<S>, AlgebraError> {
        let mut v = vec![S::zero(); self.bases[n].len()];
        for (m, c) in a.terms() {
            let i = self.bases[n].iter().position(|b| b == m).ok_or_else(|| AlgebraError::Grading(format!("not of degree {n}")))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn element(&self, n: usize, v: &[S]) -> AlgebraElement<S> {
        let mut e = AlgebraElement::zero();
        for (m, c) in self.bases[n].iter().zip(v) {
            e.add_term(m.clone(), c.clone());
        }
        e
    }

    /// `d_t*` on a homogeneous cochain of degree `n`.
    pub fn apply(&self, n: usize, a: &AlgebraElement<S>) -> Result<AlgebraElement<S>, AlgebraError> {
        if n >= self.matrices.len() {
            return Err(AlgebraError::Truncation(n + 1, self.truncation as usize));
        }
        let v = self.coordinates(n, a)?;
        Ok(self.element(n + 1, &self.matrices[n].mul_vec(&v)?))
    }

    pub fn is_cocycle(&self, n: usize, a: &AlgebraElement<S>) -> Result<bool, AlgebraError> {
        Ok(self.apply(n, a)?.is_zero())
    }

    pub fn is_coboundary(&self, n: usize, a: &AlgebraElement<S>) -> Result<bool, AlgebraError> {
        let v = self.coordinates(n, a)?;
        if n == 0 {
            return Ok(v.iter().all(|c| c.is_zero()));
        }
        Ok(self.matrices[n - 1].solve(&v)?.is_some())
    }

    /// `dim H^n` for `n < truncation`.
    pub fn cohomology(&self) -> CohomologyTable {
        let ranks: Vec<usize> = self.matrices.iter().map(|m| m.rank()).collect();
        let dims = (0..self.matrices.len())
            .map(|n| (n as u32, self.bases[n].len() - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] }))
            .collect();
        CohomologyTable { dims, truncation: self.truncation }
    }

    pub fn format(&self, a: &AlgebraElement<S>) -> String {
        self.algebra.format_element(a)
    }
}

/// `dim H^n(V(g), k)` for `n < max_degree`.
pub fn vg_cohomology<S: Scalar>(g: &LieSuperalgebra<S>, max_degree: u32) -> Result<CohomologyTable, AlgebraError> {
    Ok(build_resolution(g, max_degree, false)?.dual_complex()?.cohomology())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    pub name: String,
    pub degree: u32,
    pub is_cocycle: bool,
    pub is_coboundary: bool,
}

/// Classes of `x*` in `S(g_0*[2])` (degree 2) and of `(y*)^p` (degree p).
pub fn edge_subalgebra_classes<S: Scalar>(g: &LieSuperalgebra<S>) -> Result<(Vec<EdgeClass>, Vec<EdgeClass>), AlgebraError> {
    let p = S::characteristic();
    let res = build_resolution(g, p.max(2) + 1, false)?;
    let dual = res.dual_complex()?;
    let n = res.layout.algebra.ngens();
    let mut even = Vec::new();
    for i in g.even_indices() {
        let a = AlgebraElement::generator(n, res.layout.gamma_index[i].expect("even"));
        even.push(EdgeClass {
            name: format!("{}*", g.names[i]),
            degree: 2,
            is_cocycle: dual.is_cocycle(2, &a)?,
            is_coboundary: dual.is_coboundary(2, &a)?,
        });
    }
    let mut odd = Vec::new();
    for i in g.odd_indices() {
        let a = AlgebraElement::monomial(SuperMonomial::one(n).with_exponent(res.layout.a_index[i], p), S::one());
        odd.push(EdgeClass {
            name: format!("({}*)^{}", g.names[i], p),
            degree: p,
            is_cocycle: dual.is_cocycle(p as usize, &a)?,
            is_coboundary: dual.is_coboundary(p as usize, &a)?,
        });
    }
    Ok((even, odd))
}
