//! Point-set varieties over prime fields: self-commuting cones, rank-variety supports,
//! commuting varieties `C_r`, orbit supports for `Lambda(V) # kG`, divisibility, invariants
//! and complexity of minimal resolutions.
//!
//! A variety is its set of rational points plus a membership predicate.

use std::collections::{BTreeMap, HashSet, VecDeque};

use rand::Rng;

use crate::error::AlgebraError;
use crate::lie::{check_supermodule, LieElement, LieSuperalgebra, Pbw, Supermodule};
use crate::linalg::{sign, span_basis, span_dim, Matrix, Scalar, SortKey};

/// Odd-part coefficients, in the order of `g.odd_indices()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConePoint<S> {
    pub coords: Vec<S>,
}

impl<S: Scalar> ConePoint<S> {
    pub fn element(&self, g: &LieSuperalgebra<S>) -> LieElement<S> {
        let mut v = g.zero();
        for (c, i) in self.coords.iter().zip(g.odd_indices()) {
            v[i] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

/// `[x, x] = 0` for odd `x`.
pub fn cone_membership<S: Scalar>(g: &LieSuperalgebra<S>, x: &[S]) -> Result<bool, AlgebraError> {
    if x.len() != g.dim() {
        return Err(AlgebraError::InvalidParameters(format!("element of length {} in dimension {}", x.len(), g.dim())));
    }
    if x.iter().enumerate().any(|(i, c)| !g.odd[i] && !c.is_zero()) {
        return Err(AlgebraError::NotHomogeneous("cone points are odd".into()));
    }
    Ok(g.bracket(x, x).iter().all(|c| c.is_zero()))
}

/// All of `F_p^n`, first coordinate most significant.
pub fn rational_points<S: Scalar>(n: usize, bound: u64) -> Result<Vec<Vec<S>>, AlgebraError> {
    let els = S::elements().ok_or_else(|| AlgebraError::InvalidParameters("point enumeration needs a prime field".into()))?;
    let p = els.len() as u64;
    let total = p
        .checked_pow(n as u32)
        .filter(|&t| t <= bound)
        .ok_or_else(|| AlgebraError::Bound(format!("{p}^{n} points exceed the bound {bound}")))?;
    let mut out = Vec::with_capacity(total as usize);
    for k in 0..total {
        let mut v = vec![S::zero(); n];
        let mut r = k;
        for i in (0..n).rev() {
            v[i] = els[(r % p) as usize].clone();
            r /= p;
        }
        out.push(v);
    }
    Ok(out)
}

pub fn enumerate_cone<S: Scalar>(g: &LieSuperalgebra<S>, bound: u64) -> Result<Vec<ConePoint<S>>, AlgebraError> {
    let mut out = Vec::new();
    for coords in rational_points::<S>(g.odd_indices().len(), bound)? {
        let pt = ConePoint { coords };
        if cone_membership(g, &pt.element(g))? {
            out.push(pt);
        }
    }
    Ok(out)
}

/// Freeness over `Lambda(x)` for `op = rho(x)`; `rho(x)^2 = 0` is asserted.
pub fn free_at_operator<S: Scalar>(op: &Matrix<S>) -> Result<bool, AlgebraError> {
    if !op.mul(op)?.is_zero() {
        return Err(AlgebraError::IdentityFailed("rho(x)^2 != 0".into()));
    }
    Ok(2 * op.rank() == op.rows())
}

pub fn free_over_odd_point<S: Scalar>(g: &LieSuperalgebra<S>, m: &Supermodule<S>, x: &ConePoint<S>) -> Result<bool, AlgebraError> {
    if x.is_zero() {
        return Err(AlgebraError::InvalidParameters("freeness is tested at nonzero points".into()));
    }
    let v = x.element(g);
    if !cone_membership(g, &v)? {
        return Err(AlgebraError::InvalidParameters("not a cone point".into()));
    }
    free_at_operator(&m.act(&v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportReport<S> {
    pub tested_points: usize,
    pub member_points: Vec<ConePoint<S>>,
    pub is_zero_only: bool,
    /// Largest coordinate subspace when the support is a union of them.
    pub dimension_estimate: Option<usize>,
}

impl<S: Scalar> SupportReport<S> {
    pub fn member_set(&self) -> HashSet<Vec<S>> {
        self.member_points.iter().map(|p| p.coords.clone()).collect()
    }
}

/// Support restricted to a given list of cone points; 0 is always a member.
pub fn support_on<S: Scalar>(g: &LieSuperalgebra<S>, m: &Supermodule<S>, cone: &[ConePoint<S>]) -> Result<SupportReport<S>, AlgebraError> {
    let n1 = g.odd_indices().len();
    let mut members = vec![ConePoint { coords: vec![S::zero(); n1] }];
    for x in cone {
        if !x.is_zero() && !free_over_odd_point(g, m, x)? {
            members.push(x.clone());
        }
    }
    let dimension_estimate = coordinate_subspace_dimension(&members, n1);
    Ok(SupportReport { tested_points: cone.len(), is_zero_only: members.len() == 1, member_points: members, dimension_estimate })
}

pub fn support_points<S: Scalar>(g: &LieSuperalgebra<S>, m: &Supermodule<S>, bound: u64) -> Result<SupportReport<S>, AlgebraError> {
    support_on(g, m, &enumerate_cone(g, bound)?)
}

fn coordinate_subspace_dimension<S: Scalar>(members: &[ConePoint<S>], n: usize) -> Option<usize> {
    let p = S::elements()?.len() as u64;
    if n > 16 {
        return None;
    }
    let supp = |x: &ConePoint<S>| -> u32 {
        x.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(0, |acc, (i, _)| acc | (1 << i))
    };
    let masks: Vec<u32> = members.iter().map(supp).collect();
    let full: Vec<u32> = (0..(1u32 << n))
        .filter(|&s| masks.iter().filter(|&&m| m & !s == 0).count() as u64 == p.pow(s.count_ones()))
        .collect();
    if masks.iter().all(|&m| full.iter().any(|&s| m & !s == 0)) {
        full.iter().map(|s| s.count_ones() as usize).max()
    } else {
        None
    }
}

/// Freeness over `Lambda(V)` for pairwise anticommuting square-zero operators:
/// `dim M = 2^{|V|} dim(M / sum_v im rho(v))`.
pub fn free_over_exterior<S: Scalar>(dim: usize, ops: &[Matrix<S>]) -> Result<bool, AlgebraError> {
    for (i, a) in ops.iter().enumerate() {
        for b in &ops[i..] {
            if !a.mul(b)?.add(&b.mul(a)?)?.is_zero() {
                return Err(AlgebraError::InvalidParameters("operators do not supercommute".into()));
            }
        }
    }
    let mut rad = Matrix::zeros(dim, 0);
    for a in ops {
        rad = rad.hstack(a)?;
    }
    let top = dim - rad.rank();
    Ok(1usize.checked_shl(ops.len() as u32).and_then(|t| t.checked_mul(top)) == Some(dim))
}

/// [`free_over_exterior`] for a list of odd elements of `g`.
pub fn free_over_odd_subspace<S: Scalar>(g: &LieSuperalgebra<S>, m: &Supermodule<S>, basis: &[LieElement<S>]) -> Result<bool, AlgebraError> {
    for v in basis {
        if g.parity_of(v) == Some(false) {
            return Err(AlgebraError::NotHomogeneous("odd elements expected".into()));
        }
    }
    let ops: Vec<Matrix<S>> = basis.iter().map(|v| m.act(v)).collect();
    free_over_exterior(m.dim(), &ops)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrTuple<S> {
    pub alphas: Vec<LieElement<S>>,
    pub beta: LieElement<S>,
}

/// Pairwise commuting `alpha_i`, `[alpha_i, beta] = 0`, `alpha_i^[p] = 0` for `i < r - 1`
/// and `alpha_{r-1}^[p] = 1/2 [beta, beta]`.
pub fn cr_membership<S: Scalar>(g: &LieSuperalgebra<S>, t: &CrTuple<S>, r: usize) -> Result<bool, AlgebraError> {
    if r == 0 || t.alphas.len() != r || t.beta.len() != g.dim() || t.alphas.iter().any(|a| a.len() != g.dim()) {
        return Err(AlgebraError::InvalidParameters(format!("tuple shape does not match r = {r}")));
    }
    if t.alphas.iter().any(|a| g.parity_of(a) == Some(true)) || g.parity_of(&t.beta) == Some(false) {
        return Err(AlgebraError::NotHomogeneous("alphas even, beta odd".into()));
    }
    let zero = |v: &[S]| v.iter().all(|c| c.is_zero());
    for (i, a) in t.alphas.iter().enumerate() {
        if !zero(&g.bracket(a, &t.beta)) {
            return Ok(false);
        }
        for b in &t.alphas[i + 1..] {
            if !zero(&g.bracket(a, b)) {
                return Ok(false);
            }
        }
    }
    for a in &t.alphas[..r - 1] {
        if !zero(&g.jacobson_p_power(a)?) {
            return Ok(false);
        }
    }
    let half = S::from_i64(2).inv().ok_or_else(|| AlgebraError::InvalidParameters("characteristic 2".into()))?;
    let bb: Vec<S> = g.bracket(&t.beta, &t.beta).into_iter().map(|c| c * half.clone()).collect();
    Ok(g.jacobson_p_power(&t.alphas[r - 1])? == bb)
}

/// Exhaustive `C_r` over `F_p`, ordered by `(alpha_0, ..., alpha_{r-1}, beta)` coordinates.
pub fn enumerate_cr<S: Scalar>(g: &LieSuperalgebra<S>, r: usize, bound: u64) -> Result<Vec<CrTuple<S>>, AlgebraError> {
    let ev = g.even_indices();
    let od = g.odd_indices();
    let mut out = Vec::new();
    for coords in rational_points::<S>(r * ev.len() + od.len(), bound)? {
        let mut alphas = Vec::with_capacity(r);
        for k in 0..r {
            let mut a = g.zero();
            for (j, &i) in ev.iter().enumerate() {
                a[i] = coords[k * ev.len() + j].clone();
            }
            alphas.push(a);
        }
        let mut beta = g.zero();
        for (j, &i) in od.iter().enumerate() {
            beta[i] = coords[r * ev.len() + j].clone();
        }
        let t = CrTuple { alphas, beta };
        if cr_membership(g, &t, r)? {
            out.push(t);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParityDirectSumReport {
    pub union_law: bool,
    pub pi_invariant: bool,
}

pub fn parity_directsum_checks<S: Scalar>(
    g: &LieSuperalgebra<S>,
    m: &Supermodule<S>,
    n: &Supermodule<S>,
    cone: &[ConePoint<S>],
) -> Result<ParityDirectSumReport, AlgebraError> {
    let sm = support_on(g, m, cone)?.member_set();
    let sn = support_on(g, n, cone)?.member_set();
    let ssum = support_on(g, &m.direct_sum(n), cone)?.member_set();
    let spi = support_on(g, &m.parity_shift(g), cone)?.member_set();
    Ok(ParityDirectSumReport { union_law: ssum == sm.union(&sn).cloned().collect(), pi_invariant: spi == sm })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorReport {
    pub m_points: usize,
    pub n_points: usize,
    pub tensor_points: usize,
    pub intersection_points: usize,
    pub contained: bool,
    pub equal: bool,
}

fn tensor_report<S: Scalar>(sm: &HashSet<Vec<S>>, sn: &HashSet<Vec<S>>, st: &HashSet<Vec<S>>) -> TensorReport {
    let inter: HashSet<Vec<S>> = sm.intersection(sn).cloned().collect();
    TensorReport {
        m_points: sm.len(),
        n_points: sn.len(),
        tensor_points: st.len(),
        intersection_points: inter.len(),
        contained: st.is_subset(&inter),
        equal: *st == inter,
    }
}

/// Supports of `M`, `N` and `M (x) N` on the given cone points.
pub fn tensor_support_check<S: Scalar>(
    g: &LieSuperalgebra<S>,
    m: &Supermodule<S>,
    n: &Supermodule<S>,
    cone: &[ConePoint<S>],
) -> Result<TensorReport, AlgebraError> {
    let sm = support_on(g, m, cone)?.member_set();
    let sn = support_on(g, n, cone)?.member_set();
    let st = support_on(g, &m.tensor(g, n), cone)?.member_set();
    Ok(tensor_report(&sm, &sn, &st))
}

// ---------------------------------------------------------------------------------------------
// Characteristic zero: finite groups acting on an odd space V.

/// A finite matrix group on `V`, enumerated by closure; the identity comes first.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroup<S> {
    pub dim: usize,
    pub elements: Vec<Matrix<S>>,
}

pub const GROUP_CLOSURE_CAP: usize = 10_000;

impl<S: Scalar> FiniteGroup<S> {
    pub fn generate(dim: usize, gens: &[Matrix<S>], cap: usize) -> Result<Self, AlgebraError> {
        if gens.iter().any(|g| g.rows() != dim || g.cols() != dim) {
            return Err(AlgebraError::InvalidParameters("generator shape".into()));
        }
        let mut elements = vec![Matrix::identity(dim)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let h = g.mul(&elements[i])?;
                if !elements.contains(&h) {
                    if elements.len() == cap {
                        return Err(AlgebraError::Bound(format!("group closure exceeds {cap} elements")));
                    }
                    elements.push(h);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        Ok(FiniteGroup { dim, elements })
    }

    pub fn trivial(dim: usize) -> Self {
        FiniteGroup { dim, elements: vec![Matrix::identity(dim)] }
    }

    /// `Z/2` swapping the two coordinates of a plane.
    pub fn swap() -> Self {
        let s = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        FiniteGroup::generate(2, &[s], GROUP_CLOSURE_CAP).expect("order two")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, m: &Matrix<S>) -> Option<usize> {
        self.elements.iter().position(|e| e == m)
    }

    pub fn orbit(&self, v: &[S]) -> Vec<Vec<S>> {
        let mut out: Vec<Vec<S>> = Vec::new();
        for g in &self.elements {
            let w = g.mul_vec(v).expect("shape");
            if !out.contains(&w) {
                out.push(w);
            }
        }
        out
    }

    /// Lexicographically minimal vector of the orbit.
    pub fn canonical(&self, v: &[S]) -> Vec<S> {
        self.orbit(v).into_iter().min_by_key(|w| w.iter().map(|c| c.sort_key()).collect::<Vec<SortKey>>()).expect("nonempty")
    }
}

/// A `Lambda(V) # kG`-module: odd operators for a basis of `V`, one even operator per group element.
#[derive(Clone, Debug, PartialEq)]
pub struct SmashModule<S> {
    pub parity: Vec<bool>,
    pub odd_ops: Vec<Matrix<S>>,
    pub group_ops: Vec<Matrix<S>>,
}

fn exterior_left<S: Scalar>(i: usize, mask: usize) -> Option<(S, usize)> {
    if mask & (1 << i) != 0 {
        return None;
    }
    Some((sign::<S>((mask & ((1 << i) - 1)).count_ones() % 2 == 1), mask | (1 << i)))
}

fn exterior_right<S: Scalar>(i: usize, mask: usize) -> Option<(S, usize)> {
    if mask & (1 << i) != 0 {
        return None;
    }
    Some((sign::<S>((mask >> (i + 1)).count_ones() % 2 == 1), mask | (1 << i)))
}

/// Action of `g` on `Lambda(V)` in the subset basis.
fn exterior_group_matrix<S: Scalar>(g: &Matrix<S>) -> Matrix<S> {
    let d = g.rows();
    let n = 1usize << d;
    let mut out = Matrix::zeros(n, n);
    for mask in 0..n {
        let mut el: BTreeMap<usize, S> = BTreeMap::from([(0, S::one())]);
        for j in (0..d).filter(|j| mask & (1 << j) != 0) {
            let mut next = BTreeMap::new();
            for (m, c) in &el {
                for i in 0..d {
                    let gij = g.get(i, j);
                    if gij.is_zero() {
                        continue;
                    }
                    if let Some((s, mm)) = exterior_right::<S>(i, *m) {
                        let e = next.entry(mm).or_insert_with(S::zero);
                        *e += c.clone() * gij.clone() * s;
                    }
                }
            }
            el = next;
        }
        for (m, c) in el {
            out.set(m, mask, c);
        }
    }
    out
}

impl<S: Scalar> SmashModule<S> {
    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn sdim(&self) -> i64 {
        self.parity.iter().map(|&o| if o { -1 } else { 1 }).sum()
    }

    /// `rho(v)` for `v` in `V`.
    pub fn act(&self, v: &[S]) -> Matrix<S> {
        let n = self.dim();
        let mut acc = Matrix::zeros(n, n);
        for (c, m) in v.iter().zip(&self.odd_ops) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c)).expect("square");
            }
        }
        acc
    }

    pub fn trivial(group: &FiniteGroup<S>, odd: bool) -> Self {
        SmashModule {
            parity: vec![odd],
            odd_ops: vec![Matrix::zeros(1, 1); group.dim],
            group_ops: vec![Matrix::identity(1); group.order()],
        }
    }

    /// `Lambda(V)` with `G` acting through `V`.
    pub fn exterior(group: &FiniteGroup<S>) -> Self {
        let d = group.dim;
        let n = 1usize << d;
        let odd_ops = (0..d)
            .map(|i| {
                let mut m = Matrix::zeros(n, n);
                for mask in 0..n {
                    if let Some((s, mm)) = exterior_left::<S>(i, mask) {
                        m.set(mm, mask, s);
                    }
                }
                m
            })
            .collect();
        SmashModule {
            parity: (0..n).map(|m| m.count_ones() % 2 == 1).collect(),
            odd_ops,
            group_ops: group.elements.iter().map(exterior_group_matrix).collect(),
        }
    }

    /// The regular module of `Lambda(V) # kG`, basis `a (x) g`.
    pub fn regular(group: &FiniteGroup<S>) -> Result<Self, AlgebraError> {
        let ext = Self::exterior(group);
        let (na, ng) = (ext.dim(), group.order());
        let idx = |a: usize, g: usize| a * ng + g;
        let mut odd_ops = Vec::new();
        for op in &ext.odd_ops {
            let mut m = Matrix::zeros(na * ng, na * ng);
            for a in 0..na {
                for b in 0..na {
                    for g in 0..ng {
                        m.set(idx(b, g), idx(a, g), op.get(b, a).clone());
                    }
                }
            }
            odd_ops.push(m);
        }
        let mut group_ops = Vec::new();
        for (h, hm) in group.elements.iter().enumerate() {
            let mut m = Matrix::zeros(na * ng, na * ng);
            for g in 0..ng {
                let hg = group.index_of(&hm.mul(&group.elements[g])?).ok_or_else(|| AlgebraError::InvalidParameters("not closed".into()))?;
                for a in 0..na {
                    for b in 0..na {
                        m.set(idx(b, hg), idx(a, g), ext.group_ops[h].get(b, a).clone());
                    }
                }
            }
            group_ops.push(m);
        }
        let parity = (0..na * ng).map(|k| ext.parity[k / ng]).collect();
        Ok(SmashModule { parity, odd_ops, group_ops })
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        SmashModule {
            parity: self.parity.iter().chain(&o.parity).copied().collect(),
            odd_ops: self.odd_ops.iter().zip(&o.odd_ops).map(|(a, b)| a.direct_sum(b)).collect(),
            group_ops: self.group_ops.iter().zip(&o.group_ops).map(|(a, b)| a.direct_sum(b)).collect(),
        }
    }

    /// `v (a (x) b) = va (x) b + (-1)^{|a|} a (x) vb`; `G` acts diagonally.
    pub fn tensor(&self, o: &Self) -> Self {
        let (n, m) = (self.dim(), o.dim());
        let sgn = Matrix::from_fn(n, n, |r, c| if r == c { sign::<S>(self.parity[r]) } else { S::zero() });
        SmashModule {
            parity: (0..n * m).map(|k| self.parity[k / m] ^ o.parity[k % m]).collect(),
            odd_ops: self
                .odd_ops
                .iter()
                .zip(&o.odd_ops)
                .map(|(a, b)| a.kronecker(&Matrix::identity(m)).add(&sgn.kronecker(b)).expect("shape"))
                .collect(),
            group_ops: self.group_ops.iter().zip(&o.group_ops).map(|(a, b)| a.kronecker(b)).collect(),
        }
    }

    pub fn parity_shift(&self) -> Self {
        SmashModule {
            parity: self.parity.iter().map(|p| !p).collect(),
            odd_ops: self.odd_ops.iter().map(|a| a.scale(&-S::one())).collect(),
            group_ops: self.group_ops.clone(),
        }
    }

    /// Parity, exterior relations, group law and `g rho(v) g^{-1} = rho(g v)`.
    pub fn check_compatibility(&self, group: &FiniteGroup<S>) -> Result<(), AlgebraError> {
        let bad = |s: &str| Err(AlgebraError::IdentityFailed(format!("smash module: {s}")));
        if self.odd_ops.len() != group.dim || self.group_ops.len() != group.order() {
            return bad("operator count");
        }
        let n = self.dim();
        for op in self.odd_ops.iter().chain(&self.group_ops) {
            if op.rows() != n || op.cols() != n {
                return bad("operator shape");
            }
        }
        for a in &self.odd_ops {
            for r in 0..n {
                for c in 0..n {
                    if self.parity[r] == self.parity[c] && !a.get(r, c).is_zero() {
                        return bad("odd operator preserves parity");
                    }
                }
            }
            for b in &self.odd_ops {
                if !a.mul(b)?.add(&b.mul(a)?)?.is_zero() {
                    return bad("odd operators do not anticommute");
                }
            }
        }
        for (gi, g) in self.group_ops.iter().enumerate() {
            for r in 0..n {
                for c in 0..n {
                    if self.parity[r] != self.parity[c] && !g.get(r, c).is_zero() {
                        return bad("group operator changes parity");
                    }
                }
            }
            for (hi, h) in self.group_ops.iter().enumerate() {
                let gh = group.elements[gi].mul(&group.elements[hi])?;
                let k = group.index_of(&gh).ok_or_else(|| AlgebraError::InvalidParameters("not closed".into()))?;
                if g.mul(h)? != self.group_ops[k] {
                    return bad("group law");
                }
            }
            for i in 0..group.dim {
                let gv = group.elements[gi].column(i);
                if g.mul(&self.odd_ops[i])? != self.act(&gv).mul(g)? {
                    return bad("equivariance");
                }
            }
        }
        if self.group_ops.first().is_some_and(|e| *e != Matrix::identity(n)) {
            return bad("identity acts nontrivially");
        }
        Ok(())
    }

    /// Parity-preserving change of basis `P rho P^{-1}`.
    pub fn conjugate(&self, p: &Matrix<S>) -> Result<Self, AlgebraError> {
        let pinv = p.inverse().ok_or_else(|| AlgebraError::InvalidParameters("singular change of basis".into()))?;
        let conj = |a: &Matrix<S>| p.mul(a).and_then(|x| x.mul(&pinv));
        Ok(SmashModule {
            parity: self.parity.clone(),
            odd_ops: self.odd_ops.iter().map(conj).collect::<Result<_, _>>()?,
            group_ops: self.group_ops.iter().map(conj).collect::<Result<_, _>>()?,
        })
    }

    fn all_ops(&self) -> Vec<Matrix<S>> {
        self.odd_ops.iter().chain(&self.group_ops).cloned().collect()
    }

    /// Quotient by the submodule generated by homogeneous vectors.
    pub fn quotient(&self, gens: &[Vec<S>]) -> Result<Self, AlgebraError> {
        let sub = closure(self.dim(), &self.all_ops(), gens);
        let (parity, ops) = quotient_ops(&self.parity, &self.all_ops(), &sub)?;
        let k = self.odd_ops.len();
        Ok(SmashModule { parity, odd_ops: ops[..k].to_vec(), group_ops: ops[k..].to_vec() })
    }
}

/// Span of `gens` closed under `ops`, in reduced echelon form.
pub fn closure<S: Scalar>(dim: usize, ops: &[Matrix<S>], gens: &[Vec<S>]) -> Vec<Vec<S>> {
    let mut basis = span_basis(dim, gens);
    loop {
        let mut all = basis.clone();
        for op in ops {
            for v in &basis {
                all.push(op.mul_vec(v).expect("shape"));
            }
        }
        let next = span_basis(dim, &all);
        if next.len() == basis.len() {
            return basis;
        }
        basis = next;
    }
}

/// Operators on `M / W` using a complement of standard basis vectors.
fn quotient_ops<S: Scalar>(parity: &[bool], ops: &[Matrix<S>], sub: &[Vec<S>]) -> Result<(Vec<bool>, Vec<Matrix<S>>), AlgebraError> {
    let n = parity.len();
    let mut span = sub.to_vec();
    let mut comp = Vec::new();
    for i in 0..n {
        let mut e = vec![S::zero(); n];
        e[i] = S::one();
        span.push(e);
        if span_dim(n, &span) == sub.len() + comp.len() + 1 {
            comp.push(i);
        } else {
            span.pop();
        }
    }
    // columns: complement vectors then the submodule basis
    let cols: Vec<Vec<S>> = comp
        .iter()
        .map(|&i| {
            let mut e = vec![S::zero(); n];
            e[i] = S::one();
            e
        })
        .chain(sub.iter().cloned())
        .collect();
    let basis = Matrix::from_columns(n, &cols);
    let q = comp.len();
    let mut out = Vec::new();
    for op in ops {
        let mut m = Matrix::zeros(q, q);
        for (c, &i) in comp.iter().enumerate() {
            let x = basis.solve(&op.column(i))?.expect("full basis");
            for (r, v) in x.into_iter().take(q).enumerate() {
                m.set(r, c, v);
            }
        }
        out.push(m);
    }
    Ok((comp.iter().map(|&i| parity[i]).collect(), out))
}

/// Operators on a submodule spanned by homogeneous `sub`.
fn submodule_ops<S: Scalar>(parity: &[bool], ops: &[Matrix<S>], sub: &[Vec<S>]) -> Result<(Vec<bool>, Vec<Matrix<S>>), AlgebraError> {
    let n = parity.len();
    let basis = Matrix::from_columns(n, sub);
    let mut out = Vec::new();
    for op in ops {
        let mut cols = Vec::new();
        for v in sub {
            cols.push(basis.solve(&op.mul_vec(v)?)?.ok_or_else(|| AlgebraError::InvalidParameters("not a submodule".into()))?);
        }
        out.push(Matrix::from_columns(sub.len(), &cols));
    }
    let par = sub
        .iter()
        .map(|v| v.iter().enumerate().find(|(_, c)| !c.is_zero()).map(|(i, _)| parity[i]).unwrap_or(false))
        .collect();
    Ok((par, out))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit<S> {
    pub representative: Vec<S>,
    pub vectors: Vec<Vec<S>>,
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport<S> {
    pub orbits: Vec<Orbit<S>>,
}

impl<S: Scalar> OrbitReport<S> {
    pub fn member_vectors(&self) -> Vec<Vec<S>> {
        self.orbits.iter().filter(|o| o.member).flat_map(|o| o.vectors.clone()).collect()
    }

    pub fn member_set(&self) -> HashSet<Vec<S>> {
        self.member_vectors().into_iter().collect()
    }
}

/// Partition test vectors into `G`-orbits and apply the rank test to each representative.
pub fn char0_support<S: Scalar>(group: &FiniteGroup<S>, m: &SmashModule<S>, test_vectors: &[Vec<S>]) -> Result<OrbitReport<S>, AlgebraError> {
    m.check_compatibility(group)?;
    let mut by_rep: BTreeMap<Vec<SortKey>, Orbit<S>> = BTreeMap::new();
    for v in test_vectors {
        if v.len() != group.dim {
            return Err(AlgebraError::InvalidParameters("test vector length".into()));
        }
        let rep = group.canonical(v);
        let key = rep.iter().map(|c| c.sort_key()).collect();
        let orbit = by_rep.entry(key).or_insert_with(|| Orbit { representative: rep, vectors: Vec::new(), member: false });
        if !orbit.vectors.contains(v) {
            orbit.vectors.push(v.clone());
        }
    }
    let mut orbits: Vec<Orbit<S>> = by_rep.into_values().collect();
    for o in &mut orbits {
        o.member = o.representative.iter().all(|c| c.is_zero()) || !free_at_operator(&m.act(&o.representative))?;
    }
    Ok(OrbitReport { orbits })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    /// `dim V` minus the dimension of the span of the detected support.
    pub codim: usize,
    pub dim: usize,
    pub sdim: i64,
    pub divides: bool,
    pub sdim_vanishes: bool,
}

impl DivisibilityReport {
    pub fn passed(&self) -> bool {
        self.divides && (self.codim == 0 || self.sdim_vanishes)
    }
}

/// `2^d | dim M`, and `sdim M = 0` when `d > 0`.
pub fn two_divisibility_check<S: Scalar>(vdim: usize, m: &SmashModule<S>, support_vectors: &[Vec<S>]) -> DivisibilityReport {
    let codim = vdim - span_dim(vdim, support_vectors);
    let dim = m.dim();
    DivisibilityReport {
        codim,
        dim,
        sdim: m.sdim(),
        divides: dim.is_multiple_of(1usize << codim),
        sdim_vanishes: m.sdim() == 0,
    }
}

/// Rank-test supports of `M`, `N`, `M (x) N` on the test vectors.
pub fn char0_tensor_check<S: Scalar>(
    group: &FiniteGroup<S>,
    m: &SmashModule<S>,
    n: &SmashModule<S>,
    test_vectors: &[Vec<S>],
) -> Result<TensorReport, AlgebraError> {
    let sm = char0_support(group, m, test_vectors)?.member_set();
    let sn = char0_support(group, n, test_vectors)?.member_set();
    let st = char0_support(group, &m.tensor(n), test_vectors)?.member_set();
    Ok(tensor_report(&sm, &sn, &st))
}

fn monomials(d: usize, n: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in (0..=n).rev() {
        for mut rest in monomials(d - 1, n - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// `dim S^n(V*)^G` for `n <= max_degree` via the rank of the Reynolds sum.
pub fn invariant_dimensions<S: Scalar>(group: &FiniteGroup<S>, max_degree: u32) -> Result<Vec<usize>, AlgebraError> {
    let p = S::characteristic() as usize;
    if p != 0 && group.order().is_multiple_of(p) {
        return Err(AlgebraError::InvalidParameters("characteristic divides the group order".into()));
    }
    let d = group.dim;
    let mut out = Vec::new();
    for n in 0..=max_degree {
        let basis = monomials(d, n);
        let index: BTreeMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut reynolds = Matrix::zeros(basis.len(), basis.len());
        for g in &group.elements {
            // g x_i = sum_j (g^{-1})_{ij} x_j
            let gi = g.inverse().ok_or_else(|| AlgebraError::InvalidParameters("singular group element".into()))?;
            for (c, mono) in basis.iter().enumerate() {
                let mut poly: BTreeMap<Vec<u32>, S> = BTreeMap::from([(vec![0; d], S::one())]);
                for (i, &e) in mono.iter().enumerate() {
                    for _ in 0..e {
                        let mut next = BTreeMap::new();
                        for (m, coef) in &poly {
                            for j in 0..d {
                                let a = gi.get(i, j);
                                if a.is_zero() {
                                    continue;
                                }
                                let mut mm = m.clone();
                                mm[j] += 1;
                                *next.entry(mm).or_insert_with(S::zero) += coef.clone() * a.clone();
                            }
                        }
                        poly = next;
                    }
                }
                for (m, coef) in poly {
                    reynolds.add_at(index[&m], c, coef);
                }
            }
        }
        out.push(reynolds.rank());
    }
    Ok(out)
}

// ---------------------------------------------------------------------------------------------
// Complexity over local algebras.

/// A finite-dimensional local algebra generated by nilpotent elements: basis words in the
/// generators (unit first) and left multiplication by each generator.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalAlgebra<S> {
    pub words: Vec<Vec<usize>>,
    pub regular: Vec<Matrix<S>>,
}

pub const COMPLEXITY_STEP_CAP: usize = 64;

impl<S: Scalar> LocalAlgebra<S> {
    /// `Lambda(k^{0|d})`.
    pub fn exterior(d: usize) -> Self {
        let n = 1usize << d;
        let mut masks: Vec<usize> = (0..n).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        let pos: BTreeMap<usize, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let regular = (0..d)
            .map(|i| {
                let mut m = Matrix::zeros(n, n);
                for (c, &mask) in masks.iter().enumerate() {
                    if let Some((s, mm)) = exterior_left::<S>(i, mask) {
                        m.set(pos[&mm], c, s);
                    }
                }
                m
            })
            .collect();
        let words = masks.iter().map(|&m| (0..d).filter(|i| m & (1 << i) != 0).collect()).collect();
        LocalAlgebra { words, regular }
    }

    /// `V(g)` in the PBW basis; every basis element must act nilpotently.
    pub fn restricted_enveloping(g: &LieSuperalgebra<S>) -> Result<Self, AlgebraError> {
        let pbw = Pbw::new(g, true)?;
        let basis = pbw.restricted_basis();
        let index: BTreeMap<_, usize> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let n = basis.len();
        let mut regular = Vec::new();
        for z in 0..g.dim() {
            let mut m = Matrix::zeros(n, n);
            for (c, b) in basis.iter().enumerate() {
                let prod = pbw.mul(&pbw.generator(z), &crate::lie::PbwElement::monomial(b.clone(), S::one()));
                for (t, v) in prod.terms() {
                    m.set(index[t], c, v.clone());
                }
            }
            if !m.pow(n as u64)?.is_zero() {
                return Err(AlgebraError::InvalidParameters(format!("{} does not act nilpotently", g.names[z])));
            }
            regular.push(m);
        }
        let words = basis
            .iter()
            .map(|b| (0..g.dim()).flat_map(|k| std::iter::repeat_n(pbw.order()[k], b.exponent(k) as usize)).collect())
            .collect();
        Ok(LocalAlgebra { words, regular })
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    /// The trivial module `k`.
    pub fn trivial_module(&self) -> Vec<Matrix<S>> {
        vec![Matrix::zeros(1, 1); self.regular.len()]
    }
}

fn word_matrix<S: Scalar>(ops: &[Matrix<S>], dim: usize, word: &[usize]) -> Matrix<S> {
    let mut acc = Matrix::identity(dim);
    for &z in word.iter().rev() {
        acc = ops[z].mul(&acc).expect("square");
    }
    acc
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexityReport {
    /// Number of free summands of `P_n`.
    pub cover_ranks: Vec<usize>,
    /// `dim P_n`.
    pub dims: Vec<usize>,
    /// Least-squares slope of `ln dim P_n` against `ln(n+1)`.
    pub slope: Option<f64>,
    pub complexity: usize,
}

/// Minimal projective resolution of the module given by generator operators `ops`.
pub fn complexity_sequence<S: Scalar>(a: &LocalAlgebra<S>, ops: &[Matrix<S>], steps: usize) -> Result<ComplexityReport, AlgebraError> {
    if steps > COMPLEXITY_STEP_CAP {
        return Err(AlgebraError::Bound(format!("{steps} steps exceed the cap {COMPLEXITY_STEP_CAP}")));
    }
    if ops.len() != a.regular.len() {
        return Err(AlgebraError::InvalidParameters("one operator per generator".into()));
    }
    let da = a.dim();
    let mut cur: Vec<Matrix<S>> = ops.to_vec();
    let mut dim = ops.first().map(|m| m.rows()).unwrap_or(0);
    let mut ranks = Vec::new();
    let mut dims = Vec::new();
    for _ in 0..=steps {
        if dim == 0 {
            ranks.push(0);
            dims.push(0);
            continue;
        }
        let mut span: Vec<Vec<S>> = Vec::new();
        for op in &cur {
            span.extend(op.column_space());
        }
        let rad = span_dim(dim, &span);
        let mut top = Vec::new();
        for i in 0..dim {
            let mut e = vec![S::zero(); dim];
            e[i] = S::one();
            span.push(e.clone());
            if span_dim(dim, &span) == rad + top.len() + 1 {
                top.push(e);
            } else {
                span.pop();
            }
        }
        let b = top.len();
        let words: Vec<Matrix<S>> = a.words.iter().map(|w| word_matrix(&cur, dim, w)).collect();
        let mut cols = Vec::with_capacity(b * da);
        for t in &top {
            for w in &words {
                cols.push(w.mul_vec(t)?);
            }
        }
        let cover = Matrix::from_columns(dim, &cols);
        let ker = cover.kernel_basis();
        let kbasis = Matrix::from_columns(b * da, &ker);
        let mut next = Vec::new();
        for reg in &a.regular {
            let mut kcols = Vec::with_capacity(ker.len());
            for v in &ker {
                let mut img = vec![S::zero(); b * da];
                for j in 0..b {
                    let block = reg.mul_vec(&v[j * da..(j + 1) * da])?;
                    img[j * da..(j + 1) * da].clone_from_slice(&block);
                }
                kcols.push(kbasis.solve(&img)?.expect("kernel is a submodule"));
            }
            next.push(Matrix::from_columns(ker.len(), &kcols));
        }
        ranks.push(b);
        dims.push(b * da);
        dim = ker.len();
        cur = next;
    }
    let terminated = dims.contains(&0);
    let slope = if terminated {
        None
    } else {
        let pts: Vec<(f64, f64)> = dims.iter().enumerate().map(|(n, &d)| (((n + 1) as f64).ln(), (d as f64).ln())).collect();
        let k = pts.len() as f64;
        let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
        let (mx, my) = (sx / k, sy / k);
        let num: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
        let den: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
        if den > 0.0 {
            Some(num / den)
        } else {
            None
        }
    };
    let complexity = match (terminated, slope) {
        (true, _) => 0,
        (false, Some(s)) => s.round().max(0.0) as usize + 1,
        (false, None) => 1,
    };
    Ok(ComplexityReport { cover_ranks: ranks, dims, slope, complexity })
}

// ---------------------------------------------------------------------------------------------
// Module constructions and random generation.

/// `V(g)` acting on itself by left multiplication, even basis vectors first.
pub fn regular_module<S: Scalar>(g: &LieSuperalgebra<S>) -> Result<Supermodule<S>, AlgebraError> {
    let pbw = Pbw::new(g, true)?;
    let mut basis = pbw.restricted_basis();
    basis.sort_by_key(|m| pbw.parity(m));
    let evens = basis.iter().filter(|m| !pbw.parity(m)).count();
    let index: BTreeMap<_, usize> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let n = basis.len();
    let mats: Vec<Matrix<S>> = (0..g.dim())
        .map(|z| {
            let mut m = Matrix::zeros(n, n);
            for (c, b) in basis.iter().enumerate() {
                let prod = pbw.mul(&pbw.generator(z), &crate::lie::PbwElement::monomial(b.clone(), S::one()));
                for (t, v) in prod.terms() {
                    m.set(index[t], c, v.clone());
                }
            }
            m
        })
        .collect();
    Supermodule::from_dense((evens, n - evens), &mats)
}

fn is_gl11<S: Scalar>(g: &LieSuperalgebra<S>) -> bool {
    g.dim() == 4 && g.odd == [false, true, true, false] && g.realization().is_some_and(|r| r[0].row_dims == (1, 1))
}

/// Kac module of `gl(1|1)`: `v_0` of weight `(l1, l2)`, `v_1 = e_21 v_0`, `e_12 v_1 = (l1 + l2) v_0`.
pub fn kac_module<S: Scalar>(g: &LieSuperalgebra<S>, l1: S, l2: S) -> Result<Supermodule<S>, AlgebraError> {
    if !is_gl11(g) {
        return Err(AlgebraError::InvalidParameters("Kac modules are built for gl(1|1)".into()));
    }
    let z = S::zero();
    let e11 = Matrix::from_rows(vec![vec![l1.clone(), z.clone()], vec![z.clone(), l1.clone() - S::one()]])?;
    let e12 = Matrix::from_rows(vec![vec![z.clone(), l1.clone() + l2.clone()], vec![z.clone(), z.clone()]])?;
    let e21 = Matrix::from_rows(vec![vec![z.clone(), z.clone()], vec![S::one(), z.clone()]])?;
    let e22 = Matrix::from_rows(vec![vec![l2.clone(), z.clone()], vec![z, l2 + S::one()]])?;
    let m = Supermodule::from_dense((1, 1), &[e11, e12, e21, e22])?;
    let bad = check_supermodule(g, &m);
    if !bad.is_empty() {
        return Err(AlgebraError::IdentityFailed(format!("Kac module: {:?}", bad[0])));
    }
    Ok(m)
}

fn random_scalar<S: Scalar, R: Rng>(rng: &mut R) -> S {
    S::from_i64(rng.gen_range(-6..=6))
}

fn random_homogeneous<S: Scalar, R: Rng>(rng: &mut R, m: &Supermodule<S>) -> Vec<S> {
    let odd = m.dims.1 > 0 && (m.dims.0 == 0 || rng.gen_bool(0.5));
    (0..m.dim()).map(|i| if m.is_odd(i) == odd { random_scalar(rng) } else { S::zero() }).collect()
}

fn module_parts<S: Scalar>(m: &Supermodule<S>) -> Vec<bool> {
    (0..m.dim()).map(|i| m.is_odd(i)).collect()
}

fn from_parts<S: Scalar>(parity: &[bool], ops: &[Matrix<S>]) -> Result<Supermodule<S>, AlgebraError> {
    // reorder to even-first
    let mut order: Vec<usize> = (0..parity.len()).collect();
    order.sort_by_key(|&i| parity[i]);
    let evens = parity.iter().filter(|p| !**p).count();
    let n = parity.len();
    let mats: Vec<Matrix<S>> = ops.iter().map(|m| Matrix::from_fn(n, n, |r, c| m.get(order[r], order[c]).clone())).collect();
    Supermodule::from_dense((evens, n - evens), &mats)
}

/// `M / U(g) v` for homogeneous generators.
pub fn quotient_module<S: Scalar>(m: &Supermodule<S>, gens: &[Vec<S>]) -> Result<Supermodule<S>, AlgebraError> {
    let ops = m.dense_all();
    let sub = closure(m.dim(), &ops, gens);
    let (par, q) = quotient_ops(&module_parts(m), &ops, &sub)?;
    from_parts(&par, &q)
}

/// The submodule generated by homogeneous vectors.
pub fn generated_submodule<S: Scalar>(m: &Supermodule<S>, gens: &[Vec<S>]) -> Result<Supermodule<S>, AlgebraError> {
    let ops = m.dense_all();
    let sub = closure(m.dim(), &ops, gens);
    let (par, q) = submodule_ops(&module_parts(m), &ops, &sub)?;
    from_parts(&par, &q)
}

/// Random parity-preserving change of basis.
pub fn random_conjugate<S: Scalar, R: Rng>(rng: &mut R, m: &Supermodule<S>) -> Result<Supermodule<S>, AlgebraError> {
    let n = m.dim();
    let p = loop {
        let p = Matrix::from_fn(n, n, |r, c| if m.is_odd(r) == m.is_odd(c) { random_scalar(rng) } else { S::zero() });
        if p.inverse().is_some() {
            break p;
        }
    };
    let pinv = p.inverse().expect("checked");
    let mats: Vec<Matrix<S>> = m.dense_all().iter().map(|a| p.mul(a).and_then(|x| x.mul(&pinv))).collect::<Result<_, _>>()?;
    Supermodule::from_dense(m.dims, &mats)
}

/// Building blocks: trivial modules, the natural and adjoint modules, Kac modules of
/// `gl(1|1)`, and the regular module when `dim V(g) <= 16`.
fn building_blocks<S: Scalar, R: Rng>(rng: &mut R, g: &LieSuperalgebra<S>) -> Result<Vec<Supermodule<S>>, AlgebraError> {
    let mut out = vec![Supermodule::trivial(g, false), Supermodule::trivial(g, true), Supermodule::adjoint(g)];
    if g.realization().is_some() {
        let nat = Supermodule::natural(g)?;
        out.push(nat.parity_shift(g));
        out.push(nat);
    }
    if is_gl11(g) {
        let (a, b): (S, S) = (random_scalar(rng), random_scalar(rng));
        out.push(kac_module(g, a.clone(), b)?);
        out.push(kac_module(g, a.clone(), -a)?);
    }
    let p = S::characteristic() as usize;
    let (d0, d1) = g.dims();
    if p > 0 && p.pow(d0 as u32) << d1 <= 16 {
        out.push(regular_module(g)?);
    }
    Ok(out)
}

/// A random restricted supermodule of dimension at most `max_dim`: direct sums and tensor
/// products of building blocks, random quotients or cyclic submodules, and a random change
/// of basis. Every result passes `check_supermodule`.
pub fn random_supermodule<S: Scalar, R: Rng>(rng: &mut R, g: &LieSuperalgebra<S>, max_dim: usize) -> Result<Supermodule<S>, AlgebraError> {
    if max_dim == 0 {
        return Err(AlgebraError::InvalidParameters("max_dim must be positive".into()));
    }
    loop {
        let blocks = building_blocks(rng, g)?;
        let pick = |rng: &mut R| blocks[rng.gen_range(0..blocks.len())].clone();
        let mut m = pick(rng);
        for _ in 0..rng.gen_range(0..3) {
            let b = pick(rng);
            m = if rng.gen_bool(0.3) && m.dim() * b.dim() <= 2 * max_dim { m.tensor(g, &b) } else { m.direct_sum(&b) };
        }
        match rng.gen_range(0..4) {
            0 | 1 => {
                let k = rng.gen_range(1..=2);
                let gens: Vec<Vec<S>> = (0..k).map(|_| random_homogeneous(rng, &m)).collect();
                m = quotient_module(&m, &gens)?;
            }
            2 => {
                let v = random_homogeneous(rng, &m);
                m = generated_submodule(&m, &[v])?;
            }
            _ => {}
        }
        if m.dim() == 0 || m.dim() > max_dim {
            continue;
        }
        let m = random_conjugate(rng, &m)?;
        let bad = check_supermodule(g, &m);
        if !bad.is_empty() {
            return Err(AlgebraError::IdentityFailed(format!("random module: {:?}", bad[0])));
        }
        return Ok(m);
    }
}

/// A random `Lambda(V) # kG`-module: sums of trivial, exterior and regular modules, a random
/// quotient by a `G`-stable submodule, and a random parity-preserving change of basis.
pub fn random_smash_module<S: Scalar, R: Rng>(rng: &mut R, group: &FiniteGroup<S>, max_dim: usize) -> Result<SmashModule<S>, AlgebraError> {
    let blocks = [SmashModule::trivial(group, false),
        SmashModule::trivial(group, true),
        SmashModule::exterior(group),
        SmashModule::exterior(group).parity_shift(),
        SmashModule::regular(group)?];
    loop {
        let mut m = blocks[rng.gen_range(0..blocks.len())].clone();
        for _ in 0..rng.gen_range(0..3) {
            m = m.direct_sum(&blocks[rng.gen_range(0..blocks.len())]);
        }
        if rng.gen_bool(0.6) {
            let odd = rng.gen_bool(0.5);
            let v: Vec<S> = m.parity.iter().map(|&p| if p == odd { random_scalar(rng) } else { S::zero() }).collect();
            m = m.quotient(&[v])?;
        }
        if m.dim() == 0 || m.dim() > max_dim {
            continue;
        }
        let n = m.dim();
        let p = loop {
            let p = Matrix::from_fn(n, n, |r, c| if m.parity[r] == m.parity[c] { random_scalar(rng) } else { S::zero() });
            if p.inverse().is_some() {
                break p;
            }
        };
        let m = m.conjugate(&p)?;
        m.check_compatibility(group)?;
        return Ok(m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_example, build_gl, ExampleId};
    use crate::{F3, F5, Q};
    use num_traits::{One, Zero};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn odd_el(g: &LieSuperalgebra<F3>, c: &[i64]) -> Vec<F3> {
        ConePoint { coords: c.iter().map(|&x| F3::from_i64(x)).collect() }.element(g)
    }

    #[test]
    fn cone_examples() {
        let g = build_example::<F3>(&ExampleId::OddAbelian(2)).unwrap();
        assert_eq!(enumerate_cone(&g, 100).unwrap().len(), 9);
        let g = build_example::<F3>(&ExampleId::Ex312).unwrap();
        assert_eq!(enumerate_cone(&g, 100).unwrap().len(), 1);
        let g = build_gl::<F3>(1, 1).unwrap();
        let c = enumerate_cone(&g, 100).unwrap();
        assert_eq!(c.len(), 5);
        assert!(c.iter().all(|p| p.coords[0].is_zero() || p.coords[1].is_zero()));
        assert!(!cone_membership(&g, &odd_el(&g, &[1, 1])).unwrap());
        assert!(cone_membership(&g, &g.basis_vector(0)).is_err());
        assert!(matches!(enumerate_cone(&g, 8), Err(AlgebraError::Bound(_))));
        let z = build_gl::<F3>(1, 0).unwrap();
        assert_eq!(enumerate_cone(&z, 10).unwrap(), vec![ConePoint { coords: vec![] }]);
    }

    #[test]
    fn freeness_examples() {
        let g = build_gl::<F3>(1, 1).unwrap();
        let nat = Supermodule::natural(&g).unwrap();
        let x = ConePoint { coords: vec![F3::one(), F3::zero()] };
        assert!(free_over_odd_point(&g, &nat, &x).unwrap());
        assert!(!free_over_odd_point(&g, &Supermodule::trivial(&g, false), &x).unwrap());
        assert!(free_over_odd_point(&g, &nat, &ConePoint { coords: vec![F3::zero(); 2] }).is_err());
        let s = support_points(&g, &nat, 1000).unwrap();
        assert!(s.is_zero_only);
        assert_eq!(s.dimension_estimate, Some(0));
        let s = support_points(&g, &Supermodule::trivial(&g, false), 1000).unwrap();
        assert_eq!(s.member_points.len(), 5);
        assert_eq!(s.dimension_estimate, Some(1));
        let a = build_example::<F3>(&ExampleId::OddAbelian(2)).unwrap();
        let reg = regular_module(&a).unwrap();
        assert!(support_points(&a, &reg, 1000).unwrap().is_zero_only);
        let s = support_points(&a, &Supermodule::trivial(&a, true), 1000).unwrap();
        assert_eq!(s.dimension_estimate, Some(2));
    }

    #[test]
    fn exterior_freeness() {
        let a = build_example::<F3>(&ExampleId::OddAbelian(2)).unwrap();
        let reg = regular_module(&a).unwrap();
        let basis = vec![a.basis_vector(0), a.basis_vector(1)];
        assert!(free_over_odd_subspace(&a, &reg, &basis).unwrap());
        assert!(!free_over_odd_subspace(&a, &Supermodule::trivial(&a, false), &basis).unwrap());
        let a1 = build_example::<F3>(&ExampleId::OddAbelian(1)).unwrap();
        let r1 = regular_module(&a1).unwrap();
        let sum = r1.direct_sum(&Supermodule::trivial(&a1, false));
        assert!(!free_over_odd_subspace(&a1, &sum, &[a1.basis_vector(0)]).unwrap());
        let g = build_gl::<F3>(1, 1).unwrap();
        let nat = Supermodule::natural(&g).unwrap();
        assert!(free_over_odd_subspace(&g, &nat, &[g.basis_vector(1), g.basis_vector(2)]).is_err());
    }

    #[test]
    fn cr_examples() {
        let g = build_gl::<F3>(1, 1).unwrap();
        let v = |c: [i64; 4]| c.iter().map(|&x| F3::from_i64(x)).collect::<Vec<_>>();
        let t = CrTuple { alphas: vec![v([1, 0, 0, 1])], beta: v([0, 1, 1, 0]) };
        assert!(cr_membership(&g, &t, 1).unwrap());
        let t = CrTuple { alphas: vec![v([1, 0, 0, 0])], beta: v([0, 1, 1, 0]) };
        assert!(!cr_membership(&g, &t, 1).unwrap());
        assert!(cr_membership(&g, &CrTuple { alphas: vec![g.zero()], beta: g.zero() }, 1).unwrap());
        assert!(cr_membership(&g, &CrTuple { alphas: vec![], beta: g.zero() }, 1).is_err());
        assert_eq!(enumerate_cr(&g, 1, 1000).unwrap().len(), 9);
        // purely odd abelian: C_1 is the cone
        let a = build_example::<F3>(&ExampleId::OddAbelian(2)).unwrap();
        assert_eq!(enumerate_cr(&a, 1, 1000).unwrap().len(), 9);
    }

    #[test]
    fn cr_classical_gl2() {
        // pairwise commuting p-nilpotent pairs in gl(2) over F_3
        let g = build_gl::<F3>(2, 0).unwrap();
        let pts = enumerate_cr(&g, 2, 1 << 20).unwrap();
        let mut count = 0;
        for coords in rational_points::<F3>(8, 1 << 20).unwrap() {
            let a = Matrix::from_fn(2, 2, |r, c| coords[2 * r + c]);
            let b = Matrix::from_fn(2, 2, |r, c| coords[4 + 2 * r + c]);
            let nil = |m: &Matrix<F3>| m.pow(3).unwrap().is_zero();
            if nil(&a) && nil(&b) && a.mul(&b).unwrap() == b.mul(&a).unwrap() {
                count += 1;
            }
        }
        assert_eq!(pts.len(), count);
    }

    #[test]
    fn kac_supports() {
        let g = build_gl::<F3>(1, 1).unwrap();
        let typical = kac_module(&g, F3::one(), F3::one()).unwrap();
        assert!(support_points(&g, &typical, 100).unwrap().is_zero_only);
        let atypical = kac_module(&g, F3::one(), -F3::one()).unwrap();
        let s = support_points(&g, &atypical, 100).unwrap();
        assert_eq!(s.member_points.len(), 3);
        assert!(s.member_points.iter().all(|p| p.coords[1].is_zero()));
    }

    #[test]
    fn random_modules_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [build_gl::<F3>(1, 1).unwrap(), build_example::<F3>(&ExampleId::OddAbelian(2)).unwrap()] {
            for _ in 0..10 {
                let m = random_supermodule(&mut rng, &g, 12).unwrap();
                assert!(m.dim() <= 12);
                assert!(check_supermodule(&g, &m).is_empty());
            }
        }
    }

    #[test]
    fn union_and_parity() {
        let g = build_gl::<F3>(1, 1).unwrap();
        let cone = enumerate_cone(&g, 100).unwrap();
        let k = Supermodule::trivial(&g, false);
        let nat = Supermodule::natural(&g).unwrap();
        let r = parity_directsum_checks(&g, &k, &nat, &cone).unwrap();
        assert!(r.union_law && r.pi_invariant);
        let t = tensor_support_check(&g, &nat, &k, &cone).unwrap();
        assert!(t.contained && t.equal);
    }

    #[test]
    fn char0_examples() {
        let swap = FiniteGroup::<Q>::swap();
        assert_eq!(swap.order(), 2);
        let tests: Vec<Vec<Q>> = rational_test_vectors(2);
        let reg = SmashModule::regular(&swap).unwrap();
        reg.check_compatibility(&swap).unwrap();
        let rep = char0_support(&swap, &reg, &tests).unwrap();
        assert!(rep.member_vectors().iter().all(|v| v.iter().all(|c| c.is_zero())));
        let e = vec![Q::one(), Q::zero()];
        assert_eq!(swap.canonical(&e), vec![Q::zero(), Q::one()]);
        let k = SmashModule::trivial(&swap, false);
        let rep = char0_support(&swap, &k, &tests).unwrap();
        assert_eq!(rep.member_vectors().len(), tests.len());
        let ext = SmashModule::exterior(&swap);
        ext.check_compatibility(&swap).unwrap();
        let d = two_divisibility_check(2, &ext.direct_sum(&ext.parity_shift()), &[]);
        assert!(d.passed() && d.codim == 2 && d.dim == 8);
        assert!(two_divisibility_check(2, &k, &tests).passed());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let m = random_smash_module(&mut rng, &swap, 16).unwrap();
            m.check_compatibility(&swap).unwrap();
        }
    }

    fn rational_test_vectors(d: usize) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        let n = 5i64.pow(d as u32);
        for k in 0..n {
            let v: Vec<Q> = (0..d).map(|i| Q::from_i64((k / 5i64.pow(i as u32)) % 5 - 2)).collect();
            if v.iter().any(|c| !c.is_zero()) {
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn invariants_swap() {
        let swap = FiniteGroup::<Q>::swap();
        assert_eq!(invariant_dimensions(&swap, 4).unwrap(), vec![1, 1, 2, 2, 3]);
        assert_eq!(invariant_dimensions(&FiniteGroup::<Q>::trivial(2), 3).unwrap(), vec![1, 2, 3, 4]);
        let neg = FiniteGroup::<Q>::generate(1, &[Matrix::from_ints(&[&[-1]])], 10).unwrap();
        assert_eq!(invariant_dimensions(&neg, 4).unwrap(), vec![1, 0, 1, 0, 1]);
    }

    #[test]
    fn complexity_examples() {
        let a = LocalAlgebra::<F3>::exterior(2);
        let r = complexity_sequence(&a, &a.trivial_module(), 10).unwrap();
        assert_eq!(r.dims, (0..=10).map(|n| 4 * (n + 1)).collect::<Vec<_>>());
        assert_eq!(r.complexity, 2);
        let a1 = LocalAlgebra::<F3>::exterior(1);
        let r = complexity_sequence(&a1, &a1.trivial_module(), 6).unwrap();
        assert_eq!(r.dims, vec![2; 7]);
        assert_eq!(r.complexity, 1);
        let r = complexity_sequence(&a, &a.regular, 4).unwrap();
        assert_eq!(r.dims, vec![4, 0, 0, 0, 0]);
        assert_eq!(r.complexity, 0);
        let g = build_example::<F5>(&ExampleId::OddAbelian(2)).unwrap();
        let v = LocalAlgebra::restricted_enveloping(&g).unwrap();
        assert_eq!(complexity_sequence(&v, &v.trivial_module(), 5).unwrap().dims, vec![4, 8, 12, 16, 20, 24]);
        let ex = build_example::<F3>(&ExampleId::Ex531).unwrap();
        assert!(LocalAlgebra::restricted_enveloping(&ex).is_err());
        assert!(matches!(complexity_sequence(&a, &a.regular, 100), Err(AlgebraError::Bound(_))));
    }

    proptest! {
        #[test]
        fn supports_are_conical(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = build_gl::<F3>(1, 1).unwrap();
            let m = random_supermodule(&mut rng, &g, 8).unwrap();
            let cone = enumerate_cone(&g, 100).unwrap();
            let s = support_on(&g, &m, &cone).unwrap().member_set();
            prop_assert!(s.contains(&vec![F3::zero(); 2]));
            for x in &s {
                for l in [F3::one(), F3::from_i64(2)] {
                    let y: Vec<F3> = x.iter().map(|c| *c * l).collect();
                    prop_assert!(s.contains(&y));
                }
            }
        }

        #[test]
        fn single_line_oracle_agrees(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = build_example::<F3>(&ExampleId::OddAbelian(2)).unwrap();
            let m = random_supermodule(&mut rng, &g, 10).unwrap();
            for x in enumerate_cone(&g, 100).unwrap().into_iter().filter(|x| !x.is_zero()) {
                let v = x.element(&g);
                prop_assert_eq!(free_over_odd_point(&g, &m, &x).unwrap(), free_over_odd_subspace(&g, &m, &[v]).unwrap());
            }
        }

        #[test]
        fn direct_sum_freeness(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = build_gl::<F3>(1, 1).unwrap();
            let m = random_supermodule(&mut rng, &g, 6).unwrap();
            let n = random_supermodule(&mut rng, &g, 6).unwrap();
            let s = m.direct_sum(&n);
            for x in enumerate_cone(&g, 100).unwrap().into_iter().filter(|x| !x.is_zero()) {
                prop_assert_eq!(
                    free_over_odd_point(&g, &s, &x).unwrap(),
                    free_over_odd_point(&g, &m, &x).unwrap() && free_over_odd_point(&g, &n, &x).unwrap()
                );
            }
        }

        #[test]
        fn cr_count_permutation_invariant(perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle()) {
            let g = build_gl::<F3>(1, 1).unwrap();
            let h = permute_basis(&g, &perm);
            prop_assert_eq!(enumerate_cr(&h, 1, 1000).unwrap().len(), 9);
        }
    }

    fn permute_basis(g: &LieSuperalgebra<F3>, perm: &[usize]) -> LieSuperalgebra<F3> {
        // new index k carries old basis element perm[k]
        let n = g.dim();
        let inv: Vec<usize> = (0..n).map(|o| perm.iter().position(|&x| x == o).unwrap()).collect();
        let mut h = LieSuperalgebra::abelian(perm.iter().map(|&o| g.names[o].clone()).collect(), perm.iter().map(|&o| g.odd[o]).collect());
        for a in 0..n {
            for b in 0..n {
                let br: Vec<(usize, F3)> = g.bracket_basis(perm[a], perm[b]).iter().map(|(k, c)| (inv[*k], *c)).collect();
                h.set_bracket_raw(a, b, &br);
            }
        }
        let pm = (0..n)
            .map(|a| {
                if g.odd[perm[a]] {
                    None
                } else {
                    let img = g.pmap_basis(perm[a]).unwrap();
                    Some((0..n).map(|k| img[perm[k]]).collect())
                }
            })
            .collect();
        h.set_pmap(pm);
        h
    }
}
