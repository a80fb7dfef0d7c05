//! free graded-commutative superalgebras on exterior, polynomial and divided-power generators.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::linalg::{binomial, sign, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Exterior,
    Polynomial,
    DividedPower,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    pub name: String,
    pub odd: bool,
    pub z_degree: u32,
    /// Divided-power products for non-square-zero generators.
    pub divided: bool,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, odd: bool, z_degree: u32) -> Self {
        GeneratorSpec { name: name.into(), odd, z_degree, divided: false }
    }

    pub fn divided(name: impl Into<String>, odd: bool, z_degree: u32) -> Self {
        GeneratorSpec { name: name.into(), odd, z_degree, divided: true }
    }

    /// Forced by the sign law: `g*g = -g*g` exactly when parity + degree is odd.
    pub fn square_zero(&self) -> bool {
        (self.odd as u32 + self.z_degree) % 2 == 1
    }

    pub fn kind(&self) -> GenKind {
        if self.square_zero() {
            GenKind::Exterior
        } else if self.divided {
            GenKind::DividedPower
        } else {
            GenKind::Polynomial
        }
    }
}

/// Monomial as an exponent vector; exterior generators have exponent at most one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SuperMonomial {
    exps: Vec<u32>,
}

impl fmt::Debug for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

impl SuperMonomial {
    pub fn one(n: usize) -> Self {
        SuperMonomial { exps: vec![0; n] }
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[i] = 1;
        m
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        SuperMonomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Self {
        let mut m = self.clone();
        m.exps[i] = e;
        m
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Exponents restricted to indices in `range`.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> Self {
        SuperMonomial { exps: self.exps.iter().enumerate().map(|(i, &e)| if keep(i) { e } else { 0 }).collect() }
    }
}

/// Finite linear combination of monomials with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement<S> {
    terms: BTreeMap<SuperMonomial, S>,
}

impl<S: Scalar> fmt::Debug for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<S: Scalar> Default for AlgebraElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn monomial(m: SuperMonomial, c: S) -> Self {
        let mut e = Self::zero();
        e.add_term(m, c);
        e
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(SuperMonomial::one(n), S::one())
    }

    pub fn generator(n: usize, i: usize) -> Self {
        Self::monomial(SuperMonomial::generator(n, i), S::one())
    }

    pub fn add_term(&mut self, m: SuperMonomial, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, o: &Self, c: &S) {
        if c.is_zero() {
            return;
        }
        for (m, v) in &o.terms {
            self.add_term(m.clone(), v.clone() * c.clone());
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &S::one());
        r
    }

    pub fn minus(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(o, &-S::one());
        r
    }

    pub fn scaled(&self, c: &S) -> Self {
        let mut r = Self::zero();
        r.add_scaled(self, c);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &SuperMonomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The free graded-commutative superalgebra on a generator list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    gens: Vec<GeneratorSpec>,
}

/// Sign type of a homogeneous operator or element: (degree odd, parity odd).
pub type SignType = (bool, bool);

#[inline]
pub fn chi(a: SignType, b: SignType) -> bool {
    (a.0 && b.0) ^ (a.1 && b.1)
}

impl GradedAlgebra {
    pub fn new(gens: Vec<GeneratorSpec>) -> Result<Self, AlgebraError> {
        if let Some(g) = gens.iter().find(|g| g.z_degree == 0 && !g.square_zero()) {
            return Err(AlgebraError::Grading(format!(
                "generator {} has degree 0 and is not square-zero; the algebra is infinite in degree 0",
                g.name
            )));
        }
        Ok(GradedAlgebra { gens })
    }

    pub fn gens(&self) -> &[GeneratorSpec] {
        &self.gens
    }

    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_type(&self, i: usize) -> SignType {
        (self.gens[i].z_degree % 2 == 1, self.gens[i].odd)
    }

    pub fn degree(&self, m: &SuperMonomial) -> u32 {
        m.exps.iter().zip(&self.gens).map(|(&e, g)| e * g.z_degree).sum()
    }

    pub fn parity(&self, m: &SuperMonomial) -> bool {
        m.exps.iter().zip(&self.gens).filter(|(_, g)| g.odd).map(|(&e, _)| e).sum::<u32>() % 2 == 1
    }

    pub fn sign_type(&self, m: &SuperMonomial) -> SignType {
        (self.degree(m) % 2 == 1, self.parity(m))
    }

    /// Product of two monomials: coefficient and monomial, or `None` if zero.
    pub fn mul_mono<S: Scalar>(&self, a: &SuperMonomial, b: &SuperMonomial) -> Option<(S, SuperMonomial)> {
        let n = self.gens.len();
        // sign from moving each factor of b left past the factors of a with larger index
        let mut suffix_d = 0u32;
        let mut suffix_p = 0u32;
        let mut odd = false;
        for j in (0..n).rev() {
            let (dj, pj) = self.gen_type(j);
            if b.exps[j] % 2 == 1 && ((dj && suffix_d % 2 == 1) ^ (pj && suffix_p % 2 == 1)) {
                odd = !odd;
            }
            if dj {
                suffix_d += a.exps[j];
            }
            if pj {
                suffix_p += a.exps[j];
            }
        }
        let mut coef = sign::<S>(odd);
        let mut exps = Vec::with_capacity(n);
        for i in 0..n {
            let (x, y) = (a.exps[i], b.exps[i]);
            match self.gens[i].kind() {
                GenKind::Exterior => {
                    if x + y > 1 {
                        return None;
                    }
                }
                GenKind::Polynomial => {}
                GenKind::DividedPower => {
                    if x > 0 && y > 0 {
                        coef *= binomial::<S>((x + y) as u64, x as u64);
                        if coef.is_zero() {
                            return None;
                        }
                    }
                }
            }
            exps.push(x + y);
        }
        Some((coef, SuperMonomial { exps }))
    }

    pub fn mul<S: Scalar>(&self, a: &AlgebraElement<S>, b: &AlgebraElement<S>) -> AlgebraElement<S> {
        let mut out = AlgebraElement::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some((c, m)) = self.mul_mono::<S>(ma, mb) {
                    out.add_term(m, c * ca.clone() * cb.clone());
                }
            }
        }
        out
    }

    pub fn mul_mono_elem<S: Scalar>(&self, a: &SuperMonomial, b: &AlgebraElement<S>) -> AlgebraElement<S> {
        let mut out = AlgebraElement::zero();
        for (mb, cb) in &b.terms {
            if let Some((c, m)) = self.mul_mono::<S>(a, mb) {
                out.add_term(m, c * cb.clone());
            }
        }
        out
    }

    pub fn mul_elem_mono<S: Scalar>(&self, a: &AlgebraElement<S>, b: &SuperMonomial) -> AlgebraElement<S> {
        let mut out = AlgebraElement::zero();
        for (ma, ca) in &a.terms {
            if let Some((c, m)) = self.mul_mono::<S>(ma, b) {
                out.add_term(m, c * ca.clone());
            }
        }
        out
    }

    pub fn pow<S: Scalar>(&self, a: &AlgebraElement<S>, e: u32) -> AlgebraElement<S> {
        let mut acc = AlgebraElement::one(self.ngens());
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// All monomials of the given degree, exponent vectors in descending lexicographic order.
    pub fn monomial_basis(&self, degree: u32) -> Vec<SuperMonomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.gens.len()];
        self.enumerate(0, degree, &mut cur, &mut out);
        out
    }

    fn enumerate(&self, i: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<SuperMonomial>) {
        if i == self.gens.len() {
            if rest == 0 {
                out.push(SuperMonomial { exps: cur.clone() });
            }
            return;
        }
        let g = &self.gens[i];
        let max = match (g.kind(), g.z_degree) {
            (GenKind::Exterior, _) => 1,
            (_, 0) => 0,
            (_, d) => rest / d,
        };
        let max = if g.z_degree == 0 { max } else { max.min(rest / g.z_degree) };
        for e in (0..=max).rev() {
            cur[i] = e;
            self.enumerate(i + 1, rest - e * g.z_degree, cur, out);
        }
        cur[i] = 0;
    }

    /// Apply a homogeneous derivation of sign type `dtype` given its values on generators:
    /// `D(ab) = D(a) b + (-1)^{chi(D,a)} a D(b)`, with `D(g^e) = e g^{e-1} D(g)` up to sign
    /// for polynomial generators and `D(g^[e]) = g^[e-1] D(g)` up to sign for divided powers.
    pub fn derivation<S: Scalar>(
        &self,
        dtype: SignType,
        images: &dyn Fn(usize) -> AlgebraElement<S>,
        m: &SuperMonomial,
    ) -> AlgebraElement<S> {
        let n = self.gens.len();
        let mut out = AlgebraElement::zero();
        let mut prefix = SuperMonomial::one(n);
        for i in 0..n {
            let e = m.exps[i];
            if e > 0 {
                let img = images(i);
                if !img.is_zero() {
                    let g = self.gen_type(i);
                    let mut c = sign::<S>(chi(dtype, self.sign_type(&prefix)) ^ (chi(dtype, g) && (e - 1) % 2 == 1));
                    if self.gens[i].kind() == GenKind::Polynomial {
                        c *= S::from_i64(e as i64);
                    }
                    if !c.is_zero() {
                        let lower = SuperMonomial::generator(n, i).with_exponent(i, e - 1);
                        let dg = self.mul_mono_elem(&lower, &img);
                        let head = self.mul_mono_elem(&prefix, &dg);
                        let suffix = m.restrict(|j| j > i);
                        let term = self.mul_elem_mono(&head, &suffix);
                        out.add_scaled(&term, &c);
                    }
                }
                prefix.exps[i] = e;
            }
        }
        out
    }

    pub fn derivation_elem<S: Scalar>(
        &self,
        dtype: SignType,
        images: &dyn Fn(usize) -> AlgebraElement<S>,
        a: &AlgebraElement<S>,
    ) -> AlgebraElement<S> {
        let mut out = AlgebraElement::zero();
        for (m, c) in &a.terms {
            out.add_scaled(&self.derivation(dtype, images, m), c);
        }
        out
    }

    /// Human-readable monomial, e.g. `<x*>(y*)^2`.
    pub fn format_monomial(&self, m: &SuperMonomial) -> String {
        if m.is_one() {
            return "1".into();
        }
        let mut s = String::new();
        for (i, &e) in m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let g = &self.gens[i];
            match g.kind() {
                GenKind::Exterior => s.push_str(&format!("<{}>", g.name)),
                GenKind::Polynomial if e == 1 => s.push_str(&g.name),
                GenKind::Polynomial => s.push_str(&format!("({})^{}", g.name, e)),
                GenKind::DividedPower => s.push_str(&format!("g{}({})", e, g.name)),
            }
        }
        s
    }

    pub fn format_element<S: Scalar>(&self, a: &AlgebraElement<S>) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = a.terms().map(|(m, c)| format!("{}*{}", c, self.format_monomial(m))).collect();
        parts.join(" + ")
    }
}

/// Check `ab = (-1)^{|a||b| + deg a deg b} ba` for all monomials up to `max_degree`.
pub fn check_free_commutativity<S: Scalar>(alg: &GradedAlgebra, max_degree: u32) -> bool {
    let basis: Vec<SuperMonomial> = (0..=max_degree).flat_map(|d| alg.monomial_basis(d)).collect();
    for a in &basis {
        for b in &basis {
            let ab = alg.mul_mono::<S>(a, b);
            let ba = alg.mul_mono::<S>(b, a);
            let s = sign::<S>(chi(alg.sign_type(a), alg.sign_type(b)));
            match (ab, ba) {
                (None, None) => {}
                (Some((c1, m1)), Some((c2, m2))) => {
                    if m1 != m2 || c1 != c2 * s {
                        return false;
                    }
                }
                (Some((c, _)), None) | (None, Some((c, _))) => {
                    if !c.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{F3, F5};
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn yx() -> GradedAlgebra {
        GradedAlgebra::new(vec![GeneratorSpec::new("y*", true, 1), GeneratorSpec::new("x*", false, 1)]).unwrap()
    }

    #[test]
    fn basis_examples() {
        let a = yx();
        let b = a.monomial_basis(2);
        assert_eq!(b, vec![SuperMonomial::from_exps(vec![2, 0]), SuperMonomial::from_exps(vec![1, 1])]);
        assert_eq!(a.monomial_basis(0).len(), 1);
        let two_odd = GradedAlgebra::new(vec![GeneratorSpec::new("a", true, 1), GeneratorSpec::new("b", true, 1)]).unwrap();
        for n in 0..8 {
            assert_eq!(two_odd.monomial_basis(n).len(), n as usize + 1);
        }
    }

    #[test]
    fn product_examples() {
        let a = yx();
        let x = AlgebraElement::<F3>::generator(2, 1);
        assert!(a.mul(&x, &x).is_zero());
        // odd deg-1 u times even deg-1 v
        let u = AlgebraElement::<F3>::generator(2, 0);
        assert_eq!(a.mul(&u, &x), a.mul(&x, &u).scaled(&-F3::one()));
        let g = GradedAlgebra::new(vec![GeneratorSpec::divided("x", false, 2)]).unwrap();
        let g1 = AlgebraElement::<F3>::monomial(SuperMonomial::from_exps(vec![1]), F3::one());
        let g2 = AlgebraElement::<F3>::monomial(SuperMonomial::from_exps(vec![2]), F3::one());
        assert!(g.mul(&g1, &g2).is_zero());
        let g1 = AlgebraElement::<F5>::monomial(SuperMonomial::from_exps(vec![1]), F5::one());
        let g2 = AlgebraElement::<F5>::monomial(SuperMonomial::from_exps(vec![2]), F5::one());
        assert_eq!(g.mul(&g1, &g2).coefficient(&SuperMonomial::from_exps(vec![3])), F5::from_i64(3));
    }

    #[test]
    fn derivation_leibniz_on_squares() {
        // D odd of degree 1 on an odd degree-1 polynomial generator
        let a = GradedAlgebra::new(vec![GeneratorSpec::new("y", true, 1), GeneratorSpec::new("x", false, 1)]).unwrap();
        let img = |i: usize| if i == 0 { AlgebraElement::<F5>::generator(2, 1) } else { AlgebraElement::zero() };
        let y2 = SuperMonomial::from_exps(vec![2, 0]);
        let d = a.derivation((true, false), &img, &y2);
        // D(y y) = D(y) y - y D(y) = x y - y x = 2 x y = -2 y x
        let y = AlgebraElement::<F5>::generator(2, 0);
        let x = AlgebraElement::<F5>::generator(2, 1);
        let expect = a.mul(&x, &y).minus(&a.mul(&y, &x));
        assert_eq!(d, expect);
    }

    fn gens_strategy() -> impl Strategy<Value = Vec<GeneratorSpec>> {
        proptest::collection::vec((any::<bool>(), 1u32..3, any::<bool>()), 1..4).prop_map(|v| {
            v.into_iter()
                .enumerate()
                .map(|(i, (odd, d, div))| GeneratorSpec { name: format!("g{i}"), odd, z_degree: d, divided: div })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn sign_law_and_associativity(gens in gens_strategy()) {
            let alg = GradedAlgebra::new(gens).unwrap();
            prop_assert!(check_free_commutativity::<F5>(&alg, 3));
            let basis: Vec<SuperMonomial> = (0..=2).flat_map(|d| alg.monomial_basis(d)).collect();
            for a in &basis {
                for b in &basis {
                    for c in &basis {
                        let ea = AlgebraElement::<F5>::monomial(a.clone(), F5::one());
                        let eb = AlgebraElement::monomial(b.clone(), F5::one());
                        let ec = AlgebraElement::monomial(c.clone(), F5::one());
                        prop_assert_eq!(alg.mul(&alg.mul(&ea, &eb), &ec), alg.mul(&ea, &alg.mul(&eb, &ec)));
                    }
                }
            }
        }

        #[test]
        fn square_zero_sectors(gens in gens_strategy(), coeffs in proptest::collection::vec(0i64..5, 12)) {
            let alg = GradedAlgebra::new(gens).unwrap();
            // random element of a fixed odd degree and fixed parity where degree + parity is odd squares to zero
            for deg in 1..=3u32 {
                for odd in [false, true] {
                    if (deg + odd as u32).is_multiple_of(2) { continue; }
                    let mut x = AlgebraElement::<F5>::zero();
                    for (k, m) in alg.monomial_basis(deg).into_iter().filter(|m| alg.parity(m) == odd).enumerate() {
                        x.add_term(m, F5::from_i64(coeffs[k % coeffs.len()]));
                    }
                    prop_assert!(alg.mul(&x, &x).is_zero());
                }
            }
            prop_assert!(!AlgebraElement::<F5>::one(alg.ngens()).is_zero());
            prop_assert!(F5::zero().is_zero());
        }
    }
}
