//! PBW arithmetic in U(g) and the restricted enveloping algebra V(g).

use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::AlgebraError;
use crate::linalg::{sign, Scalar};
use crate::superalg::{AlgebraElement, SuperMonomial};

use super::algebra::LieSuperalgebra;

/// PBW elements reuse the monomial container; exponents are indexed by PBW position.
pub type PbwElement<S> = AlgebraElement<S>;

/// Straightening context. PBW order: even basis elements in declared order, then odd ones.
pub struct Pbw<'a, S: Scalar> {
    g: &'a LieSuperalgebra<S>,
    order: Vec<usize>,
    pos: Vec<usize>,
    restricted: bool,
    p: u32,
    half: S,
    memo: RefCell<HashMap<(SuperMonomial, usize), PbwElement<S>>>,
}

impl<'a, S: Scalar> Pbw<'a, S> {
    pub fn new(g: &'a LieSuperalgebra<S>, restricted: bool) -> Result<Self, AlgebraError> {
        let p = S::characteristic();
        if restricted {
            if p == 0 {
                return Err(AlgebraError::NoPMap("characteristic 0".into()));
            }
            for i in g.even_indices() {
                g.pmap_basis(i)?;
            }
        }
        let mut order = g.even_indices();
        order.extend(g.odd_indices());
        let mut pos = vec![0; g.dim()];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        let half = S::from_i64(2).inv().ok_or_else(|| AlgebraError::InvalidParameters("characteristic 2".into()))?;
        Ok(Pbw { g, order, pos, restricted, p, half, memo: RefCell::new(HashMap::new()) })
    }

    pub fn algebra(&self) -> &LieSuperalgebra<S> {
        self.g
    }

    pub fn is_restricted(&self) -> bool {
        self.restricted
    }

    /// Basis index at each PBW position.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, basis_index: usize) -> usize {
        self.pos[basis_index]
    }

    fn odd_at(&self, k: usize) -> bool {
        self.g.odd[self.order[k]]
    }

    pub fn one(&self) -> PbwElement<S> {
        PbwElement::one(self.g.dim())
    }

    /// The PBW generator for basis element `i`.
    pub fn generator(&self, i: usize) -> PbwElement<S> {
        PbwElement::generator(self.g.dim(), self.pos[i])
    }

    pub fn from_lie(&self, v: &[S]) -> PbwElement<S> {
        let mut out = PbwElement::zero();
        for (i, c) in v.iter().enumerate() {
            out.add_scaled(&self.generator(i), c);
        }
        out
    }

    pub fn parity(&self, m: &SuperMonomial) -> bool {
        (0..m.exps().len()).filter(|&k| self.odd_at(k)).map(|k| m.exponent(k)).sum::<u32>() % 2 == 1
    }

    /// Straightened `m * z` where `z` sits at PBW position `k`.
    pub fn mul_gen(&self, m: &SuperMonomial, k: usize) -> PbwElement<S> {
        let key = (m.clone(), k);
        if let Some(v) = self.memo.borrow().get(&key) {
            return v.clone();
        }
        let v = self.mul_gen_uncached(m, k);
        self.memo.borrow_mut().insert(key, v.clone());
        v
    }

    fn mul_gen_uncached(&self, m: &SuperMonomial, k: usize) -> PbwElement<S> {
        let last = (0..m.exps().len()).rev().find(|&j| m.exponent(j) > 0);
        let bump = || PbwElement::monomial(m.with_exponent(k, m.exponent(k) + 1), S::one());
        match last {
            None => bump(),
            Some(j) if j < k => bump(),
            Some(j) if j == k => {
                let z = self.order[k];
                if self.g.odd[z] {
                    let rest = m.with_exponent(k, m.exponent(k) - 1);
                    let zz: Vec<S> = self.g.bracket(&self.g.basis_vector(z), &self.g.basis_vector(z));
                    let half: Vec<S> = zz.into_iter().map(|c| c * self.half.clone()).collect();
                    self.mul_lie(&rest, &half)
                } else if self.restricted && m.exponent(k) + 1 == self.p {
                    let rest = m.with_exponent(k, 0);
                    let img = self.g.pmap_basis(z).expect("checked in new").clone();
                    self.mul_lie(&rest, &img)
                } else {
                    bump()
                }
            }
            Some(j) => {
                // m = m1 w with w at position j > k; w z = (-1)^{|w||z|} z w + [w, z]
                let (w, z) = (self.order[j], self.order[k]);
                let m1 = m.with_exponent(j, m.exponent(j) - 1);
                let mut out = PbwElement::zero();
                let s = sign::<S>(self.g.odd[w] && self.g.odd[z]);
                for (t, c) in self.mul_gen(&m1, k).terms() {
                    out.add_scaled(&self.mul_gen(t, j), &(c.clone() * s.clone()));
                }
                let wz = self.g.bracket(&self.g.basis_vector(w), &self.g.basis_vector(z));
                out.add_scaled(&self.mul_lie(&m1, &wz), &S::one());
                out
            }
        }
    }

    fn mul_lie(&self, m: &SuperMonomial, v: &[S]) -> PbwElement<S> {
        let mut out = PbwElement::zero();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&self.mul_gen(m, self.pos[i]), c);
            }
        }
        out
    }

    pub fn mul_elem_gen(&self, a: &PbwElement<S>, k: usize) -> PbwElement<S> {
        let mut out = PbwElement::zero();
        for (m, c) in a.terms() {
            out.add_scaled(&self.mul_gen(m, k), c);
        }
        out
    }

    pub fn mul(&self, a: &PbwElement<S>, b: &PbwElement<S>) -> PbwElement<S> {
        let mut out = PbwElement::zero();
        for (mb, cb) in b.terms() {
            let mut acc = a.clone();
            for k in 0..mb.exps().len() {
                for _ in 0..mb.exponent(k) {
                    acc = self.mul_elem_gen(&acc, k);
                }
            }
            out.add_scaled(&acc, cb);
        }
        out
    }

    /// Basis of V(g) (restricted) in ascending exponent order.
    pub fn restricted_basis(&self) -> Vec<SuperMonomial> {
        let n = self.g.dim();
        let mut out = vec![Vec::new()];
        for k in 0..n {
            let top = if self.odd_at(k) { 1 } else { self.p - 1 };
            out = out
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (0..=top).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        let mut b: Vec<SuperMonomial> = out.into_iter().map(SuperMonomial::from_exps).collect();
        b.sort();
        b
    }

    pub fn format(&self, a: &PbwElement<S>) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.terms()
            .map(|(m, c)| {
                let mut s = String::new();
                for k in 0..m.exps().len() {
                    match m.exponent(k) {
                        0 => {}
                        1 => s.push_str(&self.g.names[self.order[k]]),
                        e => s.push_str(&format!("{}^{}", self.g.names[self.order[k]], e)),
                    }
                }
                if s.is_empty() {
                    s.push('1');
                }
                format!("{c}*{s}")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_example, build_gl, ExampleId};
    use crate::{F3, F5};
    use num_traits::One;
    use proptest::prelude::*;

    #[test]
    fn ex531_relations() {
        let g = build_example::<F3>(&ExampleId::Ex531).unwrap();
        let v = Pbw::new(&g, true).unwrap();
        let y = v.generator(0);
        let x = v.generator(1);
        assert_eq!(v.mul(&y, &y), x);
        assert_eq!(v.mul(&v.mul(&x, &x), &x), x);
        assert_eq!(v.restricted_basis().len(), 6);
    }

    #[test]
    fn commuting_generators_add_exponents() {
        let g = build_example::<F5>(&ExampleId::Ex533 { n: 1, alphas: vec![1, 1] }).unwrap();
        let u = Pbw::new(&g, false).unwrap();
        let x0 = u.generator(1);
        let x1 = u.generator(2);
        let a = u.mul(&u.mul(&x1, &x0), &x0);
        assert_eq!(a, PbwElement::monomial(SuperMonomial::from_exps(vec![2, 1, 0]), F5::one()));
        assert!(Pbw::new(&build_example::<F5>(&ExampleId::Ex312).unwrap(), true).is_err());
    }

    #[test]
    fn ex532_straightening() {
        let g = build_example::<F3>(&ExampleId::Ex532).unwrap();
        let v = Pbw::new(&g, true).unwrap();
        let y = v.generator(0);
        let x = v.generator(1);
        // y x = x y + [y, x] = x y + y
        let yx = v.mul(&y, &x);
        assert_eq!(yx, v.mul(&x, &y).plus(&y));
        assert!(v.mul(&y, &y).is_zero());
    }

    proptest! {
        #[test]
        fn associative_gl11(a in proptest::collection::vec(0i64..3, 3), b in proptest::collection::vec(0i64..3, 3), c in proptest::collection::vec(0i64..3, 3)) {
            let g = build_gl::<F3>(1, 1).unwrap();
            let v = Pbw::new(&g, true).unwrap();
            let basis = v.restricted_basis();
            let pick = |ix: &[i64]| {
                let mut e = PbwElement::zero();
                for (t, &k) in ix.iter().enumerate() {
                    e.add_term(basis[(k as usize * 11 + t * 5) % basis.len()].clone(), F3::from_i64(k + 1));
                }
                e
            };
            let (x, y, z) = (pick(&a), pick(&b), pick(&c));
            prop_assert_eq!(v.mul(&v.mul(&x, &y), &z), v.mul(&x, &v.mul(&y, &z)));
        }
    }
}
