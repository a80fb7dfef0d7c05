//! Finite-dimensional graded-commutative superalgebras given by structure constants.

use rand::Rng;

use crate::error::AlgebraError;
use crate::linalg::{sign, span_basis, Matrix, Scalar};

use super::monomial::{GeneratorSpec, GradedAlgebra, SuperMonomial};

/// Homogeneous basis with dense structure constants: `e_i e_j = sum_k table[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGradedSuperalgebra<S> {
    pub names: Vec<String>,
    pub degrees: Vec<u32>,
    pub odd: Vec<bool>,
    table: Vec<Vec<S>>,
    unit: Vec<S>,
    /// Degree bound if products above it were discarded.
    pub truncated_at: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NilradicalDecomposition<S> {
    /// Basis of the nilradical of `R = A_0^ev + A_1^odd`.
    pub nil_of_r: Vec<Vec<S>>,
    /// Basis of `Nil(R) + A_0^odd + A_1^ev`.
    pub full: Vec<Vec<S>>,
    pub truncated_at: Option<u32>,
}

impl<S: Scalar> FiniteGradedSuperalgebra<S> {
    pub fn from_table(
        names: Vec<String>,
        degrees: Vec<u32>,
        odd: Vec<bool>,
        table: Vec<Vec<Vec<S>>>,
        unit: Vec<S>,
    ) -> Result<Self, AlgebraError> {
        let n = names.len();
        if degrees.len() != n || odd.len() != n || table.len() != n || unit.len() != n {
            return Err(AlgebraError::InvalidParameters("inconsistent basis data".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n || row.iter().any(|v| v.len() != n) {
                return Err(AlgebraError::InvalidParameters("structure constants must be n x n x n".into()));
            }
            flat.extend(row);
        }
        Ok(FiniteGradedSuperalgebra { names, degrees, odd, table: flat, unit, truncated_at: None })
    }

    /// The free algebra on `alg` cut off above `max_degree`.
    pub fn from_free(alg: &GradedAlgebra, max_degree: u32) -> Self {
        let basis: Vec<SuperMonomial> = (0..=max_degree).flat_map(|d| alg.monomial_basis(d)).collect();
        let n = basis.len();
        let index: std::collections::HashMap<&SuperMonomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut table = vec![vec![S::zero(); n]; n * n];
        let mut lost = false;
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                if let Some((c, m)) = alg.mul_mono::<S>(a, b) {
                    match index.get(&m) {
                        Some(&k) => table[i * n + j][k] = c,
                        None => lost = true,
                    }
                }
            }
        }
        let mut unit = vec![S::zero(); n];
        unit[index[&SuperMonomial::one(alg.ngens())]] = S::one();
        FiniteGradedSuperalgebra {
            names: basis.iter().map(|m| alg.format_monomial(m)).collect(),
            degrees: basis.iter().map(|m| alg.degree(m)).collect(),
            odd: basis.iter().map(|m| alg.parity(m)).collect(),
            table,
            unit,
            truncated_at: if lost { Some(max_degree) } else { None },
        }
    }

    /// `k[t]/(f)` with `t` even of degree 0; `f` monic, coefficients lowest first, leading 1 omitted.
    pub fn quotient_polynomial(lower: &[S]) -> Result<Self, AlgebraError> {
        let d = lower.len();
        if d == 0 {
            return Err(AlgebraError::InvalidParameters("polynomial must have positive degree".into()));
        }
        // t^k for k < 2d-1 reduced mod f
        let mut powers: Vec<Vec<S>> = Vec::new();
        let mut cur = vec![S::zero(); d];
        cur[0] = S::one();
        for _ in 0..(2 * d - 1) {
            powers.push(cur.clone());
            let top = cur[d - 1].clone();
            let mut next = vec![S::zero(); d];
            for k in 1..d {
                next[k] = cur[k - 1].clone();
            }
            for k in 0..d {
                next[k] -= top.clone() * lower[k].clone();
            }
            cur = next;
        }
        let table = (0..d).map(|i| (0..d).map(|j| powers[i + j].clone()).collect()).collect();
        let mut unit = vec![S::zero(); d];
        unit[0] = S::one();
        Self::from_table(
            (0..d).map(|k| if k == 0 { "1".into() } else { format!("t^{k}") }).collect(),
            vec![0; d],
            vec![false; d],
            table,
            unit,
        )
    }

    /// Graded tensor product: `(a1 x a2)(b1 x b2) = (-1)^{|a2||b1| + deg a2 deg b1} a1 b1 x a2 b2`.
    pub fn tensor(&self, o: &Self) -> Self {
        let (n, m) = (self.dim(), o.dim());
        let nm = n * m;
        let mut table = vec![vec![S::zero(); nm]; nm * nm];
        for a1 in 0..n {
            for a2 in 0..m {
                for b1 in 0..n {
                    for b2 in 0..m {
                        let s = sign::<S>(
                            (o.odd[a2] && self.odd[b1]) ^ (o.degrees[a2] % 2 == 1 && self.degrees[b1] % 2 == 1),
                        );
                        let p1 = self.product(a1, b1);
                        let p2 = o.product(a2, b2);
                        let slot = &mut table[(a1 * m + a2) * nm + b1 * m + b2];
                        for (k1, c1) in p1.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                            for (k2, c2) in p2.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                                slot[k1 * m + k2] += s.clone() * c1.clone() * c2.clone();
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![S::zero(); nm];
        for (i, a) in self.unit.iter().enumerate() {
            for (j, b) in o.unit.iter().enumerate() {
                unit[i * m + j] = a.clone() * b.clone();
            }
        }
        let mut names = Vec::with_capacity(nm);
        let mut degrees = Vec::with_capacity(nm);
        let mut odd = Vec::with_capacity(nm);
        for i in 0..n {
            for j in 0..m {
                names.push(format!("{}.{}", self.names[i], o.names[j]));
                degrees.push(self.degrees[i] + o.degrees[j]);
                odd.push(self.odd[i] ^ o.odd[j]);
            }
        }
        let truncated_at = match (self.truncated_at, o.truncated_at) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        FiniteGradedSuperalgebra { names, degrees, odd, table, unit, truncated_at }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn product(&self, i: usize, j: usize) -> &[S] {
        &self.table[i * self.dim() + j]
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: Vec<S>) {
        let n = self.dim();
        self.table[i * n + j] = v;
    }

    pub fn unit(&self) -> &[S] {
        &self.unit
    }

    pub fn mul(&self, a: &[S], b: &[S]) -> Vec<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let c = x.clone() * y.clone();
                for (k, v) in self.product(i, j).iter().enumerate() {
                    if !v.is_zero() {
                        out[k] += c.clone() * v.clone();
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[S], e: u64) -> Vec<S> {
        let mut acc = self.unit.clone();
        let mut base = a.to_vec();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_nilpotent(&self, a: &[S]) -> bool {
        // nilpotency index never exceeds dim + 1
        self.pow(a, self.dim() as u64 + 1).iter().all(|c| c.is_zero())
    }

    pub fn basis_vector(&self, i: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[i] = S::one();
        v
    }

    /// Products of homogeneous basis elements must be homogeneous of the summed degree and parity.
    pub fn check_grading(&self) -> Result<(), AlgebraError> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.product(i, j).iter().enumerate() {
                    if !c.is_zero() && (self.degrees[k] != self.degrees[i] + self.degrees[j] || self.odd[k] != (self.odd[i] ^ self.odd[j])) {
                        return Err(AlgebraError::Grading(format!(
                            "{} * {} has a component on {}",
                            self.names[i], self.names[j], self.names[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exhaustive check of `ab = (-1)^{|a||b| + deg a deg b} ba` on basis pairs.
    pub fn check_graded_commutativity(&self) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                let s = sign::<S>((self.odd[i] && self.odd[j]) ^ (self.degrees[i] % 2 == 1 && self.degrees[j] % 2 == 1));
                let ab = self.product(i, j);
                let ba = self.product(j, i);
                if ab.iter().zip(ba).any(|(x, y)| *x != s.clone() * y.clone()) {
                    return false;
                }
            }
        }
        true
    }

    fn in_r(&self, i: usize) -> bool {
        self.odd[i] == (self.degrees[i] % 2 == 1)
    }

    /// `Nil(A) = Nil(R) + A_0^odd + A_1^ev`; `Nil(R)` via Frobenius in characteristic p,
    /// via the trace-form radical in characteristic 0.
    pub fn nilradical_decomposition(&self) -> Result<NilradicalDecomposition<S>, AlgebraError> {
        self.check_grading()?;
        let n = self.dim();
        let r_idx: Vec<usize> = (0..n).filter(|&i| self.in_r(i)).collect();
        let rd = r_idx.len();
        let embed = |coords: &[S]| -> Vec<S> {
            let mut v = vec![S::zero(); n];
            for (c, &i) in coords.iter().zip(&r_idx) {
                v[i] = c.clone();
            }
            v
        };
        let restrict = |v: &[S]| -> Vec<S> { r_idx.iter().map(|&i| v[i].clone()).collect() };
        let p = S::characteristic();
        let nil_r_coords: Vec<Vec<S>> = if rd == 0 {
            Vec::new()
        } else if p > 0 {
            let cols: Vec<Vec<S>> = r_idx.iter().map(|&i| restrict(&self.pow(&self.basis_vector(i), p as u64))).collect();
            let frob = Matrix::from_columns(rd, &cols);
            let mut k = 1u64;
            let mut pk = p as u64;
            while pk <= rd as u64 {
                pk *= p as u64;
                k += 1;
            }
            frob.pow(k)?.kernel_basis()
        } else {
            let mult_trace = |x: &[S]| -> S {
                let mut t = S::zero();
                for (a, &i) in r_idx.iter().enumerate() {
                    let prod = self.mul(x, &self.basis_vector(i));
                    t += restrict(&prod)[a].clone();
                }
                t
            };
            let gram = Matrix::from_fn(rd, rd, |a, b| {
                let xy = self.mul(&self.basis_vector(r_idx[a]), &self.basis_vector(r_idx[b]));
                mult_trace(&xy)
            });
            gram.kernel_basis()
        };
        let nil_of_r: Vec<Vec<S>> = nil_r_coords.iter().map(|c| embed(c)).collect();
        let mut full = nil_of_r.clone();
        full.extend((0..n).filter(|&i| !self.in_r(i)).map(|i| self.basis_vector(i)));
        let full = span_basis(n, &full);
        for v in &full {
            if !self.is_nilpotent(v) {
                return Err(AlgebraError::IdentityFailed(format!("nilradical element {v:?} is not nilpotent")));
            }
        }
        Ok(NilradicalDecomposition { nil_of_r, full, truncated_at: self.truncated_at })
    }
}

/// Random finite algebra: a truncated free graded-commutative algebra tensored with
/// `k[t]/(f)` for a random monic `f`. Rejection-samples until `dim <= max_dim`.
pub fn random_algebra<S: Scalar, R: Rng>(rng: &mut R, max_dim: usize) -> FiniteGradedSuperalgebra<S> {
    loop {
        let ngens = rng.gen_range(1..=3);
        let gens: Vec<GeneratorSpec> = (0..ngens)
            .map(|i| {
                let odd = rng.gen_bool(0.5);
                let deg = if odd { rng.gen_range(0..=2) } else { rng.gen_range(1..=2) };
                GeneratorSpec { name: format!("g{i}"), odd, z_degree: deg, divided: rng.gen_bool(0.3) }
            })
            .collect();
        let free = match GradedAlgebra::new(gens) {
            Ok(a) => a,
            Err(_) => continue,
        };
        let bound = rng.gen_range(1..=3);
        let a = FiniteGradedSuperalgebra::<S>::from_free(&free, bound);
        let fdeg = rng.gen_range(1..=2);
        let f: Vec<S> = (0..fdeg).map(|_| S::from_i64(rng.gen_range(0..7))).collect();
        let q = FiniteGradedSuperalgebra::quotient_polynomial(&f).expect("positive degree");
        let t = a.tensor(&q);
        if t.dim() <= max_dim {
            return t;
        }
    }
}
