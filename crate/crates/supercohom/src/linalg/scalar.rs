//! exact scalars: prime fields and rationals.

use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ScalarError;

/// Characteristic descriptor of a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Prime(u32),
    Rational,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Prime(p) => write!(f, "F_{p}"),
            FieldTag::Rational => write!(f, "Q"),
        }
    }
}

pub const fn is_odd_prime(p: u32) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Field element usable by every algorithm in the crate.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + 'static
{
    fn tag() -> FieldTag;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// Import a tagged scalar; fails if the tag does not match.
    fn lift(x: &FieldScalar) -> Result<Self, ScalarError>;

    fn to_field_scalar(&self) -> FieldScalar;

    /// Lexicographic key used for canonical orderings.
    fn sort_key(&self) -> SortKey;

    fn characteristic() -> u32 {
        match Self::tag() {
            FieldTag::Prime(p) => p,
            FieldTag::Rational => 0,
        }
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    fn from_ratio(n: i64, d: i64) -> Result<Self, ScalarError> {
        let d = Self::from_i64(d);
        let inv = d.inv().ok_or(ScalarError::DivisionByZero)?;
        Ok(Self::from_i64(n) * inv)
    }

    /// All elements of a prime field in canonical order; `None` over Q.
    fn elements() -> Option<Vec<Self>> {
        match Self::tag() {
            FieldTag::Prime(p) => Some((0..p as i64).map(Self::from_i64).collect()),
            FieldTag::Rational => None,
        }
    }
}

/// Totally ordered key: residues order by representative, rationals by value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SortKey {
    Residue(u32),
    Rational(BigRational),
}

/// Source of the modulus for [`Fp`].
pub trait Modulus: Copy + Clone + fmt::Debug + Default + PartialEq + Eq + Hash + Send + Sync + 'static {
    fn modulus() -> u32;
}

/// Compile-time modulus.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Const<const P: u32>;

impl<const P: u32> Const<P> {
    const CHECK: () = assert!(is_odd_prime(P), "modulus must be an odd prime");
}

impl<const P: u32> Modulus for Const<P> {
    #[inline]
    fn modulus() -> u32 {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        P
    }
}

static RUNTIME_MODULUS: OnceLock<u32> = OnceLock::new();

/// Process-wide modulus fixed once at startup (used by the command line tool).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Runtime;

impl Runtime {
    pub fn install(p: u32) -> Result<(), ScalarError> {
        if !is_odd_prime(p) || p >= (1 << 31) {
            return Err(ScalarError::BadModulus(p as u64));
        }
        let got = *RUNTIME_MODULUS.get_or_init(|| p);
        if got != p {
            return Err(ScalarError::TagMismatch(FieldTag::Prime(got), FieldTag::Prime(p)));
        }
        Ok(())
    }

    pub fn installed() -> Option<u32> {
        RUNTIME_MODULUS.get().copied()
    }
}

impl Modulus for Runtime {
    #[inline]
    fn modulus() -> u32 {
        *RUNTIME_MODULUS.get().expect("runtime modulus not installed")
    }
}

/// Element of F_p, stored as its canonical representative in `0..p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<M: Modulus> {
    v: u32,
    _m: PhantomData<M>,
}

impl<M: Modulus> Fp<M> {
    #[inline]
    pub fn new(v: u64) -> Self {
        Fp { v: (v % M::modulus() as u64) as u32, _m: PhantomData }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.v
    }

    #[inline]
    fn raw(v: u32) -> Self {
        Fp { v, _m: PhantomData }
    }
}

impl<M: Modulus> fmt::Debug for Fp<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl<M: Modulus> fmt::Display for Fp<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl<M: Modulus> Zero for Fp<M> {
    fn zero() -> Self {
        Self::raw(0)
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
}

impl<M: Modulus> One for Fp<M> {
    fn one() -> Self {
        Self::raw(1)
    }
}

impl<M: Modulus> Add for Fp<M> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        let p = M::modulus() as u64;
        let s = self.v as u64 + o.v as u64;
        Self::raw(if s >= p { s - p } else { s } as u32)
    }
}

impl<M: Modulus> Sub for Fp<M> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        let p = M::modulus() as u64;
        Self::raw(((self.v as u64 + p - o.v as u64) % p) as u32)
    }
}

impl<M: Modulus> Mul for Fp<M> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Self::raw(((self.v as u64 * o.v as u64) % M::modulus() as u64) as u32)
    }
}

impl<M: Modulus> Neg for Fp<M> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        if self.v == 0 {
            self
        } else {
            Self::raw(M::modulus() - self.v)
        }
    }
}

impl<M: Modulus> Div for Fp<M> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero in F_p")
    }
}

impl<M: Modulus> AddAssign for Fp<M> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<M: Modulus> SubAssign for Fp<M> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<M: Modulus> MulAssign for Fp<M> {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<M: Modulus> Scalar for Fp<M> {
    fn tag() -> FieldTag {
        FieldTag::Prime(M::modulus())
    }

    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        // Fermat
        Some(Scalar::pow(self, M::modulus() as u64 - 2))
    }

    fn from_i64(v: i64) -> Self {
        Self::raw(v.rem_euclid(M::modulus() as i64) as u32)
    }

    fn from_bigint(v: &BigInt) -> Self {
        let p = BigInt::from(M::modulus());
        Self::raw(v.mod_floor(&p).to_u32().unwrap())
    }

    fn lift(x: &FieldScalar) -> Result<Self, ScalarError> {
        match x {
            FieldScalar::Mod { v, p } if *p == M::modulus() => Ok(Self::raw(*v)),
            other => Err(ScalarError::TagMismatch(Self::tag(), other.tag())),
        }
    }

    fn to_field_scalar(&self) -> FieldScalar {
        FieldScalar::Mod { v: self.v, p: M::modulus() }
    }

    fn sort_key(&self) -> SortKey {
        SortKey::Residue(self.v)
    }
}

/// Exact rationals.
pub type Q = BigRational;

impl Scalar for BigRational {
    fn tag() -> FieldTag {
        FieldTag::Rational
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn lift(x: &FieldScalar) -> Result<Self, ScalarError> {
        match x {
            FieldScalar::Rat(q) => Ok(q.clone()),
            other => Err(ScalarError::TagMismatch(Self::tag(), other.tag())),
        }
    }

    fn to_field_scalar(&self) -> FieldScalar {
        FieldScalar::Rat(self.clone())
    }

    fn sort_key(&self) -> SortKey {
        SortKey::Rational(self.clone())
    }
}

/// Dynamically tagged scalar with checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Mod { v: u32, p: u32 },
    Rat(BigRational),
}

impl FieldScalar {
    pub fn modular(v: i64, p: u32) -> Result<Self, ScalarError> {
        if !is_odd_prime(p) {
            return Err(ScalarError::BadModulus(p as u64));
        }
        Ok(FieldScalar::Mod { v: v.rem_euclid(p as i64) as u32, p })
    }

    pub fn rational(n: i64, d: i64) -> Result<Self, ScalarError> {
        if d == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(FieldScalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d))))
    }

    pub fn zero_of(tag: FieldTag) -> Self {
        match tag {
            FieldTag::Prime(p) => FieldScalar::Mod { v: 0, p },
            FieldTag::Rational => FieldScalar::Rat(BigRational::zero()),
        }
    }

    pub fn tag(&self) -> FieldTag {
        match self {
            FieldScalar::Mod { p, .. } => FieldTag::Prime(*p),
            FieldScalar::Rat(_) => FieldTag::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Mod { v, .. } => *v == 0,
            FieldScalar::Rat(q) => q.is_zero(),
        }
    }

    fn check(&self, o: &Self) -> Result<(), ScalarError> {
        if self.tag() != o.tag() {
            return Err(ScalarError::TagMismatch(self.tag(), o.tag()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, ScalarError> {
        self.check(o)?;
        Ok(match (self, o) {
            (FieldScalar::Mod { v: a, p }, FieldScalar::Mod { v: b, .. }) => {
                FieldScalar::Mod { v: ((*a as u64 + *b as u64) % *p as u64) as u32, p: *p }
            }
            (FieldScalar::Rat(a), FieldScalar::Rat(b)) => FieldScalar::Rat(a + b),
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, o: &Self) -> Result<Self, ScalarError> {
        self.check(o)?;
        Ok(match (self, o) {
            (FieldScalar::Mod { v: a, p }, FieldScalar::Mod { v: b, .. }) => {
                FieldScalar::Mod { v: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p }
            }
            (FieldScalar::Rat(a), FieldScalar::Rat(b)) => FieldScalar::Rat(a * b),
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldScalar::Mod { v, p } => FieldScalar::Mod { v: (*p - *v) % *p, p: *p },
            FieldScalar::Rat(a) => FieldScalar::Rat(-a),
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            FieldScalar::Mod { v, p } => {
                let (mut base, mut e, mut acc) = (*v as u64, *p as u64 - 2, 1u64);
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % *p as u64;
                    }
                    base = base * base % *p as u64;
                    e >>= 1;
                }
                FieldScalar::Mod { v: acc as u32, p: *p }
            }
            FieldScalar::Rat(a) => FieldScalar::Rat(a.recip()),
        })
    }

    /// Parse `"n"` or `"n/d"` into the field named by `tag`.
    pub fn parse(s: &str, tag: FieldTag) -> Result<Self, ScalarError> {
        let bad = || ScalarError::Parse(s.to_string());
        let (n, d) = match s.trim().split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().map_err(|_| bad())?,
                d.trim().parse::<BigInt>().map_err(|_| bad())?,
            ),
            None => (s.trim().parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
        };
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match tag {
            FieldTag::Rational => Ok(FieldScalar::Rat(BigRational::new(n, d))),
            FieldTag::Prime(p) => {
                let pb = BigInt::from(p);
                let nv = n.mod_floor(&pb).to_u32().unwrap();
                let dv = d.mod_floor(&pb).to_u32().unwrap();
                let num = FieldScalar::Mod { v: nv, p };
                let den = FieldScalar::Mod { v: dv, p };
                num.mul(&den.inv()?)
            }
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Mod { v, .. } => write!(f, "{v}"),
            FieldScalar::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom().abs())
                }
            }
        }
    }
}

/// Binomial coefficient as a field element (Lucas in characteristic p).
pub fn binomial<S: Scalar>(n: u64, k: u64) -> S {
    if k > n {
        return S::zero();
    }
    match S::tag() {
        FieldTag::Prime(p) => {
            let p = p as u64;
            let (mut n, mut k) = (n, k);
            let mut acc = S::one();
            while n > 0 || k > 0 {
                let (ni, ki) = (n % p, k % p);
                if ki > ni {
                    return S::zero();
                }
                let mut num = S::one();
                let mut den = S::one();
                for i in 0..ki {
                    num *= S::from_i64((ni - i) as i64);
                    den *= S::from_i64((i + 1) as i64);
                }
                acc *= num * den.inv().unwrap();
                n /= p;
                k /= p;
            }
            acc
        }
        FieldTag::Rational => {
            let mut acc = BigInt::one();
            for i in 0..k {
                acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
            }
            S::from_bigint(&acc)
        }
    }
}

pub fn sign<S: Scalar>(odd: bool) -> S {
    if odd {
        -S::one()
    } else {
        S::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F3 = Fp<Const<3>>;
    type F5 = Fp<Const<5>>;

    #[test]
    fn small_field_ops() {
        assert_eq!(F5::from_i64(2).inv().unwrap(), F5::from_i64(3));
        assert!((F5::from_i64(4) + F5::one()).is_zero());
        assert_eq!(F3::from_i64(-1), F3::from_i64(2));
        let q = Q::new(BigInt::from(2), BigInt::from(3));
        assert_eq!(q.inv().unwrap(), Q::new(BigInt::from(3), BigInt::from(2)));
        assert!(F3::zero().inv().is_none());
    }

    #[test]
    fn tagged_ops() {
        let a = FieldScalar::modular(2, 5).unwrap();
        assert_eq!(a.inv().unwrap(), FieldScalar::modular(3, 5).unwrap());
        let b = FieldScalar::modular(1, 7).unwrap();
        assert!(matches!(a.add(&b), Err(ScalarError::TagMismatch(..))));
        let z = FieldScalar::modular(0, 5).unwrap();
        assert!(matches!(z.inv(), Err(ScalarError::DivisionByZero)));
        let r = FieldScalar::rational(2, 3).unwrap();
        assert_eq!(r.inv().unwrap(), FieldScalar::rational(3, 2).unwrap());
        assert_eq!(FieldScalar::parse("1/2", FieldTag::Prime(5)).unwrap(), FieldScalar::modular(3, 5).unwrap());
        assert_eq!(FieldScalar::parse("-4/6", FieldTag::Rational).unwrap().to_string(), "-2/3");
        assert!(FieldScalar::parse("x", FieldTag::Rational).is_err());
        for p in [3u32, 5, 7, 11] {
            let pm1 = FieldScalar::modular(p as i64 - 1, p).unwrap();
            assert!(pm1.add(&FieldScalar::modular(1, p).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn lift_roundtrip() {
        let x = F5::from_i64(4);
        assert_eq!(F5::lift(&x.to_field_scalar()).unwrap(), x);
        assert!(F3::lift(&x.to_field_scalar()).is_err());
        assert!(Q::lift(&x.to_field_scalar()).is_err());
    }

    #[test]
    fn binomials() {
        assert!(binomial::<F3>(3, 1).is_zero());
        assert_eq!(binomial::<F5>(4, 2), F5::from_i64(6));
        assert_eq!(binomial::<Q>(10, 3), Q::from_i64(120));
        assert_eq!(binomial::<F3>(4, 1), F3::from_i64(4));
    }

    #[test]
    fn primality() {
        assert!(is_odd_prime(3) && is_odd_prime(2147483647));
        assert!(!is_odd_prime(2) && !is_odd_prime(9) && !is_odd_prime(1));
    }
}
