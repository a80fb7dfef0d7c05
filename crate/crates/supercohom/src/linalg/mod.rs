//! exact scalar and dense matrix arithmetic.

pub mod matrix;
pub mod scalar;

pub use matrix::{normalize_leading, span_basis, span_dim, Echelon, Matrix, SuperMatrix};
pub use num_traits::{One, Zero};
pub use scalar::{binomial, is_odd_prime, sign, Const, FieldScalar, FieldTag, Fp, Modulus, Runtime, Scalar, SortKey, Q};
