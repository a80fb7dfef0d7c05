//! Exact computations for Lie superalgebras: Koszul cohomology, restricted
//! enveloping algebras and their free resolutions, rank varieties.

pub mod error;
pub mod koszul;
pub mod lie;
pub mod linalg;
pub mod resolution;
pub mod superalg;
pub mod varieties;

pub use error::{AlgebraError, LinalgError, ScalarError};
pub use linalg::{FieldScalar, FieldTag, Fp, Matrix, Scalar, SuperMatrix, Q};

/// F_p with the modulus fixed at compile time.
pub type F3 = Fp<linalg::Const<3>>;
pub type F5 = Fp<linalg::Const<5>>;
pub type F7 = Fp<linalg::Const<7>>;
/// F_p with the modulus installed at runtime via [`linalg::Runtime::install`].
pub type FpDyn = Fp<linalg::Runtime>;
