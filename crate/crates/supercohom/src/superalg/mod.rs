//! Graded-commutative superalgebras: free ones on monomials, finite ones by structure constants.

mod finite;
mod monomial;

pub use finite::{random_algebra, FiniteGradedSuperalgebra, NilradicalDecomposition};
pub use monomial::{
    check_free_commutativity, chi, AlgebraElement, GenKind, GeneratorSpec, GradedAlgebra, SignType, SuperMonomial,
};
