//! Lie superalgebras, restricted structure, enveloping algebras and supermodules.

mod algebra;
mod module;
mod pbw;

pub use algebra::{build_example, build_gl, ExampleId, LieElement, LieSuperalgebra, Violation};
pub use module::{check_supermodule, Supermodule};
pub use pbw::{Pbw, PbwElement};
