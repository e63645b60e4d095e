//! Weil algebras: presentations, normal forms, elements and morphisms.

pub mod algebra;
pub mod element;
pub mod groebner;
pub mod morphism;
pub mod poly;
pub mod presentation;
pub mod tensor;

pub use algebra::{Filtration, WeilAlgebra, DEFAULT_DEGREE_CAP};
pub use element::{element_arithmetic, ArithOp, Operand, WeilElement};
pub use morphism::{AlgebraMorphism, MorphismCertificate, MorphismFailure};
pub use poly::{Monomial, Polynomial};
pub use presentation::{parse_polynomial, AugPresentation};
pub use tensor::{tensor, tensor_many};
