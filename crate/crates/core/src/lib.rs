//! Exact Weil algebras and the computations built on them.
//!
//! * [`weil`]: augmented presentations, normal forms, ring arithmetic.
//! * [`spec`]: points of `Spec W` with values in other Weil algebras and the
//!   Kock-Lawvere evaluation map.
//! * [`jet`]: lifting programs to Weil arguments (forward-mode jets),
//!   derivatives, Taylor towers, tangent spaces of zero loci.
//! * [`micro`]: certificates for infinitesimal pushout squares and
//!   order-by-order lifting against them.
//! * [`orbifold`]: exact SL2(Z) lattice algebra, finite group actions,
//!   crystallographic extensions and association relations.
//! * [`cli`]: the `nilpotent` command-line front end.

pub mod cli;
pub mod error;
pub mod jet;
pub mod lexer;
pub mod linalg;
pub mod micro;
pub mod orbifold;
pub mod rational;
pub mod spec;
pub mod weil;

pub use error::{Error, Result};
pub use rational::{Rational, Scalar};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/weil.md")]
    mod weil {}
    #[doc = include_str!("../../../book/src/points.md")]
    mod points {}
    #[doc = include_str!("../../../book/src/jets.md")]
    mod jets {}
    #[doc = include_str!("../../../book/src/micro.md")]
    mod micro {}
    #[doc = include_str!("../../../book/src/orbifold.md")]
    mod orbifold {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
