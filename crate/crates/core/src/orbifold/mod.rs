//! Desk-scale group algebra for good orbifolds: `SL2(Z)` on lattices in
//! `Q(i)`, finite actions with isotropy, torus quotients and their
//! crystallographic extensions, roots-of-unity cycles and associations.

pub mod assoc;
pub mod crystallographic;
pub mod cycle;
pub mod gaussian;
pub mod scene;
pub mod sl2z;

pub use assoc::{compose, product, union_check, Association, UnionCertificate};
pub use crystallographic::{
    extension_check, torus_fixed_points, CrystElement, Crystallographic, ExtensionCertificate, MatrixGroup,
};
pub use cycle::{cycle_check, CycleCertificate};
pub use gaussian::GaussianRational;
pub use scene::{FiniteActionScene, FiniteGroup, GroupElement, IntMatrix, Permutation, ScenePoint};
pub use sl2z::{
    apply_basis_change, basis_change, fiber_action, lattice_equal, lattice_identity_holds, mobius, IntMatrix2,
    LatticeBasis,
};
