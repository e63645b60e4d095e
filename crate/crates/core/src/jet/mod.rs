//! Smooth programs evaluated at Weil-algebra arguments.

pub mod lift;
pub mod locus;
pub mod primitive;
pub mod program;

pub use lift::{derivative, eval_at, jacobian, lift_eval, lift_eval_mode, mixed_partial, taylor, JetScalar, Lifted, Mode};
pub use locus::{
    kernel_combination, pushforward, tangent_combine, tangent_scale, tangent_space, IsoReport,
    TangentVector, ZeroLocus,
};
pub use primitive::{PrimitiveRegistry, TowerRule};
pub use program::{Node, ProgramBuilder, SmoothProgram};
