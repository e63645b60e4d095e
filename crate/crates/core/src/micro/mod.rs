//! Infinitesimal pushout squares and lifting against them.

pub mod battery;
pub mod lift;
mod solver;
pub mod square;

pub use battery::{microlinearity_battery, sample_boundary, BatteryConfig, BatteryReport};
pub use lift::{lift_against_square, LiftProblem, LiftReport};
pub use solver::{LiftStatus, StageRecord};
pub use square::{
    axis_square, default_battery, dimension_mismatch_square, is_r_pushout, named_square,
    second_order_square, tensor_cross_square, wedge_square, InfSquare, PushoutCertificate,
    SquareSpec,
};
