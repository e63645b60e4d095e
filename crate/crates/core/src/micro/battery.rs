//! A finite battery of lifting problems against a zero locus.
//!
//! Passing the battery means: for each listed square, base point and
//! sampled boundary, the lift exists and is unique. It says nothing about
//! squares outside the list.

use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::lift::{lift_against_square, LiftProblem};
use super::solver::{self, Choice, Condition, LiftStatus, StageRecord};
use super::square::{is_r_pushout, InfSquare};
use crate::error::{Error, Result};
use crate::jet::ZeroLocus;
use crate::rational::{fmt_rational, Rational};
use crate::weil::WeilElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatteryConfig {
    /// Boundary samples per square and base point.
    pub samples: usize,
    pub seed: u64,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig { samples: 3, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryCase {
    pub square: String,
    pub base: Vec<String>,
    pub sample: usize,
    pub status: LiftStatus,
    pub failed_stage: Option<usize>,
    pub stages: Vec<StageRecord>,
}

/// A sample for which no compatible boundary could be generated (the jet
/// extension itself was obstructed); not counted as a lifting failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatterySkip {
    pub square: String,
    pub base: Vec<String>,
    pub sample: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryReport {
    pub pass: bool,
    pub squares: Vec<String>,
    pub cases: Vec<BatteryCase>,
    pub skipped: Vec<BatterySkip>,
}

/// Run every (square, base, sample) lifting problem. Squares that are not
/// certified R-pushouts are refused.
pub fn microlinearity_battery(
    z: &ZeroLocus,
    bases: &[Vec<Rational>],
    squares: &[InfSquare],
    config: BatteryConfig,
) -> Result<BatteryReport> {
    for s in squares {
        if !is_r_pushout(s).pass {
            return Err(Error::SquareNotRPushout(s.name().to_string()));
        }
    }
    for b in bases {
        z.check_point(b)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cases = Vec::new();
    let mut skipped = Vec::new();
    for s in squares {
        for b in bases {
            let base_text: Vec<String> = b.iter().map(fmt_rational).collect();
            for sample in 0..config.samples {
                match sample_boundary(z, b, s, &mut rng) {
                    Ok((b2, b3)) => {
                        let problem = LiftProblem::new(z, b.clone(), s, b2, b3)?;
                        let r = lift_against_square(&problem);
                        cases.push(BatteryCase {
                            square: s.name().to_string(),
                            base: base_text.clone(),
                            sample,
                            status: r.status,
                            failed_stage: r.failed_stage,
                            stages: r.stages,
                        });
                    }
                    Err(reason) => skipped.push(BatterySkip {
                        square: s.name().to_string(),
                        base: base_text.clone(),
                        sample,
                        reason,
                    }),
                }
            }
        }
    }
    Ok(BatteryReport {
        pass: cases.iter().all(|c| c.status == LiftStatus::Unique),
        squares: squares.iter().map(|s| s.name().to_string()).collect(),
        cases,
        skipped,
    })
}

/// A random compatible pair of maps `V2 → Z`, `V3 → Z` based at `base`,
/// built order by order from particular solutions plus random kernel
/// combinations.
pub fn sample_boundary(
    z: &ZeroLocus,
    base: &[Rational],
    s: &InfSquare,
    rng: &mut ChaCha8Rng,
) -> std::result::Result<(Vec<WeilElement>, Vec<WeilElement>), String> {
    let w1 = s.corner(1).clone();
    let cond = Condition {
        target: w1.clone(),
        terms: vec![(0, s.w2_to_w1(), Rational::one()), (1, s.w3_to_w1(), -Rational::one())],
        rhs: vec![WeilElement::constant(&w1, Rational::zero()); base.len()],
    };
    let blocks = [s.corner(2).clone(), s.corner(3).clone()];
    let out = solver::solve(z, base, &blocks, &[cond], Choice::Sample(rng));
    match out.blocks {
        Some(mut b) => {
            let b3 = b.pop().expect("two blocks");
            let b2 = b.pop().expect("two blocks");
            Ok((b2, b3))
        }
        None => Err(format!(
            "boundary extension obstructed at stage {}",
            out.failed_stage.unwrap_or(0)
        )),
    }
}
