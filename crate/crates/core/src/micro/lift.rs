//! Lifting a compatible pair of boundary maps through a square.

use num_traits::One;
use serde_json::{json, Value};

use super::solver::{self, Choice, Condition, LiftStatus, StageRecord};
use super::square::InfSquare;
use crate::error::{Error, Result};
use crate::jet::ZeroLocus;
use crate::rational::{fmt_rational, Rational};
use crate::weil::element::same_algebra;
use crate::weil::morphism::render_in;
use crate::weil::WeilElement;

/// Maps `V2 → Z` and `V3 → Z` (coordinate tuples over `W2`, `W3`) that
/// agree on `V1`, to be extended to `V4 → Z`.
#[derive(Debug, Clone)]
pub struct LiftProblem {
    locus: ZeroLocus,
    base: Vec<Rational>,
    square: InfSquare,
    boundary2: Vec<WeilElement>,
    boundary3: Vec<WeilElement>,
}

impl LiftProblem {
    pub fn new(
        locus: &ZeroLocus,
        base: Vec<Rational>,
        square: &InfSquare,
        boundary2: Vec<WeilElement>,
        boundary3: Vec<WeilElement>,
    ) -> Result<Self> {
        locus.check_point(&base)?;
        let n = base.len();
        for (corner, tuple) in [(2, &boundary2), (3, &boundary3)] {
            if tuple.len() != n {
                return Err(Error::Invalid(format!("boundary over W{corner} has {} coordinates", tuple.len())));
            }
            if let Some(e) = tuple.iter().find(|e| !same_algebra(e.algebra(), square.corner(corner))) {
                return Err(Error::Invalid(format!(
                    "boundary over W{corner} has an element of {}",
                    e.algebra()
                )));
            }
            if tuple.iter().zip(&base).any(|(e, b)| e.augmentation() != b) {
                return Err(Error::Invalid(format!("boundary over W{corner} is not based at the base point")));
            }
            if !locus.contains(tuple)? {
                return Err(Error::Invalid(format!("boundary over W{corner} leaves the locus")));
            }
        }
        for (a, b) in boundary2.iter().zip(&boundary3) {
            if square.w2_to_w1().apply(a)? != square.w3_to_w1().apply(b)? {
                return Err(Error::Invalid("boundary maps disagree on W1".into()));
            }
        }
        Ok(LiftProblem {
            locus: locus.clone(),
            base,
            square: square.clone(),
            boundary2,
            boundary3,
        })
    }

    pub fn locus(&self) -> &ZeroLocus {
        &self.locus
    }

    pub fn base(&self) -> &[Rational] {
        &self.base
    }

    pub fn square(&self) -> &InfSquare {
        &self.square
    }

    pub fn boundary(&self) -> (&[WeilElement], &[WeilElement]) {
        (&self.boundary2, &self.boundary3)
    }
}

#[derive(Debug, Clone)]
pub struct LiftReport {
    pub status: LiftStatus,
    /// The lift over `W4`, present when every stage was uniquely solvable.
    pub lift: Option<Vec<WeilElement>>,
    pub stages: Vec<StageRecord>,
    pub failed_stage: Option<usize>,
}

impl LiftReport {
    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status.as_str(),
            "lift": self.lift.as_ref().map(|l| l.iter().map(render_in).collect::<Vec<_>>()),
            "lift_coefficients": self.lift.as_ref().map(|l| {
                l.iter()
                    .map(|e| e.coeffs().iter().map(fmt_rational).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            }),
            "stages": self.stages,
            "failed_stage": self.failed_stage,
        })
    }
}

/// Solve for the extension order by order over the filtration of `W4`.
pub fn lift_against_square(p: &LiftProblem) -> LiftReport {
    let s = &p.square;
    let w4 = s.corner(4).clone();
    let conditions = [
        Condition {
            target: s.corner(2).clone(),
            terms: vec![(0, s.w4_to_w2(), Rational::one())],
            rhs: p.boundary2.clone(),
        },
        Condition {
            target: s.corner(3).clone(),
            terms: vec![(0, s.w4_to_w3(), Rational::one())],
            rhs: p.boundary3.clone(),
        },
    ];
    let out = solver::solve(&p.locus, &p.base, &[w4], &conditions, Choice::RequireUnique);
    let lift = match out.status {
        LiftStatus::Unique => out.blocks.and_then(|mut b| b.pop()),
        _ => None,
    };
    LiftReport {
        status: out.status,
        lift,
        stages: out.stages,
        failed_stage: out.failed_stage,
    }
}
