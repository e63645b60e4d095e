//! Order-by-order solution of Weil-valued points on a zero locus subject to
//! linear side conditions.
//!
//! Unknowns are coordinate tuples over one or more Weil algebras ("blocks"),
//! all with augmentation `base`. At stage `k` the level-`k` adapted
//! coefficients are fixed from
//!
//! * the constraints: `J(base)·t = -(level-k part of f(current))`, exact
//!   because anything involving `t` nonlinearly lies in `m^(k+1)`;
//! * the side conditions, which are linear: the part of each condition not
//!   reachable by unknowns of level `> k` (a left-nullspace projection).
//!
//! Once the deepest level is done every equation is re-checked exactly.

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::jet::ZeroLocus;
use crate::linalg::{self, Matrix, Solution};
use crate::rational::Rational;
use crate::weil::{AlgebraMorphism, WeilAlgebra, WeilElement};

/// `Σ sign · m(block)` must equal `rhs`, coordinatewise.
pub(crate) struct Condition<'a> {
    pub target: Arc<WeilAlgebra>,
    pub terms: Vec<(usize, &'a AlgebraMorphism, Rational)>,
    pub rhs: Vec<WeilElement>,
}

pub(crate) enum Choice<'a> {
    /// Stop at the first stage without a unique solution.
    RequireUnique,
    /// Pick the particular solution plus a random kernel combination.
    Sample(&'a mut ChaCha8Rng),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub level: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    /// `"unique"`, `"underdetermined"` or `"inconsistent"`.
    pub outcome: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftStatus {
    Unique,
    NonUnique,
    Inconsistent,
}

impl LiftStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            LiftStatus::Unique => "unique",
            LiftStatus::NonUnique => "non_unique",
            LiftStatus::Inconsistent => "inconsistent",
        }
    }
}

pub(crate) struct Outcome {
    pub stages: Vec<StageRecord>,
    pub status: LiftStatus,
    /// Stage at which solving stopped; `depth + 1` for the final check.
    pub failed_stage: Option<usize>,
    pub blocks: Option<Vec<Vec<WeilElement>>>,
}

struct Unknown {
    block: usize,
    coord: usize,
    basis: usize,
    level: usize,
}

pub(crate) fn solve(
    locus: &ZeroLocus,
    base: &[Rational],
    blocks: &[Arc<WeilAlgebra>],
    conditions: &[Condition],
    mut choice: Choice,
) -> Outcome {
    let n = base.len();
    let jac = match locus.jacobian(base) {
        Ok(j) => j,
        Err(_) => return failed(Vec::new(), LiftStatus::Inconsistent, 0),
    };
    let mut values: Vec<Vec<WeilElement>> = blocks
        .iter()
        .map(|w| base.iter().map(|b| WeilElement::constant(w, b.clone())).collect())
        .collect();

    let mut unknowns = Vec::new();
    for (a, w) in blocks.iter().enumerate() {
        let levels = w.filtration().levels();
        for coord in 0..n {
            for (basis, &level) in levels.iter().enumerate() {
                if level > 0 {
                    unknowns.push(Unknown { block: a, coord, basis, level });
                }
            }
        }
    }

    // Full linear map from all unknowns to all condition coordinates.
    let row_offsets: Vec<usize> = conditions
        .iter()
        .scan(0, |acc, c| {
            let o = *acc;
            *acc += n * c.target.dimension();
            Some(o)
        })
        .collect();
    let cond_rows: usize = conditions.iter().map(|c| n * c.target.dimension()).sum();
    let mut cond_matrix: Matrix = linalg::zeros(cond_rows, unknowns.len());
    for (ci, c) in conditions.iter().enumerate() {
        let dt = c.target.dimension();
        for (block, m, sign) in &c.terms {
            let w = &blocks[*block];
            for (col, u) in unknowns.iter().enumerate().filter(|(_, u)| u.block == *block) {
                let v = WeilElement::new(w, w.filtration().vector(u.basis).to_vec()).expect("dimension");
                let img = m.apply(&v).expect("morphism source");
                for (e, x) in img.coeffs().iter().enumerate() {
                    if !x.is_zero() {
                        cond_matrix[row_offsets[ci] + u.coord * dt + e][col] += sign * x;
                    }
                }
            }
        }
    }

    let depth = blocks.iter().map(|w| w.filtration().depth()).max().unwrap_or(0);
    let mut stages = Vec::new();
    for k in 1..=depth {
        let cols: Vec<usize> = (0..unknowns.len()).filter(|&i| unknowns[i].level == k).collect();
        let later: Vec<usize> = (0..unknowns.len()).filter(|&i| unknowns[i].level > k).collect();
        let mut a: Matrix = Vec::new();
        let mut rhs: Vec<Rational> = Vec::new();

        // constraints, block by block
        for (bi, w) in blocks.iter().enumerate() {
            let residues = match locus.residues(&values[bi]) {
                Ok(r) => r,
                Err(_) => return failed(stages, LiftStatus::Inconsistent, k),
            };
            let at_k = w.filtration().at_level(k);
            for (j, r) in residues.iter().enumerate() {
                let adapted = r.adapted_coords();
                for &b in &at_k {
                    let row = cols
                        .iter()
                        .map(|&c| {
                            let u = &unknowns[c];
                            if u.block == bi && u.basis == b {
                                jac[j][u.coord].clone()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect();
                    a.push(row);
                    rhs.push(-adapted[b].clone());
                }
            }
        }

        // side conditions, projected away from later unknowns
        let residual = condition_residual(conditions, &values, n);
        let later_block: Matrix = cond_matrix
            .iter()
            .map(|row| later.iter().map(|&c| row[c].clone()).collect())
            .collect();
        let projectors = linalg::nullspace(&linalg::transpose(&later_block, later.len()), cond_rows);
        for y in projectors {
            a.push(
                cols.iter()
                    .map(|&c| dot_col(&y, &cond_matrix, c))
                    .collect(),
            );
            rhs.push(dot(&y, &residual));
        }

        let sol = linalg::solve(&a, &rhs, cols.len());
        let rank = sol.rank(cols.len());
        let (t, outcome) = match sol {
            Solution::Unique(x) => (x, "unique"),
            Solution::Underdetermined { particular, .. } => match &mut choice {
                Choice::RequireUnique => {
                    stages.push(record(k, cols.len(), a.len(), rank, "underdetermined"));
                    return failed(stages, LiftStatus::NonUnique, k);
                }
                Choice::Sample(rng) => {
                    let mut x = particular;
                    for v in linalg::nullspace(&a, cols.len()) {
                        let c = Rational::from_integer(rng.gen_range(-2i64..=2).into());
                        for (xi, vi) in x.iter_mut().zip(&v) {
                            *xi += &c * vi;
                        }
                    }
                    (x, "underdetermined")
                }
            },
            Solution::Inconsistent { .. } => {
                stages.push(record(k, cols.len(), a.len(), rank, "inconsistent"));
                return failed(stages, LiftStatus::Inconsistent, k);
            }
        };
        stages.push(record(k, cols.len(), a.len(), rank, outcome));
        for (&c, x) in cols.iter().zip(&t) {
            if x.is_zero() {
                continue;
            }
            let u = &unknowns[c];
            let w = &blocks[u.block];
            let step: Vec<Rational> = w.filtration().vector(u.basis).iter().map(|v| v * x).collect();
            let step = WeilElement::new(w, step).expect("dimension");
            values[u.block][u.coord] = values[u.block][u.coord].add(&step).expect("same algebra");
        }
    }

    // exact re-check
    let ok_constraints = values
        .iter()
        .all(|tuple| locus.contains(tuple).unwrap_or(false));
    let ok_conditions = condition_residual(conditions, &values, n).iter().all(Zero::is_zero);
    if !(ok_constraints && ok_conditions) {
        return failed(stages, LiftStatus::Inconsistent, depth + 1);
    }
    let status = if stages.iter().all(|s| s.outcome == "unique") {
        LiftStatus::Unique
    } else {
        LiftStatus::NonUnique
    };
    Outcome {
        stages,
        status,
        failed_stage: None,
        blocks: Some(values),
    }
}

fn record(level: usize, unknowns: usize, equations: usize, rank: usize, outcome: &str) -> StageRecord {
    StageRecord {
        level,
        unknowns,
        equations,
        rank,
        outcome: outcome.to_string(),
    }
}

fn failed(stages: Vec<StageRecord>, status: LiftStatus, stage: usize) -> Outcome {
    Outcome {
        stages,
        status,
        failed_stage: Some(stage),
        blocks: None,
    }
}

/// `rhs - Σ sign·m(block)` for every condition, flattened.
fn condition_residual(conditions: &[Condition], values: &[Vec<WeilElement>], n: usize) -> Vec<Rational> {
    let mut out = Vec::new();
    for c in conditions {
        for i in 0..n {
            let mut r = c.rhs[i].clone();
            for (block, m, sign) in &c.terms {
                let img = m.apply(&values[*block][i]).expect("morphism source");
                r = r.sub(&img.scale(sign)).expect("same algebra");
            }
            out.extend(r.coeffs().iter().cloned());
        }
    }
    out
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

fn dot_col(y: &[Rational], m: &Matrix, col: usize) -> Rational {
    y.iter()
        .zip(m)
        .filter(|(a, row)| !a.is_zero() && !row[col].is_zero())
        .fold(Rational::zero(), |acc, (a, row)| acc + a * &row[col])
}
