//! Zero loci `Z_f = {x | f(x) = 0}` and their tangent vectors.
//!
//! A tangent vector at `x` is a map `v: D → Z` with `v(0) = x`; by
//! Kock-Lawvere it is `ε ↦ x + εv` for a direction `v` with
//! `f(x + εv) = 0` in the dual numbers, i.e. `J_f(x) v = 0`.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::lift::{eval_at, jacobian, lift_eval};
use super::program::SmoothProgram;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::micro::{axis_square, lift_against_square, LiftProblem, LiftStatus};
use crate::rational::{fmt_rational, Rational};
use crate::weil::morphism::render_in;
use crate::weil::{AlgebraMorphism, Polynomial, WeilAlgebra, WeilElement};

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroLocus {
    inputs: Vec<String>,
    constraints: Vec<SmoothProgram>,
}

impl ZeroLocus {
    pub fn new(inputs: Vec<String>, constraints: Vec<SmoothProgram>) -> Result<Self> {
        if let Some(c) = constraints.iter().find(|c| c.inputs() != inputs.as_slice()) {
            return Err(Error::Invalid(format!(
                "constraint over {:?}, locus over {:?}",
                c.inputs(),
                inputs
            )));
        }
        Ok(ZeroLocus { inputs, constraints })
    }

    /// `Q^n` with coordinates `x1..xn`.
    pub fn ambient(n: usize) -> Self {
        ZeroLocus {
            inputs: (1..=n).map(|i| format!("x{i}")).collect(),
            constraints: Vec::new(),
        }
    }

    pub fn parse(inputs: &[String], constraints: &[&str]) -> Result<Self> {
        let cs = constraints
            .iter()
            .map(|t| SmoothProgram::parse(t, Some(inputs)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(inputs.to_vec(), cs)
    }

    pub fn ambient_dim(&self) -> usize {
        self.inputs.len()
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn constraints(&self) -> &[SmoothProgram] {
        &self.constraints
    }

    /// A copy with one more constraint.
    pub fn with_constraint(&self, c: SmoothProgram) -> Result<Self> {
        let mut cs = self.constraints.clone();
        cs.push(c);
        Self::new(self.inputs.clone(), cs)
    }

    /// Fails with the first constraint that does not vanish at `at`.
    pub fn check_point(&self, at: &[Rational]) -> Result<()> {
        if at.len() != self.ambient_dim() {
            return Err(Error::Invalid(format!(
                "point has {} coordinates, locus lives in dimension {}",
                at.len(),
                self.ambient_dim()
            )));
        }
        for (j, c) in self.constraints.iter().enumerate() {
            let r = eval_at(c, at)?;
            if !r.is_zero() {
                return Err(Error::PointNotOnLocus {
                    constraint: j,
                    residue: fmt_rational(&r),
                });
            }
        }
        Ok(())
    }

    /// Every constraint evaluated at a Weil-valued point.
    pub fn residues(&self, point: &[WeilElement]) -> Result<Vec<WeilElement>> {
        self.constraints.iter().map(|c| lift_eval(c, point)).collect()
    }

    /// Whether a Weil-valued point lies on the locus.
    pub fn contains(&self, point: &[WeilElement]) -> Result<bool> {
        Ok(self.residues(point)?.iter().all(WeilElement::is_zero))
    }

    pub fn jacobian(&self, at: &[Rational]) -> Result<Matrix> {
        jacobian(&self.constraints, at)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    locus: Arc<ZeroLocus>,
    base: Vec<Rational>,
    direction: Vec<Rational>,
}

impl TangentVector {
    /// Checks that `base` is on the locus and that `base + ε·direction`
    /// satisfies every constraint over the dual numbers.
    pub fn new(locus: &Arc<ZeroLocus>, base: Vec<Rational>, direction: Vec<Rational>) -> Result<Self> {
        locus.check_point(&base)?;
        if direction.len() != base.len() {
            return Err(Error::Invalid("direction and base differ in length".into()));
        }
        let curve = dual_curve(&base, &direction);
        for (j, r) in locus.residues(&curve)?.iter().enumerate() {
            if !r.is_zero() {
                return Err(Error::Invalid(format!(
                    "direction is not tangent: constraint {j} gives {}",
                    render_in(r)
                )));
            }
        }
        Ok(TangentVector {
            locus: locus.clone(),
            base,
            direction,
        })
    }

    pub fn zero(locus: &Arc<ZeroLocus>, base: Vec<Rational>) -> Result<Self> {
        let n = base.len();
        Self::new(locus, base, vec![Rational::zero(); n])
    }

    pub fn locus(&self) -> &Arc<ZeroLocus> {
        &self.locus
    }

    pub fn base(&self) -> &[Rational] {
        &self.base
    }

    pub fn direction(&self) -> &[Rational] {
        &self.direction
    }

    /// The map `D → Z` as a coordinate tuple over the dual numbers.
    pub fn as_curve(&self) -> Vec<WeilElement> {
        dual_curve(&self.base, &self.direction)
    }
}

fn dual_curve(base: &[Rational], direction: &[Rational]) -> Vec<WeilElement> {
    let d = WeilAlgebra::dual_numbers();
    base.iter()
        .zip(direction)
        .map(|(b, v)| WeilElement::new(&d, vec![b.clone(), v.clone()]).expect("dimension 2"))
        .collect()
}

/// Basis of `T_at Z`: the kernel of the Jacobian, by exact elimination.
pub fn tangent_space(z: &ZeroLocus, at: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    z.check_point(at)?;
    Ok(linalg::nullspace(&z.jacobian(at)?, at.len()))
}

/// `r·v ⊞ s·w`, computed through the first-order square: scale each
/// tangent by precomposing with `ε ↦ rε` (resp. `sε`), lift the pair along
/// `D(1) ∨ D(1) → D(2)` into the locus, and restrict the lift along the
/// diagonal `D(1) → D(2)`.
pub fn tangent_combine(v: &TangentVector, w: &TangentVector, r: &Rational, s: &Rational) -> Result<TangentVector> {
    if *v.locus != *w.locus || v.base != w.base {
        return Err(Error::Invalid("tangent vectors at different points".into()));
    }
    let square = axis_square(1, 1);
    let d1 = WeilAlgebra::dual_numbers();
    let scaled = |t: &TangentVector, c: &Rational, corner: &Arc<WeilAlgebra>| -> Result<Vec<WeilElement>> {
        // D(1) → D(1), ε ↦ cε, then identify D(1) with the corner
        let scale = AlgebraMorphism::from_polynomials(&d1, &d1, &[Polynomial::var(1, 0).scale(c)])?;
        let to_corner = AlgebraMorphism::from_polynomials(&d1, corner, &[Polynomial::var(1, 0)])?;
        let m = scale.then(&to_corner)?;
        t.as_curve().iter().map(|e| m.apply(e)).collect()
    };
    let b2 = scaled(v, r, square.corner(2))?;
    let b3 = scaled(w, s, square.corner(3))?;
    let problem = LiftProblem::new(v.locus.as_ref(), v.base.clone(), &square, b2, b3)?;
    let report = lift_against_square(&problem);
    let lift = match (report.status, report.lift) {
        (LiftStatus::Unique, Some(l)) => l,
        (status, _) => {
            return Err(Error::LiftFailed(format!(
                "{} at stage {}",
                status.as_str(),
                report.failed_stage.unwrap_or(0)
            )))
        }
    };
    let d2 = square.corner(4);
    let diagonal = AlgebraMorphism::from_polynomials(d2, &d1, &[Polynomial::var(1, 0), Polynomial::var(1, 0)])?;
    let restricted = lift.iter().map(|e| diagonal.apply(e)).collect::<Result<Vec<_>>>()?;
    let direction = restricted.iter().map(|e| e.coeff(1).clone()).collect();
    TangentVector::new(&v.locus, v.base.clone(), direction)
}

/// Whether the induced map on tangent spaces is bijective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
    pub iso: bool,
}

/// Push `v` forward along `map` (one program per target coordinate, each
/// over the source coordinates): `f_*(v)(ε) = f(v(ε))`.
pub fn pushforward(
    map: &[SmoothProgram],
    v: &TangentVector,
    target: &Arc<ZeroLocus>,
) -> Result<(TangentVector, IsoReport)> {
    let src = v.locus();
    if map.len() != target.ambient_dim() || map.iter().any(|f| f.arity() != src.ambient_dim()) {
        return Err(Error::Invalid("map does not match source and target dimensions".into()));
    }
    let image_base = map.iter().map(|f| eval_at(f, v.base())).collect::<Result<Vec<_>>>()?;
    target.check_point(&image_base)?;
    let curve = v.as_curve();
    let image_dir = map
        .iter()
        .map(|f| Ok(lift_eval(f, &curve)?.coeff(1).clone()))
        .collect::<Result<Vec<_>>>()?;
    let pushed = TangentVector::new(target, image_base.clone(), image_dir)?;

    let t1 = tangent_space(src, v.base())?;
    let t2 = tangent_space(target, &image_base)?;
    let jf = jacobian(map, v.base())?;
    let images: Matrix = t1.iter().map(|b| linalg::mat_vec(&jf, b)).collect();
    let rank = if images.is_empty() { 0 } else { linalg::rank(&images) };
    let injective = rank == t1.len();
    let surjective = rank == t2.len();
    Ok((
        pushed,
        IsoReport {
            source_dim: t1.len(),
            target_dim: t2.len(),
            rank,
            injective,
            surjective,
            iso: injective && surjective,
        },
    ))
}

/// Coordinatewise `r·v + s·w`; the oracle for [`tangent_combine`].
pub fn kernel_combination(v: &[Rational], w: &[Rational], r: &Rational, s: &Rational) -> Vec<Rational> {
    v.iter().zip(w).map(|(a, b)| r * a + s * b).collect()
}

/// The scalar rule `(r·v)(ε) = v(rε)` alone.
pub fn tangent_scale(v: &TangentVector, r: &Rational) -> Result<TangentVector> {
    let zero = TangentVector::zero(v.locus(), v.base().to_vec())?;
    tangent_combine(v, &zero, r, &Rational::one())
}
