//! Points of `Spec W` valued in another Weil algebra, and the Kock-Lawvere
//! evaluation map `w ↦ (φ ↦ φ(w))`.
//!
//! A point of `W` with values in a carrier `W'` is an assignment of each
//! generator of `W` to a nilpotent element of `W'` satisfying the relations
//! of `W`, i.e. an augmented algebra map `W → W'`. Probing with the
//! universal point (`W' = W`, generators to themselves) recovers every
//! element, which is the injectivity half of the Kock-Lawvere axiom; its
//! surjectivity concerns the smooth line itself and is not something a
//! finite computation can check.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, serde_q, Rational};
use crate::weil::morphism::render_in;
use crate::weil::{
    AlgebraMorphism, AugPresentation, MorphismCertificate, Polynomial, WeilAlgebra, WeilElement,
};

/// An unvalidated assignment, as read from input.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCandidate {
    map: AlgebraMorphism,
}

/// A validated point: every assigned element is nilpotent and every
/// relation of `of` vanishes in the carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecPoint {
    map: AlgebraMorphism,
}

pub type PointCertificate = MorphismCertificate;

impl PointCandidate {
    pub fn new(
        of: &Arc<WeilAlgebra>,
        carrier: &Arc<WeilAlgebra>,
        assignment: Vec<WeilElement>,
    ) -> Result<Self> {
        Ok(PointCandidate {
            map: AlgebraMorphism::new(of, carrier, assignment)?,
        })
    }

    pub fn of(&self) -> &Arc<WeilAlgebra> {
        self.map.source()
    }

    pub fn carrier(&self) -> &Arc<WeilAlgebra> {
        self.map.target()
    }

    pub fn into_point(self) -> Result<SpecPoint> {
        SpecPoint::from_morphism(self.map)
    }
}

/// Check both point invariants; never fails, the verdict is in the
/// certificate.
pub fn validate_point(p: &PointCandidate) -> PointCertificate {
    p.map.validate()
}

impl SpecPoint {
    pub fn new(
        of: &Arc<WeilAlgebra>,
        carrier: &Arc<WeilAlgebra>,
        assignment: Vec<WeilElement>,
    ) -> Result<Self> {
        PointCandidate::new(of, carrier, assignment)?.into_point()
    }

    /// Points are the same thing as augmented morphisms `of → carrier`.
    pub fn from_morphism(map: AlgebraMorphism) -> Result<Self> {
        let cert = map.validate();
        match cert.failure {
            None => Ok(SpecPoint { map }),
            Some(f) => Err(Error::Invalid(format!(
                "invalid point: {} `{}` gives {}",
                f.kind, f.item, f.residue
            ))),
        }
    }

    /// Generators to themselves in `W` itself.
    pub fn universal(w: &Arc<WeilAlgebra>) -> Self {
        SpecPoint {
            map: AlgebraMorphism::identity(w),
        }
    }

    /// Every generator to 0; valid for any carrier.
    pub fn zero(of: &Arc<WeilAlgebra>, carrier: &Arc<WeilAlgebra>) -> Self {
        let images = vec![WeilElement::zero(carrier); of.generator_count()];
        SpecPoint {
            map: AlgebraMorphism::new(of, carrier, images).expect("arity matches"),
        }
    }

    pub fn of(&self) -> &Arc<WeilAlgebra> {
        self.map.source()
    }

    pub fn carrier(&self) -> &Arc<WeilAlgebra> {
        self.map.target()
    }

    pub fn assignment(&self) -> &[WeilElement] {
        self.map.images()
    }

    pub fn as_morphism(&self) -> &AlgebraMorphism {
        &self.map
    }

    pub fn certificate(&self) -> PointCertificate {
        self.map.validate()
    }
}

/// Evaluate `w` at the point: substitute the assignment into the
/// basis-monomial representative of `w` and reduce in the carrier.
pub fn kl_evaluate(w: &WeilElement, p: &SpecPoint) -> Result<WeilElement> {
    p.map.apply(w)
}

/// Evaluate an arbitrary (not necessarily reduced) polynomial in the
/// generators of `p.of()`.
pub fn kl_evaluate_polynomial(poly: &Polynomial, p: &SpecPoint) -> Result<WeilElement> {
    if poly.nvars() != p.of().generator_count() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(p.map.apply_polynomial(poly))
}

/// Push a point forward along `m: carrier → W''`.
pub fn point_compose(p: &SpecPoint, m: &AlgebraMorphism) -> Result<SpecPoint> {
    SpecPoint::from_morphism(p.map.then(m)?)
}

/// JSON form: `{"of": <presentation>, "carrier": <presentation>,
/// "assignment": {"x": ["p/q", ...]}}` with coefficients on the carrier
/// basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub of: String,
    pub carrier: String,
    pub assignment: BTreeMap<String, Vec<serde_json::Value>>,
}

impl PointJson {
    pub fn from_point(p: &SpecPoint) -> Self {
        Self::from_parts(p.of(), p.carrier(), p.assignment())
    }

    fn from_parts(of: &WeilAlgebra, carrier: &WeilAlgebra, images: &[WeilElement]) -> Self {
        PointJson {
            of: of.presentation().to_string(),
            carrier: carrier.presentation().to_string(),
            assignment: of
                .generators()
                .iter()
                .zip(images)
                .map(|(g, e)| {
                    (
                        g.clone(),
                        e.coeffs()
                            .iter()
                            .map(|q| serde_json::Value::String(fmt_rational(q)))
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    /// Parse both presentations and build the (unvalidated) candidate.
    pub fn to_candidate(&self, cap: u32) -> Result<PointCandidate> {
        let of = WeilAlgebra::normalize_with_cap(&AugPresentation::parse(&self.of)?, cap)?;
        let carrier = WeilAlgebra::normalize_with_cap(&AugPresentation::parse(&self.carrier)?, cap)?;
        let mut images = Vec::with_capacity(of.generator_count());
        for g in of.generators() {
            let raw = self
                .assignment
                .get(g)
                .ok_or_else(|| Error::Invalid(format!("no assignment for generator `{g}`")))?;
            let coeffs = raw
                .iter()
                .map(|v| {
                    serde_q::value_to_rational(v)
                        .ok_or_else(|| Error::Invalid(format!("not a rational: {v}")))
                })
                .collect::<Result<Vec<Rational>>>()?;
            images.push(WeilElement::new(&carrier, coeffs)?);
        }
        if let Some(extra) = self.assignment.keys().find(|k| of.generator_index(k).is_none()) {
            return Err(Error::UndeclaredGenerator(extra.clone()));
        }
        PointCandidate::new(&of, &carrier, images)
    }
}

/// Human-readable assignment, e.g. `x -> ε`.
pub fn describe(p: &SpecPoint) -> Vec<String> {
    p.of()
        .generators()
        .iter()
        .zip(p.assignment())
        .map(|(g, e)| format!("{g} -> {}", render_in(e)))
        .collect()
}
