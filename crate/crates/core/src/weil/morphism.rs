//! Augmented algebra morphisms between Weil algebras.

use std::sync::Arc;

use serde::Serialize;

use super::algebra::WeilAlgebra;
use super::element::{same_algebra, WeilElement};
use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A map determined by generator images. Construction does not validate;
/// call [`AlgebraMorphism::validate`] (or use [`AlgebraMorphism::checked`]).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraMorphism {
    source: Arc<WeilAlgebra>,
    target: Arc<WeilAlgebra>,
    images: Vec<WeilElement>,
}

/// Outcome of checking the homomorphism conditions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MorphismCertificate {
    pub valid: bool,
    /// Every relation that was substituted and reduced, in order.
    pub checked_relations: Vec<String>,
    pub failure: Option<MorphismFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MorphismFailure {
    /// `"relation"` or `"augmentation"`.
    pub kind: String,
    /// The failing relation, or the generator whose image is not nilpotent.
    pub item: String,
    /// Nonzero residue, rendered in the target.
    pub residue: String,
}

impl AlgebraMorphism {
    pub fn new(
        source: &Arc<WeilAlgebra>,
        target: &Arc<WeilAlgebra>,
        images: Vec<WeilElement>,
    ) -> Result<Self> {
        if images.len() != source.generator_count() {
            return Err(Error::Invalid(format!(
                "{} images for {} generators",
                images.len(),
                source.generator_count()
            )));
        }
        if images.iter().any(|e| !same_algebra(e.algebra(), target)) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(AlgebraMorphism {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// Images given as polynomials in the target's generators.
    pub fn from_polynomials(
        source: &Arc<WeilAlgebra>,
        target: &Arc<WeilAlgebra>,
        images: &[Polynomial],
    ) -> Result<Self> {
        let images = images
            .iter()
            .map(|p| WeilElement::from_polynomial(target, p))
            .collect();
        Self::new(source, target, images)
    }

    /// Like [`AlgebraMorphism::new`] but rejects invalid maps.
    pub fn checked(
        source: &Arc<WeilAlgebra>,
        target: &Arc<WeilAlgebra>,
        images: Vec<WeilElement>,
    ) -> Result<Self> {
        let m = Self::new(source, target, images)?;
        let cert = m.validate();
        match cert.failure {
            None => Ok(m),
            Some(f) => Err(Error::Invalid(format!(
                "not an algebra morphism: {} `{}` maps to {}",
                f.kind, f.item, f.residue
            ))),
        }
    }

    pub fn identity(w: &Arc<WeilAlgebra>) -> Self {
        let images = (0..w.generator_count())
            .map(|i| WeilElement::generator(w, i))
            .collect();
        AlgebraMorphism {
            source: w.clone(),
            target: w.clone(),
            images,
        }
    }

    pub fn source(&self) -> &Arc<WeilAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<WeilAlgebra> {
        &self.target
    }

    pub fn images(&self) -> &[WeilElement] {
        &self.images
    }

    /// Substitute the images into a polynomial in the source generators and
    /// reduce in the target.
    pub fn apply_polynomial(&self, p: &Polynomial) -> WeilElement {
        substitute(p, &self.images, &self.target)
    }

    /// Image of an element, through its basis-monomial representative.
    pub fn apply(&self, w: &WeilElement) -> Result<WeilElement> {
        if !same_algebra(w.algebra(), &self.source) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.apply_polynomial(&w.to_polynomial()))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if !same_algebra(&self.target, &other.source) {
            return Err(Error::AlgebraMismatch);
        }
        let images = self
            .images
            .iter()
            .map(|e| other.apply(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            images,
        })
    }

    /// Matrix of the underlying linear map: column `j` is the image of
    /// source basis element `j`.
    pub fn linear_matrix(&self) -> Vec<Vec<Rational>> {
        let cols: Vec<WeilElement> = self
            .source
            .basis()
            .iter()
            .map(|m| self.apply_polynomial(&Polynomial::term(m.clone(), num_traits::One::one())))
            .collect();
        (0..self.target.dimension())
            .map(|r| cols.iter().map(|c| c.coeff(r).clone()).collect())
            .collect()
    }

    /// Check that every source relation maps to 0 and every generator image
    /// lies in the augmentation ideal of the target.
    pub fn validate(&self) -> MorphismCertificate {
        let names = self.source.generators();
        let mut checked = Vec::new();
        for (g, img) in names.iter().zip(&self.images) {
            if !num_traits::Zero::is_zero(img.augmentation()) {
                return MorphismCertificate {
                    valid: false,
                    checked_relations: checked,
                    failure: Some(MorphismFailure {
                        kind: "augmentation".into(),
                        item: g.clone(),
                        residue: img.augmentation().to_string(),
                    }),
                };
            }
        }
        for rel in self.source.presentation().relations() {
            let text = rel.render(names);
            let residue = self.apply_polynomial(rel);
            checked.push(text.clone());
            if !residue.is_zero() {
                return MorphismCertificate {
                    valid: false,
                    checked_relations: checked,
                    failure: Some(MorphismFailure {
                        kind: "relation".into(),
                        item: text,
                        residue: render_in(&residue),
                    }),
                };
            }
        }
        MorphismCertificate {
            valid: true,
            checked_relations: checked,
            failure: None,
        }
    }
}

/// Render an element as a polynomial in its algebra's generators.
pub fn render_in(e: &WeilElement) -> String {
    e.to_polynomial().render(e.algebra().generators())
}

/// Evaluate `p` at the given elements of `target`.
pub(crate) fn substitute(p: &Polynomial, values: &[WeilElement], target: &Arc<WeilAlgebra>) -> WeilElement {
    let mut out = WeilElement::zero(target);
    // cache powers of each value
    let mut powers: Vec<Vec<WeilElement>> = values.iter().map(|v| vec![WeilElement::one(target), v.clone()]).collect();
    for (m, c) in p.terms() {
        let mut t = WeilElement::constant(target, c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap().mul(&values[i]).expect("same algebra");
                powers[i].push(next);
            }
            t = t.mul(&powers[i][e as usize]).expect("same algebra");
        }
        out = out.add(&t).expect("same algebra");
    }
    out
}
