//! Elements of a Weil algebra and their ring arithmetic.

use std::fmt;
use std::sync::Arc;

use super::algebra::WeilAlgebra;
use super::poly::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::rational::{Rational, Scalar};

/// Coefficient vector on the basis of a [`WeilAlgebra`].
///
/// `S` is the coefficient carrier; exact rationals unless a caller
/// explicitly asks for floats.
#[derive(Debug, Clone)]
pub struct WeilElement<S: Scalar = Rational> {
    algebra: Arc<WeilAlgebra>,
    coeffs: Vec<S>,
}

impl<S: Scalar> PartialEq for WeilElement<S> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.coeffs == other.coeffs
    }
}

pub(crate) fn same_algebra(a: &Arc<WeilAlgebra>, b: &Arc<WeilAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// The four ring operations exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Scale,
}

/// Right operand of [`element_arithmetic`].
#[derive(Debug, Clone)]
pub enum Operand<S: Scalar = Rational> {
    Element(WeilElement<S>),
    Scalar(S),
}

/// Dispatch one ring operation. `Scale` takes a scalar, the others an
/// element of the same algebra; a scalar on add/sub/mul is read as that
/// multiple of 1.
pub fn element_arithmetic<S: Scalar>(
    op: ArithOp,
    a: &WeilElement<S>,
    b: &Operand<S>,
) -> Result<WeilElement<S>> {
    let rhs = match b {
        Operand::Element(e) => e.clone(),
        Operand::Scalar(s) => {
            if op == ArithOp::Scale {
                return Ok(a.scale(s));
            }
            WeilElement::constant(a.algebra(), s.clone())
        }
    };
    match op {
        ArithOp::Add => a.add(&rhs),
        ArithOp::Sub => a.sub(&rhs),
        ArithOp::Mul | ArithOp::Scale => a.mul(&rhs),
    }
}

impl<S: Scalar> WeilElement<S> {
    pub fn new(algebra: &Arc<WeilAlgebra>, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != algebra.dimension() {
            return Err(Error::Invalid(format!(
                "{} coefficients for an algebra of dimension {}",
                coeffs.len(),
                algebra.dimension()
            )));
        }
        Ok(WeilElement {
            algebra: algebra.clone(),
            coeffs,
        })
    }

    pub fn zero(algebra: &Arc<WeilAlgebra>) -> Self {
        WeilElement {
            algebra: algebra.clone(),
            coeffs: vec![S::zero(); algebra.dimension()],
        }
    }

    pub fn constant(algebra: &Arc<WeilAlgebra>, c: S) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[0] = c;
        e
    }

    pub fn one(algebra: &Arc<WeilAlgebra>) -> Self {
        Self::constant(algebra, S::one())
    }

    /// The generator `x_i` as an element.
    pub fn generator(algebra: &Arc<WeilAlgebra>, i: usize) -> Self {
        let n = algebra.generator_count();
        Self::from_polynomial(algebra, &Polynomial::var(n, i))
    }

    /// Reduce a polynomial in the algebra's generators.
    pub fn from_polynomial(algebra: &Arc<WeilAlgebra>, p: &Polynomial) -> Self {
        WeilElement {
            algebra: algebra.clone(),
            coeffs: algebra.reduce(p).iter().map(S::from_rational).collect(),
        }
    }

    pub fn algebra(&self) -> &Arc<WeilAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &S {
        &self.coeffs[i]
    }

    /// Coefficient on the basis monomial with these exponents (0 when the
    /// monomial is not standard).
    pub fn coeff_of(&self, exps: &[u32]) -> S {
        self.algebra
            .basis_index(&Monomial(exps.to_vec()))
            .map_or_else(S::zero, |i| self.coeffs[i].clone())
    }

    /// Image under the augmentation.
    pub fn augmentation(&self) -> &S {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    /// Nilpotent part `self - augmentation(self)`.
    pub fn nilpotent_part(&self) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = S::zero();
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_algebra(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, S::add))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.zip(other, S::sub))
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        WeilElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(S::neg)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.mul(c))
    }

    fn map(&self, f: impl Fn(&S) -> S) -> Self {
        WeilElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = vec![S::zero(); self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a.mul(b);
                for (k, c) in self.algebra.product(i, j) {
                    out[*k] = out[*k].add(&ab.mul(&S::from_rational(c)));
                }
            }
        }
        Ok(WeilElement {
            algebra: self.algebra.clone(),
            coeffs: out,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.algebra);
        for _ in 0..k {
            acc = acc.mul(self).expect("same algebra");
        }
        acc
    }

    /// Inverse by the finite geometric series: with `a = s + n`, `n`
    /// nilpotent, `a^-1 = s^-1 * sum_{k<d} (-n/s)^k`.
    pub fn invert(&self) -> Result<Self> {
        let s_inv = self.augmentation().recip().ok_or(Error::NotInvertible)?;
        let ratio = self.nilpotent_part().scale(&s_inv.neg());
        let mut term = Self::one(&self.algebra);
        let mut sum = term.clone();
        for _ in 1..self.algebra.nilpotency_degree() {
            term = term.mul(&ratio).expect("same algebra");
            sum = sum.add(&term).expect("same algebra");
        }
        Ok(sum.scale(&s_inv))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.mul(&other.invert()?)
    }

    /// A polynomial representative: sum of coefficients times basis
    /// monomials.
    pub fn to_polynomial(&self) -> Polynomial
    where
        S: Into<Rational>,
    {
        let n = self.algebra.generator_count();
        Polynomial::from_terms(
            n,
            self.algebra
                .basis()
                .iter()
                .cloned()
                .zip(self.coeffs.iter().cloned().map(Into::into)),
        )
    }
}

impl WeilElement<Rational> {
    /// Lossy conversion to the floating carrier.
    pub fn to_float(&self) -> WeilElement<f64> {
        WeilElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(<f64 as Scalar>::from_rational).collect(),
        }
    }

    /// Coordinates in the algebra's filtration-adapted basis.
    pub fn adapted_coords(&self) -> Vec<Rational> {
        self.algebra.filtration().to_adapted(&self.coeffs)
    }
}

impl<S: Scalar> fmt::Display for WeilElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.algebra.basis_labels();
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(&labels)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| {
                if l == "1" {
                    c.render()
                } else {
                    format!("({})*{l}", c.render())
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::weil::presentation::AugPresentation;

    fn alg(text: &str) -> Arc<WeilAlgebra> {
        WeilAlgebra::normalize(&AugPresentation::parse(text).unwrap()).unwrap()
    }

    fn el(w: &Arc<WeilAlgebra>, coeffs: &[Rational]) -> WeilElement {
        WeilElement::new(w, coeffs.to_vec()).unwrap()
    }

    #[test]
    fn square_of_one_plus_x() {
        let w = alg("Q[x]/(x^2)");
        let a = el(&w, &[int(1), int(1)]);
        assert_eq!(a.mul(&a).unwrap(), el(&w, &[int(1), int(2)]));
    }

    #[test]
    fn mixed_ideal_product() {
        let w = alg("Q[x, y]/(x^2, x*y, y^3)");
        let x = WeilElement::<Rational>::generator(&w, 0);
        let y = WeilElement::<Rational>::generator(&w, 1);
        let prod = x.add(&y).unwrap().mul(&y).unwrap();
        assert_eq!(prod.coeffs(), [int(0), int(0), int(0), int(1)]);
        assert_eq!(w.basis_labels()[3], "y^2");
    }

    #[test]
    fn additive_identity() {
        let w = alg("Q[x, y]/(x^2, x*y, y^3)");
        let a = el(&w, &[int(2), ratio(1, 3), int(-1), int(5)]);
        let z = WeilElement::zero(&w);
        assert_eq!(a.add(&z).unwrap(), a);
        let op = element_arithmetic(ArithOp::Add, &a, &Operand::Element(z)).unwrap();
        assert_eq!(op, a);
        let scaled = element_arithmetic(ArithOp::Scale, &a, &Operand::Scalar(int(2))).unwrap();
        assert_eq!(scaled, a.add(&a).unwrap());
    }

    #[test]
    fn inversion() {
        let w = alg("Q[e]/(e^2)");
        let one_plus = el(&w, &[int(1), int(1)]);
        assert_eq!(one_plus.invert().unwrap(), el(&w, &[int(1), int(-1)]));
        let two_plus = el(&w, &[int(2), int(1)]);
        let inv = two_plus.invert().unwrap();
        assert_eq!(inv, el(&w, &[ratio(1, 2), ratio(-1, 4)]));
        assert_eq!(inv.mul(&two_plus).unwrap(), WeilElement::one(&w));
        let eps = el(&w, &[int(0), int(1)]);
        assert_eq!(eps.invert().unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn mismatched_algebras() {
        let a = WeilElement::<Rational>::one(&alg("Q[x]/(x^2)"));
        let b = WeilElement::<Rational>::one(&alg("Q[x]/(x^3)"));
        assert_eq!(a.add(&b).unwrap_err(), Error::AlgebraMismatch);
        assert_eq!(a.mul(&b).unwrap_err(), Error::AlgebraMismatch);
    }

    #[test]
    fn float_carrier_matches_exact() {
        let w = alg("Q[x]/(x^3)");
        let a = el(&w, &[int(3), int(1), ratio(1, 2)]);
        let exact = a.invert().unwrap().to_float();
        let float = a.to_float().invert().unwrap();
        for (x, y) in exact.coeffs().iter().zip(float.coeffs()) {
            assert!((x - y).abs() < 1e-15);
        }
    }
}
