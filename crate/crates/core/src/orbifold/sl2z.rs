//! `SL2(Z)` acting on the upper half plane, on the fiber `(τ, p)`, and on
//! ordered bases of lattices in `Q(i)`.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::gaussian::GaussianRational;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct IntMatrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl From<[[i64; 2]; 2]> for IntMatrix2 {
    fn from(m: [[i64; 2]; 2]) -> Self {
        IntMatrix2::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl From<IntMatrix2> for [[i64; 2]; 2] {
    fn from(m: IntMatrix2) -> Self {
        [[m.a, m.b], [m.c, m.d]]
    }
}

impl IntMatrix2 {
    pub const IDENTITY: IntMatrix2 = IntMatrix2 { a: 1, b: 0, c: 0, d: 1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMatrix2 { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Self) -> Self {
        IntMatrix2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    fn require_sl2(&self) -> Result<()> {
        match self.det() {
            1 => Ok(()),
            d => Err(Error::DeterminantNotOne(d)),
        }
    }

    /// `cτ + d`.
    pub fn automorphy_factor(&self, tau: &GaussianRational) -> GaussianRational {
        tau.scale(self.c).add(&GaussianRational::from_int(self.d))
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

fn require_upper(tau: &GaussianRational) -> Result<()> {
    if tau.in_upper_half_plane() {
        Ok(())
    } else {
        Err(Error::NotInUpperHalfPlane)
    }
}

/// `(aτ + b) / (cτ + d)`.
pub fn mobius(m: &IntMatrix2, tau: &GaussianRational) -> Result<GaussianRational> {
    m.require_sl2()?;
    require_upper(tau)?;
    let num = tau.scale(m.a).add(&GaussianRational::from_int(m.b));
    // cτ + d ≠ 0 since Im τ > 0 and (c, d) ≠ (0, 0)
    num.div(&m.automorphy_factor(tau))
}

/// `(τ, p) ↦ (Mτ, (cτ + d)p)`.
pub fn fiber_action(
    m: &IntMatrix2,
    tau: &GaussianRational,
    p: &GaussianRational,
) -> Result<(GaussianRational, GaussianRational)> {
    if p.is_zero() {
        return Err(Error::Invalid("fiber coordinate p must be nonzero".into()));
    }
    let t = mobius(m, tau)?;
    Ok((t, m.automorphy_factor(tau).mul(p)))
}

/// `(cτ + d)·⟨Mτ⟩ = ⟨τ⟩`, checked by comparing the lattices spanned by
/// `(cτ + d)·(1, Mτ)` and `(1, τ)`.
pub fn lattice_identity_holds(m: &IntMatrix2, tau: &GaussianRational) -> Result<bool> {
    let t = mobius(m, tau)?;
    let j = m.automorphy_factor(tau);
    let scaled = LatticeBasis::new(j.clone(), j.mul(&t))?;
    let plain = LatticeBasis::new(GaussianRational::one(), tau.clone())?;
    Ok(lattice_equal(&scaled, &plain))
}

/// An ordered pair of R-linearly independent vectors in `Q(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeBasis {
    w1: GaussianRational,
    w2: GaussianRational,
    orientation: i8,
}

/// `Im(w2 · conj(w1))`, whose sign is that of `Im(w2 / w1)`.
fn cross(w1: &GaussianRational, w2: &GaussianRational) -> Rational {
    &w1.re * &w2.im - &w1.im * &w2.re
}

impl LatticeBasis {
    pub fn new(w1: GaussianRational, w2: GaussianRational) -> Result<Self> {
        let c = cross(&w1, &w2);
        if c.is_zero() {
            return Err(Error::DegenerateBasis);
        }
        let orientation = if c.is_positive() { 1 } else { -1 };
        Ok(LatticeBasis { w1, w2, orientation })
    }

    /// Same lattice, with `w2` negated if needed so that the orientation is +1.
    pub fn normalized(w1: GaussianRational, w2: GaussianRational) -> Result<Self> {
        let b = Self::new(w1, w2)?;
        if b.orientation == 1 {
            Ok(b)
        } else {
            Self::new(b.w1, b.w2.neg())
        }
    }

    pub fn w1(&self) -> &GaussianRational {
        &self.w1
    }

    pub fn w2(&self) -> &GaussianRational {
        &self.w2
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    /// Rational `(m, n)` with `z = m·w1 + n·w2`.
    pub fn coordinates(&self, z: &GaussianRational) -> (Rational, Rational) {
        let det = cross(&self.w1, &self.w2);
        (cross(z, &self.w2) / &det, cross(&self.w1, z) / det)
    }

    fn integer_coordinates(&self, z: &GaussianRational) -> Option<(i64, i64)> {
        let (m, n) = self.coordinates(z);
        Some((to_i64(&m)?, to_i64(&n)?))
    }
}

fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

/// Each basis lies in the integer span of the other.
pub fn lattice_equal(b1: &LatticeBasis, b2: &LatticeBasis) -> bool {
    let inside = |x: &LatticeBasis, y: &LatticeBasis| {
        y.integer_coordinates(&x.w1).is_some() && y.integer_coordinates(&x.w2).is_some()
    };
    inside(b1, b2) && inside(b2, b1)
}

/// The integer matrix `M` with `(w1', w2')ᵀ = M · (w1, w2)ᵀ`, that is,
/// row `r` of `M` holds the coordinates of the `r`-th vector of `b2` in `b1`.
/// With this convention `basis_change(B1, B3) = basis_change(B2, B3) · basis_change(B1, B2)`.
pub fn basis_change(b1: &LatticeBasis, b2: &LatticeBasis) -> Result<IntMatrix2> {
    if !lattice_equal(b1, b2) {
        return Err(Error::NotSameLattice);
    }
    if b1.orientation != b2.orientation {
        return Err(Error::OrientationMismatch);
    }
    let (a, b) = b1.integer_coordinates(&b2.w1).ok_or(Error::NotSameLattice)?;
    let (c, d) = b1.integer_coordinates(&b2.w2).ok_or(Error::NotSameLattice)?;
    let m = IntMatrix2::new(a, b, c, d);
    debug_assert_eq!(m.det(), 1);
    Ok(m)
}

/// Apply a basis change: `(a·w1 + b·w2, c·w1 + d·w2)`.
pub fn apply_basis_change(m: &IntMatrix2, b: &LatticeBasis) -> Result<LatticeBasis> {
    let comb = |x: i64, y: i64| b.w1.scale(x).add(&b.w2.scale(y));
    LatticeBasis::new(comb(m.a, m.b), comb(m.c, m.d))
}

/// An `SL2(Z)` matrix with first column `(a, c)`, if `gcd(a, c) = 1`.
pub fn complete_to_sl2(a: i64, c: i64) -> Option<IntMatrix2> {
    let g = a.extended_gcd(&c);
    if g.gcd != 1 && g.gcd != -1 {
        return None;
    }
    // a·x + c·y = ±1, take d = x, b = -y (times the sign)
    let s = g.gcd;
    let m = IntMatrix2::new(a, -g.y * s, c, g.x * s);
    debug_assert_eq!(m.det(), 1);
    Some(m)
}
