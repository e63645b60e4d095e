//! Exact arithmetic in `Q(i)`.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, parse_rational, serde_q, Rational};

/// `re + im·i` with rational parts. Serializes as `{"re": "p/q", "im": "p/q"}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaussianRational {
    #[serde(with = "serde_q")]
    pub re: Rational,
    #[serde(with = "serde_q")]
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(int(n), int(0))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(int(0), int(1))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn in_upper_half_plane(&self) -> bool {
        self.im.is_positive()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.re, -&self.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(&self.re * int(k), &self.im * int(k))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `|z|^2`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::Invalid("division by zero in Q(i)".into()));
        }
        let n = o.norm();
        let p = self.mul(&o.conj());
        Ok(Self::new(p.re / &n, p.im / n))
    }

    /// Accepts `a`, `a+bi`, `a-bi`, `bi`, `i`, `-i` with rational `a`, `b`.
    pub fn parse(text: &str) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Invalid(format!("not a Gaussian rational: `{text}`"));
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::new(parse_signed(&t).ok_or_else(bad)?, int(0)));
        };
        // split at the last sign that is not at position 0
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .last();
        let (re, im) = match split {
            Some(k) => (parse_signed(&body[..k]).ok_or_else(bad)?, &body[k..]),
            None => (int(0), body),
        };
        let im = match im {
            "" | "+" => int(1),
            "-" => int(-1),
            s => parse_signed(s).ok_or_else(bad)?,
        };
        Ok(Self::new(re, im))
    }
}

fn parse_signed(s: &str) -> Option<Rational> {
    if let Some(rest) = s.strip_prefix('-') {
        parse_rational(rest).map(|q| -q)
    } else {
        parse_rational(s.strip_prefix('+').unwrap_or(s))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}i", fmt_rational(&self.im)),
            (false, false) if self.im.is_negative() => {
                write!(f, "{}-{}i", fmt_rational(&self.re), fmt_rational(&-&self.im))
            }
            (false, false) => write!(f, "{}+{}i", fmt_rational(&self.re), fmt_rational(&self.im)),
        }
    }
}
