//! Named one-variable primitives and their derivative towers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// The derivatives `f(s), f'(s), ..., f^(d-1)(s)` of a primitive.
pub trait TowerRule: Send + Sync {
    fn float_tower(&self, s: f64, d: usize) -> Result<Vec<f64>>;

    /// Exact tower, for primitives that are closed over the rationals.
    fn exact_tower(&self, _s: &Rational, _d: usize) -> Option<Vec<Rational>> {
        None
    }
}

struct Exp;
struct Log;
struct Sin;
struct Cos;

impl TowerRule for Exp {
    fn float_tower(&self, s: f64, d: usize) -> Result<Vec<f64>> {
        Ok(vec![s.exp(); d])
    }
}

impl TowerRule for Log {
    fn float_tower(&self, s: f64, d: usize) -> Result<Vec<f64>> {
        if s <= 0.0 {
            return Err(Error::Invalid(format!("log of {s}")));
        }
        let mut out = Vec::with_capacity(d);
        if d > 0 {
            out.push(s.ln());
        }
        // f^(k)(s) = (-1)^(k-1) (k-1)! / s^k
        let mut c = 1.0 / s;
        for k in 1..d {
            out.push(c);
            c *= -(k as f64) / s;
        }
        Ok(out)
    }
}

fn trig_tower(s: f64, d: usize, phase: usize) -> Vec<f64> {
    let cycle = [s.sin(), s.cos(), -s.sin(), -s.cos()];
    (0..d).map(|k| cycle[(k + phase) % 4]).collect()
}

impl TowerRule for Sin {
    fn float_tower(&self, s: f64, d: usize) -> Result<Vec<f64>> {
        Ok(trig_tower(s, d, 0))
    }
}

impl TowerRule for Cos {
    fn float_tower(&self, s: f64, d: usize) -> Result<Vec<f64>> {
        Ok(trig_tower(s, d, 1))
    }
}

/// Name to tower rule. [`PrimitiveRegistry::standard`] has `exp`, `log`,
/// `sin` and `cos`.
#[derive(Clone, Default)]
pub struct PrimitiveRegistry {
    rules: BTreeMap<String, Arc<dyn TowerRule>>,
}

impl PrimitiveRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register("exp", Arc::new(Exp));
        r.register("log", Arc::new(Log));
        r.register("sin", Arc::new(Sin));
        r.register("cos", Arc::new(Cos));
        r
    }

    pub fn register(&mut self, name: &str, rule: Arc<dyn TowerRule>) {
        self.rules.insert(name.to_string(), rule);
    }

    pub fn get(&self, name: &str) -> Result<&Arc<dyn TowerRule>> {
        self.rules
            .get(name)
            .ok_or_else(|| Error::UnknownPrimitive(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.rules.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.rules.keys().map(String::as_str)
    }
}

impl fmt::Debug for PrimitiveRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.rules.keys()).finish()
    }
}
