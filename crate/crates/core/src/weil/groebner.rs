//! Buchberger completion and normal forms in the graded-lex order.
//!
//! Only the zero-dimensional local case matters here, but nothing below
//! assumes it: the degree cap is what stops runaway inputs.

use num_traits::Inv;

use super::poly::{Monomial, Polynomial};
use crate::error::{Error, Result};

/// A reduced Gröbner basis for an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Complete `generators` to a reduced Gröbner basis. Fails if any
    /// S-pair or remainder exceeds total degree `cap`.
    pub fn compute(nvars: usize, generators: &[Polynomial], cap: u32) -> Result<Self> {
        let mut basis: Vec<Polynomial> = Vec::new();
        for g in generators {
            let r = reduce_by(g, &basis);
            if !r.is_zero() {
                if r.total_degree() > cap {
                    return Err(Error::NormalFormDivergence { cap });
                }
                basis.push(r.monic());
            }
        }
        let mut pairs: Vec<(usize, usize)> = (0..basis.len())
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .collect();
        while let Some((i, j)) = pairs.pop() {
            let (li, _) = basis[i].leading().expect("nonzero");
            let (lj, _) = basis[j].leading().expect("nonzero");
            let lcm = li.lcm(lj);
            // Coprime leading monomials: the S-polynomial reduces to zero.
            if lcm == li.mul(lj) {
                continue;
            }
            if lcm.degree() > cap {
                return Err(Error::NormalFormDivergence { cap });
            }
            let s = s_polynomial(&basis[i], &basis[j]);
            let r = reduce_by(&s, &basis);
            if r.is_zero() {
                continue;
            }
            if r.total_degree() > cap {
                return Err(Error::NormalFormDivergence { cap });
            }
            let k = basis.len();
            basis.push(r.monic());
            pairs.extend((0..k).map(|i| (i, k)));
        }
        Ok(GroebnerBasis {
            nvars,
            polys: interreduce(basis),
        })
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .filter_map(|p| p.leading().map(|(m, _)| m.clone()))
            .collect()
    }

    /// Unique normal form of `p` modulo the ideal.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        debug_assert_eq!(p.nvars(), self.nvars);
        reduce_by(p, &self.polys)
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.polys
            .iter()
            .all(|g| !g.leading().expect("nonzero").0.divides(m))
    }

    /// Whether 1 lies in the ideal.
    pub fn is_unit_ideal(&self) -> bool {
        self.polys
            .iter()
            .any(|g| g.leading().expect("nonzero").0.is_one())
    }
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, cf) = f.leading().expect("nonzero");
    let (lg, cg) = g.leading().expect("nonzero");
    let lcm = lf.lcm(lg);
    let a = f.mul_term(&lf.quotient_of(&lcm), &cf.clone().inv());
    let b = g.mul_term(&lg.quotient_of(&lcm), &cg.clone().inv());
    a.sub(&b)
}

/// Full reduction of `p` by `basis` (any order of divisors; the result is
/// the normal form once `basis` is a Gröbner basis).
fn reduce_by(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut rest = p.clone();
    let mut out = Polynomial::zero(p.nvars());
    while let Some((m, c)) = rest.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let divisor = basis
            .iter()
            .find(|g| g.leading().expect("nonzero").0.divides(&m));
        match divisor {
            Some(g) => {
                let (lg, cg) = g.leading().expect("nonzero");
                let factor = &c / cg;
                rest = rest.sub(&g.mul_term(&lg.quotient_of(&m), &factor));
            }
            None => {
                rest.add_term(m.clone(), -c.clone());
                out.add_term(m, c);
            }
        }
    }
    out
}

fn interreduce(mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // Drop elements whose leading monomial is divisible by another's.
    let mut minimal: Vec<Polynomial> = Vec::new();
    basis.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    for p in basis {
        let lp = p.leading().unwrap().0.clone();
        if minimal.iter().all(|q| !q.leading().unwrap().0.divides(&lp)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let (lm, _) = minimal[i].leading().unwrap();
        let lead = Polynomial::term(lm.clone(), num_traits::One::one());
        let tail = minimal[i].sub(&lead);
        out.push(lead.add(&reduce_by(&tail, &others)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::presentation::parse_polynomial;

    fn polys(names: &[&str], texts: &[&str]) -> Vec<Polynomial> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        texts.iter().map(|t| parse_polynomial(t, &names).unwrap()).collect()
    }

    #[test]
    fn completion_adds_hidden_relations() {
        // x^2 - y and y^2 imply x^4 = 0 and x^2*y = 0 etc.
        let gens = polys(&["x", "y"], &["x^2 - y", "x*y"]);
        let gb = GroebnerBasis::compute(2, &gens, 16).unwrap();
        let names = ["x".to_string(), "y".to_string()];
        // y^2 = x^2*y = x*(x*y) = 0 is in the ideal.
        let y2 = parse_polynomial("y^2", &names).unwrap();
        assert!(gb.reduce(&y2).is_zero());
        let x2 = parse_polynomial("x^2", &names).unwrap();
        assert_eq!(gb.reduce(&x2), parse_polynomial("y", &names).unwrap());
    }

    #[test]
    fn unit_ideal_detected() {
        let gens = polys(&["x"], &["x^2", "x^2 - 1"]);
        let gb = GroebnerBasis::compute(1, &gens, 16).unwrap();
        assert!(gb.is_unit_ideal());
    }

    #[test]
    fn degree_cap_is_enforced() {
        let gens = polys(&["x", "y"], &["x^3 - y^2", "x*y^2 - y^3"]);
        assert_eq!(
            GroebnerBasis::compute(2, &gens, 2),
            Err(Error::NormalFormDivergence { cap: 2 })
        );
    }
}
