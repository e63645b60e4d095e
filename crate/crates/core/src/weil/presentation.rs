//! Augmented presentations `Q[x1..xn]/(f1..fm)` with an augmentation
//! `xi -> qi`, their text format, and the change of variables to standard
//! form.
//!
//! Grammar:
//!
//! ```text
//! presentation := "Q" "[" names? "]" "/" "(" polys? ")" (";" "aug" assign ("," assign)*)?
//! assign       := name "->" ["-"] rational
//! poly         := ["-"] term (("+" | "-") term)*
//! term         := factor ("*" factor)*
//! factor       := atom ("^" integer)?
//! atom         := rational | name | "(" poly ")" | "-" factor
//! ```
//!
//! An omitted `aug` clause means every generator goes to 0. The printer
//! emits the same grammar with relations fully expanded.

use std::fmt;

use num_traits::Zero;

use super::poly::Polynomial;
use crate::error::{Error, Result};
use crate::lexer::{Cursor, Tok};
use crate::rational::{fmt_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugPresentation {
    generators: Vec<String>,
    relations: Vec<Polynomial>,
    augmentation: Vec<Rational>,
}

impl AugPresentation {
    /// Validates that relations use only the declared generators (by
    /// construction) and that the augmentation kills every relation.
    pub fn new(
        generators: Vec<String>,
        relations: Vec<Polynomial>,
        augmentation: Vec<Rational>,
    ) -> Result<Self> {
        let n = generators.len();
        if augmentation.len() != n {
            return Err(Error::Invalid(format!(
                "augmentation has {} values for {n} generators",
                augmentation.len()
            )));
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::Invalid(format!("generator `{g}` declared twice")));
            }
        }
        for r in &relations {
            if r.nvars() != n {
                return Err(Error::Invalid("relation arity mismatch".into()));
            }
            let value = r.eval(&augmentation);
            if !value.is_zero() {
                return Err(Error::AugmentationMismatch {
                    relation: r.render(&generators),
                    value,
                });
            }
        }
        Ok(AugPresentation {
            generators,
            relations,
            augmentation,
        })
    }

    /// Presentation with the all-zero augmentation.
    pub fn standard(generators: Vec<String>, relations: Vec<Polynomial>) -> Result<Self> {
        let n = generators.len();
        Self::new(generators, relations, vec![Rational::zero(); n])
    }

    /// `Q[]/()`.
    pub fn scalar() -> Self {
        AugPresentation {
            generators: vec![],
            relations: vec![],
            augmentation: vec![],
        }
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn augmentation(&self) -> &[Rational] {
        &self.augmentation
    }

    pub fn is_standard(&self) -> bool {
        self.augmentation.iter().all(Zero::is_zero)
    }

    /// The change of variables `x_i := y_i - aug(y_i)`: substitute
    /// `y_i = x_i + aug(y_i)` into every relation. Generator names are kept.
    pub fn standardize(&self) -> AugPresentation {
        if self.is_standard() {
            return self.clone();
        }
        let n = self.generators.len();
        let shifted: Vec<Polynomial> = (0..n)
            .map(|i| Polynomial::var(n, i).add(&Polynomial::constant(n, self.augmentation[i].clone())))
            .collect();
        AugPresentation {
            generators: self.generators.clone(),
            relations: self.relations.iter().map(|r| r.substitute(&shifted, n)).collect(),
            augmentation: vec![Rational::zero(); n],
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text)?;
        match cur.bump() {
            Tok::Ident(q) if q == "Q" => {}
            _ => {
                return Err(Error::Syntax {
                    position: 0,
                    expected: "`Q`".into(),
                    found: Cursor::new(text)?.peek().describe(),
                })
            }
        }
        cur.expect("[")?;
        let mut generators = Vec::new();
        if !cur.eat("]") {
            loop {
                generators.push(cur.expect_ident()?);
                if cur.eat("]") {
                    break;
                }
                if !cur.eat(",") {
                    return Err(cur.error("`,` or `]`"));
                }
            }
        }
        cur.expect("/")?;
        cur.expect("(")?;
        let mut relations = Vec::new();
        if !cur.eat(")") {
            loop {
                relations.push(parse_poly(&mut cur, &generators)?);
                if cur.eat(")") {
                    break;
                }
                if !cur.eat(",") {
                    return Err(cur.error("`,` or `)`"));
                }
            }
        }
        let mut augmentation = vec![Rational::zero(); generators.len()];
        if cur.eat(";") {
            match cur.bump() {
                Tok::Ident(a) if a == "aug" => {}
                other => {
                    return Err(Error::Syntax {
                        position: cur.offset(),
                        expected: "`aug`".into(),
                        found: other.describe(),
                    })
                }
            }
            loop {
                let name = cur.expect_ident()?;
                let idx = generators
                    .iter()
                    .position(|g| *g == name)
                    .ok_or_else(|| Error::UndeclaredGenerator(name.clone()))?;
                cur.expect("->")?;
                augmentation[idx] = cur.expect_signed_rational()?;
                if !cur.eat(",") {
                    break;
                }
            }
        }
        cur.expect_eof()?;
        AugPresentation::new(generators, relations, augmentation)
    }
}

/// Parse a polynomial over the given generator names.
pub fn parse_polynomial(text: &str, names: &[String]) -> Result<Polynomial> {
    let mut cur = Cursor::new(text)?;
    let p = parse_poly(&mut cur, names)?;
    cur.expect_eof()?;
    Ok(p)
}

fn parse_poly(cur: &mut Cursor, names: &[String]) -> Result<Polynomial> {
    let n = names.len();
    let mut acc = if cur.eat("-") {
        parse_term(cur, names)?.neg()
    } else {
        parse_term(cur, names)?
    };
    loop {
        if cur.eat("+") {
            acc = acc.add(&parse_term(cur, names)?);
        } else if cur.eat("-") {
            acc = acc.sub(&parse_term(cur, names)?);
        } else {
            break;
        }
    }
    debug_assert_eq!(acc.nvars(), n);
    Ok(acc)
}

fn parse_term(cur: &mut Cursor, names: &[String]) -> Result<Polynomial> {
    let mut acc = parse_factor(cur, names)?;
    while cur.eat("*") {
        acc = acc.mul(&parse_factor(cur, names)?);
    }
    Ok(acc)
}

fn parse_factor(cur: &mut Cursor, names: &[String]) -> Result<Polynomial> {
    let base = parse_atom(cur, names)?;
    if cur.eat("^") {
        let e = cur.expect_u32()?;
        Ok(base.pow(e))
    } else {
        Ok(base)
    }
}

fn parse_atom(cur: &mut Cursor, names: &[String]) -> Result<Polynomial> {
    let n = names.len();
    match cur.peek().clone() {
        Tok::Num(q) => {
            cur.bump();
            Ok(Polynomial::constant(n, q))
        }
        Tok::Ident(name) => {
            cur.bump();
            let i = names
                .iter()
                .position(|g| *g == name)
                .ok_or(Error::UndeclaredGenerator(name))?;
            Ok(Polynomial::var(n, i))
        }
        Tok::Sym("(") => {
            cur.bump();
            let p = parse_poly(cur, names)?;
            cur.expect(")")?;
            Ok(p)
        }
        Tok::Sym("-") => {
            cur.bump();
            Ok(parse_factor(cur, names)?.neg())
        }
        _ => Err(cur.error("a number, generator or `(`")),
    }
}

impl fmt::Display for AugPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]/(", self.generators.join(", "))?;
        let rels: Vec<String> = self.relations.iter().map(|r| r.render(&self.generators)).collect();
        write!(f, "{})", rels.join(", "))?;
        if !self.is_standard() {
            let assigns: Vec<String> = self
                .generators
                .iter()
                .zip(&self.augmentation)
                .map(|(g, q)| format!("{g} -> {}", fmt_rational(q)))
                .collect();
            write!(f, "; aug {}", assigns.join(", "))?;
        }
        Ok(())
    }
}
