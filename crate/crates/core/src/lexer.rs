//! Tokenizer shared by the presentation and program parsers.

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    /// Unsigned literal: `12` or `3/4` (no spaces around the slash).
    Num(Rational),
    Sym(&'static str),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Num(q) => format!("number `{q}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

const SYMBOLS: [&str; 12] = ["->", "[", "]", "(", ")", ",", "/", ";", "+", "-", "*", "^"];

/// Tokens paired with their character offset.
pub fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            // `x^2/3` is a quotient, not the exponent 2/3
            let after_caret = matches!(out.last(), Some((_, Tok::Sym("^"))));
            if !after_caret && i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            let lit: String = chars[start..i].iter().collect();
            let q = parse_rational(&lit).ok_or_else(|| Error::Syntax {
                position: start,
                expected: "a rational literal with nonzero denominator".into(),
                found: format!("`{lit}`"),
            })?;
            out.push((start, Tok::Num(q)));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 2)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                out.push((start, Tok::Sym(s)));
                i += s.chars().count();
            }
            None => {
                return Err(Error::Syntax {
                    position: start,
                    expected: "a token".into(),
                    found: format!("`{c}`"),
                })
            }
        }
    }
    out.push((chars.len(), Tok::Eof));
    Ok(out)
}

/// Cursor over a token stream.
pub struct Cursor {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Cursor {
    pub fn new(text: &str) -> Result<Self> {
        Ok(Cursor {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    pub fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].1
    }

    pub fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(s) if *s == sym) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn error(&self, expected: &str) -> Error {
        Error::Syntax {
            position: self.offset(),
            expected: expected.to_string(),
            found: self.peek().describe(),
        }
    }

    pub fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            Err(self.error(&format!("`{sym}`")))
        }
    }

    pub fn expect_ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error("an identifier")),
        }
    }

    pub fn expect_eof(&self) -> Result<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }

    /// Optionally signed rational literal.
    pub fn expect_signed_rational(&mut self) -> Result<Rational> {
        let neg = self.eat("-");
        match self.peek().clone() {
            Tok::Num(q) => {
                self.bump();
                Ok(if neg { -q } else { q })
            }
            _ => Err(self.error("a rational number")),
        }
    }

    /// Unsigned integer literal (used for exponents).
    pub fn expect_u32(&mut self) -> Result<u32> {
        match self.peek().clone() {
            Tok::Num(q) if q.is_integer() => {
                let v = q.to_integer();
                let n = u32::try_from(&v).map_err(|_| self.error("a small exponent"))?;
                self.bump();
                Ok(n)
            }
            _ => Err(self.error("a nonnegative integer exponent")),
        }
    }
}
