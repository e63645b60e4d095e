//! Smooth programs: expression DAGs over named inputs.
//!
//! Surface syntax:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" ["-"] integer)?
//! atom   := rational | name | name "(" expr ")" | "(" expr ")"
//! ```
//!
//! Integer powers are expanded into products (and a reciprocal for negative
//! exponents); unary minus becomes `0 - x`. Identical subterms are shared.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::primitive::PrimitiveRegistry;
use crate::error::{Error, Result};
use crate::lexer::{Cursor, Tok};
use crate::rational::{fmt_rational, Rational};

/// A DAG node. Children always have smaller indices than their parent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Var(usize),
    Const(Rational),
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
    /// Numerator, denominator. The denominator must have nonzero
    /// augmentation wherever the program is evaluated.
    Div(usize, usize),
    Primitive(String, usize),
}

#[derive(Clone)]
pub struct SmoothProgram {
    inputs: Vec<String>,
    nodes: Vec<Node>,
    root: usize,
    registry: Arc<PrimitiveRegistry>,
}

impl PartialEq for SmoothProgram {
    fn eq(&self, other: &Self) -> bool {
        self.inputs == other.inputs && self.nodes == other.nodes && self.root == other.root
    }
}

impl fmt::Debug for SmoothProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmoothProgram({:?} -> {})", self.inputs, self)
    }
}

/// Incremental, hash-consed construction of a program.
pub struct ProgramBuilder {
    inputs: Vec<String>,
    nodes: Vec<Node>,
    memo: HashMap<Node, usize>,
    registry: Arc<PrimitiveRegistry>,
}

impl ProgramBuilder {
    pub fn new(inputs: &[String]) -> Self {
        Self::with_registry(inputs, Arc::new(PrimitiveRegistry::standard()))
    }

    pub fn with_registry(inputs: &[String], registry: Arc<PrimitiveRegistry>) -> Self {
        ProgramBuilder {
            inputs: inputs.to_vec(),
            nodes: Vec::new(),
            memo: HashMap::new(),
            registry,
        }
    }

    fn push(&mut self, node: Node) -> usize {
        if let Some(&i) = self.memo.get(&node) {
            return i;
        }
        let i = self.nodes.len();
        self.nodes.push(node.clone());
        self.memo.insert(node, i);
        i
    }

    pub fn var(&mut self, i: usize) -> usize {
        assert!(i < self.inputs.len(), "variable index out of range");
        self.push(Node::Var(i))
    }

    pub fn constant(&mut self, q: Rational) -> usize {
        self.push(Node::Const(q))
    }

    pub fn add(&mut self, a: usize, b: usize) -> usize {
        self.push(Node::Add(a, b))
    }

    pub fn sub(&mut self, a: usize, b: usize) -> usize {
        self.push(Node::Sub(a, b))
    }

    pub fn mul(&mut self, a: usize, b: usize) -> usize {
        self.push(Node::Mul(a, b))
    }

    pub fn div(&mut self, a: usize, b: usize) -> usize {
        self.push(Node::Div(a, b))
    }

    pub fn primitive(&mut self, name: &str, a: usize) -> Result<usize> {
        self.registry.get(name)?;
        Ok(self.push(Node::Primitive(name.to_string(), a)))
    }

    /// `a^k` by repeated squaring, `1/a^|k|` for negative `k`.
    pub fn pow(&mut self, a: usize, k: i64) -> usize {
        let mut e = k.unsigned_abs();
        let mut acc: Option<usize> = None;
        let mut sq = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq,
                    Some(x) => self.mul(x, sq),
                });
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(sq, sq);
            }
        }
        let p = match acc {
            Some(p) => p,
            None => self.constant(Rational::one()),
        };
        if k < 0 {
            let one = self.constant(Rational::one());
            self.div(one, p)
        } else {
            p
        }
    }

    /// Copy `p`'s nodes, mapping its variables to the given node ids.
    pub fn embed(&mut self, p: &SmoothProgram, vars: &[usize]) -> usize {
        let mut map = Vec::with_capacity(p.nodes.len());
        for node in &p.nodes {
            let id = match node {
                Node::Var(i) => vars[*i],
                Node::Const(q) => self.constant(q.clone()),
                Node::Add(a, b) => self.add(map[*a], map[*b]),
                Node::Sub(a, b) => self.sub(map[*a], map[*b]),
                Node::Mul(a, b) => self.mul(map[*a], map[*b]),
                Node::Div(a, b) => self.div(map[*a], map[*b]),
                Node::Primitive(f, a) => self.push(Node::Primitive(f.clone(), map[*a])),
            };
            map.push(id);
        }
        map[p.root]
    }

    pub fn finish(self, root: usize) -> SmoothProgram {
        assert!(root < self.nodes.len(), "root out of range");
        SmoothProgram {
            inputs: self.inputs,
            nodes: self.nodes,
            root,
            registry: self.registry,
        }
    }
}

impl SmoothProgram {
    /// Parse with the standard registry. Inputs are either given, or taken
    /// as the variables in order of first appearance.
    pub fn parse(text: &str, inputs: Option<&[String]>) -> Result<Self> {
        Self::parse_with(text, inputs, Arc::new(PrimitiveRegistry::standard()))
    }

    pub fn parse_with(
        text: &str,
        inputs: Option<&[String]>,
        registry: Arc<PrimitiveRegistry>,
    ) -> Result<Self> {
        let mut cur = Cursor::new(text)?;
        let mut parser = Parser {
            b: ProgramBuilder::with_registry(inputs.unwrap_or(&[]), registry),
            fixed: inputs.is_some(),
        };
        let root = parser.expr(&mut cur)?;
        cur.expect_eof()?;
        Ok(parser.b.finish(root))
    }

    /// The constant program with the given inputs.
    pub fn constant(inputs: &[String], q: Rational) -> Self {
        let mut b = ProgramBuilder::new(inputs);
        let c = b.constant(q);
        b.finish(c)
    }

    /// The `i`-th coordinate projection.
    pub fn projection(inputs: &[String], i: usize) -> Self {
        let mut b = ProgramBuilder::new(inputs);
        let v = b.var(i);
        b.finish(v)
    }

    pub fn inputs(&self) -> &[String] {
        &self.inputs
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn registry(&self) -> &Arc<PrimitiveRegistry> {
        &self.registry
    }

    /// Nodes the root depends on.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        seen[self.root] = true;
        for i in (0..=self.root).rev() {
            if !seen[i] {
                continue;
            }
            match &self.nodes[i] {
                Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                    seen[*a] = true;
                    seen[*b] = true;
                }
                Node::Primitive(_, a) => seen[*a] = true,
                Node::Var(_) | Node::Const(_) => {}
            }
        }
        seen
    }

    /// Denominators that must not vanish, rendered.
    pub fn division_obligations(&self) -> Vec<String> {
        let live = self.reachable();
        self.nodes
            .iter()
            .enumerate()
            .filter(|(i, _)| live[*i])
            .filter_map(|(_, n)| match n {
                Node::Div(_, d) => Some(self.render_node(*d)),
                _ => None,
            })
            .collect()
    }

    /// Whether any reachable node is a primitive.
    pub fn uses_primitives(&self) -> bool {
        let live = self.reachable();
        self.nodes
            .iter()
            .enumerate()
            .any(|(i, n)| live[i] && matches!(n, Node::Primitive(..)))
    }

    /// `self(args[0], ..., args[n-1])`; all `args` share one input list.
    pub fn compose(&self, args: &[SmoothProgram]) -> Result<SmoothProgram> {
        if args.len() != self.arity() {
            return Err(Error::Invalid(format!(
                "{} arguments for a program of arity {}",
                args.len(),
                self.arity()
            )));
        }
        let inputs: Vec<String> = match args.first() {
            Some(a) => a.inputs.clone(),
            None => Vec::new(),
        };
        if args.iter().any(|a| a.inputs != inputs) {
            return Err(Error::Invalid("arguments have different inputs".into()));
        }
        let mut b = ProgramBuilder::with_registry(&inputs, self.registry.clone());
        let vars: Vec<usize> = (0..inputs.len()).map(|i| b.var(i)).collect();
        let roots: Vec<usize> = args.iter().map(|a| b.embed(a, &vars)).collect();
        let root = b.embed(self, &roots);
        Ok(b.finish(root))
    }

    fn render_node(&self, i: usize) -> String {
        let bin = |a: &usize, op: &str, b: &usize| {
            format!("({} {op} {})", self.render_node(*a), self.render_node(*b))
        };
        match &self.nodes[i] {
            Node::Var(v) => self.inputs[*v].clone(),
            Node::Const(q) if q.is_negative() => format!("(0 - {})", fmt_rational(&-q)),
            Node::Const(q) if q.is_zero() => "0".into(),
            Node::Const(q) => fmt_rational(q),
            Node::Add(a, b) => bin(a, "+", b),
            Node::Sub(a, b) => bin(a, "-", b),
            Node::Mul(a, b) => bin(a, "*", b),
            Node::Div(a, b) => bin(a, "/", b),
            Node::Primitive(f, a) => format!("{f}({})", self.render_node(*a)),
        }
    }
}

/// Fully parenthesized infix form; parses back to an equivalent program.
impl fmt::Display for SmoothProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_node(self.root))
    }
}

struct Parser {
    b: ProgramBuilder,
    fixed: bool,
}

impl Parser {
    fn expr(&mut self, cur: &mut Cursor) -> Result<usize> {
        let mut acc = self.term(cur)?;
        loop {
            if cur.eat("+") {
                let t = self.term(cur)?;
                acc = self.b.add(acc, t);
            } else if cur.eat("-") {
                let t = self.term(cur)?;
                acc = self.b.sub(acc, t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, cur: &mut Cursor) -> Result<usize> {
        let mut acc = self.unary(cur)?;
        loop {
            if cur.eat("*") {
                let t = self.unary(cur)?;
                acc = self.b.mul(acc, t);
            } else if cur.eat("/") {
                let t = self.unary(cur)?;
                acc = self.b.div(acc, t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self, cur: &mut Cursor) -> Result<usize> {
        if cur.eat("-") {
            let x = self.unary(cur)?;
            let zero = self.b.constant(Rational::zero());
            Ok(self.b.sub(zero, x))
        } else {
            self.power(cur)
        }
    }

    fn power(&mut self, cur: &mut Cursor) -> Result<usize> {
        let base = self.atom(cur)?;
        if !cur.eat("^") {
            return Ok(base);
        }
        let neg = cur.eat("-");
        let e = i64::from(cur.expect_u32()?);
        Ok(self.b.pow(base, if neg { -e } else { e }))
    }

    fn atom(&mut self, cur: &mut Cursor) -> Result<usize> {
        match cur.peek().clone() {
            Tok::Num(q) => {
                cur.bump();
                Ok(self.b.constant(q))
            }
            Tok::Ident(name) if *cur.peek2() == Tok::Sym("(") => {
                cur.bump();
                cur.bump();
                let arg = self.expr(cur)?;
                cur.expect(")")?;
                self.b.primitive(&name, arg)
            }
            Tok::Ident(name) => {
                cur.bump();
                let i = match self.b.inputs.iter().position(|v| *v == name) {
                    Some(i) => i,
                    None if self.fixed => return Err(Error::UndeclaredVariable(name)),
                    None => {
                        self.b.inputs.push(name);
                        self.b.inputs.len() - 1
                    }
                };
                Ok(self.b.var(i))
            }
            Tok::Sym("(") => {
                cur.bump();
                let e = self.expr(cur)?;
                cur.expect(")")?;
                Ok(e)
            }
            _ => Err(cur.error("a number, variable, function call or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn inputs_in_order_of_appearance() {
        let p = SmoothProgram::parse("y*x + y", None).unwrap();
        assert_eq!(p.inputs(), ["y", "x"]);
        let q = SmoothProgram::parse("y*x + y", Some(&names(&["x", "y"]))).unwrap();
        assert_eq!(q.inputs(), ["x", "y"]);
    }

    #[test]
    fn undeclared_and_unknown() {
        assert_eq!(
            SmoothProgram::parse("x + z", Some(&names(&["x"]))).unwrap_err(),
            Error::UndeclaredVariable("z".into())
        );
        assert_eq!(
            SmoothProgram::parse("tanh(x)", None).unwrap_err(),
            Error::UnknownPrimitive("tanh".into())
        );
    }

    #[test]
    fn shared_subterms() {
        let p = SmoothProgram::parse("(x+1)*(x+1)", None).unwrap();
        // x, 1, x+1, product
        assert_eq!(p.nodes().len(), 4);
        let q = SmoothProgram::parse("x^8", None).unwrap();
        // x, x^2, x^4, x^8
        assert_eq!(q.nodes().len(), 4);
    }

    #[test]
    fn exponent_then_division() {
        let p = SmoothProgram::parse("x^2/3", None).unwrap();
        assert!(matches!(p.nodes()[p.root()], Node::Div(..)));
        assert!(SmoothProgram::parse("x^-2", None).is_ok());
    }

    #[test]
    fn render_round_trip() {
        for text in ["1/(1+x)", "-x^3 + 2/3*x*y", "exp(sin(x) - 1/2)", "(x-1)^-2"] {
            let p = SmoothProgram::parse(text, None).unwrap();
            let again = SmoothProgram::parse(&p.to_string(), Some(p.inputs())).unwrap();
            assert_eq!(p.to_string(), again.to_string(), "{text}");
        }
    }

    #[test]
    fn division_obligations_are_recorded() {
        let p = SmoothProgram::parse("x/(1+x) + 1/y", None).unwrap();
        assert_eq!(p.division_obligations(), ["(1 + x)", "y"]);
    }

    #[test]
    fn composition() {
        let outer = SmoothProgram::parse("u*v", None).unwrap();
        let xs = names(&["x"]);
        let a = SmoothProgram::parse("x+1", Some(&xs)).unwrap();
        let b = SmoothProgram::parse("x-1", Some(&xs)).unwrap();
        let c = outer.compose(&[a, b]).unwrap();
        assert_eq!(c.inputs(), ["x"]);
        assert_eq!(c.to_string(), "((x + 1) * (x - 1))");
    }
}
