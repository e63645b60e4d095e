//! Oracles shared by the integration tests. Nothing here calls into the
//! jet engine or the lifting solver; expressions, derivatives, dimensions and
//! restriction systems are computed from scratch.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use nilpotent::rational::{factorial, int, ratio, Rational};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum E {
    Var(String),
    Const(Rational),
    Add(Rc<E>, Rc<E>),
    Sub(Rc<E>, Rc<E>),
    Mul(Rc<E>, Rc<E>),
    Div(Rc<E>, Rc<E>),
    Pow(Rc<E>, i32),
}

pub type Expr = Rc<E>;

pub fn var(n: &str) -> Expr {
    Rc::new(E::Var(n.to_string()))
}

pub fn cst(q: Rational) -> Expr {
    Rc::new(E::Const(q))
}

fn as_const(e: &Expr) -> Option<&Rational> {
    match &**e {
        E::Const(q) => Some(q),
        _ => None,
    }
}

pub fn add(a: Expr, b: Expr) -> Expr {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => cst(x + y),
        (Some(x), _) if x.is_zero() => b,
        (_, Some(y)) if y.is_zero() => a,
        _ => Rc::new(E::Add(a, b)),
    }
}

pub fn sub(a: Expr, b: Expr) -> Expr {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => cst(x - y),
        (_, Some(y)) if y.is_zero() => a,
        _ => Rc::new(E::Sub(a, b)),
    }
}

pub fn mul(a: Expr, b: Expr) -> Expr {
    match (as_const(&a), as_const(&b)) {
        (Some(x), Some(y)) => cst(x * y),
        (Some(x), _) | (_, Some(x)) if x.is_zero() => cst(Rational::zero()),
        (Some(x), _) if x.is_one() => b,
        (_, Some(y)) if y.is_one() => a,
        _ => Rc::new(E::Mul(a, b)),
    }
}

pub fn div(a: Expr, b: Expr) -> Expr {
    match (as_const(&a), as_const(&b)) {
        (Some(x), _) if x.is_zero() => cst(Rational::zero()),
        (Some(x), Some(y)) if !y.is_zero() => cst(x / y),
        (_, Some(y)) if y.is_one() => a,
        _ => Rc::new(E::Div(a, b)),
    }
}

pub fn pow(a: Expr, k: i32) -> Expr {
    match k {
        0 => cst(Rational::one()),
        1 => a,
        _ => Rc::new(E::Pow(a, k)),
    }
}

/// `d e / d x` by the textbook rules.
pub fn diff(e: &Expr, x: &str) -> Expr {
    let mut memo: HashMap<*const E, Expr> = HashMap::new();
    diff_memo(e, x, &mut memo)
}

fn diff_memo(e: &Expr, x: &str, memo: &mut HashMap<*const E, Expr>) -> Expr {
    let key = Rc::as_ptr(e);
    if let Some(d) = memo.get(&key) {
        return d.clone();
    }
    let d = match &**e {
        E::Var(v) => cst(if v == x { int(1) } else { int(0) }),
        E::Const(_) => cst(int(0)),
        E::Add(a, b) => add(diff_memo(a, x, memo), diff_memo(b, x, memo)),
        E::Sub(a, b) => sub(diff_memo(a, x, memo), diff_memo(b, x, memo)),
        E::Mul(a, b) => add(
            mul(diff_memo(a, x, memo), b.clone()),
            mul(a.clone(), diff_memo(b, x, memo)),
        ),
        E::Div(a, b) => div(
            sub(mul(diff_memo(a, x, memo), b.clone()), mul(a.clone(), diff_memo(b, x, memo))),
            pow(b.clone(), 2),
        ),
        E::Pow(a, k) => mul(mul(cst(int(i64::from(*k))), pow(a.clone(), k - 1)), diff_memo(a, x, memo)),
    };
    memo.insert(key, d.clone());
    d
}

/// Exact value, or `None` on division by zero.
pub fn eval(e: &Expr, env: &BTreeMap<String, Rational>) -> Option<Rational> {
    let mut memo: HashMap<*const E, Option<Rational>> = HashMap::new();
    eval_memo(e, env, &mut memo)
}

fn eval_memo(
    e: &Expr,
    env: &BTreeMap<String, Rational>,
    memo: &mut HashMap<*const E, Option<Rational>>,
) -> Option<Rational> {
    let key = Rc::as_ptr(e);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let v = (|| match &**e {
        E::Var(v) => env.get(v).cloned(),
        E::Const(q) => Some(q.clone()),
        E::Add(a, b) => Some(eval_memo(a, env, memo)? + eval_memo(b, env, memo)?),
        E::Sub(a, b) => Some(eval_memo(a, env, memo)? - eval_memo(b, env, memo)?),
        E::Mul(a, b) => Some(eval_memo(a, env, memo)? * eval_memo(b, env, memo)?),
        E::Div(a, b) => {
            let (n, d) = (eval_memo(a, env, memo)?, eval_memo(b, env, memo)?);
            (!d.is_zero()).then(|| n / d)
        }
        E::Pow(a, k) => {
            let b = eval_memo(a, env, memo)?;
            if *k < 0 && b.is_zero() {
                return None;
            }
            let p = num_traits::pow(b, k.unsigned_abs() as usize);
            Some(if *k < 0 { p.recip() } else { p })
        }
    })();
    memo.insert(key, v.clone());
    v
}

pub fn eval1(e: &Expr, x: &str, at: &Rational) -> Option<Rational> {
    eval(e, &BTreeMap::from([(x.to_string(), at.clone())]))
}

/// True if some denominator (or negative power base) vanishes at the point.
pub fn singular(e: &Expr, env: &BTreeMap<String, Rational>) -> bool {
    match &**e {
        E::Var(_) | E::Const(_) => false,
        E::Add(a, b) | E::Sub(a, b) | E::Mul(a, b) => singular(a, env) || singular(b, env),
        E::Div(a, b) => singular(a, env) || singular(b, env) || eval(b, env).map_or(true, |d| d.is_zero()),
        E::Pow(a, k) => singular(a, env) || (*k < 0 && eval(a, env).map_or(true, |d| d.is_zero())),
    }
}

/// Fully parenthesized text in the surface syntax.
pub fn render(e: &Expr) -> String {
    match &**e {
        E::Var(v) => v.clone(),
        E::Const(q) if q.is_negative() => format!("(-{})", -q),
        E::Const(q) => format!("({q})"),
        E::Add(a, b) => format!("({} + {})", render(a), render(b)),
        E::Sub(a, b) => format!("({} - {})", render(a), render(b)),
        E::Mul(a, b) => format!("({} * {})", render(a), render(b)),
        E::Div(a, b) => format!("({} / {})", render(a), render(b)),
        E::Pow(a, k) => format!("({}^{k})", render(a)),
    }
}

// ---------------------------------------------------------------------------
// A separate parser for the same surface syntax
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
enum T {
    Num(Rational),
    Id(String),
    Op(char),
}

fn tokenize(s: &str) -> Vec<T> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let n: i64 = cs[start..i].iter().collect::<String>().parse().unwrap();
            out.push(T::Num(int(n)));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(T::Id(cs[start..i].iter().collect()));
        } else {
            out.push(T::Op(c));
            i += 1;
        }
    }
    out
}

struct P {
    toks: Vec<T>,
    pos: usize,
}

impl P {
    fn peek(&self) -> Option<&T> {
        self.toks.get(self.pos)
    }
    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&T::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn expr(&mut self) -> Expr {
        let mut acc = self.term();
        loop {
            if self.eat('+') {
                acc = Rc::new(E::Add(acc, self.term()));
            } else if self.eat('-') {
                acc = Rc::new(E::Sub(acc, self.term()));
            } else {
                return acc;
            }
        }
    }
    fn term(&mut self) -> Expr {
        let mut acc = self.unary();
        loop {
            if self.eat('*') {
                acc = Rc::new(E::Mul(acc, self.unary()));
            } else if self.eat('/') {
                acc = Rc::new(E::Div(acc, self.unary()));
            } else {
                return acc;
            }
        }
    }
    fn unary(&mut self) -> Expr {
        if self.eat('-') {
            Rc::new(E::Sub(cst(int(0)), self.unary()))
        } else {
            self.power()
        }
    }
    fn power(&mut self) -> Expr {
        let base = self.atom();
        if self.eat('^') {
            let neg = self.eat('-');
            let k = match self.toks.get(self.pos).cloned() {
                Some(T::Num(q)) => {
                    self.pos += 1;
                    i32::try_from(q.to_integer()).unwrap()
                }
                other => panic!("exponent expected, found {other:?}"),
            };
            Rc::new(E::Pow(base, if neg { -k } else { k }))
        } else {
            base
        }
    }
    fn atom(&mut self) -> Expr {
        match self.toks.get(self.pos).cloned() {
            Some(T::Num(q)) => {
                self.pos += 1;
                cst(q)
            }
            Some(T::Id(v)) => {
                self.pos += 1;
                var(&v)
            }
            Some(T::Op('(')) => {
                self.pos += 1;
                let e = self.expr();
                assert!(self.eat(')'), "unbalanced parentheses");
                e
            }
            other => panic!("unexpected token {other:?}"),
        }
    }
}

pub fn parse(s: &str) -> Expr {
    let mut p = P { toks: tokenize(s), pos: 0 };
    let e = p.expr();
    assert_eq!(p.pos, p.toks.len(), "trailing input in `{s}`");
    e
}

// ---------------------------------------------------------------------------
// Program corpus
// ---------------------------------------------------------------------------

pub const HAND_PROGRAMS: &[&str] = &[
    "x^3",
    "x",
    "7",
    "x^2 - 3*x + 1",
    "1/x",
    "x^-2",
    "(x + 1)/(x - 1)",
    "x^5 - x^4/2",
    "(x^2 + 1)^3",
    "1/(x^2 + 1)",
    "x/(1 + x^2)^2",
    "(2*x - 3)^4",
    "-x^2 + x",
    "3/4*x^2 - 5/6",
    "(x^3 - 2*x)/(x^2 + 3)",
    "((x + 1)^2 - 1)/x",
    "1/(1 - x/3)",
    "x^6 - 6*x^5 + 15*x^4",
    "(1 + x)^-3",
    "(x - 1/2)^3*(x + 2)^2",
];

fn random_leaf(rng: &mut ChaCha8Rng) -> Expr {
    match rng.gen_range(0..4) {
        0 | 1 => var("x"),
        2 => cst(int(rng.gen_range(-5..=5))),
        _ => cst(ratio(rng.gen_range(-7..=7), rng.gen_range(1..=5))),
    }
}

pub fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.2) {
        return random_leaf(rng);
    }
    let a = random_expr(rng, depth - 1);
    match rng.gen_range(0..6) {
        0 => Rc::new(E::Add(a, random_expr(rng, depth - 1))),
        1 => Rc::new(E::Sub(a, random_expr(rng, depth - 1))),
        2 | 3 => Rc::new(E::Mul(a, random_expr(rng, depth - 1))),
        4 => Rc::new(E::Div(a, random_expr(rng, depth - 1))),
        _ => Rc::new(E::Pow(a, rng.gen_range(-2..=3))),
    }
}

/// The hand-written programs followed by seeded random ones, as
/// `(text, oracle expression)`.
pub fn program_corpus(seed: u64, random: usize) -> Vec<(String, Expr)> {
    use rand::SeedableRng;
    let mut out: Vec<(String, Expr)> = HAND_PROGRAMS.iter().map(|s| (s.to_string(), parse(s))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < HAND_PROGRAMS.len() + random {
        let e = random_expr(&mut rng, 3);
        out.push((render(&e), e));
    }
    out
}

pub fn sample_points() -> Vec<Rational> {
    vec![int(2), ratio(1, 2), ratio(-3, 2), int(3), ratio(5, 7), int(-1)]
}

/// `f^(k)(a)` by iterated symbolic differentiation.
pub fn iterated_derivatives(e: &Expr, at: &Rational, order: usize) -> Option<Vec<Rational>> {
    let mut d = e.clone();
    let mut out = Vec::with_capacity(order + 1);
    for k in 0..=order {
        out.push(eval1(&d, "x", at)?);
        if k < order {
            d = diff(&d, "x");
        }
    }
    Some(out)
}

pub fn taylor_from_derivatives(ds: &[Rational]) -> Vec<Rational> {
    ds.iter().enumerate().map(|(j, d)| d / factorial(j)).collect()
}

// ---------------------------------------------------------------------------
// Polynomials and the dimension oracle
// ---------------------------------------------------------------------------

pub type Poly = BTreeMap<Vec<u32>, Rational>;

fn poly_add(a: &Poly, b: &Poly, sign: i64) -> Poly {
    let mut out = a.clone();
    for (m, c) in b {
        let e = out.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c * int(sign);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Expand a division-free expression, shifting each variable by `shift`.
pub fn to_poly(e: &Expr, vars: &[&str], shift: &[Rational]) -> Poly {
    let n = vars.len();
    let constant = |q: Rational| -> Poly {
        let mut p = Poly::new();
        if !q.is_zero() {
            p.insert(vec![0; n], q);
        }
        p
    };
    match &**e {
        E::Var(v) => {
            let i = vars.iter().position(|x| x == v).expect("declared variable");
            let mut m = vec![0; n];
            m[i] = 1;
            let mut p = Poly::from([(m, int(1))]);
            p = poly_add(&p, &constant(shift[i].clone()), 1);
            p
        }
        E::Const(q) => constant(q.clone()),
        E::Add(a, b) => poly_add(&to_poly(a, vars, shift), &to_poly(b, vars, shift), 1),
        E::Sub(a, b) => poly_add(&to_poly(a, vars, shift), &to_poly(b, vars, shift), -1),
        E::Mul(a, b) => poly_mul(&to_poly(a, vars, shift), &to_poly(b, vars, shift)),
        E::Pow(a, k) if *k >= 0 => {
            let base = to_poly(a, vars, shift);
            (0..*k).fold(constant(int(1)), |acc, _| poly_mul(&acc, &base))
        }
        other => panic!("not a polynomial: {other:?}"),
    }
}

fn monomials_below(n: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|m: Vec<u32>| {
                let used: u32 = m.iter().sum();
                (0..deg.saturating_sub(used)).map(move |e| {
                    let mut m2 = m.clone();
                    m2.push(e);
                    m2
                })
            })
            .collect();
    }
    out
}

/// Rank of a rational matrix by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..cols {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim Q[x]/(I + m^K)` from the span of truncated multiples `m·g`.
fn truncated_dimension(n: usize, rels: &[Poly], k: u32) -> usize {
    let basis = monomials_below(n, k);
    let index: HashMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in rels {
        for m in &basis {
            let mut row = vec![Rational::zero(); basis.len()];
            let mut any = false;
            for (mg, c) in g {
                let prod: Vec<u32> = mg.iter().zip(m).map(|(a, b)| a + b).collect();
                if let Some(&j) = index.get(&prod) {
                    row[j] += c;
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    basis.len() - rank(rows)
}

/// Dimension of a local algebra `Q[x]/I` with `I` primary to the origin:
/// the first `K` at which `dim Q[x]/(I + m^K)` stops growing.
pub fn dimension_oracle(n: usize, rels: &[Poly]) -> usize {
    let mut prev = truncated_dimension(n, rels, 1);
    for k in 2..24 {
        let d = truncated_dimension(n, rels, k);
        if d == prev {
            return d;
        }
        prev = d;
    }
    panic!("dimension did not stabilize");
}

/// For monomial ideals: the number of monomials divisible by no generator.
pub fn standard_monomial_count(n: usize, gens: &[Vec<u32>]) -> usize {
    let bound = gens.iter().flatten().copied().max().unwrap_or(1) * n as u32 + 1;
    monomials_below(n, bound)
        .iter()
        .filter(|m| !gens.iter().any(|g| g.iter().zip(m.iter()).all(|(a, b)| a <= b)))
        .count()
}

/// One entry of the algebra corpus.
#[derive(Debug, Clone)]
pub enum AlgebraCase {
    /// Presentation text, variable names, relations, augmentation.
    Presentation { text: &'static str, vars: &'static [&'static str], rels: &'static [&'static str], aug: &'static [i64] },
    Tensor(&'static [&'static str]),
}

pub fn algebra_corpus() -> Vec<AlgebraCase> {
    use AlgebraCase::*;
    vec![
        Presentation { text: "Q[x]/(x^2)", vars: &["x"], rels: &["x^2"], aug: &[0] },
        Presentation { text: "Q[x,y]/(x^2,x*y,y^2)", vars: &["x", "y"], rels: &["x^2", "x*y", "y^2"], aug: &[0, 0] },
        Presentation {
            text: "Q[x,y,z]/(x^2,y^2,z^2,x*y,x*z,y*z)",
            vars: &["x", "y", "z"],
            rels: &["x^2", "y^2", "z^2", "x*y", "x*z", "y*z"],
            aug: &[0, 0, 0],
        },
        Presentation { text: "Q[x]/(x^3)", vars: &["x"], rels: &["x^3"], aug: &[0] },
        Presentation { text: "Q[x]/(x^5)", vars: &["x"], rels: &["x^5"], aug: &[0] },
        Presentation { text: "Q[x]/(x^8)", vars: &["x"], rels: &["x^8"], aug: &[0] },
        Presentation { text: "Q[x,y]/(x^2,y^2)", vars: &["x", "y"], rels: &["x^2", "y^2"], aug: &[0, 0] },
        Presentation { text: "Q[x,y]/(x^2 - y^3, x*y)", vars: &["x", "y"], rels: &["x^2 - y^3", "x*y"], aug: &[0, 0] },
        Presentation { text: "Q[x,y]/(x^2 - y^2, x*y)", vars: &["x", "y"], rels: &["x^2 - y^2", "x*y"], aug: &[0, 0] },
        Presentation { text: "Q[x,y]/(x^2 + y^2, x*y)", vars: &["x", "y"], rels: &["x^2 + y^2", "x*y"], aug: &[0, 0] },
        Presentation { text: "Q[x,y]/(x^3, y^2, x^2*y)", vars: &["x", "y"], rels: &["x^3", "y^2", "x^2*y"], aug: &[0, 0] },
        Presentation { text: "Q[x,y]/(y - x^2, x^3)", vars: &["x", "y"], rels: &["y - x^2", "x^3"], aug: &[0, 0] },
        Presentation {
            text: "Q[x,y,z]/(x*y - z, x^2, y^2, z^2)",
            vars: &["x", "y", "z"],
            rels: &["x*y - z", "x^2", "y^2", "z^2"],
            aug: &[0, 0, 0],
        },
        Presentation { text: "Q[x]/((x-1)^3); aug x->1", vars: &["x"], rels: &["(x-1)^3"], aug: &[1] },
        Presentation {
            text: "Q[x,y]/((x-2)^2, (y+1)^2, (x-2)*(y+1)); aug x->2, y->-1",
            vars: &["x", "y"],
            rels: &["(x-2)^2", "(y+1)^2", "(x-2)*(y+1)"],
            aug: &[2, -1],
        },
        Tensor(&["Q[x]/(x^2)", "Q[y]/(y^3)"]),
        Tensor(&["Q[e]/(e^2)", "Q[e]/(e^2)", "Q[e]/(e^2)"]),
        Tensor(&["Q[x,y]/(x^2,x*y,y^2)", "Q[t]/(t^2)"]),
    ]
}

/// Oracle dimension of one presentation.
pub fn presentation_dimension(vars: &[&str], rels: &[&str], aug: &[i64]) -> usize {
    let shift: Vec<Rational> = aug.iter().map(|&a| int(a)).collect();
    let polys: Vec<Poly> = rels.iter().map(|r| to_poly(&parse(r), vars, &shift)).collect();
    dimension_oracle(vars.len(), &polys)
}

/// Variables and relations of a presentation `Q[..]/(..)` with zero
/// augmentation.
pub fn text_parts(text: &str) -> (Vec<&str>, Vec<&str>) {
    let open = text.find('[').unwrap();
    let close = text.find(']').unwrap();
    let vars: Vec<&str> = text[open + 1..close].split(',').map(str::trim).collect();
    let body = &text[close + 3..text.rfind(')').unwrap()];
    (vars, split_top_level(body))
}

/// Oracle dimension of a presentation given only as text.
pub fn text_dimension(text: &str) -> usize {
    let (vars, rels) = text_parts(text);
    presentation_dimension(&vars, &rels, &vec![0; vars.len()])
}

/// Oracle dimension of a tensor product: the factors' relations placed in
/// disjoint blocks of variables of one polynomial ring.
pub fn tensor_dimension(factors: &[&str]) -> usize {
    let parts: Vec<(Vec<&str>, Vec<&str>)> = factors.iter().map(|f| text_parts(f)).collect();
    let total: usize = parts.iter().map(|(v, _)| v.len()).sum();
    let mut rels = Vec::new();
    let mut offset = 0;
    for (vars, rs) in &parts {
        let zero = vec![int(0); vars.len()];
        for r in rs {
            let p = to_poly(&parse(r), vars, &zero);
            let lifted: Poly = p
                .into_iter()
                .map(|(m, c)| {
                    let mut big = vec![0; total];
                    big[offset..offset + m.len()].copy_from_slice(&m);
                    (big, c)
                })
                .collect();
            rels.push(lifted);
        }
        offset += vars.len();
    }
    dimension_oracle(total, &rels)
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

// ---------------------------------------------------------------------------
// Brute-force restriction solve for lifting problems
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub enum Restriction {
    None,
    Unique(Vec<Rational>),
    Many { nullity: usize },
}

/// Solve `A·v = b` over the rationals.
pub fn solve_linear(a: &[Vec<Rational>], b: &[Rational]) -> Restriction {
    let n = a.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for j in c..=n {
            rows[r][j] = &rows[r][j] / &pivot;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..=n {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return Restriction::None;
    }
    if pivots.len() < n {
        return Restriction::Many { nullity: n - pivots.len() };
    }
    let mut v = vec![Rational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        v[c] = rows[i][n].clone();
    }
    Restriction::Unique(v)
}

/// Stack the two restriction maps `W4 → W2`, `W4 → W3` and solve for one
/// coordinate of the lift from its two boundary values.
pub fn restriction_solve(
    m42: &[Vec<Rational>],
    m43: &[Vec<Rational>],
    b2: &[Rational],
    b3: &[Rational],
) -> Restriction {
    let a: Vec<Vec<Rational>> = m42.iter().chain(m43).cloned().collect();
    let b: Vec<Rational> = b2.iter().chain(b3).cloned().collect();
    solve_linear(&a, &b)
}

pub fn random_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    ratio(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}
