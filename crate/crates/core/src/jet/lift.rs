//! Evaluation of programs at Weil-algebra arguments.
//!
//! For `a = s + n` with `n` nilpotent of order `d`, a primitive expands as
//! `f(s + n) = sum_{k<d} f^(k)(s) n^k / k!`. The sum is exact and finite, so
//! evaluating at `x + ε` in `Q[ε]/(ε^(k+1))` yields the Taylor coefficients
//! of order `≤ k`.

use std::sync::Arc;

use super::primitive::TowerRule;
use super::program::{Node, SmoothProgram};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{factorial, Rational, Scalar};
use crate::weil::element::same_algebra;
use crate::weil::{tensor_many, WeilAlgebra, WeilElement, DEFAULT_DEGREE_CAP};

/// Coefficient carriers the jet engine can evaluate with.
pub trait JetScalar: Scalar {
    fn tower(rule: &dyn TowerRule, name: &str, s: &Self, d: usize) -> Result<Vec<Self>>;
}

impl JetScalar for Rational {
    fn tower(rule: &dyn TowerRule, name: &str, s: &Self, d: usize) -> Result<Vec<Self>> {
        rule.exact_tower(s, d)
            .ok_or_else(|| Error::ExactModeUnsupportedPrimitive(name.to_string()))
    }
}

impl JetScalar for f64 {
    fn tower(rule: &dyn TowerRule, _name: &str, s: &Self, d: usize) -> Result<Vec<Self>> {
        rule.float_tower(*s, d)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Invalid(format!("unknown mode `{other}`"))),
        }
    }
}

/// Result of a mode-selected evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Lifted {
    Exact(WeilElement<Rational>),
    Float(WeilElement<f64>),
}

/// Evaluate `f` with the carrier chosen by `mode`. Arguments are exact;
/// float mode converts them first.
pub fn lift_eval_mode(f: &SmoothProgram, args: &[WeilElement], mode: Mode) -> Result<Lifted> {
    match mode {
        Mode::Exact => lift_eval(f, args).map(Lifted::Exact),
        Mode::Float => {
            let args: Vec<WeilElement<f64>> = args.iter().map(WeilElement::to_float).collect();
            lift_eval(f, &args).map(Lifted::Float)
        }
    }
}

/// Evaluate the DAG in the Weil algebra shared by `args`.
pub fn lift_eval<S: JetScalar>(f: &SmoothProgram, args: &[WeilElement<S>]) -> Result<WeilElement<S>> {
    if args.len() != f.arity() {
        return Err(Error::Invalid(format!(
            "{} arguments for a program of arity {}",
            args.len(),
            f.arity()
        )));
    }
    let alg: Arc<WeilAlgebra> = match args.first() {
        Some(a) => a.algebra().clone(),
        None => WeilAlgebra::scalar(),
    };
    if args.iter().any(|a| !same_algebra(a.algebra(), &alg)) {
        return Err(Error::AlgebraMismatch);
    }
    let live = f.reachable();
    let mut vals: Vec<Option<WeilElement<S>>> = vec![None; f.nodes().len()];
    let get = |vals: &[Option<WeilElement<S>>], i: usize| vals[i].clone().expect("child evaluated");
    for (i, node) in f.nodes().iter().enumerate() {
        if !live[i] {
            continue;
        }
        let v = match node {
            Node::Var(k) => args[*k].clone(),
            Node::Const(q) => WeilElement::constant(&alg, S::from_rational(q)),
            Node::Add(a, b) => get(&vals, *a).add(&get(&vals, *b))?,
            Node::Sub(a, b) => get(&vals, *a).sub(&get(&vals, *b))?,
            Node::Mul(a, b) => get(&vals, *a).mul(&get(&vals, *b))?,
            Node::Div(a, b) => {
                let den = get(&vals, *b);
                if den.augmentation().is_zero() {
                    return Err(Error::DivisionByInfinitesimal);
                }
                get(&vals, *a).div(&den)?
            }
            Node::Primitive(name, a) => {
                let rule = f.registry().get(name)?;
                expand_primitive(rule.as_ref(), name, &get(&vals, *a))?
            }
        };
        vals[i] = Some(v);
    }
    Ok(get(&vals, f.root()))
}

fn expand_primitive<S: JetScalar>(rule: &dyn TowerRule, name: &str, a: &WeilElement<S>) -> Result<WeilElement<S>> {
    let d = a.algebra().nilpotency_degree();
    let tower = S::tower(rule, name, a.augmentation(), d)?;
    let n = a.nilpotent_part();
    let mut power = WeilElement::one(a.algebra());
    let mut out = WeilElement::zero(a.algebra());
    for (k, c) in tower.iter().enumerate() {
        let coeff = c.mul(&S::from_rational(&factorial(k)).recip().expect("k! > 0"));
        out = out.add(&power.scale(&coeff))?;
        power = power.mul(&n)?;
    }
    Ok(out)
}

/// Value at a plain point (evaluation in the scalar algebra).
pub fn eval_at<S: JetScalar>(f: &SmoothProgram, point: &[S]) -> Result<S> {
    let q = WeilAlgebra::scalar();
    let args: Vec<WeilElement<S>> = point.iter().map(|x| WeilElement::constant(&q, x.clone())).collect();
    Ok(lift_eval(f, &args)?.augmentation().clone())
}

fn single_input(f: &SmoothProgram) -> Result<()> {
    if f.arity() == 1 {
        Ok(())
    } else {
        Err(Error::Invalid(format!("expected a program of one input, got {}", f.arity())))
    }
}

/// The ε-coefficient of `f(at + ε)` over the dual numbers.
pub fn derivative<S: JetScalar>(f: &SmoothProgram, at: &S) -> Result<S> {
    single_input(f)?;
    let d = WeilAlgebra::dual_numbers();
    let arg = WeilElement::constant(&d, at.clone()).add(&WeilElement::generator(&d, 0))?;
    Ok(lift_eval(f, &[arg])?.coeff(1).clone())
}

/// Coefficients `c_0..c_order` of `f(at + ε)` in `Q[ε]/(ε^(order+1))`.
pub fn taylor<S: JetScalar>(f: &SmoothProgram, at: &S, order: u32) -> Result<Vec<S>> {
    single_input(f)?;
    let w = WeilAlgebra::truncated_line("ε", order);
    let arg = WeilElement::constant(&w, at.clone()).add(&WeilElement::generator(&w, 0))?;
    let v = lift_eval(f, &[arg])?;
    Ok((0..=order).map(|j| v.coeff_of(&[j])).collect())
}

/// `∂^k f / ∂x_1^k_1 ... ∂x_n^k_n` at `at`, read from the tensor product
/// of truncated lines.
pub fn mixed_partial<S: JetScalar>(f: &SmoothProgram, at: &[S], orders: &[u32]) -> Result<S> {
    if at.len() != f.arity() || orders.len() != f.arity() {
        return Err(Error::Invalid("point and multi-index must match the program's inputs".into()));
    }
    let lines: Vec<Arc<WeilAlgebra>> = orders.iter().map(|&k| WeilAlgebra::truncated_line("ε", k)).collect();
    let refs: Vec<&WeilAlgebra> = lines.iter().map(|w| w.as_ref()).collect();
    let total: u32 = orders.iter().sum();
    let w = tensor_many(&refs, DEFAULT_DEGREE_CAP.max(total + 1))?;
    // generator i of the tensor product is ε of factor i, or is absent when
    // k_i = 0 (that factor is Q[ε]/(ε) and its generator is 0)
    let args: Vec<WeilElement<S>> = at
        .iter()
        .enumerate()
        .map(|(i, x)| {
            WeilElement::constant(&w, x.clone())
                .add(&WeilElement::generator(&w, i))
                .expect("same algebra")
        })
        .collect();
    let v = lift_eval(f, &args)?;
    let scale = orders
        .iter()
        .fold(Rational::from_integer(1.into()), |acc, &k| acc * factorial(k as usize));
    Ok(v.coeff_of(orders).mul(&S::from_rational(&scale)))
}

/// Rows `∂f_j/∂x_i (at)`, one dual-patch evaluation per program.
pub fn jacobian(programs: &[SmoothProgram], at: &[Rational]) -> Result<Matrix> {
    let n = at.len();
    let d = WeilAlgebra::first_order_patch(n);
    let args: Vec<WeilElement> = at
        .iter()
        .enumerate()
        .map(|(i, x)| {
            WeilElement::constant(&d, x.clone())
                .add(&WeilElement::generator(&d, i))
                .expect("same algebra")
        })
        .collect();
    programs
        .iter()
        .map(|f| {
            let v = lift_eval(f, &args)?;
            Ok((0..n)
                .map(|i| {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    v.coeff_of(&e)
                })
                .collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn prog(t: &str) -> SmoothProgram {
        SmoothProgram::parse(t, None).unwrap()
    }

    fn dual_arg(at: i64) -> WeilElement {
        let d = WeilAlgebra::dual_numbers();
        WeilElement::constant(&d, int(at)).add(&WeilElement::generator(&d, 0)).unwrap()
    }

    #[test]
    fn squares_and_geometric_series() {
        let v = lift_eval(&prog("x^2"), &[dual_arg(3)]).unwrap();
        assert_eq!(v.coeffs(), [int(9), int(6)]);
        let v = lift_eval(&prog("1/(1+x)"), &[dual_arg(0)]).unwrap();
        assert_eq!(v.coeffs(), [int(1), int(-1)]);
        let v = lift_eval(&prog("(x^2+1)*(x^2-1)"), &[dual_arg(3)]).unwrap();
        assert_eq!(v.coeffs(), [int(80), int(108)]);
    }

    #[test]
    fn derivatives() {
        assert_eq!(derivative(&prog("x^3"), &int(2)).unwrap(), int(12));
        assert_eq!(derivative(&prog("1/(1+x)"), &int(0)).unwrap(), int(-1));
        assert_eq!(derivative(&prog("(x^2+1)*(x^2-1)"), &int(3)).unwrap(), int(108));
    }

    #[test]
    fn taylor_towers() {
        assert_eq!(taylor(&prog("1/(1-x)"), &int(0), 4).unwrap(), vec![int(1); 5]);
        assert_eq!(
            taylor(&prog("x^3"), &int(1), 3).unwrap(),
            [int(1), int(3), int(3), int(1)]
        );
    }

    #[test]
    fn partials() {
        let xy = prog("x*y");
        assert_eq!(mixed_partial(&xy, &[int(0), int(0)], &[1, 1]).unwrap(), int(1));
        let f = prog("x^2*y");
        assert_eq!(mixed_partial(&f, &[int(1), int(1)], &[2, 1]).unwrap(), int(2));
        assert_eq!(mixed_partial(&f, &[int(1), int(1)], &[0, 0]).unwrap(), int(1));
        assert_eq!(mixed_partial(&f, &[int(3), int(1)], &[1, 0]).unwrap(), int(6));
    }

    #[test]
    fn division_by_infinitesimal() {
        assert_eq!(
            lift_eval(&prog("1/x"), &[dual_arg(0)]).unwrap_err(),
            Error::DivisionByInfinitesimal
        );
    }

    #[test]
    fn exact_mode_rejects_transcendentals() {
        assert_eq!(
            derivative(&prog("exp(x)"), &int(0)).unwrap_err(),
            Error::ExactModeUnsupportedPrimitive("exp".into())
        );
    }

    #[test]
    fn float_mode_primitives() {
        let d = derivative(&prog("exp(x)"), &0.0f64).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        let t = taylor(&prog("sin(x)"), &0.0f64, 5).unwrap();
        let expect = [0.0, 1.0, 0.0, -1.0 / 6.0, 0.0, 1.0 / 120.0];
        for (a, b) in t.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }
        let l = derivative(&prog("log(x)"), &2.0f64).unwrap();
        assert!((l - 0.5).abs() < 1e-15);
    }

    #[test]
    fn mode_dispatch() {
        let f = prog("x^2 - 1/3");
        let exact = lift_eval_mode(&f, &[dual_arg(1)], Mode::Exact).unwrap();
        assert_eq!(exact, Lifted::Exact(lift_eval(&f, &[dual_arg(1)]).unwrap()));
        match lift_eval_mode(&f, &[dual_arg(1)], Mode::Float).unwrap() {
            Lifted::Float(v) => assert!((v.coeffs()[0] - 2.0 / 3.0).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn jacobian_of_sphere() {
        let xs: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let f = SmoothProgram::parse("x^2+y^2+z^2-1", Some(&xs)).unwrap();
        let j = jacobian(&[f], &[ratio(3, 5), ratio(4, 5), int(0)]).unwrap();
        assert_eq!(j, vec![vec![ratio(6, 5), ratio(8, 5), int(0)]]);
    }

    #[test]
    fn scalar_evaluation() {
        assert_eq!(eval_at(&prog("x/y"), &[int(1), int(4)]).unwrap(), ratio(1, 4));
    }
}
