//! Commuting squares of Weil algebras and the R-pushout test.
//!
//! A square of infinitesimal varieties `V1 → V2, V1 → V3, V2 → V4, V3 → V4`
//! is stored through its dual algebras and morphisms `W2 → W1`, `W3 → W1`,
//! `W4 → W2`, `W4 → W3`. It is an R-pushout exactly when
//! `W4 → W2 ×_{W1} W3` is a linear isomorphism.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::{serde_qvec, Rational};
use crate::weil::{
    tensor, AlgebraMorphism, AugPresentation, Polynomial, WeilAlgebra, WeilElement,
};

#[derive(Debug, Clone)]
pub struct InfSquare {
    name: String,
    m21: AlgebraMorphism,
    m31: AlgebraMorphism,
    m42: AlgebraMorphism,
    m43: AlgebraMorphism,
}

impl InfSquare {
    /// Checks that the maps line up, are valid morphisms, and that the two
    /// composites `W4 → W1` agree on every generator.
    pub fn new(
        name: &str,
        m21: AlgebraMorphism,
        m31: AlgebraMorphism,
        m42: AlgebraMorphism,
        m43: AlgebraMorphism,
    ) -> Result<Self> {
        let fits = **m21.target() == **m31.target()
            && **m42.target() == **m21.source()
            && **m43.target() == **m31.source()
            && **m42.source() == **m43.source();
        if !fits {
            return Err(Error::Invalid(format!("square `{name}`: corners do not match")));
        }
        for (label, m) in [("W2→W1", &m21), ("W3→W1", &m31), ("W4→W2", &m42), ("W4→W3", &m43)] {
            if let Some(f) = m.validate().failure {
                return Err(Error::Invalid(format!(
                    "square `{name}`: {label} is not a morphism ({} `{}` gives {})",
                    f.kind, f.item, f.residue
                )));
            }
        }
        let left = m42.then(&m21)?;
        let right = m43.then(&m31)?;
        if left.images() != right.images() {
            return Err(Error::Invalid(format!("square `{name}` does not commute")));
        }
        Ok(InfSquare {
            name: name.to_string(),
            m21,
            m31,
            m42,
            m43,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Corner `W_i`, `i` in `1..=4`.
    pub fn corner(&self, i: usize) -> &Arc<WeilAlgebra> {
        match i {
            1 => self.m21.target(),
            2 => self.m21.source(),
            3 => self.m31.source(),
            4 => self.m42.source(),
            _ => panic!("corner index {i} out of range"),
        }
    }

    pub fn w2_to_w1(&self) -> &AlgebraMorphism {
        &self.m21
    }

    pub fn w3_to_w1(&self) -> &AlgebraMorphism {
        &self.m31
    }

    pub fn w4_to_w2(&self) -> &AlgebraMorphism {
        &self.m42
    }

    pub fn w4_to_w3(&self) -> &AlgebraMorphism {
        &self.m43
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn morphism(src: &Arc<WeilAlgebra>, tgt: &Arc<WeilAlgebra>, images: Vec<Polynomial>) -> AlgebraMorphism {
    AlgebraMorphism::from_polynomials(src, tgt, &images).expect("arity matches")
}

/// The map sending the listed generators of `src` to generators of `tgt`
/// (by index) and every other generator to 0.
fn coordinate_map(src: &Arc<WeilAlgebra>, tgt: &Arc<WeilAlgebra>, pick: impl Fn(usize) -> Option<usize>) -> AlgebraMorphism {
    let n = tgt.generator_count();
    let images = (0..src.generator_count())
        .map(|g| match pick(g) {
            Some(t) => Polynomial::var(n, t),
            None => Polynomial::zero(n),
        })
        .collect();
    morphism(src, tgt, images)
}

/// `D(n) ← * → D(m)` completed by `D(n+m)`: dually `D(n+m) → D(n)` kills
/// the `y`s and `D(n+m) → D(m)` kills the `x`s.
pub fn axis_square(n: usize, m: usize) -> InfSquare {
    let w1 = WeilAlgebra::scalar();
    let w2 = WeilAlgebra::first_order_patch_named(&names("x", n));
    let w3 = WeilAlgebra::first_order_patch_named(&names("y", m));
    let mut all = names("x", n);
    all.extend(names("y", m));
    let w4 = WeilAlgebra::first_order_patch_named(&all);
    InfSquare::new(
        &format!("axis:{n},{m}"),
        coordinate_map(&w2, &w1, |_| None),
        coordinate_map(&w3, &w1, |_| None),
        coordinate_map(&w4, &w2, |g| (g < n).then_some(g)),
        coordinate_map(&w4, &w3, |g| (g >= n).then(|| g - n)),
    )
    .expect("axis square is well formed")
}

/// The collapse of `D_1` inside `D_2`: `W1 = Q[x]/(x^2)`, `W2 = Q[x]/(x^3)`,
/// `W3 = Q`, and `W4 = W2 ×_{W1} Q = Q[t]/(t^2)` with `t ↦ x^2`. A lift is
/// a second-order jet with zero velocity read as a tangent vector.
pub fn second_order_square() -> InfSquare {
    let w1 = WeilAlgebra::truncated_line("x", 1);
    let w2 = WeilAlgebra::truncated_line("x", 2);
    let w3 = WeilAlgebra::scalar();
    let w4 = WeilAlgebra::truncated_line("t", 1);
    InfSquare::new(
        "second-order",
        morphism(&w2, &w1, vec![Polynomial::var(1, 0)]),
        morphism(&w3, &w1, vec![]),
        morphism(&w4, &w2, vec![Polynomial::var(1, 0).pow(2)]),
        morphism(&w4, &w3, vec![Polynomial::zero(0)]),
    )
    .expect("second-order square is well formed")
}

/// Two order-`k` lines glued at the origin:
/// `W4 = Q[x, y]/(x^(k+1), x*y, y^(k+1))`.
pub fn wedge_square(k: u32) -> InfSquare {
    let w1 = WeilAlgebra::scalar();
    let w2 = WeilAlgebra::truncated_line("x", k);
    let w3 = WeilAlgebra::truncated_line("y", k);
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let p = AugPresentation::standard(
        vec!["x".into(), "y".into()],
        vec![x.pow(k + 1), x.mul(&y), y.pow(k + 1)],
    )
    .expect("standard presentation");
    let w4 = WeilAlgebra::normalize_with_cap(&p, crate::weil::DEFAULT_DEGREE_CAP.max(k + 2)).expect("wedge");
    InfSquare::new(
        &format!("wedge:{k}"),
        coordinate_map(&w2, &w1, |_| None),
        coordinate_map(&w3, &w1, |_| None),
        coordinate_map(&w4, &w2, |g| (g == 0).then_some(0)),
        coordinate_map(&w4, &w3, |g| (g == 1).then_some(0)),
    )
    .expect("wedge square is well formed")
}

/// `W4 = W2 = W3 = D(1)` with identity maps over the point: the equalizer
/// is 3-dimensional but `W4` only 2.
pub fn dimension_mismatch_square() -> InfSquare {
    let w1 = WeilAlgebra::scalar();
    let d = WeilAlgebra::dual_numbers();
    InfSquare::new(
        "mismatch",
        coordinate_map(&d, &w1, |_| None),
        coordinate_map(&d, &w1, |_| None),
        AlgebraMorphism::identity(&d),
        AlgebraMorphism::identity(&d),
    )
    .expect("mismatch square is well formed")
}

/// The axis square with `D(1) ⊗ D(1)` in place of `D(2)`; the cross term
/// `ε_1 ε_2` dies in both restrictions.
pub fn tensor_cross_square() -> InfSquare {
    let w1 = WeilAlgebra::scalar();
    let d = WeilAlgebra::dual_numbers();
    let w4 = tensor(&d, &d).expect("tensor of dual numbers");
    InfSquare::new(
        "tensor-cross",
        coordinate_map(&d, &w1, |_| None),
        coordinate_map(&d, &w1, |_| None),
        coordinate_map(&w4, &d, |g| (g == 0).then_some(0)),
        coordinate_map(&w4, &d, |g| (g == 1).then_some(0)),
    )
    .expect("tensor square is well formed")
}

/// Axis squares for `n, m ≤ 2` and the second-order square.
pub fn default_battery() -> Vec<InfSquare> {
    let mut out = Vec::new();
    for n in 0..=2 {
        for m in 0..=2 {
            out.push(axis_square(n, m));
        }
    }
    out.push(second_order_square());
    out
}

/// Square descriptions accepted on the command line and in JSON: a name
/// such as `axis:1,1`, `wedge:2`, `second-order`, `mismatch`,
/// `tensor-cross`, or an explicit object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SquareSpec {
    Named(String),
    Explicit(ExplicitSquare),
}

/// Four presentations and the generator images of the four maps, written
/// as polynomials in the target's generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplicitSquare {
    #[serde(default)]
    pub name: Option<String>,
    pub w1: String,
    pub w2: String,
    pub w3: String,
    pub w4: String,
    pub w2_to_w1: Vec<String>,
    pub w3_to_w1: Vec<String>,
    pub w4_to_w2: Vec<String>,
    pub w4_to_w3: Vec<String>,
}

impl SquareSpec {
    pub fn build(&self, cap: u32) -> Result<InfSquare> {
        match self {
            SquareSpec::Named(s) => named_square(s),
            SquareSpec::Explicit(e) => {
                let alg = |t: &str| WeilAlgebra::normalize_with_cap(&AugPresentation::parse(t)?, cap);
                let (w1, w2, w3, w4) = (alg(&e.w1)?, alg(&e.w2)?, alg(&e.w3)?, alg(&e.w4)?);
                let map = |src: &Arc<WeilAlgebra>, tgt: &Arc<WeilAlgebra>, imgs: &[String]| -> Result<AlgebraMorphism> {
                    let polys = imgs
                        .iter()
                        .map(|t| crate::weil::parse_polynomial(t, tgt.generators()))
                        .collect::<Result<Vec<_>>>()?;
                    AlgebraMorphism::from_polynomials(src, tgt, &polys)
                };
                InfSquare::new(
                    e.name.as_deref().unwrap_or("explicit"),
                    map(&w2, &w1, &e.w2_to_w1)?,
                    map(&w3, &w1, &e.w3_to_w1)?,
                    map(&w4, &w2, &e.w4_to_w2)?,
                    map(&w4, &w3, &e.w4_to_w3)?,
                )
            }
        }
    }
}

/// Parse a square name.
pub fn named_square(spec: &str) -> Result<InfSquare> {
    let bad = || Error::Invalid(format!("unknown square `{spec}`"));
    let (kind, args) = match spec.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (spec, None),
    };
    match (kind, args) {
        ("axis", Some(a)) => {
            let (n, m) = a.split_once(',').ok_or_else(bad)?;
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            let m: usize = m.trim().parse().map_err(|_| bad())?;
            Ok(axis_square(n, m))
        }
        ("wedge", Some(a)) => Ok(wedge_square(a.trim().parse().map_err(|_| bad())?)),
        ("second-order", None) => Ok(second_order_square()),
        ("mismatch", None) => Ok(dimension_mismatch_square()),
        ("tensor-cross", None) => Ok(tensor_cross_square()),
        _ => Err(bad()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PushoutDimensions {
    pub w1: usize,
    pub w2: usize,
    pub w3: usize,
    pub w4: usize,
    pub equalizer: usize,
    pub image_rank: usize,
    pub kernel: usize,
}

/// A vector showing why the comparison map is not an isomorphism.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PushoutWitness {
    /// `"kernel"`: a nonzero element of `W4` killed by both restrictions.
    /// `"cokernel"`: a compatible pair in `W2 ⊕ W3` not hit from `W4`.
    pub kind: String,
    #[serde(with = "serde_qvec")]
    pub vector: Vec<Rational>,
    /// The vector in generator notation.
    pub rendered: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PushoutCertificate {
    pub square: String,
    pub pass: bool,
    pub dimensions: PushoutDimensions,
    pub witness: Option<PushoutWitness>,
}

/// Decide whether `W4 → W2 ×_{W1} W3` is a linear isomorphism.
pub fn is_r_pushout(s: &InfSquare) -> PushoutCertificate {
    let dims: Vec<usize> = (1..=4).map(|i| s.corner(i).dimension()).collect();
    let (d1, d2, d3, d4) = (dims[0], dims[1], dims[2], dims[3]);
    // L = [M42; M43] : W4 → W2 ⊕ W3
    let mut l: Matrix = s.m42.linear_matrix();
    l.extend(s.m43.linear_matrix());
    // E = ker [M21 | -M31]
    let m21 = s.m21.linear_matrix();
    let m31 = s.m31.linear_matrix();
    let diff: Matrix = (0..d1)
        .map(|r| {
            let mut row = m21[r].clone();
            row.extend(m31[r].iter().map(|x| -x));
            row
        })
        .collect();
    let equalizer = linalg::nullspace(&diff, d2 + d3);
    let kernel = linalg::nullspace(&l, d4);
    let image_rank = d4 - kernel.len();
    let pass = kernel.is_empty() && image_rank == equalizer.len();
    let witness = if !kernel.is_empty() {
        let v = kernel[0].clone();
        let e = WeilElement::new(s.corner(4), v.clone()).expect("dimension");
        Some(PushoutWitness {
            kind: "kernel".into(),
            rendered: crate::weil::morphism::render_in(&e),
            vector: v,
        })
    } else if !pass {
        let image_cols = linalg::transpose(&l, d4);
        let basis = linalg::extend_basis(&[], &image_cols);
        linalg::extend_basis(&basis, &equalizer).into_iter().next().map(|v| {
            let p2 = WeilElement::new(s.corner(2), v[..d2].to_vec()).expect("dimension");
            let p3 = WeilElement::new(s.corner(3), v[d2..].to_vec()).expect("dimension");
            PushoutWitness {
                kind: "cokernel".into(),
                rendered: format!(
                    "({}, {})",
                    crate::weil::morphism::render_in(&p2),
                    crate::weil::morphism::render_in(&p3)
                ),
                vector: v,
            }
        })
    } else {
        None
    };
    PushoutCertificate {
        square: s.name.clone(),
        pass,
        dimensions: PushoutDimensions {
            w1: d1,
            w2: d2,
            w3: d3,
            w4: d4,
            equalizer: equalizer.len(),
            image_rank,
            kernel: kernel.len(),
        },
        witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_corners() {
        let s = axis_square(1, 1);
        let dims: Vec<usize> = (1..=4).map(|i| s.corner(i).dimension()).collect();
        assert_eq!(dims, [1, 2, 2, 3]);
        let z = axis_square(0, 0);
        assert!((1..=4).all(|i| z.corner(i).dimension() == 1));
        assert_eq!(axis_square(2, 1).corner(4).dimension(), 4);
    }

    #[test]
    fn axis_squares_are_pushouts() {
        for n in 0..=3 {
            for m in 0..=3 {
                let c = is_r_pushout(&axis_square(n, m));
                assert!(c.pass, "axis:{n},{m}");
                assert_eq!(c.dimensions.equalizer, n + m + 1);
            }
        }
    }

    #[test]
    fn higher_order_squares_are_pushouts() {
        assert!(is_r_pushout(&second_order_square()).pass);
        for k in 1..=3 {
            assert!(is_r_pushout(&wedge_square(k)).pass, "wedge:{k}");
        }
    }

    #[test]
    fn mismatch_fails_on_dimension() {
        let c = is_r_pushout(&dimension_mismatch_square());
        assert!(!c.pass);
        assert_eq!(c.dimensions.equalizer, 3);
        assert_eq!(c.dimensions.image_rank, 2);
        assert_eq!(c.witness.unwrap().kind, "cokernel");
    }

    #[test]
    fn tensor_fails_on_cross_term() {
        let c = is_r_pushout(&tensor_cross_square());
        assert!(!c.pass);
        let w = c.witness.unwrap();
        assert_eq!(w.kind, "kernel");
        assert_eq!(w.rendered, "ε_1*ε_2");
    }

    #[test]
    fn non_commuting_square_rejected() {
        let w1 = WeilAlgebra::truncated_line("x", 1);
        let w2 = WeilAlgebra::truncated_line("x", 2);
        let w3 = WeilAlgebra::scalar();
        let w4 = WeilAlgebra::truncated_line("t", 1);
        let r = InfSquare::new(
            "bad",
            morphism(&w2, &w1, vec![Polynomial::var(1, 0)]),
            morphism(&w3, &w1, vec![]),
            // t ↦ x is not a morphism: t^2 ↦ x^2
            morphism(&w4, &w2, vec![Polynomial::var(1, 0)]),
            morphism(&w4, &w3, vec![Polynomial::zero(0)]),
        );
        assert!(r.is_err());
    }

    #[test]
    fn names_parse() {
        for s in ["axis:2,1", "wedge:2", "second-order", "mismatch", "tensor-cross"] {
            assert_eq!(named_square(s).unwrap().name(), s);
        }
        assert!(named_square("axis:1").is_err());
        let spec: SquareSpec = serde_json::from_str("\"axis:1,0\"").unwrap();
        assert_eq!(spec.build(16).unwrap().name(), "axis:1,0");
    }
}
