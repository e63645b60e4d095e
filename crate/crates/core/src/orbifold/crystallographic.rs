//! The split extension `0 → Z^n → Z^n ⋊ Γ → Γ → 0` for a finite
//! `Γ ⊆ GL_n(Z)`, and fixed points of `Γ` on the torus `R^n / Z^n`.

use serde::{Deserialize, Serialize};

use super::scene::{FiniteGroup, GroupElement, IntMatrix};
use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Rational};

/// Recorded in every extension report.
pub const SPLIT_MODEL_NOTE: &str =
    "extension realized as the split extension Z^n x| Gamma; this is a modeling choice";

/// A finite subgroup of `GL_n(Z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGroup {
    n: usize,
    group: FiniteGroup,
}

impl MatrixGroup {
    /// Check that `elements` is closed under products and inverses.
    pub fn new(elements: Vec<IntMatrix>) -> Result<Self> {
        let n = elements
            .first()
            .ok_or_else(|| Error::NotAGroup("no elements".into()))?
            .dim();
        if elements.iter().any(|m| m.dim() != n) {
            return Err(Error::NotAGroup("matrices of different sizes".into()));
        }
        let group = FiniteGroup::from_elements(elements.into_iter().map(GroupElement::Matrix).collect())?;
        if !group.element(group.identity()).eq(&GroupElement::Matrix(IntMatrix::identity(n))) {
            return Err(Error::NotAGroup("identity matrix missing".into()));
        }
        Ok(MatrixGroup { n, group })
    }

    /// The finite group generated by `gens`.
    pub fn generated_by(gens: Vec<IntMatrix>) -> Result<Self> {
        let g = FiniteGroup::generated_by(gens.into_iter().map(GroupElement::Matrix).collect())?;
        Self::new(
            g.elements()
                .iter()
                .filter_map(|e| match e {
                    GroupElement::Matrix(m) => Some(m.clone()),
                    GroupElement::Permutation(_) => None,
                })
                .collect(),
        )
    }

    /// `{±I} ⊆ GL_n(Z)`.
    pub fn plus_minus_identity(n: usize) -> Self {
        Self::new(vec![IntMatrix::identity(n), IntMatrix::scalar(n, -1)]).expect("{±I} is a group")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn matrices(&self) -> Vec<IntMatrix> {
        self.group
            .elements()
            .iter()
            .map(|g| match g {
                GroupElement::Matrix(m) => m.clone(),
                GroupElement::Permutation(_) => unreachable!("built from matrices"),
            })
            .collect()
    }

    pub fn contains(&self, m: &IntMatrix) -> bool {
        self.group.elements().contains(&GroupElement::Matrix(m.clone()))
    }

    pub fn inverse(&self, m: &IntMatrix) -> Result<IntMatrix> {
        let i = self
            .group
            .elements()
            .iter()
            .position(|g| *g == GroupElement::Matrix(m.clone()))
            .ok_or_else(|| Error::Invalid(format!("{m} is not in the group")))?;
        match self.group.element(self.group.inverse(i)) {
            GroupElement::Matrix(x) => Ok(x.clone()),
            GroupElement::Permutation(_) => unreachable!("built from matrices"),
        }
    }
}

/// `(v, M)` with `v ∈ Z^n`, `M ∈ Γ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrystElement {
    pub v: Vec<i64>,
    pub m: IntMatrix,
}

impl CrystElement {
    pub fn new(v: Vec<i64>, m: IntMatrix) -> Result<Self> {
        if v.len() != m.dim() {
            return Err(Error::Invalid("translation and matrix sizes differ".into()));
        }
        Ok(CrystElement { v, m })
    }
}

/// `Z^n ⋊ Γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Crystallographic {
    gamma: MatrixGroup,
}

impl Crystallographic {
    pub fn new(gamma: MatrixGroup) -> Self {
        Crystallographic { gamma }
    }

    pub fn gamma(&self) -> &MatrixGroup {
        &self.gamma
    }

    fn check(&self, x: &CrystElement) -> Result<()> {
        if x.v.len() != self.gamma.dim() || !self.gamma.contains(&x.m) {
            return Err(Error::Invalid(format!("({:?}, {}) is not an element of the extension", x.v, x.m)));
        }
        Ok(())
    }

    pub fn identity(&self) -> CrystElement {
        let n = self.gamma.dim();
        CrystElement { v: vec![0; n], m: IntMatrix::identity(n) }
    }

    /// `(v, M)(w, N) = (v + Mw, MN)`.
    pub fn multiply(&self, x: &CrystElement, y: &CrystElement) -> Result<CrystElement> {
        self.check(x)?;
        self.check(y)?;
        let mw = x.m.mul_vec(&y.v);
        Ok(CrystElement {
            v: x.v.iter().zip(&mw).map(|(a, b)| a + b).collect(),
            m: x.m.mul(&y.m),
        })
    }

    /// `(v, M)^{-1} = (-M^{-1} v, M^{-1})`.
    pub fn invert(&self, x: &CrystElement) -> Result<CrystElement> {
        self.check(x)?;
        let mi = self.gamma.inverse(&x.m)?;
        Ok(CrystElement { v: mi.mul_vec(&x.v).iter().map(|a| -a).collect(), m: mi })
    }

    pub fn inject(&self, v: &[i64]) -> CrystElement {
        CrystElement { v: v.to_vec(), m: IntMatrix::identity(self.gamma.dim()) }
    }

    pub fn project(&self, x: &CrystElement) -> IntMatrix {
        x.m.clone()
    }
}

/// Elementwise exactness of `0 → Z^n → Γ̃ → Γ → 0` over translations in
/// `[-radius, radius]^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtensionCertificate {
    pub n: usize,
    pub gamma_order: usize,
    pub radius: i64,
    pub translations_checked: usize,
    pub model: &'static str,
    /// `ι(v + w) = ι(v)ι(w)` and `ι(v) = 1 ⇒ v = 0`: exact at `Z^n`.
    pub injection_homomorphism: bool,
    pub injection_injective: bool,
    /// `π ∘ ι = 1` and `π(x) = 1 ⇒ x ∈ ι(Z^n)`: exact in the middle.
    pub image_equals_kernel: bool,
    /// `π(xy) = π(x)π(y)` and every `M ∈ Γ` is hit: exact at `Γ`.
    pub projection_homomorphism: bool,
    pub projection_surjective: bool,
    pub group_laws: bool,
    pub exact: bool,
}

/// All vectors in `{lo, ..., hi}^n`, lexicographically.
fn grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn extension_check(g: &Crystallographic, radius: i64) -> Result<ExtensionCertificate> {
    if radius < 0 {
        return Err(Error::Invalid("radius must be nonnegative".into()));
    }
    let n = g.gamma.dim();
    let vs = grid(n, -radius, radius);
    let mats = g.gamma.matrices();
    let one = g.identity();

    let mut inj_hom = true;
    let mut inj_injective = true;
    let mut image_kernel = true;
    for v in &vs {
        let iv = g.inject(v);
        inj_injective &= iv != one || v.iter().all(|&a| a == 0);
        image_kernel &= g.project(&iv).is_identity();
        for w in &vs {
            let sum: Vec<i64> = v.iter().zip(w).map(|(a, b)| a + b).collect();
            inj_hom &= g.multiply(&iv, &g.inject(w))? == g.inject(&sum);
        }
    }

    let elements: Vec<CrystElement> = vs
        .iter()
        .flat_map(|v| mats.iter().map(move |m| CrystElement { v: v.clone(), m: m.clone() }))
        .collect();
    let mut proj_hom = true;
    let mut laws = true;
    for x in &elements {
        // kernel ⊆ image
        if g.project(x).is_identity() {
            image_kernel &= *x == g.inject(&x.v);
        }
        let xi = g.invert(x)?;
        laws &= g.multiply(x, &xi)? == one && g.multiply(&xi, x)? == one;
        laws &= g.multiply(&one, x)? == *x && g.multiply(x, &one)? == *x;
        for y in &elements {
            let xy = g.multiply(x, y)?;
            proj_hom &= g.project(&xy) == g.project(x).mul(&g.project(y));
        }
    }
    // associativity on a sub-box of radius 1 keeps the cubic loop small
    let small: Vec<&CrystElement> = elements
        .iter()
        .filter(|x| x.v.iter().all(|a| a.abs() <= 1))
        .take(64)
        .collect();
    for x in &small {
        for y in &small {
            let xy = g.multiply(x, y)?;
            for z in &small {
                laws &= g.multiply(&xy, z)? == g.multiply(x, &g.multiply(y, z)?)?;
            }
        }
    }
    let proj_surj = mats.iter().all(|m| g.project(&CrystElement { v: vec![0; n], m: m.clone() }) == *m);

    let exact = inj_hom && inj_injective && image_kernel && proj_hom && proj_surj && laws;
    Ok(ExtensionCertificate {
        n,
        gamma_order: mats.len(),
        radius,
        translations_checked: vs.len(),
        model: SPLIT_MODEL_NOTE,
        injection_homomorphism: inj_hom,
        injection_injective: inj_injective,
        image_equals_kernel: image_kernel,
        projection_homomorphism: proj_hom,
        projection_surjective: proj_surj,
        group_laws: laws,
        exact,
    })
}

/// Points `x ∈ {0, 1/d, ..., (d-1)/d}^n` with `Mx ≡ x (mod Z^n)`, in
/// lexicographic order of numerators.
pub fn torus_fixed_points(m: &IntMatrix, d: u32) -> Result<Vec<Vec<Rational>>> {
    if d == 0 {
        return Err(Error::Invalid("denominator bound must be at least 1".into()));
    }
    let n = m.dim();
    let d = i64::from(d);
    let mut out = Vec::new();
    for a in grid(n, 0, d - 1) {
        let ma = m.mul_vec(&a);
        if ma.iter().zip(&a).all(|(x, y)| (x - y).rem_euclid(d) == 0) {
            out.push(a.iter().map(|&k| Rational::new(k.into(), d.into())).collect());
        }
    }
    Ok(out)
}

pub fn render_torus_point(p: &[Rational]) -> Vec<String> {
    p.iter().map(fmt_rational).collect()
}
