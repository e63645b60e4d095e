//! Finite groups acting on exact carriers, with stabilizers and transporters.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, serde_q::value_to_rational, Rational};

/// Largest group that closure is allowed to produce.
pub const MAX_GROUP_ORDER: usize = 4096;

/// A square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl TryFrom<Vec<Vec<i64>>> for IntMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        IntMatrix::from_rows(&rows)
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.rows()
    }
}

impl IntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("matrix must be square and nonempty".into()));
        }
        Ok(IntMatrix { n, entries: rows.concat() })
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, k: i64) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = k;
        }
        IntMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "dimension mismatch");
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a != 0 {
                    for j in 0..n {
                        entries[i * n + j] += a * o.get(k, j);
                    }
                }
            }
        }
        IntMatrix { n, entries }
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum()).collect()
    }

    pub fn mul_qvec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| Rational::from_integer(self.get(i, j).into()) * &v[j]).sum())
            .collect()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// A permutation of `0..n` in one-line notation: `i ↦ images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self ∘ o)(i) = self(o(i))`.
    pub fn compose(&self, o: &Self) -> Self {
        Permutation(o.0.iter().map(|&i| self.0[i]).collect())
    }

    /// Cycle notation, `()` for the identity.
    pub fn cycles(&self) -> String {
        let mut seen = vec![false; self.0.len()];
        let mut out = String::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut i = self.0[start];
            while i != start {
                seen[i] = true;
                cyc.push(i);
                i = self.0[i];
            }
            let body: Vec<String> = cyc.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!("({})", body.join(" ")));
        }
        if out.is_empty() {
            "()".into()
        } else {
            out
        }
    }
}

/// A group element in one of the two supported representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Matrix(IntMatrix),
    Permutation(Permutation),
}

impl GroupElement {
    fn mul(&self, o: &Self) -> Result<Self> {
        match (self, o) {
            (GroupElement::Matrix(a), GroupElement::Matrix(b)) if a.dim() == b.dim() => {
                Ok(GroupElement::Matrix(a.mul(b)))
            }
            (GroupElement::Permutation(a), GroupElement::Permutation(b)) if a.degree() == b.degree() => {
                Ok(GroupElement::Permutation(a.compose(b)))
            }
            _ => Err(Error::NotAGroup("elements of different kinds or sizes".into())),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Matrix(m) => write!(f, "{m}"),
            GroupElement::Permutation(p) => write!(f, "{}", p.cycles()),
        }
    }
}

/// A finite group given by an explicit element list and its multiplication table.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteGroup {
    elements: Vec<GroupElement>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Verify closure, associativity, identity and inverses exhaustively.
    pub fn from_elements(elements: Vec<GroupElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::NotAGroup("no elements".into()));
        }
        let index: HashMap<&GroupElement, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        if index.len() != elements.len() {
            return Err(Error::NotAGroup("repeated element".into()));
        }
        let n = elements.len();
        let mut table = vec![vec![0; n]; n];
        for (i, g) in elements.iter().enumerate() {
            for (j, h) in elements.iter().enumerate() {
                let p = g.mul(h)?;
                table[i][j] = *index
                    .get(&p)
                    .ok_or_else(|| Error::NotAGroup(format!("{g} * {h} = {p} is not in the list")))?;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup("multiplication is not associative".into()));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let inverses = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or_else(|| Error::NotAGroup(format!("{} has no inverse", elements[g])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup { elements, table, identity, inverses })
    }

    /// The subgroup generated by `generators`, listed in breadth-first order
    /// starting from the identity.
    pub fn generated_by(generators: Vec<GroupElement>) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::NotAGroup("no generators".into()))?;
        let identity = match first {
            GroupElement::Matrix(m) => GroupElement::Matrix(IntMatrix::identity(m.dim())),
            GroupElement::Permutation(p) => GroupElement::Permutation(Permutation::identity(p.degree())),
        };
        let mut elements = vec![identity.clone()];
        let mut seen: HashMap<GroupElement, usize> = HashMap::from([(identity, 0)]);
        let mut k = 0;
        while k < elements.len() {
            for s in &generators {
                let p = elements[k].mul(s)?;
                if !seen.contains_key(&p) {
                    if elements.len() == MAX_GROUP_ORDER {
                        return Err(Error::NotAGroup(format!(
                            "generated group exceeds {MAX_GROUP_ORDER} elements"
                        )));
                    }
                    seen.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            k += 1;
        }
        Self::from_elements(elements)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        !subset.is_empty()
            && subset.contains(&self.identity)
            && subset.iter().all(|&a| {
                subset.contains(&self.inverses[a]) && subset.iter().all(|&b| subset.contains(&self.table[a][b]))
            })
    }
}

/// A point of a carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ScenePoint {
    /// Exact coordinates in `Q^n`.
    Coords(Vec<Rational>),
    /// A tuple of labels (a configuration).
    Tuple(Vec<String>),
}

impl fmt::Display for ScenePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScenePoint::Coords(v) => {
                write!(f, "({})", v.iter().map(fmt_rational).collect::<Vec<_>>().join(","))
            }
            ScenePoint::Tuple(t) => write!(f, "({})", t.join(",")),
        }
    }
}

/// Where the group acts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Carrier {
    /// `Q^dim` acted on by matrices.
    Coordinates { dim: usize },
    /// Tuples of length `arity` drawn from `labels`, permuted positionally.
    Tuples { labels: Vec<String>, arity: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteActionScene {
    name: String,
    group: FiniteGroup,
    carrier: Carrier,
}

/// Stabilizer of `x` and transporter from `x` to `y`, as element indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilizerReport {
    pub x: String,
    pub y: String,
    pub stabilizer: Vec<String>,
    pub transporter: Vec<String>,
    pub stabilizer_order: usize,
    pub transporter_order: usize,
    pub stabilizer_is_subgroup: bool,
    /// `transporter` is empty or equals `g·stabilizer` for any of its elements.
    pub transporter_is_coset: bool,
    #[serde(skip)]
    pub stabilizer_indices: Vec<usize>,
    #[serde(skip)]
    pub transporter_indices: Vec<usize>,
}

impl FiniteActionScene {
    pub fn new(name: impl Into<String>, group: FiniteGroup, carrier: Carrier) -> Result<Self> {
        for g in group.elements() {
            match (g, &carrier) {
                (GroupElement::Matrix(m), Carrier::Coordinates { dim }) if m.dim() == *dim => {}
                (GroupElement::Permutation(p), Carrier::Tuples { arity, .. }) if p.degree() == *arity => {}
                _ => return Err(Error::Invalid(format!("{g} does not act on the carrier"))),
            }
        }
        Ok(FiniteActionScene { name: name.into(), group, carrier })
    }

    /// `C4` acting on `Q(i) = Q^2` by rotation through a right angle.
    pub fn c4_rotation() -> Self {
        let r = IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]).expect("square");
        let g = FiniteGroup::generated_by(vec![GroupElement::Matrix(r)]).expect("finite");
        Self::new("C4", g, Carrier::Coordinates { dim: 2 }).expect("matrices act on Q^2")
    }

    /// The symmetric group on `arity` positions acting on tuples over `labels`.
    pub fn configurations(labels: &[&str], arity: usize) -> Self {
        let mut gens = Vec::new();
        for i in 0..arity.saturating_sub(1) {
            let mut p: Vec<usize> = (0..arity).collect();
            p.swap(i, i + 1);
            gens.push(GroupElement::Permutation(Permutation(p)));
        }
        if gens.is_empty() {
            gens.push(GroupElement::Permutation(Permutation::identity(arity)));
        }
        let g = FiniteGroup::generated_by(gens).expect("symmetric groups are finite");
        Self::new(
            format!("S{arity}"),
            g,
            Carrier::Tuples { labels: labels.iter().map(|s| s.to_string()).collect(), arity },
        )
        .expect("permutations act on tuples")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn check_point(&self, x: &ScenePoint) -> Result<()> {
        let ok = match (x, &self.carrier) {
            (ScenePoint::Coords(v), Carrier::Coordinates { dim }) => v.len() == *dim,
            (ScenePoint::Tuple(t), Carrier::Tuples { labels, arity }) => {
                t.len() == *arity && t.iter().all(|s| labels.contains(s))
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::PointNotInCarrier(x.to_string()))
        }
    }

    /// `g·x`. For tuples, `(σ·x)[σ(i)] = x[i]`.
    pub fn act(&self, g: usize, x: &ScenePoint) -> Result<ScenePoint> {
        self.check_point(x)?;
        Ok(match (self.group.element(g), x) {
            (GroupElement::Matrix(m), ScenePoint::Coords(v)) => ScenePoint::Coords(m.mul_qvec(v)),
            (GroupElement::Permutation(p), ScenePoint::Tuple(t)) => {
                let mut out = t.clone();
                for (i, s) in t.iter().enumerate() {
                    out[p.image(i)] = s.clone();
                }
                ScenePoint::Tuple(out)
            }
            _ => unreachable!("checked at construction"),
        })
    }

    /// `g(hx) = (gh)x` and `1x = x` for every pair of elements at each sample.
    pub fn verify_action(&self, samples: &[ScenePoint]) -> Result<bool> {
        let n = self.group.order();
        for x in samples {
            if self.act(self.group.identity(), x)? != *x {
                return Ok(false);
            }
            for g in 0..n {
                let gx = self.act(g, x)?;
                for h in 0..n {
                    if self.act(h, &gx)? != self.act(self.group.mul(h, g), x)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn orbit(&self, x: &ScenePoint) -> Result<Vec<ScenePoint>> {
        let mut out: Vec<ScenePoint> = Vec::new();
        for g in 0..self.group.order() {
            let y = self.act(g, x)?;
            if !out.contains(&y) {
                out.push(y);
            }
        }
        Ok(out)
    }

    pub fn stabilizer_and_transporter(&self, x: &ScenePoint, y: &ScenePoint) -> Result<StabilizerReport> {
        self.check_point(x)?;
        self.check_point(y)?;
        let mut stab = Vec::new();
        let mut trans = Vec::new();
        for g in 0..self.group.order() {
            let gx = self.act(g, x)?;
            if gx == *x {
                stab.push(g);
            }
            if gx == *y {
                trans.push(g);
            }
        }
        let coset = match trans.first() {
            None => true,
            Some(&t) => {
                let mut c: Vec<usize> = stab.iter().map(|&s| self.group.mul(t, s)).collect();
                c.sort_unstable();
                c == trans
            }
        };
        let names = |v: &[usize]| v.iter().map(|&g| self.group.element(g).to_string()).collect();
        Ok(StabilizerReport {
            x: x.to_string(),
            y: y.to_string(),
            stabilizer: names(&stab),
            transporter: names(&trans),
            stabilizer_order: stab.len(),
            transporter_order: trans.len(),
            stabilizer_is_subgroup: self.group.is_subgroup(&stab),
            transporter_is_coset: coset,
            stabilizer_indices: stab,
            transporter_indices: trans,
        })
    }
}

/// JSON form of a scene.
///
/// ```json
/// {"name": "C4", "group": {"generators": [[[0,-1],[1,0]]]}, "carrier": {"dim": 2}}
/// {"group": {"elements": [[0,1],[1,0]]}, "carrier": {"labels": ["a","b","c"], "arity": 2}}
/// ```
#[derive(Debug, Clone, Deserialize)]
pub struct SceneJson {
    #[serde(default)]
    pub name: Option<String>,
    pub group: GroupJson,
    pub carrier: CarrierJson,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupJson {
    Generators(Vec<ElementJson>),
    Elements(Vec<ElementJson>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Matrix(IntMatrix),
    Permutation(Permutation),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CarrierJson {
    Coordinates { dim: usize },
    Tuples { labels: Vec<String>, arity: usize },
}

impl SceneJson {
    pub fn build(self) -> Result<FiniteActionScene> {
        let conv = |v: Vec<ElementJson>| -> Vec<GroupElement> {
            v.into_iter()
                .map(|e| match e {
                    ElementJson::Matrix(m) => GroupElement::Matrix(m),
                    ElementJson::Permutation(p) => GroupElement::Permutation(p),
                })
                .collect()
        };
        let group = match self.group {
            GroupJson::Generators(g) => FiniteGroup::generated_by(conv(g))?,
            GroupJson::Elements(e) => FiniteGroup::from_elements(conv(e))?,
        };
        let carrier = match self.carrier {
            CarrierJson::Coordinates { dim } => Carrier::Coordinates { dim },
            CarrierJson::Tuples { labels, arity } => Carrier::Tuples { labels, arity },
        };
        FiniteActionScene::new(self.name.unwrap_or_else(|| "scene".into()), group, carrier)
    }
}

/// Read a carrier point from JSON: an array of rationals (numbers or
/// `"p/q"` strings) for coordinate carriers, an array of labels for tuples.
pub fn point_from_json(scene: &FiniteActionScene, v: &serde_json::Value) -> Result<ScenePoint> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::PointNotInCarrier(v.to_string()))?;
    let p = match scene.carrier() {
        Carrier::Coordinates { .. } => ScenePoint::Coords(
            arr.iter()
                .map(|x| value_to_rational(x).ok_or_else(|| Error::PointNotInCarrier(v.to_string())))
                .collect::<Result<_>>()?,
        ),
        Carrier::Tuples { .. } => ScenePoint::Tuple(
            arr.iter()
                .map(|x| {
                    x.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| Error::PointNotInCarrier(v.to_string()))
                })
                .collect::<Result<_>>()?,
        ),
    };
    scene.check_point(&p)?;
    Ok(p)
}
