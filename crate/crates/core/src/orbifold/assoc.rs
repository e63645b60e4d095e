//! Associations: total, functional relations from a finite set of labels to
//! an index set `[n] = {0, ..., n-1}`, witnessing subfinite enumeration.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `pairs` holds `(left index, right index)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "AssociationJson", into = "AssociationJson")]
pub struct Association {
    left: Vec<String>,
    right: usize,
    pairs: BTreeSet<(usize, usize)>,
}

/// `{"left": ["a","b"], "right": 2, "pairs": [["a", 0], ["b", 1]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociationJson {
    pub left: Vec<String>,
    pub right: usize,
    pub pairs: Vec<(String, usize)>,
}

impl TryFrom<AssociationJson> for Association {
    type Error = Error;
    fn try_from(j: AssociationJson) -> Result<Self> {
        Association::from_labels(j.left, j.right, &j.pairs)
    }
}

impl From<Association> for AssociationJson {
    fn from(a: Association) -> Self {
        AssociationJson {
            pairs: a.pairs.iter().map(|&(x, i)| (a.left[x].clone(), i)).collect(),
            left: a.left,
            right: a.right,
        }
    }
}

fn violation(clause: &str, at: &str) -> Error {
    Error::InvariantViolation { clause: clause.into(), at: at.into() }
}

impl Association {
    /// Build without checking the two invariants; labels must be distinct
    /// and indices in range.
    pub fn unchecked(left: Vec<String>, right: usize, pairs: BTreeSet<(usize, usize)>) -> Result<Self> {
        let distinct: BTreeSet<&String> = left.iter().collect();
        if distinct.len() != left.len() {
            return Err(Error::Invalid("left labels must be distinct".into()));
        }
        if let Some(&(x, i)) = pairs.iter().find(|&&(x, i)| x >= left.len() || i >= right) {
            return Err(Error::Invalid(format!("pair ({x}, {i}) is out of range")));
        }
        Ok(Association { left, right, pairs })
    }

    /// Build and verify totality and functionality.
    pub fn new(left: Vec<String>, right: usize, pairs: BTreeSet<(usize, usize)>) -> Result<Self> {
        let a = Self::unchecked(left, right, pairs)?;
        a.verify()?;
        Ok(a)
    }

    pub fn from_labels(left: Vec<String>, right: usize, pairs: &[(String, usize)]) -> Result<Self> {
        let index: BTreeMap<&String, usize> = left.iter().enumerate().map(|(k, s)| (s, k)).collect();
        let pairs = pairs
            .iter()
            .map(|(s, i)| {
                index
                    .get(s)
                    .map(|&k| (k, *i))
                    .ok_or_else(|| Error::Invalid(format!("`{s}` is not a left element")))
            })
            .collect::<Result<BTreeSet<_>>>()?;
        Self::new(left, right, pairs)
    }

    /// A total function `left[k] ↦ f[k]`.
    pub fn from_function(left: Vec<String>, right: usize, f: &[usize]) -> Result<Self> {
        if f.len() != left.len() {
            return Err(Error::Invalid("one image per left element".into()));
        }
        Self::new(left, right, f.iter().enumerate().map(|(k, &i)| (k, i)).collect())
    }

    /// `[n]` related to itself by the identity.
    pub fn identity(n: usize) -> Self {
        Self::from_function(index_labels(n), n, &(0..n).collect::<Vec<_>>()).expect("identity is an association")
    }

    pub fn left(&self) -> &[String] {
        &self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn related(&self, x: usize, i: usize) -> bool {
        self.pairs.contains(&(x, i))
    }

    /// The index of `left[x]`.
    pub fn image(&self, x: usize) -> Option<usize> {
        self.pairs.range((x, 0)..(x + 1, 0)).next().map(|&(_, i)| i)
    }

    /// Totality first, then functionality, reporting the first failing element.
    pub fn verify(&self) -> Result<()> {
        for (x, label) in self.left.iter().enumerate() {
            if self.image(x).is_none() {
                return Err(violation("totality", label));
            }
        }
        for (x, label) in self.left.iter().enumerate() {
            if self.pairs.range((x, 0)..(x + 1, 0)).nth(1).is_some() {
                return Err(violation("functionality", label));
            }
        }
        Ok(())
    }
}

pub fn index_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// `(s ∘ r)(x, k) := ∃ i. r(x, i) ∧ s(i, k)`, where `s` has left set `[r.right]`.
pub fn compose(r: &Association, s: &Association) -> Result<Association> {
    r.verify()?;
    s.verify()?;
    if s.left.len() != r.right {
        return Err(Error::Invalid(format!(
            "cannot compose: {} indices against {} left elements",
            r.right,
            s.left.len()
        )));
    }
    let pairs = r
        .pairs
        .iter()
        .flat_map(|&(x, i)| s.pairs.range((i, 0)..(i + 1, 0)).map(move |&(_, k)| (x, k)))
        .collect();
    Association::new(r.left.clone(), s.right, pairs)
}

/// `(r × s)((x, y), (i, j))`, with `(i, j)` encoded as `i·m + j` and
/// `(x, y)` labelled `"(x,y)"`.
pub fn product(r: &Association, s: &Association) -> Result<Association> {
    r.verify()?;
    s.verify()?;
    let m = s.right;
    let left: Vec<String> = r
        .left
        .iter()
        .flat_map(|x| s.left.iter().map(move |y| format!("({x},{y})")))
        .collect();
    let w = s.left.len();
    let pairs = r
        .pairs
        .iter()
        .flat_map(|&(x, i)| s.pairs.iter().map(move |&(y, j)| (x * w + y, i * m + j)))
        .collect();
    Association::new(left, r.right * m, pairs)
}

/// Certificate for a finite union of associated subsets of a common set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnionCertificate {
    pub parts: usize,
    /// The disjoint-sum relation `x ~ (k, i)` over `[Σ n_k]`, before
    /// equality is used to pick one index per element.
    pub disjoint_sum_total: bool,
    pub disjoint_sum_functional: bool,
    pub union: AssociationJson,
    pub pass: bool,
}

/// The union of the left sets, enumerated through the disjoint sum of the
/// index sets. Where an element lies in several parts, decidable equality
/// of labels selects the least index.
pub fn union_check(parts: &[Association]) -> Result<UnionCertificate> {
    for p in parts {
        p.verify()?;
    }
    let mut offsets = Vec::with_capacity(parts.len());
    let mut total = 0;
    for p in parts {
        offsets.push(total);
        total += p.right;
    }
    let mut labels: Vec<String> = Vec::new();
    let mut sum: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
    for (p, off) in parts.iter().zip(&offsets) {
        for &(x, i) in &p.pairs {
            let label = &p.left[x];
            if !sum.contains_key(label) {
                labels.push(label.clone());
            }
            sum.entry(label.clone()).or_default().insert(off + i);
        }
    }
    let raw_total = labels.iter().all(|l| !sum[l].is_empty());
    let raw_functional = labels.iter().all(|l| sum[l].len() == 1);
    let pairs = labels
        .iter()
        .enumerate()
        .map(|(k, l)| (k, *sum[l].iter().next().expect("nonempty")))
        .collect();
    let union = Association::new(labels, total, pairs)?;
    Ok(UnionCertificate {
        parts: parts.len(),
        disjoint_sum_total: raw_total,
        disjoint_sum_functional: raw_functional,
        union: union.into(),
        pass: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn compose_with_identity() {
        let r = Association::from_function(labels(&["a", "b"]), 2, &[1, 0]).unwrap();
        assert_eq!(compose(&r, &Association::identity(2)).unwrap(), r);
    }

    #[test]
    fn compose_example() {
        let r = Association::from_function(labels(&["a", "b", "c"]), 2, &[0, 0, 1]).unwrap();
        let s = Association::from_function(index_labels(2), 3, &[2, 0]).unwrap();
        let c = compose(&r, &s).unwrap();
        assert_eq!(c.image(0), Some(2));
        assert_eq!(c.image(1), Some(2));
        assert_eq!(c.image(2), Some(0));
        assert!(c.verify().is_ok());
    }

    #[test]
    fn violations_are_named() {
        let pairs = [(0, 0), (1, 0)].into_iter().collect();
        assert_eq!(
            Association::new(labels(&["a", "b", "c"]), 2, pairs),
            Err(Error::InvariantViolation { clause: "totality".into(), at: "c".into() })
        );
        let pairs = [(0, 0), (0, 1)].into_iter().collect();
        assert_eq!(
            Association::new(labels(&["a"]), 2, pairs),
            Err(Error::InvariantViolation { clause: "functionality".into(), at: "a".into() })
        );
    }

    #[test]
    fn product_dimensions_multiply() {
        let r = Association::from_function(labels(&["a", "b"]), 2, &[1, 0]).unwrap();
        let s = Association::from_function(labels(&["x", "y", "z"]), 3, &[2, 2, 0]).unwrap();
        let p = product(&r, &s).unwrap();
        assert_eq!((p.left().len(), p.right()), (6, 6));
        assert_eq!(p.left()[1], "(a,y)");
        assert_eq!(p.image(1), Some(3 + 2));
    }

    #[test]
    fn union_uses_least_index() {
        let a = Association::from_function(labels(&["a", "b"]), 2, &[0, 1]).unwrap();
        let b = Association::from_function(labels(&["b", "c"]), 2, &[0, 1]).unwrap();
        let u = union_check(&[a, b]).unwrap();
        assert!(u.pass && u.disjoint_sum_total && !u.disjoint_sum_functional);
        assert_eq!(u.union.left, labels(&["a", "b", "c"]));
        assert_eq!(u.union.right, 4);
        assert_eq!(u.union.pairs, vec![("a".into(), 0), ("b".into(), 1), ("c".into(), 3)]);
    }

    #[test]
    fn json_round_trip() {
        let a: Association =
            serde_json::from_str(r#"{"left":["a","b"],"right":2,"pairs":[["a",1],["b",0]]}"#).unwrap();
        let back = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<Association>(&back).unwrap(), a);
        assert!(serde_json::from_str::<Association>(r#"{"left":["a"],"right":1,"pairs":[]}"#).is_err());
    }
}
