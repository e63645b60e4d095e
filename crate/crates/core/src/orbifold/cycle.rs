//! Cycles of `n` elements among the `n`-th roots of unity, with `ζ^c`
//! written as its exponent `c ∈ Z/n`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureViolation {
    pub shift: u64,
    pub element: u64,
    pub image: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCertificate {
    pub n: u64,
    pub elements: Vec<u64>,
    /// `⟨ζ^a, ζ^b⟩^n = ζ^{n(a-b)} = 1` for all pairs.
    pub inner_product_condition: bool,
    pub closed_under_roots: bool,
    pub nonempty: bool,
    pub pass: bool,
    pub first_violation: Option<ClosureViolation>,
}

/// Passes iff `C` is all of `Z/n`. The empty set is closed under shifts
/// but is not a cycle.
pub fn cycle_check(n: u64, c: &[i64]) -> Result<CycleCertificate> {
    if n == 0 {
        return Err(Error::Invalid("n must be at least 1".into()));
    }
    let m = n as i64;
    let set: BTreeSet<u64> = c.iter().map(|&x| x.rem_euclid(m) as u64).collect();
    let inner = set
        .iter()
        .all(|&a| set.iter().all(|&b| ((a as i128 - b as i128) * n as i128).rem_euclid(n as i128) == 0));
    let mut first_violation = None;
    'outer: for shift in 1..n {
        for &x in &set {
            let image = (x + shift) % n;
            if !set.contains(&image) {
                first_violation = Some(ClosureViolation { shift, element: x, image });
                break 'outer;
            }
        }
    }
    let closed = first_violation.is_none();
    let nonempty = !set.is_empty();
    Ok(CycleCertificate {
        n,
        elements: set.into_iter().collect(),
        inner_product_condition: inner,
        closed_under_roots: closed,
        nonempty,
        pass: inner && closed && nonempty,
        first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(cycle_check(4, &[0, 1, 2, 3]).unwrap().pass);
        let c = cycle_check(4, &[0, 2]).unwrap();
        assert!(!c.pass);
        assert_eq!(c.first_violation, Some(ClosureViolation { shift: 1, element: 0, image: 1 }));
        assert!(cycle_check(1, &[0]).unwrap().pass);
        assert!(cycle_check(3, &[5, -1, 7, 3]).unwrap().pass);
    }

    #[test]
    fn empty_set_is_not_a_cycle() {
        let c = cycle_check(3, &[]).unwrap();
        assert!(c.closed_under_roots && !c.nonempty && !c.pass);
        assert!(cycle_check(0, &[]).is_err());
    }
}
