//! Tensor products of Weil algebras.

use std::sync::Arc;

use super::algebra::{WeilAlgebra, DEFAULT_DEGREE_CAP};
use super::poly::{Monomial, Polynomial};
use super::presentation::AugPresentation;
use crate::error::Result;

/// `w1 ⊗ w2`. Generators are renamed `g_1` and `g_2` by source position.
pub fn tensor(w1: &WeilAlgebra, w2: &WeilAlgebra) -> Result<Arc<WeilAlgebra>> {
    tensor_many(&[w1, w2], DEFAULT_DEGREE_CAP)
}

/// Tensor product of several algebras. The presentation concatenates the
/// generators (generator `g` of factor `i` becomes `g_i`, 1-based) and the
/// relations of each factor.
pub fn tensor_many(factors: &[&WeilAlgebra], cap: u32) -> Result<Arc<WeilAlgebra>> {
    let total: usize = factors.iter().map(|w| w.generator_count()).sum();
    let mut names = Vec::with_capacity(total);
    let mut relations = Vec::new();
    let mut offset = 0;
    for (i, w) in factors.iter().enumerate() {
        let n = w.generator_count();
        names.extend(w.generators().iter().map(|g| format!("{g}_{}", i + 1)));
        for rel in w.presentation().relations() {
            relations.push(embed(rel, offset, total));
        }
        offset += n;
    }
    let p = AugPresentation::standard(names, relations)?;
    WeilAlgebra::normalize_with_cap(&p, cap)
}

fn embed(p: &Polynomial, offset: usize, total: usize) -> Polynomial {
    Polynomial::from_terms(
        total,
        p.terms().map(|(m, c)| {
            let mut e = vec![0; total];
            e[offset..offset + m.nvars()].copy_from_slice(&m.0);
            (Monomial(e), c.clone())
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_numbers_squared() {
        let d = WeilAlgebra::dual_numbers();
        let t = tensor(&d, &d).unwrap();
        assert_eq!(t.dimension(), 4);
        assert_eq!(t.basis_labels(), ["1", "ε_1", "ε_2", "ε_1*ε_2"]);
        // contrast with D(2), which kills the cross term
        assert_eq!(WeilAlgebra::first_order_patch(2).dimension(), 3);
    }

    #[test]
    fn scalar_is_a_unit() {
        let w = WeilAlgebra::truncated_line("x", 3);
        let t = tensor(&w, &WeilAlgebra::scalar()).unwrap();
        assert_eq!(t.dimension(), w.dimension());
        assert!(t.same_canonical_form(&w));
    }

    #[test]
    fn dimensions_multiply() {
        let a = WeilAlgebra::truncated_line("x", 2);
        let b = WeilAlgebra::first_order_patch(2);
        let t = tensor(&a, &b).unwrap();
        assert_eq!(t.dimension(), 9);
        assert!(t.check_structure());
    }
}
