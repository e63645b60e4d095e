//! Normalized Weil algebras: standard-monomial basis, structure constants
//! and the filtration by powers of the augmentation ideal.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::groebner::GroebnerBasis;
use super::poly::{Monomial, Polynomial};
use super::presentation::AugPresentation;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::rational::Rational;

/// Default total-degree cap for normal-form computations.
pub const DEFAULT_DEGREE_CAP: u32 = 16;

/// A finite-dimensional augmented algebra whose augmentation ideal `m` is
/// nilpotent, held in canonical form.
///
/// The basis consists of the standard monomials of the relation ideal,
/// ordered by total degree and then, within a degree, with earlier
/// generators first (`1, x, y, x^2, x*y, y^2, ...`). The unit monomial is
/// always basis element 0, and since presentations are kept in standard form
/// the augmentation of an element is its coefficient on that element.
#[derive(Debug, Clone)]
pub struct WeilAlgebra {
    presentation: AugPresentation,
    groebner: GroebnerBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `table[i][j]` is the product of basis elements `i` and `j`, sparse.
    table: Vec<Vec<Vec<(usize, Rational)>>>,
    nilpotency_degree: usize,
    /// Smallest `k` with `x_i^k = 0`, per generator.
    generator_orders: Vec<u32>,
    filtration: Filtration,
}

impl PartialEq for WeilAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.presentation.generators() == other.presentation.generators()
            && self.basis == other.basis
            && self.table == other.table
    }
}

impl WeilAlgebra {
    pub fn normalize(p: &AugPresentation) -> Result<Arc<Self>> {
        Self::normalize_with_cap(p, DEFAULT_DEGREE_CAP)
    }

    /// Standardize `p`, complete its ideal, certify every generator
    /// nilpotent and build the structure constants.
    pub fn normalize_with_cap(p: &AugPresentation, cap: u32) -> Result<Arc<Self>> {
        let presentation = p.standardize();
        let n = presentation.generators().len();
        let groebner = GroebnerBasis::compute(n, presentation.relations(), cap)?;

        let mut generator_orders = Vec::with_capacity(n);
        for i in 0..n {
            let x = Polynomial::var(n, i);
            let mut power = x.clone();
            let mut found = None;
            for k in 1..=cap {
                if groebner.reduce(&power).is_zero() {
                    found = Some(k);
                    break;
                }
                power = power.mul(&x);
            }
            match found {
                Some(k) => generator_orders.push(k),
                None => {
                    return Err(Error::NotWeil {
                        generator: presentation.generators()[i].clone(),
                        cap,
                    })
                }
            }
        }

        let mut basis: Vec<Monomial> = Vec::new();
        let mut exps = vec![0u32; n];
        loop {
            let m = Monomial(exps.clone());
            if groebner.is_standard(&m) {
                basis.push(m);
            }
            // odometer over the box e_i < order_i
            let mut i = 0;
            while i < n {
                exps[i] += 1;
                if exps[i] < generator_orders[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        basis.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.0.cmp(&a.0)));
        let index: HashMap<Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();

        let coords = |p: &Polynomial| -> Vec<(usize, Rational)> {
            let mut v: Vec<(usize, Rational)> = groebner
                .reduce(p)
                .terms()
                .map(|(m, c)| (index[m], c.clone()))
                .collect();
            v.sort_by_key(|(i, _)| *i);
            v
        };
        let table: Vec<Vec<Vec<(usize, Rational)>>> = basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| coords(&Polynomial::term(a.mul(b), Rational::one())))
                    .collect()
            })
            .collect();

        let mut alg = WeilAlgebra {
            presentation,
            groebner,
            basis,
            index,
            table,
            nilpotency_degree: 0,
            generator_orders,
            filtration: Filtration::default(),
        };
        alg.filtration = Filtration::build(&alg);
        alg.nilpotency_degree = alg.filtration.depth + 1;
        Ok(Arc::new(alg))
    }

    /// `Q[]/()`.
    pub fn scalar() -> Arc<Self> {
        Self::normalize(&AugPresentation::scalar()).expect("scalar algebra")
    }

    /// `Q[name]/(name^(order+1))`: jets of the given order on the line.
    pub fn truncated_line(name: &str, order: u32) -> Arc<Self> {
        let p = AugPresentation::standard(
            vec![name.to_string()],
            vec![Polynomial::var(1, 0).pow(order + 1)],
        )
        .expect("standard presentation");
        Self::normalize_with_cap(&p, DEFAULT_DEGREE_CAP.max(order + 1)).expect("truncated line")
    }

    /// Dual numbers `Q[ε]/(ε^2)`.
    pub fn dual_numbers() -> Arc<Self> {
        Self::truncated_line("ε", 1)
    }

    /// The first-order patch `D(n) = Q[x1..xn]/(xi*xj)`.
    pub fn first_order_patch(n: usize) -> Arc<Self> {
        Self::first_order_patch_named(&(1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>())
    }

    pub fn first_order_patch_named(names: &[String]) -> Arc<Self> {
        let n = names.len();
        let mut rels = Vec::new();
        for i in 0..n {
            for j in i..n {
                rels.push(Polynomial::var(n, i).mul(&Polynomial::var(n, j)));
            }
        }
        let p = AugPresentation::standard(names.to_vec(), rels).expect("standard presentation");
        Self::normalize(&p).expect("first-order patch")
    }

    pub fn presentation(&self) -> &AugPresentation {
        &self.presentation
    }

    pub fn generators(&self) -> &[String] {
        self.presentation.generators()
    }

    pub fn generator_count(&self) -> usize {
        self.presentation.generators().len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators().iter().position(|g| g == name)
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_labels(&self) -> Vec<String> {
        self.basis.iter().map(|m| m.render(self.generators())).collect()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn nilpotency_degree(&self) -> usize {
        self.nilpotency_degree
    }

    /// Smallest `k` with `x_i^k = 0`.
    pub fn generator_order(&self, i: usize) -> u32 {
        self.generator_orders[i]
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.groebner
    }

    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Structure constants for `basis[i] * basis[j]`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i][j]
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    /// Coordinates of the normal form of `p` on the basis.
    pub fn reduce(&self, p: &Polynomial) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dimension()];
        for (m, c) in self.groebner.reduce(p).terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    /// Canonical equality: same basis monomials and structure constants,
    /// ignoring generator names.
    pub fn same_canonical_form(&self, other: &WeilAlgebra) -> bool {
        self.basis == other.basis && self.table == other.table
    }

    /// Exhaustive associativity and commutativity check on basis elements.
    pub fn check_structure(&self) -> bool {
        let d = self.dimension();
        let mul = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
            let mut out = vec![Rational::zero(); d];
            for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    for (k, c) in &self.table[i][j] {
                        out[*k] += x * y * c;
                    }
                }
            }
            out
        };
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); d];
            v[i] = Rational::one();
            v
        };
        for i in 0..d {
            for j in 0..d {
                if self.table[i][j] != self.table[j][i] {
                    return false;
                }
                let ij = mul(&unit(i), &unit(j));
                for k in 0..d {
                    let jk = mul(&unit(j), &unit(k));
                    if mul(&ij, &unit(k)) != mul(&unit(i), &jk) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for WeilAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.presentation)
    }
}

/// The chain `W ⊃ m ⊃ m^2 ⊃ ... ⊃ m^depth ⊃ 0` with a basis adapted to it.
///
/// Adapted basis vectors of level `k` lie in `m^k` and, together with all
/// vectors of higher level, span `m^k`. So for an element of `m^k`, its
/// level-`k` adapted coordinates are its class in `m^k / m^(k+1)`.
#[derive(Debug, Clone, Default)]
pub struct Filtration {
    /// Adapted basis vectors, in standard coordinates.
    vectors: Vec<Vec<Rational>>,
    levels: Vec<usize>,
    /// Inverse change of basis: standard coordinates to adapted ones.
    inverse: Matrix,
    depth: usize,
}

impl Filtration {
    fn build(alg: &WeilAlgebra) -> Self {
        let d = alg.dimension();
        let n = alg.generator_count();
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); d];
            v[i] = Rational::one();
            v
        };
        let gen_vectors: Vec<Vec<Rational>> = (0..n)
            .map(|i| alg.reduce(&Polynomial::var(n, i)))
            .collect();
        let times = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
            let mut out = vec![Rational::zero(); d];
            for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    for (k, c) in alg.product(i, j) {
                        out[*k] += x * y * c;
                    }
                }
            }
            out
        };
        // powers[k] spans m^(k+1)
        let mut powers: Vec<Vec<Vec<Rational>>> = Vec::new();
        let mut current: Vec<Vec<Rational>> = (1..d).map(unit).collect();
        while !current.is_empty() {
            powers.push(current.clone());
            let products: Vec<Vec<Rational>> = current
                .iter()
                .flat_map(|a| gen_vectors.iter().map(|g| times(a, g)))
                .collect();
            current = linalg::extend_basis(&[], &products);
        }
        let depth = powers.len();
        let mut vectors: Vec<Vec<Rational>> = Vec::new();
        let mut levels = Vec::new();
        for k in (0..depth).rev() {
            for v in linalg::extend_basis(&vectors, &powers[k]) {
                vectors.push(v);
                levels.push(k + 1);
            }
        }
        vectors.push(unit(0));
        levels.push(0);
        vectors.reverse();
        levels.reverse();
        // inverse of the matrix whose columns are the adapted vectors
        let mut aug: Matrix = (0..d)
            .map(|r| {
                let mut row: Vec<Rational> = vectors.iter().map(|v| v[r].clone()).collect();
                row.extend(unit(r));
                row
            })
            .collect();
        linalg::rref(&mut aug);
        let inverse: Matrix = aug.into_iter().map(|row| row[d..].to_vec()).collect();
        Filtration {
            vectors,
            levels,
            inverse,
            depth,
        }
    }

    /// Largest `k` with `m^k != 0`.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn vector(&self, i: usize) -> &[Rational] {
        &self.vectors[i]
    }

    /// Indices of adapted basis vectors of exactly level `k`.
    pub fn at_level(&self, k: usize) -> Vec<usize> {
        (0..self.levels.len()).filter(|&i| self.levels[i] == k).collect()
    }

    pub fn to_adapted(&self, coeffs: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.inverse, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(text: &str) -> Arc<WeilAlgebra> {
        WeilAlgebra::normalize(&AugPresentation::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn dual_numbers_normalize() {
        let w = alg("Q[x]/(x^2); aug x->0");
        assert_eq!(w.dimension(), 2);
        assert_eq!(w.basis_labels(), ["1", "x"]);
        assert_eq!(w.nilpotency_degree(), 2);
    }

    #[test]
    fn scalar_algebra() {
        let w = alg("Q[]/()");
        assert_eq!(w.dimension(), 1);
        assert_eq!(w.basis_labels(), ["1"]);
        assert_eq!(w.nilpotency_degree(), 1);
    }

    #[test]
    fn mixed_ideal_basis() {
        let w = alg("Q[x, y]/(x^2, x*y, y^3)");
        assert_eq!(w.basis_labels(), ["1", "x", "y", "y^2"]);
        assert_eq!(w.nilpotency_degree(), 3);
        assert!(w.check_structure());
    }

    #[test]
    fn rejects_idempotent_generator() {
        let err = WeilAlgebra::normalize(&AugPresentation::parse("Q[x]/(x^2 - x)").unwrap())
            .unwrap_err();
        assert_eq!(err, Error::NotWeil { generator: "x".into(), cap: 16 });
    }

    #[test]
    fn rejects_non_zero_dimensional() {
        let err = WeilAlgebra::normalize(&AugPresentation::parse("Q[x, y]/(x*y)").unwrap())
            .unwrap_err();
        assert!(matches!(err, Error::NotWeil { .. }));
    }

    #[test]
    fn degree_cap_reported() {
        let p = AugPresentation::parse("Q[x]/(x^20)").unwrap();
        assert_eq!(
            WeilAlgebra::normalize(&p).unwrap_err(),
            Error::NormalFormDivergence { cap: 16 }
        );
        assert_eq!(WeilAlgebra::normalize_with_cap(&p, 20).unwrap().dimension(), 20);
    }

    #[test]
    fn nonstandard_input_is_standardized() {
        let a = alg("Q[y]/((y-1)^2); aug y->1");
        let b = alg("Q[y]/(y^2)");
        assert_eq!(*a, *b);
    }

    #[test]
    fn hidden_relation_lowers_degree() {
        // x^2 = y, x*y = 0: basis 1, x, y with x^2 reducing to y.
        let w = alg("Q[x, y]/(x^2 - y, x*y)");
        assert_eq!(w.basis_labels(), ["1", "x", "y"]);
        assert_eq!(w.nilpotency_degree(), 3);
        let f = w.filtration();
        assert_eq!(f.levels(), [0, 1, 2]);
    }

    #[test]
    fn first_order_patch_dimensions() {
        for n in 0..4 {
            let d = WeilAlgebra::first_order_patch(n);
            assert_eq!(d.dimension(), n + 1);
        }
    }
}
