use std::collections::BTreeSet;
use std::sync::OnceLock;

use nilpotent::orbifold::assoc::index_labels;
use nilpotent::orbifold::{
    apply_basis_change, basis_change, compose, cycle_check, fiber_action, lattice_identity_holds, mobius, product,
    Association, FiniteActionScene, GaussianRational, IntMatrix2, LatticeBasis, ScenePoint,
};
use nilpotent::rational::{int, ratio, Rational};
use proptest::prelude::*;

/// Every matrix of `SL2(Z)` with entries in `[-10, 10]`.
fn sl2_box() -> &'static Vec<IntMatrix2> {
    static BOX: OnceLock<Vec<IntMatrix2>> = OnceLock::new();
    BOX.get_or_init(|| {
        let mut out = Vec::new();
        for a in -10..=10i64 {
            for b in -10..=10i64 {
                for c in -10..=10i64 {
                    for d in -10..=10i64 {
                        if a * d - b * c == 1 {
                            out.push(IntMatrix2::new(a, b, c, d));
                        }
                    }
                }
            }
        }
        out
    })
}

fn sl2() -> impl Strategy<Value = IntMatrix2> {
    (0..sl2_box().len()).prop_map(|i| sl2_box()[i].clone())
}

fn q() -> impl Strategy<Value = Rational> {
    (-8i64..=8, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
}

fn upper() -> impl Strategy<Value = GaussianRational> {
    (q(), 1i64..=8, 1i64..=5).prop_map(|(re, n, d)| GaussianRational::new(re, ratio(n, d)))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (q(), q()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn basis() -> impl Strategy<Value = LatticeBasis> {
    (gaussian(), gaussian()).prop_filter_map("degenerate", |(a, b)| LatticeBasis::new(a, b).ok())
}

fn association(max_left: usize) -> impl Strategy<Value = Association> {
    (0..=max_left, 1usize..=4).prop_flat_map(|(n, right)| {
        prop::collection::vec(0..right, n).prop_map(move |f| {
            let labels: Vec<String> = (0..f.len()).map(|i| format!("p{i}")).collect();
            Association::from_function(labels, right, &f).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn mobius_is_an_action(m in sl2(), n in sl2(), tau in upper()) {
        let lhs = mobius(&m.mul(&n), &tau).unwrap();
        let rhs = mobius(&m, &mobius(&n, &tau).unwrap()).unwrap();
        prop_assert!(lhs.in_upper_half_plane());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(mobius(&IntMatrix2::IDENTITY, &tau).unwrap(), tau);
    }

    #[test]
    fn fiber_action_is_an_action(m in sl2(), n in sl2(), tau in upper(), p in gaussian()) {
        prop_assume!(!p.is_zero());
        let (t1, p1) = fiber_action(&n, &tau, &p).unwrap();
        prop_assert_eq!(fiber_action(&m, &t1, &p1).unwrap(), fiber_action(&m.mul(&n), &tau, &p).unwrap());
    }

    #[test]
    fn lattice_identity(m in sl2(), tau in upper()) {
        prop_assert!(lattice_identity_holds(&m, &tau).unwrap());
    }

    #[test]
    fn basis_change_torsor(b1 in basis(), a in sl2(), b in sl2()) {
        let b2 = apply_basis_change(&a, &b1).unwrap();
        let b3 = apply_basis_change(&b, &b2).unwrap();
        let m12 = basis_change(&b1, &b2).unwrap();
        let m23 = basis_change(&b2, &b3).unwrap();
        let m13 = basis_change(&b1, &b3).unwrap();
        prop_assert_eq!(m12.det(), 1);
        prop_assert_eq!(m13, m23.mul(&m12));
        prop_assert_eq!(basis_change(&b1, &b1).unwrap(), IntMatrix2::IDENTITY);
        prop_assert_eq!(m12, a);
    }

    #[test]
    fn c4_stabilizers_and_transporters(x in prop::collection::vec(-3i64..=3, 2), y in prop::collection::vec(-3i64..=3, 2)) {
        let scene = FiniteActionScene::c4_rotation();
        let pt = |v: &[i64]| ScenePoint::Coords(v.iter().map(|&k| int(k)).collect());
        let r = scene.stabilizer_and_transporter(&pt(&x), &pt(&y)).unwrap();
        prop_assert!(r.stabilizer_is_subgroup);
        prop_assert!(scene.group().is_subgroup(&r.stabilizer_indices));
        prop_assert!(r.transporter_is_coset);
        prop_assert!(r.transporter_order == 0 || r.transporter_order == r.stabilizer_order);
        // orbit-stabilizer
        prop_assert_eq!(scene.orbit(&pt(&x)).unwrap().len() * r.stabilizer_order, 4);
        let expected = if x == vec![0, 0] { 4 } else { 1 };
        prop_assert_eq!(r.stabilizer_order, expected);
    }

    #[test]
    fn configuration_transporters_are_cosets(
        x in prop::collection::vec(0usize..3, 3),
        perm in Just(vec![0usize, 1, 2]).prop_shuffle(),
    ) {
        let labels = ["a", "b", "c"];
        let scene = FiniteActionScene::configurations(&labels, 3);
        let tuple: Vec<String> = x.iter().map(|&i| labels[i].to_string()).collect();
        let shuffled: Vec<String> = perm.iter().map(|&i| tuple[i].clone()).collect();
        let (a, b) = (ScenePoint::Tuple(tuple.clone()), ScenePoint::Tuple(shuffled));
        let r = scene.stabilizer_and_transporter(&a, &b).unwrap();
        prop_assert!(r.stabilizer_is_subgroup && r.transporter_is_coset);
        prop_assert_eq!(r.transporter_order, r.stabilizer_order);
        // |stab| = product of factorials of label multiplicities
        let mut counts = [0usize; 3];
        for &i in &x {
            counts[i] += 1;
        }
        let fact = |k: usize| (1..=k).product::<usize>();
        prop_assert_eq!(r.stabilizer_order, counts.iter().map(|&c| fact(c)).product::<usize>());
    }

    #[test]
    fn compose_is_associative(r in association(4), f in prop::collection::vec(0usize..3, 4), g in prop::collection::vec(0usize..2, 3)) {
        let s = Association::from_function(index_labels(r.right()), 3, &f[..r.right()]).unwrap();
        let t = Association::from_function(index_labels(3), 2, &g).unwrap();
        let left = compose(&compose(&r, &s).unwrap(), &t).unwrap();
        let right = compose(&r, &compose(&s, &t).unwrap()).unwrap();
        prop_assert_eq!(left.pairs(), right.pairs());
        let unit = compose(&r, &Association::identity(r.right())).unwrap();
        prop_assert_eq!(unit.pairs(), r.pairs());
    }

    #[test]
    fn product_dimensions_multiply(r in association(4), s in association(4)) {
        let p = product(&r, &s).unwrap();
        prop_assert!(p.verify().is_ok());
        prop_assert_eq!(p.left().len(), r.left().len() * s.left().len());
        prop_assert_eq!(p.right(), r.right() * s.right());
        prop_assert_eq!(p.pairs().len(), r.pairs().len() * s.pairs().len());
    }

    #[test]
    fn cycles_are_exactly_the_full_residue_sets(n in 1u64..9, set in prop::collection::btree_set(-12i64..12, 0..10)) {
        let c: Vec<i64> = set.into_iter().collect();
        let cert = cycle_check(n, &c).unwrap();
        let residues: BTreeSet<u64> = c.iter().map(|&k| k.rem_euclid(n as i64) as u64).collect();
        prop_assert!(cert.inner_product_condition);
        prop_assert_eq!(cert.pass, residues.len() as u64 == n);
    }
}

#[test]
fn modular_examples() {
    let s = IntMatrix2::new(0, -1, 1, 0);
    let i = GaussianRational::i();
    assert_eq!(mobius(&s, &i).unwrap(), i);
    assert_eq!(mobius(&IntMatrix2::new(2, 1, 1, 1), &i).unwrap().to_string(), "3/2+1/2i");
    assert_eq!(mobius(&IntMatrix2::new(2, 1, 1, 2), &i).unwrap_err().name(), "DeterminantNotOne");
    assert_eq!(mobius(&s, &GaussianRational::new(int(1), int(-1))).unwrap_err().name(), "NotInUpperHalfPlane");
    let one = GaussianRational::one();
    let b1 = LatticeBasis::new(one.clone(), i.clone()).unwrap();
    let b2 = LatticeBasis::new(one.clone(), one.add(&i)).unwrap();
    assert_eq!(basis_change(&b1, &b2).unwrap(), IntMatrix2::new(1, 0, 1, 1));
    let half = LatticeBasis::new(one.clone(), GaussianRational::new(int(0), ratio(1, 2))).unwrap();
    assert_eq!(basis_change(&b1, &half).unwrap_err().name(), "NotSameLattice");
    let flipped = LatticeBasis::new(i.clone(), one).unwrap();
    assert_eq!(basis_change(&b1, &flipped).unwrap_err().name(), "OrientationMismatch");
}
