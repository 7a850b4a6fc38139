use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use symlag_core::interp::{act_on_function, solve_constraints, BasisFunction, Monomial};
use symlag_core::linalg::{bareiss_determinant, rational_determinant};
use symlag_core::{
    apply_to_point, classify_point, compare_types, enumerate_types, equivalent, expand_orbit, orbit_vector,
    subgroup_orbit_count, v_matrix, validate_symmetric, EnumLimit, NodeSet, Permutation, Point, TypeTable,
};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).unwrap())
}

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn point(n: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec((-3i64..=3, 1i64..=3), n)
        .prop_map(|cs| Point::new(cs.into_iter().map(|(a, b)| q(a, b)).collect()))
}

fn function(n: usize) -> impl Strategy<Value = BasisFunction> {
    prop::collection::vec((prop::collection::vec(0u32..=3, n), -4i64..=4), 1..5).prop_map(move |terms| {
        BasisFunction::new(n, terms.into_iter().map(|(e, c)| (Monomial::new(e), q(c, 1)))).unwrap()
    })
}

/// Union of the orbits of a few small integer points.
fn node_set(n: usize) -> impl Strategy<Value = NodeSet> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), 1..4).prop_map(move |seeds| {
        let all: BTreeSet<Point> = seeds
            .into_iter()
            .flat_map(|s| expand_orbit(&Point::from_integers(s)))
            .collect();
        validate_symmetric(n, all.into_iter().collect()).unwrap()
    })
}

fn dim_and<T: std::fmt::Debug, S: Strategy<Value = T>>(
    f: impl Fn(usize) -> S + Clone + 'static,
) -> impl Strategy<Value = (usize, T)> {
    (1usize..=5).prop_flat_map(move |n| (Just(n), f(n)))
}

fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn point_action_is_a_left_action(
        (s, t, x) in (1usize..=6).prop_flat_map(|n| (permutation(n), permutation(n), point(n)))
    ) {
        let st = &s * &t;
        prop_assert_eq!(apply_to_point(&st, &x).unwrap(), apply_to_point(&s, &apply_to_point(&t, &x).unwrap()).unwrap());
        prop_assert_eq!(apply_to_point(&Permutation::identity(x.n()), &x).unwrap(), x.clone());
        let back = apply_to_point(&s.inverse(), &apply_to_point(&s, &x).unwrap()).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn function_action_is_a_left_action(
        (s, t, f) in (1usize..=5).prop_flat_map(|n| (permutation(n), permutation(n), function(n)))
    ) {
        let st = &s * &t;
        let lhs = act_on_function(&st, &f).unwrap();
        let rhs = act_on_function(&s, &act_on_function(&t, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(act_on_function(&Permutation::identity(f.n()), &f).unwrap(), f);
    }

    #[test]
    fn acting_on_both_preserves_values(
        (s, f, x) in (1usize..=5).prop_flat_map(|n| (permutation(n), function(n), point(n)))
    ) {
        let sf = act_on_function(&s, &f).unwrap();
        let sx = apply_to_point(&s, &x).unwrap();
        prop_assert_eq!(sf.eval(&sx).unwrap(), f.eval(&x).unwrap());
    }

    #[test]
    fn type_is_an_orbit_invariant((s, x) in (1usize..=6).prop_flat_map(|n| (permutation(n), point(n)))) {
        let sx = apply_to_point(&s, &x).unwrap();
        prop_assert_eq!(classify_point(&sx).unwrap(), classify_point(&x).unwrap());
        prop_assert_eq!(sx.canonical_arrangement(), x.canonical_arrangement());
    }

    #[test]
    fn orbit_stabilizer((_n, x) in dim_and(point)) {
        let ty = classify_point(&x).unwrap();
        let orbit = expand_orbit(&x);
        prop_assert_eq!(BigUint::from(orbit.len()) * ty.stabilizer_order(), factorial(x.n()));
        prop_assert_eq!(BigUint::from(orbit.len()), ty.orbit_size());
        prop_assert!(orbit.contains(&x));
        prop_assert!(orbit.iter().all(|y| classify_point(y).unwrap() == ty));
    }

    #[test]
    fn equivalence_is_reflexive_and_symmetric((a, b) in (1usize..=4).prop_flat_map(|n| (node_set(n), node_set(n)))) {
        prop_assert!(equivalent(&a, &a).unwrap().equivalent);
        let ab = equivalent(&a, &b).unwrap();
        let ba = equivalent(&b, &a).unwrap();
        prop_assert_eq!(ab.equivalent, ba.equivalent);
        prop_assert_eq!(ab.equivalent, orbit_vector(&a).unwrap() == orbit_vector(&b).unwrap());
    }

    #[test]
    fn witness_is_an_equivariant_bijection(
        (a, s) in (1usize..=4).prop_flat_map(|n| (node_set(n), permutation(n))),
        shift in 3i64..9,
    ) {
        // A translated copy always has the same orbit vector.
        let n = a.n();
        let shifted: Vec<Point> = a
            .points()
            .iter()
            .map(|p| Point::new(p.coords().iter().map(|c| c + q(shift, 1)).collect()))
            .collect();
        let b = validate_symmetric(n, shifted).unwrap();
        let eq = equivalent(&a, &b).unwrap();
        prop_assert!(eq.equivalent);
        let w = eq.witness.unwrap();
        let images: BTreeSet<&Point> = w.pairs.iter().map(|(_, y)| y).collect();
        prop_assert_eq!(images.len(), b.len());
        prop_assert!(images.iter().all(|y| b.points().binary_search(y).is_ok()));
        for x in a.points() {
            let sx = apply_to_point(&s, x).unwrap();
            let lhs = w.image(&sx).unwrap();
            let rhs = apply_to_point(&s, w.image(x).unwrap()).unwrap();
            prop_assert_eq!(lhs, &rhs);
        }
    }

    #[test]
    fn missing_point_breaks_symmetry(a in (2usize..=4).prop_flat_map(node_set), k in any::<prop::sample::Index>()) {
        let mut pts = a.points().to_vec();
        let removed = pts.remove(k.index(pts.len()));
        if expand_orbit(&removed).len() > 1 {
            prop_assert!(validate_symmetric(a.n(), pts).is_err());
        }
    }

    #[test]
    fn subgroup_orbit_counts_are_v_times_the_orbit_vector(a in (1usize..=5).prop_flat_map(node_set)) {
        let n = a.n();
        let v = v_matrix(n).unwrap();
        let x: Vec<BigInt> = orbit_vector(&a).unwrap().counts.into_iter().map(BigInt::from).collect();
        let vx = v.apply(&x);
        let table = TypeTable::new(n).unwrap();
        for (i, t) in table.types().iter().enumerate() {
            let count = subgroup_orbit_count(&a, t, EnumLimit::default()).unwrap();
            prop_assert_eq!(BigInt::from(count), vx[i].clone());
        }
    }

    #[test]
    fn solve_round_trip((n, x) in (1usize..=6).prop_flat_map(|n| {
        let c = enumerate_types(n).unwrap().len();
        (Just(n), prop::collection::vec(0u32..5, c))
    })) {
        let v = v_matrix(n).unwrap();
        let x: Vec<BigInt> = x.into_iter().map(BigInt::from).collect();
        let sys = solve_constraints(&v, &v.apply(&x)).unwrap();
        prop_assert_eq!(sys.orbit_vector().unwrap(), x.as_slice());
    }

    #[test]
    fn determinant_sign_under_row_swap(
        m in (1usize..=5).prop_flat_map(|k| prop::collection::vec(prop::collection::vec(-5i64..=5, k), k)),
        i in any::<prop::sample::Index>(),
        j in any::<prop::sample::Index>(),
    ) {
        let k = m.len();
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let det = bareiss_determinant(big.clone());
        let (i, j) = (i.index(k), j.index(k));
        let mut swapped = big.clone();
        swapped.swap(i, j);
        let expected = if i == j { det.clone() } else { -det.clone() };
        prop_assert_eq!(bareiss_determinant(swapped), expected);
        let rat: Vec<Vec<BigRational>> = big.iter().map(|r| r.iter().cloned().map(BigRational::from_integer).collect()).collect();
        prop_assert_eq!(rational_determinant(&rat), BigRational::from_integer(det.clone()));
        prop_assert_eq!(det, leibniz(&big));
    }

    #[test]
    fn scaled_rows_scale_the_rational_determinant(
        m in (1usize..=4).prop_flat_map(|k| prop::collection::vec(prop::collection::vec((-5i64..=5, 1i64..=4), k), k)),
        scale in 1i64..=6,
    ) {
        let rat: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&(a, b)| q(a, b)).collect()).collect();
        let det = rational_determinant(&rat);
        let mut scaled = rat.clone();
        for x in &mut scaled[0] {
            *x = &*x * q(scale, 1);
        }
        prop_assert_eq!(rational_determinant(&scaled), det * q(scale, 1));
    }
}

/// Determinant by the permutation expansion.
fn leibniz(m: &[Vec<BigInt>]) -> BigInt {
    let k = m.len();
    let mut total = BigInt::zero();
    for p in Permutation::all(k) {
        let sign = if p.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0 {
            1
        } else {
            -1
        };
        let prod: BigInt = (0..k).map(|i| m[i][p.image(i + 1) - 1].clone()).product();
        total += prod * sign;
    }
    total
}

#[test]
fn type_order_is_total_and_strictly_descending() {
    for n in 1..=8 {
        let types = enumerate_types(n).unwrap();
        for (a, b) in types.iter().zip(types.iter().skip(1)) {
            assert_eq!(compare_types(a, b).unwrap(), Ordering::Greater);
        }
        for a in &types {
            for b in &types {
                let ab = compare_types(a, b).unwrap();
                assert_eq!(ab, compare_types(b, a).unwrap().reverse());
                assert_eq!(ab == Ordering::Equal, a == b);
                for c in &types {
                    if ab == Ordering::Greater && compare_types(b, c).unwrap() == Ordering::Greater {
                        assert_eq!(compare_types(a, c).unwrap(), Ordering::Greater);
                    }
                }
            }
        }
    }
}

#[test]
fn v_is_unimodular() {
    for n in 1..=8 {
        let v = v_matrix(n).unwrap();
        assert_eq!(v.determinant(), BigInt::from(1));
        assert!(v.leading_minors().iter().all(|m| m.is_positive()));
    }
}
