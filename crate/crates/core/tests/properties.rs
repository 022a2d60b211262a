//! Randomized invariants of the algebra, Hopf and linear-algebra layers.

use proptest::prelude::*;
use proptest::sample::subsequence;

use qcoinv_core::hopf::*;
use qcoinv_core::linalg::{kernel_of, rank, Row, Subspace};
use qcoinv_core::localization::loc_multiply;
use qcoinv_core::qalgebra::*;
use qcoinv_core::scalar::RatFunc;

fn coeff() -> impl Strategy<Value = RatFunc> {
    (-3i64..=3, -2i32..=2).prop_map(|(c, k)| &RatFunc::from_int(c) * &RatFunc::q_pow(k))
}

/// A sum of up to `terms` words of length at most `len`, in arbitrary order.
fn element(shape: Shape, len: usize, terms: usize) -> impl Strategy<Value = Element> {
    let gens = shape.num_gens() as u8;
    prop::collection::vec((prop::collection::vec(0..gens, 0..=len), coeff()), 1..=terms)
        .prop_map(move |words| Element::from_words(shape, words))
}

fn gl(t: u8, num_len: usize, max_s: u32) -> impl Strategy<Value = GLElement> {
    (element(gl_shape(t), num_len, 3), 0..=max_s).prop_map(move |(x, s)| gl_element(t, &x, s))
}

fn x_shape(m: u8, n: u8) -> Shape {
    Shape::new(Family::X, m, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn straightening_is_associative(
        (a, b, c) in (element(x_shape(2, 3), 2, 3), element(x_shape(2, 3), 2, 3), element(x_shape(2, 3), 2, 3))
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn determinant_is_central(t in 2u8..=3, seed in any::<u64>()) {
        let s = x_shape(t, t);
        let d = quantum_minor(s, &MinorIndex::solid(1..=t, 1..=t)).unwrap();
        let g = (seed % s.num_gens() as u64) as u8;
        let (i, j) = s.pos(g);
        let x = Element::generator(s, i, j).unwrap();
        prop_assert_eq!(&d * &x, &x * &d);
    }

    #[test]
    fn permutation_sum_matches_laplace(
        l in 1usize..=3,
        rows in subsequence(vec![1u8, 2, 3], 0..=3),
        cols in subsequence(vec![1u8, 2, 3], 0..=3),
    ) {
        prop_assume!(rows.len() >= l && cols.len() >= l);
        let idx = MinorIndex::new(rows[..l].to_vec(), cols[..l].to_vec());
        let s = x_shape(3, 3);
        prop_assert_eq!(quantum_minor(s, &idx).unwrap(), laplace_minor(s, &idx).unwrap());
    }

    #[test]
    fn multidegree_is_additive(a in prop::collection::vec(0u8..6, 0..4), b in prop::collection::vec(0u8..6, 0..4)) {
        let s = x_shape(2, 3);
        let ea = Element::from_words(s, [(a.clone(), RatFunc::one())]);
        let eb = Element::from_words(s, [(b.clone(), RatFunc::one())]);
        let want = multidegree(&s, &merge_monomials(&a, &b));
        for (m, _) in (&ea * &eb).terms() {
            prop_assert_eq!(&multidegree(&s, m), &want);
        }
        prop_assert_eq!(want, multidegree(&s, &a).add(&multidegree(&s, &b)));
    }

    #[test]
    fn retraction_is_multiplicative(
        (a, b) in (element(x_shape(3, 3), 2, 3), element(x_shape(3, 3), 2, 3)),
        rows in 1u8..=3,
        cols in 1u8..=3,
    ) {
        let lhs = retract(&(&a * &b), rows, cols).unwrap();
        let rhs = &retract(&a, rows, cols).unwrap() * &retract(&b, rows, cols).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ore_product_is_associative((u, v, w) in (gl(2, 2, 1), gl(2, 2, 1), gl(2, 2, 1))) {
        let left = loc_multiply(&loc_multiply(&u, &v).unwrap(), &w).unwrap();
        let right = loc_multiply(&u, &loc_multiply(&v, &w).unwrap()).unwrap();
        prop_assert!(left.equals(&right), "{} vs {}", left, right);
    }

    #[test]
    fn antipode_inverts_and_reverses((x, y) in (gl(2, 2, 1), gl(2, 2, 1))) {
        prop_assert!(antipode(&antipode_inverse(&x)).equals(&x));
        prop_assert!(antipode_inverse(&antipode(&x)).equals(&x));
        prop_assert_eq!(gl_counit(&antipode(&x)), gl_counit(&x));
        let lhs = antipode(&loc_multiply(&x, &y).unwrap());
        let rhs = loc_multiply(&antipode(&y), &antipode(&x)).unwrap();
        prop_assert!(lhs.equals(&rhs), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn antipode_convolution_is_counit(x in gl(2, 2, 1)) {
        let eps = gl_one(2).scale(&gl_counit(&x));
        let delta = gl_comultiply(&x);
        for k in [0usize, 1] {
            let conv = delta.apply_factor_map(k, &antipode_map(2)).multiply_factors(0, 1).unwrap();
            prop_assert!(conv.equals(&eps), "factor {}: {}", k, conv);
        }
    }

    #[test]
    fn comultiplication_is_multiplicative((x, y) in (gl(2, 1, 1), gl(2, 1, 1))) {
        let lhs = gl_comultiply(&loc_multiply(&x, &y).unwrap());
        let rhs = loc_multiply(&gl_comultiply(&x), &gl_comultiply(&y)).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn rank_plus_nullity(matrix in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 1..6)) {
        let rows: Vec<Row> = matrix
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, RatFunc::from_int(*c))).collect())
            .collect();
        let ker = kernel_of(&rows, 4).unwrap();
        prop_assert_eq!(ker.dim() + rank(&rows), rows.len());
    }

    #[test]
    fn span_ignores_order(
        matrix in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 1..6),
        shift in 0usize..6,
    ) {
        let rows: Vec<Row> = matrix
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, RatFunc::from_int(*c))).collect())
            .collect();
        let mut rotated = rows.clone();
        rotated.rotate_left(shift % rows.len());
        let a = Subspace::span(4, rows).unwrap();
        let b = Subspace::span(4, rotated).unwrap();
        prop_assert_eq!(a.rows(), b.rows());
    }
}
