use proptest::prelude::*;

use pseudoschur::absorption::{
    group_absorbing, mp_absorbing, relation_g_properties, relation_m_properties,
};
use pseudoschur::instgen::{GenConfig, Generator, Inheritance};
use pseudoschur::pppt::{cpppt_dagger, pppt_dagger, Pivot};
use pseudoschur::{check_penrose, q, Matrix, Rational};

fn entry() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

fn shaped(r: usize, c: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(entry(), r * c)
        .prop_map(move |data| Matrix::from_vec(r, c, data).unwrap())
}

/// Zeroing most entries makes rank-deficient matrices common.
fn sparse_shaped(r: usize, c: usize) -> impl Strategy<Value = Matrix> {
    shaped(r, c).prop_map(move |m| {
        let data = m
            .entries()
            .iter()
            .enumerate()
            .map(|(i, x)| if i % 3 == 0 { x.clone() } else { q(0, 1) })
            .collect();
        Matrix::from_vec(r, c, data).unwrap()
    })
}

fn any_shaped(r: usize, c: usize) -> impl Strategy<Value = Matrix> {
    prop_oneof![shaped(r, c), sparse_shaped(r, c)]
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| shaped(r, c))
}

fn any_matrix() -> impl Strategy<Value = Matrix> {
    (1..=4usize, 1..=4usize).prop_flat_map(|(r, c)| any_shaped(r, c))
}

fn pair() -> impl Strategy<Value = (Matrix, Matrix)> {
    (1..=4usize, 1..=4usize).prop_flat_map(|(r, c)| (any_shaped(r, c), any_shaped(r, c)))
}

fn sparse_triple() -> impl Strategy<Value = [Matrix; 3]> {
    (1..=3usize, 1..=3usize).prop_flat_map(|(r, c)| {
        (sparse_shaped(r, c), sparse_shaped(r, c), sparse_shaped(r, c)).prop_map(|(a, b, c)| [a, b, c])
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn pinv_satisfies_penrose(m in any_matrix()) {
        prop_assert!(check_penrose(&m, &m.pinv()).unwrap().all());
    }

    #[test]
    fn pinv_is_an_involution(m in any_matrix()) {
        prop_assert_eq!(m.pinv().pinv(), m);
    }

    #[test]
    fn pinv_commutes_with_transpose(m in any_matrix()) {
        prop_assert_eq!(m.transpose().pinv(), m.pinv().transpose());
    }

    #[test]
    fn a_pinv_a_is_the_projector_onto_the_range(m in any_matrix()) {
        // A symmetric idempotent fixing every column of A with rank(A) is
        // the orthogonal projector onto R(A).
        let p = &m * &m.pinv();
        prop_assert_eq!(p.transpose(), p.clone());
        prop_assert_eq!(&p * &p, p.clone());
        prop_assert_eq!(&p * &m, m.clone());
        prop_assert_eq!(p.rank(), m.rank());
    }

    #[test]
    fn group_inverse_when_it_exists(m in matrix(4).prop_filter("square", |m| m.is_square())) {
        let has = m.rank() == (&m * &m).rank();
        match m.ginv() {
            Ok(x) => {
                prop_assert!(has);
                prop_assert_eq!(&(&m * &x) * &m, m.clone());
                prop_assert_eq!(&m * &x, &x * &m);
            }
            Err(_) => prop_assert!(!has),
        }
    }

    #[test]
    fn absorption_biconditionals((a, b) in pair()) {
        prop_assert!(mp_absorbing(&a, &b).unwrap().consistent());
        if let Ok(v) = group_absorbing(&a, &b) {
            prop_assert!(v.consistent());
        }
    }

    #[test]
    fn mp_relation_properties_on_arbitrary_triples(triple in sparse_triple()) {
        let r = relation_m_properties(&triple).unwrap();
        prop_assert_eq!(r.failures(), 0);
    }

    #[test]
    fn mp_absorption_is_symmetric((a, b) in pair()) {
        prop_assert_eq!(
            mp_absorbing(&a, &b).unwrap().law_holds,
            mp_absorbing(&b, &a).unwrap().law_holds
        );
    }
}

#[test]
fn generated_absorbing_pairs_are_symmetric_in_both_families() {
    let mut g = Generator::new(&GenConfig::with_seed(41)).unwrap();
    for _ in 0..60 {
        let rows = g.gen_dim();
        let cols = g.gen_dim();
        let (a, b) = g.gen_mixed_pair(rows, cols).unwrap();
        assert_eq!(mp_absorbing(&a, &b).unwrap(), mp_absorbing(&b, &a).unwrap());
        let n = g.gen_dim();
        let (a, b) = g.gen_mixed_group_pair(n).unwrap();
        assert_eq!(group_absorbing(&a, &b).unwrap(), group_absorbing(&b, &a).unwrap());
    }
}

#[test]
fn group_relation_properties_on_generated_triples() {
    let mut g = Generator::new(&GenConfig::with_seed(5)).unwrap();
    for _ in 0..30 {
        let n = g.gen_dim();
        let triple = g.gen_relation_triple(n, n, true).unwrap();
        assert_eq!(relation_g_properties(&triple).unwrap().failures(), 0);
    }
}

#[test]
fn pivot_transform_pseudoinverse_has_the_complementary_shape() {
    // Under the range conditions and range-symmetric pivot blocks the
    // pseudoinverse of the pivot transform on A is the one on D.
    let mut g = Generator::new(&GenConfig::with_seed(13)).unwrap();
    for pivot in [Pivot::A, Pivot::D] {
        for _ in 0..20 {
            let (u, _) = g.gen_inheritance_instance(Inheritance::PpptMp(pivot)).unwrap();
            let (h, j) = (pppt_dagger(&u).transform, cpppt_dagger(&u).transform);
            let (from, to) = match pivot {
                Pivot::A => (h, j),
                Pivot::D => (j, h),
            };
            assert_eq!(from.assemble().pinv(), to.assemble(), "{u:?}");
        }
    }
}
