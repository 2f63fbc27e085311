use proptest::prelude::*;

use pseudoschur::{q, BlockMatrix, Matrix};
use pseudoschur_cli::format::{parse_block, parse_matrix, print_block, print_matrix};

fn shaped(r: usize, c: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec((-50i64..=50, 1i64..=12), r * c).prop_map(move |xs| {
        let data = xs.into_iter().map(|(n, d)| q(n, d)).collect();
        Matrix::from_vec(r, c, data).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn matrices_round_trip(m in (0..=5usize, 0..=5usize).prop_flat_map(|(r, c)| shaped(r, c))) {
        let text = print_matrix(&m);
        let back = parse_matrix(&text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(print_matrix(&back), text);
    }

    #[test]
    fn blocks_round_trip(
        (m, m1, n1) in (1..=5usize, 1..=5usize)
            .prop_flat_map(|(r, c)| (shaped(r, c), 0..=r, 0..=c))
    ) {
        let b = BlockMatrix::split(&m, m1, n1).unwrap();
        let text = print_block(&b);
        let back = parse_block(&text).unwrap();
        prop_assert_eq!(&back, &b);
        prop_assert_eq!(print_block(&back), text);
    }

    #[test]
    fn whitespace_and_comments_do_not_matter(m in (1..=3usize, 1..=3usize).prop_flat_map(|(r, c)| shaped(r, c))) {
        let noisy: String = print_matrix(&m)
            .lines()
            .map(|l| format!("  # noise\n\n{}\t\n", l.replace(' ', "   ")))
            .collect();
        prop_assert_eq!(parse_matrix(&noisy).unwrap(), m);
    }
}
