mod common;

use dgfree::free_algebra::Word;
use dgfree::{Field, Fp, Rational};
use proptest::prelude::*;

#[test]
fn crisscross_iff_square_zero() {
    common::crisscross_equivalence().unwrap();
}

#[test]
fn leibniz_rule_and_square_zero() {
    common::leibniz_and_square_zero(0, 200).unwrap();
}

#[test]
fn rank_and_kernel_match_minors() {
    common::rank_kernel_oracle(0, 100).unwrap();
}

#[test]
fn class_products_ignore_representatives() {
    common::class_product_independence(0, 50).unwrap();
}

#[test]
fn module_differential_squares_to_zero() {
    common::module_square_zero(0, 100).unwrap();
}

proptest! {
    #[test]
    fn word_index_roundtrip(letters in proptest::collection::vec(0u8..3, 0..7)) {
        let w = Word::new(letters.clone());
        prop_assert_eq!(Word::from_index(w.index(3), 3, letters.len()), w);
    }

    #[test]
    fn prime_field_inverse(v in 1u64..7) {
        let x = Fp::<7>::new(v);
        prop_assert_eq!(x * x.inverse().unwrap(), Fp::<7>::new(1));
    }

    #[test]
    fn rational_literals_roundtrip(n in -1000i64..1000, d in 1i64..50) {
        let q = Rational::new(n.into(), d.into());
        prop_assert_eq!(Rational::parse(&q.to_string()).unwrap(), q);
    }
}
