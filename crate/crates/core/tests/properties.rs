mod common;

use common::*;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=12, 1usize..=12)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn smith_normal_form_identity(rows in matrix()) {
        prop_assert_eq!(check_smith_normal_form(&rows), Ok(()));
    }
}

#[test]
fn coset_enumeration_matches_permutation_groups() {
    let groups = standard_groups();
    assert!(groups.len() >= 10);
    for (name, p, gens) in groups {
        assert!(closure_order(&gens) <= 24, "{name}");
        check_enumeration(name, &p, &gens).unwrap();
    }
}

#[test]
fn ridge_cycles_cover_every_ridge_once() {
    for scheme in valid_codes(200) {
        check_ridge_coverage(&scheme).unwrap();
    }
}

#[test]
fn tietze_preserves_abelianization() {
    for scheme in valid_codes(200) {
        check_tietze(&scheme).unwrap();
    }
}
