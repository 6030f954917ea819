use hurwitz_cli::row::decide;
use hurwitz_cli::{DecideOptions, Family, SweepRow};
use hurwitz_core::approx::reduce;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rows_round_trip_through_json(s in 1u64..10, n in 2i64..40, r in 0i64..40, m in 0i64..40, fast in any::<bool>()) {
        let Ok(t) = reduce(r, m, n) else { return Ok(()); };
        let row = decide(&Family::Exp(s), &t, DecideOptions { fast, budget: None }).unwrap();
        let text = serde_json::to_string(&row).unwrap();
        prop_assert_eq!(serde_json::from_str::<SweepRow>(&text).unwrap(), row.clone());
        prop_assert_eq!(row.n2l.is_some(), row.decision == hurwitz_cli::DecisionTag::Value);
    }

    #[test]
    fn fast_and_default_rows_agree(s in 1u64..20, n in 2i64..60, r in 0i64..60, m in 0i64..60) {
        let Ok(t) = reduce(r, m, n) else { return Ok(()); };
        let f = Family::Exp(s);
        let slow = decide(&f, &t, DecideOptions::default()).unwrap();
        let fast = decide(&f, &t, DecideOptions { fast: true, budget: None }).unwrap();
        prop_assert!(slow.same_decision(&fast), "{} vs {}", slow, fast);
    }

    #[test]
    fn even_k_matches_exp(s in 1u64..12, n in 2i64..30, r in 0i64..30, m in 0i64..30) {
        let Ok(t) = reduce(r, m, n) else { return Ok(()); };
        let a = decide(&Family::Exp(s), &t, DecideOptions::default()).unwrap();
        let b = decide(&Family::parse("exp_2_over", Some(2 * s)).unwrap(), &t, DecideOptions::default()).unwrap();
        prop_assert!(a.same_decision(&b));
    }
}
