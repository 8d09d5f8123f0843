use proptest::prelude::*;

use hibi::check::Property;
use hibi::classify::Verdict;
use hibi::poset::ThreeSum;
use hibi::{audit, random_poset, Budgets, Poset};

fn small_poset() -> impl Strategy<Value = Poset> {
    (1usize..=9, 0.05f64..0.9, any::<u64>()).prop_map(|(n, d, seed)| random_poset(n, d, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_is_superadditive(p in small_poset()) {
        let ep = p.extend();
        for x in 0..ep.len() {
            for y in 0..ep.len() {
                for z in 0..ep.len() {
                    if ep.leq(x, y) && ep.leq(y, z) {
                        prop_assert!(ep.rank(x, z).unwrap() >= ep.rank(x, y).unwrap() + ep.rank(y, z).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn constant_three_sum_means_pure(p in small_poset()) {
        let ep = p.extend();
        let all: Vec<usize> = (0..ep.len()).collect();
        if let ThreeSum::Constant(k) = ep.three_sum_check(&all).unwrap() {
            let sub = ep.subposet(&all).unwrap();
            prop_assert!(sub.is_pure());
            prop_assert_eq!(sub.height(), k);
        }
    }

    #[test]
    fn audit_passes(p in small_poset()) {
        let a = audit(&p, None, &Budgets::default()).unwrap();
        let bad: Vec<_> = a.failures().cloned().collect();
        prop_assert!(bad.is_empty(), "{:?} on {}", bad, p.to_json());
        for prop in [Property::OracleEquivalence, Property::IdealEnumeration, Property::ClosureSoundness] {
            prop_assert_eq!(a.verdict(prop), Some(Verdict::Pass));
        }
    }

    #[test]
    fn json_round_trip(p in small_poset()) {
        prop_assert_eq!(hibi::parse_poset(&p.to_json()).unwrap(), p);
    }
}
