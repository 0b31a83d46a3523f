use std::collections::BTreeSet;

use ordsub::class::{check_condition, check_condition_par, classify, holds_at_pair, ConditionId, Outcome};
use ordsub::format::{set_function_from_json, set_function_to_json, TableForm};
use ordsub::value::Rational;
use ordsub::{Codomain, GroundSet, Interval, OrdinalValue, SetFunction, Subset};
use proptest::prelude::*;

fn int_function() -> impl Strategy<Value = SetFunction> {
    (1usize..=4)
        .prop_flat_map(|n| proptest::collection::vec(-4i64..4, 1 << n))
        .prop_map(|values| {
            let n = values.len().trailing_zeros() as usize;
            SetFunction::from_ints(GroundSet::letters(n).unwrap(), &values).unwrap()
        })
}

fn rational_function() -> impl Strategy<Value = SetFunction> {
    (1usize..=3)
        .prop_flat_map(|n| proptest::collection::vec((-6i64..6, 1i64..5), 1 << n))
        .prop_map(|pairs| {
            let n = pairs.len().trailing_zeros() as usize;
            let values = pairs.into_iter().map(|(p, q)| OrdinalValue::Rat(Rational::new(p, q))).collect();
            SetFunction::new(GroundSet::letters(n).unwrap(), Codomain::Rational, values).unwrap()
        })
}

fn label_function() -> impl Strategy<Value = SetFunction> {
    (1usize..=3)
        .prop_flat_map(|n| proptest::collection::vec(0u32..4, 1 << n))
        .prop_map(|idx| {
            let n = idx.len().trailing_zeros() as usize;
            let codomain = Codomain::labels(["poor", "fair", "good", "great"]).unwrap();
            let values = idx.into_iter().map(OrdinalValue::Label).collect();
            SetFunction::new(GroundSet::letters(n).unwrap(), codomain, values).unwrap()
        })
}

fn any_function() -> impl Strategy<Value = SetFunction> {
    prop_oneof![int_function(), rational_function(), label_function()]
}

/// A strictly increasing map from the distinct integer values of `f` into a
/// spread-out integer range.
fn increasing_map(f: &SetFunction, gaps: &[i64], offset: i64) -> Vec<(OrdinalValue, OrdinalValue)> {
    let distinct: BTreeSet<i64> = f
        .values()
        .iter()
        .map(|v| match v {
            OrdinalValue::Int(i) => *i,
            other => panic!("integer expected, got {other:?}"),
        })
        .collect();
    let mut next = offset;
    distinct
        .into_iter()
        .zip(gaps.iter().cycle())
        .map(|(v, gap)| {
            next += gap;
            (OrdinalValue::Int(v), OrdinalValue::Int(next))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn dual_involutions(f in any_function()) {
        prop_assert_eq!(f.complement_dual().complement_dual(), f.clone());
        prop_assert_eq!(f.order_dual().unwrap().order_dual().unwrap(), f);
    }

    #[test]
    fn complement_dual_swaps_q1_q2(f in any_function()) {
        let g = f.complement_dual();
        let holds = |h: &SetFunction, c| check_condition(h, c).holds();
        prop_assert_eq!(holds(&f, ConditionId::Q1), holds(&g, ConditionId::Q2));
        prop_assert_eq!(holds(&f, ConditionId::Q2), holds(&g, ConditionId::Q1));
        for c in [ConditionId::Q3, ConditionId::Q4, ConditionId::Qh, ConditionId::QuasiSubmodular] {
            prop_assert_eq!(holds(&f, c), holds(&g, c), "{}", c);
        }
    }

    #[test]
    fn order_dual_negates_numeric_values(f in int_function()) {
        let d = f.order_dual().unwrap();
        for s in f.ground().subsets() {
            match (f.at(s), d.at(s)) {
                (OrdinalValue::Int(a), OrdinalValue::Int(b)) => prop_assert_eq!(*a, -*b),
                _ => prop_assert!(false),
            }
        }
    }

    #[test]
    fn classification_is_ordinal(
        f in int_function(),
        gaps in proptest::collection::vec(1i64..50, 1..8),
        offset in -1000i64..1000,
    ) {
        let g = f.monotone_transform(&increasing_map(&f, &gaps, offset)).unwrap();
        let (a, b) = (classify(&f), classify(&g));
        for c in ConditionId::ALL.into_iter().filter(|c| c.is_ordinal()) {
            prop_assert_eq!(a.holds(c), b.holds(c), "{}", c);
            prop_assert_eq!(
                a.witness(c).map(|w| (w.x, w.y)),
                b.witness(c).map(|w| (w.x, w.y)),
                "{}", c
            );
        }
        prop_assert_eq!(g.ranks(), f.ranks());
    }

    #[test]
    fn restriction_keeps_values_and_conditions(f in int_function(), lo in 0u32..16, hi in 0u32..16) {
        let full = f.full().mask();
        let (lo, hi) = (Subset(lo & full), Subset((hi | lo) & full));
        let interval = Interval::new(lo, hi).unwrap();
        let r = f.restrict(&interval).unwrap();
        prop_assert_eq!(r.len() as u64, interval.len());
        for z in interval.iter() {
            let name = f.ground().format_subset(z.difference(lo));
            let zr = r.ground().parse_subset(&name).unwrap();
            prop_assert_eq!(r.at(zr), f.at(z));
        }
        for c in [ConditionId::Q1, ConditionId::Q2, ConditionId::Q3, ConditionId::Q4, ConditionId::Qh] {
            if check_condition(&f, c).holds() {
                prop_assert!(check_condition(&r, c).holds(), "{} lost on {:?}", c, interval);
            }
        }
    }

    #[test]
    fn json_round_trip(f in any_function(), sparse in any::<bool>()) {
        let form = if sparse { TableForm::Sparse } else { TableForm::Dense };
        let text = serde_json::to_string(&set_function_to_json(&f, form)).unwrap();
        let back = set_function_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn parallel_scan_matches_sequential(f in int_function(), threads in 1usize..9) {
        for c in ConditionId::ALL {
            prop_assert_eq!(check_condition_par(&f, c, threads), check_condition(&f, c), "{}", c);
        }
    }

    #[test]
    fn witnesses_reproduce(f in any_function()) {
        for (c, outcome) in classify(&f).iter() {
            if let Outcome::Fails(w) = outcome {
                prop_assert!(w.reproduces(), "{}", c);
                if c.is_ordinal() && c != ConditionId::Injective && c != ConditionId::QuasiSubmodular {
                    prop_assert!(!holds_at_pair(&f, c, w.x, w.y).unwrap());
                }
            }
        }
    }
}
