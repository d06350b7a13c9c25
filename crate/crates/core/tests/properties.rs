use proptest::prelude::*;

use kac_core::asymptotics::{limit_series, LimitSpec};
use kac_core::hua::{check_invariants, kac_all, kac_direct, kac_plethystic};
use kac_core::parametric::{param_kac, Decomposition, DecompositionRecord};
use kac_core::quiver::{ArrowFile, DimVector, Quiver, QuiverFile};

/// Two-vertex quivers: arrows 1->2, 2->1, loops at 1 and at 2, with small multiplicities.
fn two_vertex() -> impl Strategy<Value = Quiver> {
    (0u64..=2, 0u64..=1, 0u64..=1, 0u64..=1).prop_map(|(ab, ba, la, lb)| {
        let arrow = |name: &str, from: &str, to: &str, mult| ArrowFile {
            name: name.into(),
            from: from.into(),
            to: to.into(),
            mult,
        };
        let arrows = [("x", "1", "2", ab), ("y", "2", "1", ba), ("s", "1", "1", la), ("t", "2", "2", lb)]
            .into_iter()
            .filter(|a| a.3 > 0)
            .map(|(n, f, t, m)| arrow(n, f, t, m))
            .collect();
        Quiver::new(vec!["1".into(), "2".into()], arrows).unwrap()
    })
}

fn dim() -> impl Strategy<Value = DimVector> {
    (0u32..=2, 0u32..=2)
        .prop_filter("nonzero", |(a, b)| a + b > 0)
        .prop_map(|(a, b)| DimVector(vec![a, b]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn paths_agree_and_invariants_hold(q in two_vertex(), d in dim()) {
        let direct = kac_direct(&q, &d).unwrap();
        let pleth = kac_plethystic(&q, &d).unwrap();
        prop_assert_eq!(&direct.poly, &pleth.poly);
        check_invariants(&direct).unwrap();
    }

    #[test]
    fn reversing_every_arrow_changes_nothing(q in two_vertex(), d in dim()) {
        let a = kac_direct(&q, &d).unwrap().poly;
        let mut flipped = q.clone();
        for i in 0..q.arrows().len() {
            flipped = flipped.with_reversed_arrow(i);
        }
        prop_assert_eq!(kac_direct(&flipped, &d).unwrap().poly, a);
    }

    #[test]
    fn kac_all_matches_pointwise(q in two_vertex()) {
        let all = kac_all(&q, &DimVector(vec![2, 2])).unwrap();
        for (d, p) in all {
            prop_assert_eq!(kac_direct(&q, &d).unwrap().poly, p);
        }
    }

    #[test]
    fn specialization_matches_direct(d in dim(), n in 1u64..=4) {
        let base = Quiver::tennis_racket(1, 1);
        let dec = param_kac(&base, &d, &["beta".to_string()]).unwrap();
        let direct = kac_direct(&Quiver::tennis_racket(1, n), &d).unwrap().poly;
        prop_assert_eq!(dec.specialize(&[n]).unwrap(), direct);
    }
}

#[test]
fn decomposition_json_round_trip() {
    let dec = param_kac(&Quiver::tennis_racket(1, 1), &DimVector(vec![2, 2]), &["alpha".into(), "beta".into()]).unwrap();
    let text = serde_json::to_string(&dec.to_record()).unwrap();
    let record: DecompositionRecord = serde_json::from_str(&text).unwrap();
    assert_eq!(Decomposition::from_record(&record).unwrap(), dec);
}

#[test]
fn quiver_files_reject_unknown_fields() {
    let bad = r#"{"vertices": ["1"], "arrows": [], "colour": "red"}"#;
    assert!(serde_json::from_str::<QuiverFile>(bad).is_err());
    let arrow = r#"{"vertices": ["1"], "arrows": [{"name": "l", "from": "1", "to": "1", "weight": 2}]}"#;
    assert!(serde_json::from_str::<QuiverFile>(arrow).is_err());
}

#[test]
fn limits_stabilize_along_the_family() {
    // each coefficient of A_{K_r,(2,3)} settles to the limit once r is large
    let dec = param_kac(&Quiver::kronecker(1), &DimVector(vec![2, 3]), &["a".into()]).unwrap();
    let limit = limit_series(&dec, &LimitSpec::componentwise(vec![None], 4)).unwrap();
    let a = kac_direct(&Quiver::kronecker(8), &DimVector(vec![2, 3])).unwrap().poly;
    let head: Vec<_> = (0..=4).map(|k| a.coeff(k).to_integer()).collect();
    assert_eq!(head, limit.coefficients);
}
