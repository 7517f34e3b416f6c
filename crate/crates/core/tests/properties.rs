use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use qdt_core::dtinv::{dt_formula, dtq_from_series, DTRecord};
use qdt_core::higgs::{class_to_higgs, enumerate_higgs, higgs_to_class};
use qdt_core::hilbert::{enumerate_trees, Tree};
use qdt_core::necklaces::{classify, phi, phi_inv, USequence};
use qdt_core::plethystic::{pleth_exp, pleth_log};
use qdt_core::{LaurentPoly, Partition, TruncSeries};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -5i64..=5), 0..4).prop_map(|t| t.into_iter().collect())
}

fn series(order: usize) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(laurent(), order - 1).prop_map(move |cs| {
        let mut all = vec![LaurentPoly::zero()];
        all.extend(cs);
        TruncSeries::from_laurent_coeffs(&all, order)
    })
}

proptest! {
    #[test]
    fn plethystic_log_inverts_exp(f in series(6)) {
        prop_assert_eq!(pleth_log(&pleth_exp(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn series_json_round_trip(f in series(5)) {
        prop_assert_eq!(TruncSeries::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn dt_record_json_round_trip(m in 1u64..=4, n in 1u64..=6, flag in any::<bool>()) {
        let dt = dt_formula(m, n).unwrap();
        let poly = dtq_from_series(m, n as usize + 1).unwrap().pop().unwrap();
        let routes: BTreeMap<String, bool> = [("formula".to_string(), true), ("series".to_string(), flag)].into();
        let r = DTRecord { m, n, dt, dt_poly: Some(poly), routes };
        prop_assert!(r.is_consistent());
        prop_assert_eq!(DTRecord::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn phi_round_trips_partitions(m in 2u64..=4, steps in prop::collection::vec(0u64..=3, 0..6)) {
        // lambda_1 = 0 and lambda_i = min(lambda_(i-1) + step, (m-1)(i-1)) lies in T
        let mut parts = vec![0u64];
        for (i, s) in steps.into_iter().enumerate() {
            let prev = *parts.last().unwrap();
            parts.push((prev + s).min((m - 1) * (i as u64 + 1)));
        }
        let l = Partition::new(parts).unwrap();
        prop_assert!(l.in_t(m));
        let a = phi(&l, m).unwrap();
        prop_assert_eq!(phi_inv(&a).unwrap(), l);
    }

    #[test]
    fn classify_is_rotation_invariant(m in 2u64..=3, cuts in prop::collection::vec(0u64..=12, 0..6), k in 0usize..7) {
        // n - 1 sorted cut points in 0..=(m-1)n give a composition of (m-1)n into n parts
        let n = cuts.len() as u64 + 1;
        let total = (m - 1) * n;
        let mut cuts: Vec<u64> = cuts.into_iter().map(|c| c % (total + 1)).collect();
        cuts.sort();
        let bounds: Vec<u64> = std::iter::once(0).chain(cuts).chain(std::iter::once(total)).collect();
        let a: Vec<u64> = bounds.windows(2).map(|w| w[1] - w[0]).collect();
        let s = USequence::new(m, a).unwrap();
        prop_assert_eq!(classify(&s), classify(&s.rotate(k % n as usize)));
    }
}

#[test]
fn trees_round_trip_through_text_and_partitions() {
    for m in 1..=3 {
        for n in 0..=5 {
            for tree in enumerate_trees(m, n) {
                assert_eq!(Tree::parse(m, &tree.to_text()).unwrap(), tree);
                assert_eq!(Tree::from_partition(&tree.to_partition(), m).unwrap(), tree);
            }
        }
    }
}

#[test]
fn higgs_sequences_map_to_classes_and_back() {
    for m in 2..=3 {
        for n in 1..=5usize {
            for d in [-1i64, 1, 2 * n as i64 + 1] {
                for s in enumerate_higgs(n, d, m) {
                    let c = higgs_to_class(&s).unwrap();
                    assert_eq!(class_to_higgs(&c, d).unwrap(), s);
                }
            }
            assert_eq!(BigInt::from(enumerate_higgs(n, 1, m).len()), dt_formula(m, n as u64).unwrap());
        }
    }
}

#[test]
fn quantized_values_specialize_to_numeric() {
    for m in 1..=3 {
        for (i, p) in dtq_from_series(m, 7).unwrap().iter().enumerate() {
            let dt = dt_formula(m, i as u64 + 1).unwrap();
            assert!(p.is_integral());
            assert_eq!(p.eval_at_one(), dt.into());
        }
    }
}
