use std::sync::Arc;

use zerowt::oracle::{oracle_trace, DEFAULT_CAP};
use zerowt::trace::{canonical_torsion_for, ClassEngine};
use zerowt::{datum, RootDatum, Weight};

fn small_weights(rank: usize, max: i64) -> Vec<Weight> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (1..=max).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Weight).collect()
}

fn check_group(d: &Arc<RootDatum>, max: i64, cap: u128) {
    let g = d.weyl_group();
    for class in g.classes() {
        let w = g.element(d, class.representative);
        let Some(t) = canonical_torsion_for(d, &w) else {
            assert!(ClassEngine::new(d.clone(), &w, None).is_err());
            continue;
        };
        let engine = ClassEngine::new(d.clone(), &w, None).unwrap();
        for mu in small_weights(d.rank(), max) {
            let want = match oracle_trace(d, &mu, &w, &t, cap) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let got = engine.trace(&mu).unwrap();
            assert_eq!(got, want, "{} class {:?} mu {}", d.label, g.word(class.representative), mu);
        }
    }
}

#[test]
fn rank_two_groups() {
    for label in ["A2", "B2", "G2"] {
        check_group(&datum(label).unwrap(), 6, DEFAULT_CAP);
    }
}

#[test]
fn rank_three_groups() {
    for label in ["A3", "B3", "C3"] {
        check_group(&datum(label).unwrap(), 3, 20_000);
    }
}

#[test]
fn rank_four_groups() {
    for label in ["A4", "B4", "C4", "D4", "F4"] {
        check_group(&datum(label).unwrap(), 2, 20_000);
    }
}

#[test]
fn a5_and_e6() {
    for label in ["A5", "E6"] {
        check_group(&datum(label).unwrap(), 2, 20_000);
    }
}
