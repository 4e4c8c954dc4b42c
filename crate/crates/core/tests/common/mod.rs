//! Property checks shared by the proptest target and the acceptance runner.

#![allow(dead_code)]

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use zerowt::oracle::brute_weighted_partition;
use zerowt::trace::{canonical_torsion_for, ClassEngine};
use zerowt::weyl::{coset_orbit_size, stabilizer_generators};
use zerowt::zchar::class_engines;
use zerowt::{datum, weighted_partition, CartanType, RootDatum, TorusPoint, Weight, WeylElement};

pub const RANK_LE_3: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"];
pub const RANK_LE_4: &[&str] = &["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "F4"];

pub fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    runner(cases).run(&s, f).map_err(|e| e.to_string())
}

fn coord_max(d: &RootDatum) -> i64 {
    match d.rank() {
        0..=2 => 8,
        3 => 5,
        _ => 3,
    }
}

fn class_and_mu(d: &RootDatum) -> impl Strategy<Value = (usize, Vec<i64>)> {
    (0..d.weyl_group().classes().len(), vec(1..=coord_max(d), d.rank()))
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

/// Every trace comes back as a rational integer.
pub fn integrality(cases: u32) -> Result<(), String> {
    for g in RANK_LE_4 {
        let d = datum(g).unwrap();
        run(cases, class_and_mu(&d), |(c, mu)| {
            let engines = class_engines(&d);
            let Ok(e) = &engines[c] else { return Ok(()) };
            e.trace(&Weight(mu.clone())).map_err(|err| fail(format!("{g} class {c} mu {mu:?}: {err}")))?;
            Ok(())
        })?;
    }
    Ok(())
}

/// `tr(uwu⁻¹, V_μ^T)` at the transported torsion point equals `tr(w, V_μ^T)`.
pub fn conjugation_invariance(cases: u32) -> Result<(), String> {
    for g in RANK_LE_3 {
        let d = datum(g).unwrap();
        let grp = d.weyl_group();
        let s = (class_and_mu(&d), 0..grp.len());
        run(cases, s, |((c, mu), u)| {
            let w = grp.element(&d, grp.classes()[c].representative);
            let Some(t) = canonical_torsion_for(&d, &w) else { return Ok(()) };
            let u = grp.element(&d, u);
            let w2 = w.conjugate_by(&u);
            let t2 = TorusPoint { modulus: t.modulus, k: u.act_coroot(&t.k) };
            let mu = Weight(mu);
            let a = ClassEngine::new(d.clone(), &w, None).unwrap().trace(&mu).unwrap();
            let b = ClassEngine::new(d.clone(), &w2, Some(&t2))
                .and_then(|e| e.trace(&mu))
                .map_err(|err| fail(format!("{g}: conjugate rejected: {err}")))?;
            prop_assert_eq!(a, b, "{} class {} mu {}", g, c, mu);
            Ok(())
        })?;
    }
    Ok(())
}

/// `V_μ*` with `μ* = −w0(μ−ρ)+ρ` has the same zero weight character.
pub fn duality(cases: u32) -> Result<(), String> {
    for g in RANK_LE_4 {
        let d = datum(g).unwrap();
        run(cases, class_and_mu(&d), |(c, mu)| {
            let engines = class_engines(&d);
            let Ok(e) = &engines[c] else { return Ok(()) };
            let mu = Weight(mu);
            let dual = d.dual_weight(&mu.sub(&d.rho)).add(&d.rho);
            prop_assert_eq!(e.trace(&mu).unwrap(), e.trace(&dual).unwrap(), "{} class {} mu {}", g, c, mu);
            Ok(())
        })?;
    }
    Ok(())
}

/// Outside `ρ + Q` every trace vanishes.
pub fn outside_root_lattice(cases: u32) -> Result<(), String> {
    for g in RANK_LE_4.iter().filter(|g| !["G2", "F4"].contains(g)) {
        let d = datum(g).unwrap();
        run(cases, class_and_mu(&d), |(c, mu)| {
            let engines = class_engines(&d);
            let Ok(e) = &engines[c] else { return Ok(()) };
            let mut mu = Weight(mu);
            if d.in_root_lattice(&mu.sub(&d.rho)) {
                let i = (0..d.rank()).find(|&i| {
                    let mut x = mu.clone();
                    x.0[i] += 1;
                    !d.in_root_lattice(&x.sub(&d.rho))
                });
                mu.0[i.expect("P ≠ Q")] += 1;
            }
            prop_assert_eq!(e.trace(&mu).unwrap(), 0, "{} class {} mu {}", g, c, mu);
            Ok(())
        })?;
    }
    Ok(())
}

/// `tr(cox, V_μ^T) ∈ {−1, 0, 1}`.
pub fn coxeter_traces(cases: u32) -> Result<(), String> {
    for g in CartanType::SUPPORTED {
        let d = datum(g).unwrap();
        let cox = WeylElement::from_word(&d, &(0..d.rank()).collect::<Vec<_>>()).unwrap();
        let e = ClassEngine::new(d.clone(), &cox, None).unwrap();
        run(cases, vec(1..=40i64, d.rank()), |mu| {
            let v = e.trace(&Weight(mu.clone())).unwrap();
            prop_assert!((-1..=1).contains(&v), "{} mu {:?}: {}", g, mu, v);
            Ok(())
        })?;
    }
    Ok(())
}

/// `|W(μ + mQ)| · |Stab| = |W|`, the stabilizer generated by reflections in `Ř_μ,m⁺`.
pub fn orbit_stabilizer(cases: u32) -> Result<(), String> {
    let s = (0..RANK_LE_3.len()).prop_flat_map(|i| {
        let r = datum(RANK_LE_3[i]).unwrap().rank();
        (Just(i), vec(-12i64..=12, r), 2i64..=6)
    });
    run(cases, s, |(i, mu, m)| {
        let d = datum(RANK_LE_3[i]).unwrap();
        let g = d.weyl_group();
        let mu = Weight(mu);
        let gens: Vec<usize> = stabilizer_generators(&d, &mu, m)
            .into_iter()
            .map(|k| g.find(&WeylElement::root_reflection(&d, k)))
            .collect();
        let orbit = coset_orbit_size(&d, &mu, m);
        prop_assert_eq!(orbit * g.subgroup_order(&gens), g.len(), "{} mu {} m {}", RANK_LE_3[i], mu, m);
        Ok(())
    })
}

/// The memoized weighted partition function against literal enumeration.
pub fn partitions_match_enumeration(cases: u32) -> Result<(), String> {
    // (group, class) pairs whose engine carries a subtorus.
    let mut slots = Vec::new();
    for g in RANK_LE_3 {
        let d = datum(g).unwrap();
        for (c, e) in class_engines(&d).iter().enumerate() {
            if matches!(e, Ok(e) if e.subtorus().is_some()) {
                slots.push((*g, c));
            }
        }
    }
    let n = slots.len();
    let s = (0..n, vec(0i64..=3, 8), vec(-1i64..=1, 3));
    run(cases, s, |(i, ks, noise)| {
        let (g, c) = slots[i];
        let d = datum(g).unwrap();
        let engines = class_engines(&d);
        let sd = engines[c].as_ref().unwrap().subtorus().unwrap();
        let mut nu = vec![0i64; sd.dim()];
        for (k, v) in ks.iter().zip(&sd.nu_list) {
            for (x, y) in nu.iter_mut().zip(v) {
                *x += k * y;
            }
        }
        for (x, e) in nu.iter_mut().zip(&noise) {
            *x += e;
        }
        if sd.height(&nu) > 40 {
            return Ok(());
        }
        let fast = weighted_partition(sd, &nu);
        let slow = brute_weighted_partition(sd, &nu, 40).unwrap();
        prop_assert_eq!(fast, slow, "{} class {} nu {:?}", g, c, nu);
        Ok(())
    })
}
