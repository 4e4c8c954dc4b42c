//! Acceptance runner: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use zerowt::golden::{golden_multiplicity, golden_value, monomial_table, table_classes, MonomialTable};
use zerowt::oracle::{freudenthal, oracle_trace_from, DEFAULT_CAP};
use zerowt::trace::{canonical_torsion_for, zero_weight_dimension};
use zerowt::zchar::{class_engines, multiplicities};
use zerowt::{
    character_table, datum, full_character, parse_class, search_irreducible, ClassEngine, RootDatum, Verdict, Weight,
};

type Outcome = Result<String, String>;

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn run(n: usize, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let late = limit.is_some_and(|l| took > l);
    let budget = limit.map(|l| format!(" / limit {:.0}s", l.as_secs_f64())).unwrap_or_default();
    let (ok, detail) = match out {
        Ok(d) if !late => (true, d),
        Ok(d) => (false, format!("{d}; too slow")),
        Err(e) => (false, e),
    };
    println!("[{}] {n}. {title}: {detail} ({:.1}s{budget})", if ok { "PASS" } else { "FAIL" }, took.as_secs_f64());
    ok
}

/// Engine against the closed forms on a grid; returns the cells for the oracle sweep.
fn golden_grid(group: &str, cells: &[Vec<i64>]) -> Result<usize, String> {
    let (label, classes) = table_classes(group).map_err(|e| e.to_string())?;
    let d = datum(label).unwrap();
    let engines: Vec<ClassEngine> =
        classes.iter().map(|c| ClassEngine::new(d.clone(), &parse_class(&d, c).unwrap(), None).unwrap()).collect();
    let bad: Vec<String> = cells
        .par_iter()
        .flat_map_iter(|mu| {
            let w = Weight(mu.clone());
            classes
                .iter()
                .zip(&engines)
                .filter_map(|(c, e)| {
                    let got = e.trace(&w);
                    let want = golden_value(group, c, mu);
                    match (got, want) {
                        (Ok(a), Ok(b)) if a == b => None,
                        (a, b) => Some(format!("{c} at {mu:?}: engine {a:?}, table {b:?}")),
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    if bad.is_empty() {
        Ok(cells.len() * classes.len())
    } else {
        Err(format!("{} mismatches, first: {}", bad.len(), bad[0]))
    }
}

fn su3_cells() -> Vec<Vec<i64>> {
    (1..=30).flat_map(|a| (a..=30).filter(move |b| (b - a) % 3 == 0).map(move |b| vec![a, b])).collect()
}

fn sp4_cells() -> Vec<Vec<i64>> {
    (1..=20).step_by(2).flat_map(|a| (1..=20).map(move |b| vec![a, b])).collect()
}

fn g2_cells() -> Vec<Vec<i64>> {
    (1..=20).flat_map(|a| (1..=20).map(move |b| vec![a, b])).collect()
}

fn su4_cells() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in 1..=12i64 {
        for c in (a..=12).step_by(2) {
            for b in 1..=12 {
                if (b - (c - a) / 2).rem_euclid(2) == 1 {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let cells = su3_cells();
    let n = golden_grid("SU3", &cells)?;
    Ok(format!("{} cells, {n} traces equal", cells.len()))
}

fn criterion_2() -> Outcome {
    let cells = sp4_cells();
    let n = golden_grid("Sp4", &cells)?;
    let d = datum("C2").unwrap();
    let table = character_table(&d).unwrap();
    let idx = |name: &str| table.irreducibles.iter().position(|x| x.name == name).unwrap();
    let (ti, ri) = (idx("triv"), idx("refl"));
    let bad: Vec<String> = cells
        .par_iter()
        .filter_map(|mu| {
            let chi = full_character(&d, &Weight(mu.clone())).ok()?;
            let m = multiplicities(&chi, &table).ok()?;
            let want = (golden_multiplicity("Sp4", "triv", mu).ok()?, golden_multiplicity("Sp4", "refl", mu).ok()?);
            let got = (m[ti] as i64, m[ri] as i64);
            (got != want).then(|| format!("{mu:?}: ⟨triv⟩,⟨refl⟩ = {got:?}, formulas {want:?}"))
        })
        .collect();
    if !bad.is_empty() {
        return Err(format!("{n} traces equal but {} multiplicity mismatches, first: {}", bad.len(), bad[0]));
    }
    Ok(format!("{} cells, {n} traces and {} multiplicities equal", cells.len(), 2 * cells.len()))
}

fn criterion_3() -> Outcome {
    let cells = g2_cells();
    let n = golden_grid("G2", &cells)?;
    Ok(format!("{} cells, {n} traces equal", cells.len()))
}

fn criterion_4() -> Outcome {
    let cells = su4_cells();
    let n = golden_grid("SU4", &cells)?;
    let low = cells.iter().filter(|v| v[1] - (v[2] - v[0]) / 2 < -1).count();
    Ok(format!("{} cells, {n} traces equal ([211] at f < −1 from the unsimplified sum: {low} cells)", cells.len()))
}

fn oracle_sweep(d: &Arc<RootDatum>, cells: &[Vec<i64>]) -> Result<(usize, usize), String> {
    let g = d.weyl_group();
    let engines = class_engines(d);
    let classes: Vec<(usize, zerowt::WeylElement, zerowt::TorusPoint)> = g
        .classes()
        .iter()
        .enumerate()
        .filter_map(|(j, c)| {
            let w = g.element(d, c.representative);
            canonical_torsion_for(d, &w).map(|t| (j, w, t))
        })
        .collect();
    let limit = BigInt::from(1_000_000);
    let small: Vec<&Vec<i64>> =
        cells.iter().filter(|mu| d.weyl_dimension(&Weight(mu.to_vec())).to_integer() <= limit).collect();
    let bad: Vec<String> = small
        .par_iter()
        .flat_map_iter(|mu| {
            let w = Weight(mu.to_vec());
            let table = freudenthal(d, &w.sub(&d.rho), DEFAULT_CAP).unwrap();
            classes
                .iter()
                .filter_map(|(j, el, t)| {
                    let want = oracle_trace_from(d, &table, el, t);
                    let got = engines[*j].as_ref().unwrap().trace(&w);
                    match (got, want) {
                        (Ok(a), Ok(b)) if a == b => None,
                        (a, b) => Some(format!("{} class {j} at {mu:?}: engine {a:?}, oracle {b:?}", d.label)),
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    if bad.is_empty() {
        Ok((small.len(), small.len() * classes.len()))
    } else {
        Err(format!("{} mismatches, first: {}", bad.len(), bad[0]))
    }
}

fn criterion_5() -> Outcome {
    let mut parts = Vec::new();
    for (label, cells) in [("A2", su3_cells()), ("C2", sp4_cells()), ("G2", g2_cells()), ("A3", su4_cells())] {
        let d = datum(label).unwrap();
        let (c, n) = oracle_sweep(&d, &cells)?;
        parts.push(format!("{label} {c} cells/{n} traces"));
    }
    Ok(format!("oracle equals engine: {}", parts.join(", ")))
}

/// `μ ≡ coset (mod m)` with positive entries.
fn sample_in(coset: &[i64], m: i64, rng: &mut ChaCha8Rng, spread: i64) -> Vec<i64> {
    coset.iter().map(|&c| if c == 0 { m } else { c } + m * rng.gen_range(0..=spread)).collect()
}

fn printed_numerator(t: &MonomialTable, row: usize, mu: &[i64]) -> BigInt {
    let r = &t.rows[row];
    r.factors
        .iter()
        .fold(BigInt::from(r.sign), |acc, &f| acc * t.forms[f].iter().zip(mu).map(|(a, b)| a * b).sum::<i64>())
}

/// Engine `tr(w)` × scale against every printed row on sampled μ.
fn monomial_rows(group: &str, class: &str, per_row: usize, spread: i64, seed: u64) -> Result<usize, String> {
    let t = monomial_table(group).map_err(|e| e.to_string())?;
    let d = datum(group).unwrap();
    let e = ClassEngine::new(d.clone(), &parse_class(&d, class).unwrap(), None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n = 0;
    for (k, row) in t.rows.iter().enumerate() {
        for _ in 0..per_row {
            let mu = sample_in(&row.coset, t.modulus, &mut rng, spread);
            let got = BigInt::from(e.trace(&Weight(mu.clone())).unwrap()) * t.scale;
            let want = printed_numerator(t, k, &mu);
            if got != want {
                return Err(format!("row {} at {mu:?}: {} × tr = {got}, monomial {want}", row.name, t.scale));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn mu_set(r: &zerowt::SearchReport, pred: impl Fn(&Verdict) -> bool) -> BTreeSet<Vec<i64>> {
    r.candidates.iter().filter(|c| pred(&c.verdict)).map(|c| c.mu.clone()).collect()
}

fn is_irreducible(v: &Verdict) -> bool {
    matches!(v, Verdict::Irreducible(_))
}

fn criterion_6() -> Outcome {
    let n = monomial_rows("D4", "w0", 100, 6, 6)?;
    let r = search_irreducible("D4", None).map_err(|e| e.to_string())?;
    let known: BTreeSet<Vec<i64>> =
        [[1, 1, 1, 1], [3, 1, 1, 1], [1, 1, 3, 1], [1, 1, 1, 3], [1, 2, 1, 1]].iter().map(|v| v.to_vec()).collect();
    let irr = mu_set(&r, is_irreducible);
    if irr != known {
        return Err(format!("irreducible set {irr:?}"));
    }
    let extra = r.candidates.iter().find(|c| c.mu == [5, 1, 1, 1]).ok_or("(5,1,1,1) is not a candidate")?;
    if extra.trace != 6 || extra.dim != Some(6) || is_irreducible(&extra.verdict) {
        return Err(format!("(5,1,1,1): {extra:?}"));
    }
    Ok(format!(
        "{n} sampled μ match the 3 coset polynomials; 5 known μ irreducible; (5,1,1,1) tr = dim = 6, {:?}",
        extra.verdict
    ))
}

fn criterion_7() -> Outcome {
    let n = monomial_rows("F4", "w0", 20, 4, 7)?;
    let r = search_irreducible("F4", None).map_err(|e| e.to_string())?;
    let expect: [([i64; 4], i64, i64); 5] = [
        ([1, 1, 1, 1], 1, 1),
        ([2, 1, 1, 1], -4, 4),
        ([1, 1, 1, 2], 2, 2),
        ([2, 2, 1, 1], 4, 228),
        ([1, 1, 1, 3], 12, 12),
    ];
    for (mu, tr, dim) in expect {
        let c = r.candidates.iter().find(|c| c.mu == mu).ok_or(format!("{mu:?} is not a candidate"))?;
        if c.trace != tr || c.dim != Some(dim) {
            return Err(format!("{mu:?}: tr {} dim {:?}, expected {tr}/{dim}", c.trace, c.dim));
        }
    }
    let irr = mu_set(&r, is_irreducible);
    let want: BTreeSet<Vec<i64>> = [[1, 1, 1, 1], [2, 1, 1, 1], [1, 1, 1, 2]].iter().map(|v| v.to_vec()).collect();
    if irr != want {
        return Err(format!("irreducible set {irr:?}"));
    }
    let d = datum("F4").unwrap();
    let mu = Weight(vec![2, 2, 1, 1]);
    let kostant = zero_weight_dimension(&d, &mu).map_err(|e| e.to_string())?;
    let freud = freudenthal(&d, &mu.sub(&d.rho), DEFAULT_CAP).map_err(|e| e.to_string())?.zero_weight();
    if kostant != 228 || freud != 228 {
        return Err(format!("dim V^T at (2,2,1,1): Kostant {kostant}, Freudenthal {freud}"));
    }
    let cox = ClassEngine::new(d.clone(), &parse_class(&d, "cox").unwrap(), None).unwrap();
    let tc = cox.trace(&Weight(vec![1, 1, 1, 3])).unwrap();
    if tc != 0 {
        return Err(format!("tr(cox) at (1,1,1,3) is {tc}"));
    }
    let others: Vec<String> = r
        .candidates
        .iter()
        .filter(|c| !expect.iter().any(|(m, _, _)| c.mu == m))
        .map(|c| format!("{:?} tr {}", c.mu, c.trace))
        .collect();
    Ok(format!(
        "{n} sampled μ match all 12 rows; candidate pairs reproduced; dim 228 by Kostant and Freudenthal; \
         tr(cox) = 0 at (1,1,1,3); further candidates {}",
        if others.is_empty() { "none".into() } else { others.join(", ") }
    ))
}

fn criterion_8() -> Outcome {
    let t = monomial_table("E6").map_err(|e| e.to_string())?;
    let d = datum("E6").unwrap();
    let e = ClassEngine::new(d.clone(), &parse_class(&d, "cox^4").unwrap(), None).unwrap();
    let flagged = t.inconsistent_rows();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let theta = |v: &[i64]| vec![v[4], v[3], v[2], v[1], v[0], v[5]];
    let mut notes = Vec::new();
    let mut checked = 0;
    for (k, row) in t.rows.iter().enumerate() {
        let required = ["y1", "y2", "y3", "y4", "z1", "z2"].contains(&row.name.as_str());
        let neg: Vec<i64> = row.coset.iter().map(|c| (-c).rem_euclid(3)).collect();
        let mut variants = vec![(row.coset.clone(), 1, false), (neg.clone(), -1, false)];
        if row.name.starts_with('z') {
            variants.push((theta(&row.coset), 1, true));
            variants.push((theta(&neg), -1, true));
        }
        let (mut printed_ok, mut derived_ok) = (true, true);
        for (coset, sign, th) in variants {
            for _ in 0..10 {
                let mu = sample_in(&coset, 3, &mut rng, 3);
                let got = e.trace(&Weight(mu.clone())).unwrap();
                let printed = t.evaluate_row(k, &mu, th).map(|v| sign * v);
                let derived = t.evaluate_row_derived(k, &mu, th).map(|v| sign * v);
                printed_ok &= printed == Ok(got);
                derived_ok &= derived == Ok(got);
                checked += 1;
            }
        }
        if !derived_ok {
            return Err(format!("row {}: derived monomial disagrees with the engine", row.name));
        }
        let is_flagged = flagged.contains(&row.name);
        if printed_ok == is_flagged {
            return Err(format!("row {}: printed agreement {printed_ok}, flagged {is_flagged}", row.name));
        }
        if !printed_ok {
            notes.push(format!("{}{}", row.name, if required { " (required)" } else { "" }));
        }
    }
    let uncovered = t.uncovered_cosets().map_err(|e| e.to_string())?;
    for x in &uncovered {
        for _ in 0..10 {
            let mu = sample_in(x, 3, &mut rng, 3);
            let got = e.trace(&Weight(mu.clone())).unwrap();
            let derived = t.evaluate_derived(&mu).map_err(|e| e.to_string())?;
            if derived != got {
                return Err(format!("uncovered coset at {mu:?}: engine {got}, coset-derived {derived}"));
            }
            checked += 1;
        }
    }
    let small: [([i64; 6], i64, &str); 7] = [
        ([1, 1, 1, 1, 1, 1], 1, "1_p"),
        ([1, 1, 1, 1, 1, 2], -3, "6_p"),
        ([2, 1, 1, 1, 2, 1], 2, "20_p"),
        ([4, 1, 1, 1, 1, 1], 6, "24_p"),
        ([1, 1, 1, 1, 4, 1], 6, "24_p"),
        ([2, 2, 1, 1, 1, 1], -8, "64_p"),
        ([1, 1, 1, 2, 2, 1], -8, "64_p"),
    ];
    let r = search_irreducible("E6", None).map_err(|e| e.to_string())?;
    for (mu, tr, name) in small {
        let got = e.trace(&Weight(mu.to_vec())).unwrap();
        if got != tr {
            return Err(format!("tr(cox^4) at {mu:?} is {got}, expected {tr}"));
        }
        let c = r.candidates.iter().find(|c| c.mu == mu).ok_or(format!("{mu:?} not among candidates"))?;
        if c.verdict != Verdict::Irreducible(name.into()) {
            return Err(format!("{mu:?}: {:?}, expected {name}", c.verdict));
        }
    }
    let irr = mu_set(&r, is_irreducible);
    if irr.len() != small.len() {
        return Err(format!("search reports {} irreducible μ", irr.len()));
    }
    Ok(format!(
        "{checked} sampled μ over all 28 rows (with −x and ϑ images) and {} cosets no row reaches; printed rows \
         refuted by the engine and matched by the derived monomial: {}; small table reproduced and confirmed \
         irreducible",
        uncovered.len(),
        notes.join(", ")
    ))
}

fn criterion_9() -> Outcome {
    let checks: [(&str, fn() -> Result<(), String>); 7] = [
        ("integrality", || common::integrality(40)),
        ("class functions", || common::conjugation_invariance(50)),
        ("duality", || common::duality(30)),
        ("μ ∉ ρ+Q", || common::outside_root_lattice(30)),
        ("Coxeter", || common::coxeter_traces(200)),
        ("orbit-stabilizer", || common::orbit_stabilizer(50)),
        ("partitions", || common::partitions_match_enumeration(200)),
    ];
    let mut done = Vec::new();
    for (name, f) in checks {
        f().map_err(|e| format!("{name}: {e}"))?;
        done.push(name);
    }
    Ok(format!("all hold: {}", done.join(", ")))
}

fn main() {
    let results = [
        run(1, "SU3 grid", Some(secs(10)), criterion_1),
        run(2, "Sp4 grid", Some(secs(60)), criterion_2),
        run(3, "G2 grid", Some(secs(60)), criterion_3),
        run(4, "SU4 grid", Some(secs(120)), criterion_4),
        run(5, "oracle equivalence", Some(secs(600)), criterion_5),
        run(6, "D4 w0 and search", None, criterion_6),
        run(7, "F4 w0 and search", Some(secs(600)), criterion_7),
        run(8, "E6 cox^4 table", Some(secs(1200)), criterion_8),
        run(9, "property suite", Some(secs(300)), criterion_9),
    ];
    let passed = results.iter().filter(|&&x| x).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
