mod args;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::Parser;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use args::{parse_class_torsion, torus_point, Cli, Command, Format, Source, TraceArgs, WeightArgs};
use zerowt::golden::{golden_value, monomial_table, table_classes};
use zerowt::oracle::{freudenthal, oracle_trace, oracle_trace_from, DEFAULT_CAP};
use zerowt::trace::canonical_torsion_for;
use zerowt::zchar::{class_label, format_decomposition};
use zerowt::{
    character_table, datum, decompose, parse_class, search_irreducible, trace, zchar, Error, RootDatum, TorusPoint,
    Weight, WeylElement,
};

/// Everything a subcommand prints, in each format.
struct Report {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    pretty: String,
}

enum Failure {
    Usage(String),
    Mismatch(Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(e: String) -> Self {
        Failure::Usage(e)
    }
}

type Outcome = Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("ZW_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Fails only if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let default = if matches!(cli.command, Command::Table { .. }) { Format::Csv } else { Format::Json };
    let format = cli.format.unwrap_or(default);
    let (report, code) = match run(cli.command) {
        Ok(r) => (r, ExitCode::SUCCESS),
        Err(Failure::Mismatch(r)) => (r, ExitCode::from(1)),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&report, format) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    code
}

fn emit(r: &Report, format: Format) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&r.json)?),
        Format::Pretty => write!(out, "{}", r.pretty),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&r.header)?;
            for row in &r.rows {
                w.write_record(row)?;
            }
            w.flush()
        }
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Datum { group } => datum_report(&group),
        Command::Trace(a) => trace_report(&a, None),
        Command::Oracle { trace, cap } => trace_report(&trace, Some(cap)),
        Command::Character { weight, torsion } => character_report(&weight, &torsion),
        Command::Decompose { weight, torsion } => decompose_report(&weight, &torsion),
        Command::Table { group, class, range, source, corrected } => {
            table_report(&group, class.as_deref(), range, source, corrected)
        }
        Command::SearchIrreducible { group, bound } => search_report(&group, bound),
        Command::Verify { group, range, cap, corrected } => verify_report(&group, range, cap, corrected),
    }
}

fn mu_text(mu: &[i64]) -> String {
    mu.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn word_text(word: &[usize]) -> String {
    if word.is_empty() {
        "-".into()
    } else {
        word.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn datum_report(group: &str) -> Outcome {
    let d = datum(group)?;
    let g = d.weyl_group();
    let classes: Vec<Value> = g
        .classes()
        .iter()
        .enumerate()
        .map(|(j, c)| {
            json!({
                "index": j,
                "label": class_label(&d, j),
                "size": c.size,
                "order": c.order,
                "word": g.word(c.representative).iter().map(|i| i + 1).collect::<Vec<_>>(),
                "canonical_torsion": canonical_torsion_for(&d, &g.element(&d, c.representative)).is_some(),
            })
        })
        .collect();
    let json = json!({
        "group": d.label.to_string(),
        "rank": d.rank(),
        "cartan": d.cartan,
        "positive_roots": d.pos_roots,
        "positive_coroots": d.pos_coroots,
        "rho": d.rho.0,
        "coxeter_number": d.coxeter_number,
        "weyl_order": g.len(),
        "classes": classes,
    });
    let mut rows = Vec::new();
    for (k, (r, c)) in d.pos_roots.iter().zip(&d.pos_coroots).enumerate() {
        rows.push(vec!["root".into(), k.to_string(), mu_text(r), mu_text(c)]);
    }
    let mut pretty = format!("{} rank {}, |W| = {}, h = {}\ncartan:\n", d.label, d.rank(), g.len(), d.coxeter_number);
    for row in &d.cartan {
        pretty += &format!("  {}\n", row.iter().map(|x| format!("{x:>3}")).collect::<String>());
    }
    pretty += &format!("positive roots (simple root coordinates): {}\n", d.pos_roots.len());
    for r in &d.pos_roots {
        pretty += &format!("  {}\n", mu_text(r));
    }
    pretty += "classes:\n";
    for (j, c) in g.classes().iter().enumerate() {
        pretty += &format!(
            "  #{j:<3} {:<10} size {:<6} order {:<3} word {}\n",
            class_label(&d, j),
            c.size,
            c.order,
            word_text(&g.word(c.representative))
        );
    }
    Ok(Report { json, header: vec!["kind", "index", "root", "coroot"], rows, pretty })
}

fn resolve(w: &WeightArgs) -> Result<(Arc<RootDatum>, Weight), Failure> {
    let d = datum(&w.group)?;
    let mu = w.sel.resolve(&d)?;
    if !mu.is_regular_dominant() {
        return Err(Error::NotRegularDominant(mu.0).into());
    }
    Ok((d, mu))
}

fn trace_report(a: &TraceArgs, oracle_cap: Option<u128>) -> Outcome {
    let (d, mu) = resolve(&a.weight)?;
    let w = parse_class(&d, &a.class)?;
    let t = a.torsion.as_ref().map(|t| torus_point(&d, t)).transpose()?;
    let (value, method) = match oracle_cap {
        None => {
            let r = trace(&d, &mu, &w, t.as_ref())?;
            (r.value, r.method.to_string())
        }
        Some(cap) => {
            let t = match t {
                Some(t) => t,
                None => canonical_torsion_for(&d, &w).ok_or(Error::MissingTorsionPoint)?,
            };
            (oracle_trace(&d, &mu, &w, &t, cap)?, "oracle".into())
        }
    };
    let json = json!({
        "group": d.label.to_string(),
        "mu": mu.0,
        "class": a.class,
        "trace": value,
        "method": method,
    });
    let rows = vec![vec![d.label.to_string(), a.class.clone(), mu_text(&mu.0), value.to_string()]];
    let pretty = format!("tr({}, V_{}^T) = {value}  [{method}]\n", a.class, mu);
    Ok(Report { json, header: vec!["group", "class", "mu", "trace"], rows, pretty })
}

fn torsion_map(d: &RootDatum, specs: &[String]) -> Result<BTreeMap<usize, TorusPoint>, Failure> {
    let n = d.weyl_group().classes().len();
    let mut m = BTreeMap::new();
    for s in specs {
        let (j, t) = parse_class_torsion(s)?;
        if j >= n {
            return Err(format!("class index {j} out of range; {} has {n} classes", d.label).into());
        }
        m.insert(j, torus_point(d, &t)?);
    }
    Ok(m)
}

fn character_report(w: &WeightArgs, torsion: &[String]) -> Outcome {
    let (d, mu) = resolve(w)?;
    let chi = zchar::full_character_with(&d, &mu, &torsion_map(&d, torsion)?)?;
    let classes: Vec<Value> = chi
        .classes
        .iter()
        .enumerate()
        .map(
            |(j, c)| json!({"index": j, "label": class_label(&d, j), "word": c.word, "size": c.size, "trace": c.value}),
        )
        .collect();
    let json = json!({"group": chi.group, "mu": chi.mu, "classes": classes});
    let rows = chi
        .classes
        .iter()
        .enumerate()
        .map(|(j, c)| vec![chi.group.clone(), class_label(&d, j), mu_text(&chi.mu), c.value.to_string()])
        .collect();
    let mut pretty = format!("{} μ = {mu}, dim V^T = {}\n", chi.group, chi.dim());
    for (j, c) in chi.classes.iter().enumerate() {
        pretty += &format!("  #{j:<3} {:<10} size {:<6} {:>8}\n", class_label(&d, j), c.size, c.value);
    }
    Ok(Report { json, header: vec!["group", "class", "mu", "trace"], rows, pretty })
}

fn decompose_report(w: &WeightArgs, torsion: &[String]) -> Outcome {
    let (d, mu) = resolve(w)?;
    let table = character_table(&d)?;
    let chi = zchar::full_character_with(&d, &mu, &torsion_map(&d, torsion)?)?;
    let parts = decompose(&chi, &table)?;
    let json = json!({
        "group": chi.group,
        "mu": chi.mu,
        "dim": chi.dim(),
        "decomposition": parts.iter().map(|(n, m)| json!({"name": n, "multiplicity": m})).collect::<Vec<_>>(),
    });
    let rows = parts.iter().map(|(n, m)| vec![chi.group.clone(), mu_text(&chi.mu), n.clone(), m.to_string()]).collect();
    let pretty = format!("V_{mu}^T = {}  (dim {})\n", format_decomposition(&parts), chi.dim());
    Ok(Report { json, header: vec!["group", "mu", "irreducible", "multiplicity"], rows, pretty })
}

/// Cells of `range^rank` inside the domain of the closed-form table, in lexicographic order.
fn grid(
    group: &str,
    rank: usize,
    range: &std::ops::RangeInclusive<i64>,
    probe: &str,
) -> Result<Vec<Vec<i64>>, Failure> {
    let (lo, hi) = (*range.start(), *range.end());
    let total = ((hi - lo + 1) as u128).pow(rank as u32);
    if total > 50_000_000 {
        return Err(format!("grid of {total} cells is too large; narrow --range").into());
    }
    let mut cells = Vec::new();
    let mut v = vec![lo; rank];
    loop {
        match golden_value(group, probe, &v) {
            Err(Error::OutsideDomain(_)) => {}
            _ => cells.push(v.clone()),
        }
        let mut i = rank;
        loop {
            if i == 0 {
                return Ok(cells);
            }
            i -= 1;
            if v[i] < hi {
                v[i] += 1;
                break;
            }
            v[i] = lo;
        }
    }
}

fn engines_for(d: &Arc<RootDatum>, classes: &[&str]) -> Result<Vec<(WeylElement, zerowt::ClassEngine)>, Failure> {
    classes
        .iter()
        .map(|c| {
            let w = parse_class(d, c)?;
            let e = zerowt::ClassEngine::new(d.clone(), &w, None)?;
            Ok((w, e))
        })
        .collect()
}

/// Closed-form value; `corrected` swaps the printed D4/F4/E6 rows for the coset-derived ones.
fn golden_cell(group: &str, class: &str, mu: &[i64], corrected: bool) -> Result<i64, Error> {
    match monomial_table(group) {
        Ok(t) if corrected => t.evaluate_derived(mu),
        _ => golden_value(group, class, mu),
    }
}

fn table_report(
    group: &str,
    class: Option<&str>,
    range: std::ops::RangeInclusive<i64>,
    source: Source,
    corrected: bool,
) -> Outcome {
    let (label, all) = table_classes(group)?;
    let classes: Vec<&str> = match class {
        Some(c) => {
            // Validate against the table's own names.
            golden_value(group, c, &vec![1; datum(label)?.rank()]).or_else(|e| match e {
                Error::UnknownClass { .. } => Err(e),
                _ => Ok(0),
            })?;
            vec![c]
        }
        None => all.to_vec(),
    };
    let d = datum(label)?;
    let cells = grid(group, d.rank(), &range, classes[0])?;
    let engines = match source {
        Source::Engine => Some(engines_for(&d, &classes)?),
        Source::Golden => None,
    };
    let rows: Vec<Vec<String>> = cells
        .par_iter()
        .map(|mu| {
            classes
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let v = match &engines {
                        Some(e) => e[k].1.trace(&Weight(mu.clone()))?,
                        None => golden_cell(group, c, mu, corrected)?,
                    };
                    Ok(vec![group.to_string(), c.to_string(), mu_text(mu), v.to_string()])
                })
                .collect::<Result<Vec<_>, Error>>()
        })
        .collect::<Result<Vec<_>, Error>>()?
        .into_iter()
        .flatten()
        .collect();
    let json = Value::Array(
        rows.iter()
            .map(|r| json!({"group": r[0], "class": r[1], "mu": r[2], "trace": r[3].parse::<i64>().unwrap()}))
            .collect(),
    );
    let pretty = rows.iter().map(|r| format!("{:<8} ({}) {:>10}\n", r[1], r[2], r[3])).collect();
    Ok(Report { json, header: vec!["group", "class", "mu", "trace"], rows, pretty })
}

fn search_report(group: &str, bound: Option<i64>) -> Outcome {
    let r = search_irreducible(group, bound)?;
    let json = serde_json::to_value(&r).map_err(|e| e.to_string())?;
    let verdict = |v: &zerowt::Verdict| match v {
        zerowt::Verdict::Irreducible(s) => ("irreducible", s.clone()),
        zerowt::Verdict::Eliminated(s) => ("eliminated", s.clone()),
        zerowt::Verdict::Undecided(s) => ("undecided", s.clone()),
    };
    let rows = r
        .candidates
        .iter()
        .map(|c| {
            let (v, detail) = verdict(&c.verdict);
            vec![
                r.group.clone(),
                mu_text(&c.mu),
                c.trace.to_string(),
                c.dim.map(|x| x.to_string()).unwrap_or_default(),
                v.into(),
                detail,
            ]
        })
        .collect();
    let mut pretty = format!("{}: tr({}) targets {:?} (mod {})\n", r.group, r.class, r.targets, r.modulus);
    for c in &r.candidates {
        let (v, detail) = verdict(&c.verdict);
        let dim = c.dim.map(|x| format!(" dim {x}")).unwrap_or_default();
        pretty += &format!("  ({}) tr {}{dim}: {v} {detail}\n", mu_text(&c.mu), c.trace);
    }
    for f in &r.infinite_families {
        pretty += &format!("  residue ({}) mod {}: infinitely many μ with |tr| = 1\n", mu_text(f), r.modulus);
    }
    for n in &r.notes {
        pretty += &format!("  note: {n}\n");
    }
    Ok(Report { json, header: vec!["group", "mu", "trace", "dim", "verdict", "detail"], rows, pretty })
}

fn verify_report(group: &str, range: std::ops::RangeInclusive<i64>, cap: u128, corrected: bool) -> Outcome {
    let (label, classes) = table_classes(group)?;
    let d = datum(label)?;
    let cells = grid(group, d.rank(), &range, classes[0])?;
    let engines = engines_for(&d, classes)?;
    let torsion: Vec<Option<TorusPoint>> = engines.iter().map(|(w, _)| canonical_torsion_for(&d, w)).collect();
    let flagged = monomial_table(group).map(|t| t.inconsistent_rows()).unwrap_or_default();
    let row_name = |mu: &[i64]| -> Option<String> {
        let t = monomial_table(group).ok()?;
        t.locate(mu).map(|m| t.rows[m.row].name.clone())
    };
    let cap = BigInt::from(cap);

    let per_cell: Vec<(usize, usize, Vec<Value>)> = cells
        .par_iter()
        .map(|mu| {
            let w = Weight(mu.clone());
            let small = d.weyl_dimension(&w).to_integer() <= cap;
            let table = if small { freudenthal(&d, &w.sub(&d.rho), DEFAULT_CAP).ok() } else { None };
            let (mut compared, mut oracled, mut bad) = (0, 0, Vec::new());
            for (k, c) in classes.iter().enumerate() {
                let engine = engines[k].1.trace(&w);
                let golden = golden_cell(group, c, mu, corrected);
                let oracle = match (&table, &torsion[k]) {
                    (Some(tb), Some(t)) => Some(oracle_trace_from(&d, tb, &engines[k].0, t)),
                    _ => None,
                };
                compared += 1;
                oracled += oracle.is_some() as usize;
                let agree = match (&engine, &golden) {
                    (Ok(a), Ok(b)) => a == b && oracle.as_ref().is_none_or(|o| o.as_ref() == Ok(a)),
                    _ => false,
                };
                if !agree {
                    let show = |r: &Result<i64, Error>| match r {
                        Ok(v) => json!(v),
                        Err(e) => json!(e.to_string()),
                    };
                    let mut m = json!({
                        "mu": mu,
                        "class": c,
                        "engine": show(&engine),
                        "golden": show(&golden),
                        "oracle": oracle.as_ref().map(show),
                    });
                    if let Some(name) = row_name(mu) {
                        m["row"] = json!(name);
                        m["row_flagged"] = json!(flagged.contains(&name));
                    }
                    bad.push(m);
                }
            }
            (compared, oracled, bad)
        })
        .collect();
    let compared: usize = per_cell.iter().map(|x| x.0).sum();
    let oracled: usize = per_cell.iter().map(|x| x.1).sum();
    let mismatches: Vec<Value> = per_cell.into_iter().flat_map(|x| x.2).collect();
    let json = json!({
        "group": group,
        "range": [range.start(), range.end()],
        "corrected": corrected,
        "cells": cells.len(),
        "comparisons": compared,
        "oracle_checks": oracled,
        "mismatches": mismatches,
    });
    let rows = mismatches
        .iter()
        .map(|m| {
            let mu: Vec<i64> = serde_json::from_value(m["mu"].clone()).unwrap_or_default();
            vec![
                m["class"].as_str().unwrap_or("").to_string(),
                mu_text(&mu),
                m["engine"].to_string(),
                m["golden"].to_string(),
                m["oracle"].to_string(),
            ]
        })
        .collect();
    let mut pretty = format!(
        "{group}: {} cells, {compared} engine/golden comparisons, {oracled} oracle checks, {} mismatches\n",
        cells.len(),
        mismatches.len()
    );
    for m in &mismatches {
        pretty += &format!("  {m}\n");
    }
    let report = Report { json, header: vec!["class", "mu", "engine", "golden", "oracle"], rows, pretty };
    if mismatches.is_empty() {
        Ok(report)
    } else {
        Err(Failure::Mismatch(report))
    }
}
