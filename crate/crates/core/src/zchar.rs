//! Characters of `W` on zero weight spaces: assembly, decomposition, and the search for
//! irreducible ones.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use parking_lot::Mutex;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::TorusPoint;
use crate::error::{Error, Result};
use crate::lattice::{datum as lookup, CartanType, RootDatum, Weight};
use crate::trace::{ClassEngine, Method};
use crate::weyl::{parse_class, WeylElement};

#[derive(Debug, Clone, Serialize)]
pub struct TableClass {
    pub size: usize,
    pub order: usize,
    /// 0-based letters.
    pub word: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Irreducible {
    pub name: String,
    /// Lowest degree of the symmetric algebra containing it.
    pub b: usize,
    pub values: Vec<i64>,
}

impl Irreducible {
    pub fn degree(&self) -> i64 {
        self.values[0]
    }
}

/// Columns are in the order of `WeylGroup::classes`.
#[derive(Debug, Clone, Serialize)]
pub struct CharacterTable {
    pub group: String,
    pub order: usize,
    pub classes: Vec<TableClass>,
    pub irreducibles: Vec<Irreducible>,
}

const SHIPPED: &[(&str, &str)] = &[
    ("A1", include_str!("../data/chartab/A1.txt")),
    ("A2", include_str!("../data/chartab/A2.txt")),
    ("A3", include_str!("../data/chartab/A3.txt")),
    ("A4", include_str!("../data/chartab/A4.txt")),
    ("A5", include_str!("../data/chartab/A5.txt")),
    ("B2", include_str!("../data/chartab/B2.txt")),
    ("B3", include_str!("../data/chartab/B3.txt")),
    ("B4", include_str!("../data/chartab/B4.txt")),
    ("C2", include_str!("../data/chartab/C2.txt")),
    ("C3", include_str!("../data/chartab/C3.txt")),
    ("C4", include_str!("../data/chartab/C4.txt")),
    ("D4", include_str!("../data/chartab/D4.txt")),
    ("G2", include_str!("../data/chartab/G2.txt")),
    ("F4", include_str!("../data/chartab/F4.txt")),
    ("E6", include_str!("../data/chartab/E6.txt")),
];

fn bad(msg: impl Into<String>) -> Error {
    Error::BadTable(msg.into())
}

/// Parses a table and checks it against the group: class data, orthogonality, degrees.
pub fn parse_character_table(d: &RootDatum, text: &str) -> Result<CharacterTable> {
    let g = d.weyl_group();
    let mut order = 0usize;
    let mut classes = Vec::new();
    let mut irr = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let tok: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<i64>().map_err(|_| bad(format!("bad number `{s}`")));
        match tok[0] {
            "group" if tok.len() == 2 => {
                if tok[1] != d.label.to_string() {
                    return Err(bad(format!("table is for {}, not {}", tok[1], d.label)));
                }
            }
            "order" if tok.len() == 2 => order = num(tok[1])? as usize,
            "class" if tok.len() == 4 => {
                let word = if tok[3] == "-" {
                    vec![]
                } else {
                    tok[3].split('.').map(|x| num(x).map(|v| v as usize - 1)).collect::<Result<Vec<_>>>()?
                };
                classes.push(TableClass { size: num(tok[1])? as usize, order: num(tok[2])? as usize, word });
            }
            "char" if tok.len() >= 3 => irr.push(Irreducible {
                name: tok[1].to_string(),
                b: num(tok[2])? as usize,
                values: tok[3..].iter().map(|x| num(x)).collect::<Result<_>>()?,
            }),
            _ => return Err(bad(format!("unrecognized line `{line}`"))),
        }
    }
    let k = g.classes().len();
    if order != g.len() {
        return Err(bad(format!("order {order} but |W| = {}", g.len())));
    }
    if classes.len() != k || irr.len() != k {
        return Err(bad(format!("{} classes and {} characters, expected {k}", classes.len(), irr.len())));
    }
    // Map each listed class onto the group's class list.
    let mut perm = vec![usize::MAX; k];
    for (i, c) in classes.iter().enumerate() {
        let w = WeylElement::from_word(d, &c.word)?;
        let j = g.class_of_element(&w);
        let gc = &g.classes()[j];
        if perm[j] != usize::MAX || gc.size != c.size || gc.order != c.order {
            return Err(bad(format!("class line {} does not match the group", i + 1)));
        }
        perm[j] = i;
    }
    let classes: Vec<TableClass> = perm.iter().map(|&i| classes[i].clone()).collect();
    for x in irr.iter_mut() {
        if x.values.len() != k {
            return Err(bad(format!("row {} has {} values", x.name, x.values.len())));
        }
        x.values = perm.iter().map(|&i| x.values[i]).collect();
    }
    if classes.iter().map(|c| c.size).sum::<usize>() != order {
        return Err(bad("class sizes do not sum to |W|"));
    }
    if !classes[0].word.is_empty() {
        return Err(bad("first class is not the identity"));
    }
    let sq: i64 = irr.iter().map(|x| x.degree() * x.degree()).sum();
    if irr.iter().any(|x| x.degree() <= 0) || sq != order as i64 {
        return Err(bad(format!("degrees squared sum to {sq}, expected {order}")));
    }
    for (a, x) in irr.iter().enumerate() {
        for (b, y) in irr.iter().enumerate().skip(a) {
            let ip: i128 = (0..k).map(|c| classes[c].size as i128 * x.values[c] as i128 * y.values[c] as i128).sum();
            let want = if a == b { order as i128 } else { 0 };
            if ip != want {
                return Err(bad(format!("⟨{}, {}⟩ = {ip}/{order}", x.name, y.name)));
            }
        }
    }
    Ok(CharacterTable { group: d.label.to_string(), order, classes, irreducibles: irr })
}

static TABLES: OnceLock<Mutex<HashMap<CartanType, Arc<CharacterTable>>>> = OnceLock::new();

/// The shipped table for a group, validated on first use.
pub fn character_table(d: &RootDatum) -> Result<Arc<CharacterTable>> {
    let cache = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().get(&d.label) {
        return Ok(t.clone());
    }
    let label = d.label.to_string();
    let text = SHIPPED.iter().find(|(l, _)| *l == label).ok_or_else(|| Error::MissingTable(label.clone()))?.1;
    let t = Arc::new(parse_character_table(d, text)?);
    cache.lock().insert(d.label, t.clone());
    Ok(t)
}

impl CharacterTable {
    pub fn irreducible(&self, name: &str) -> Option<&Irreducible> {
        self.irreducibles.iter().find(|x| x.name == name)
    }

    /// `(1/|W|) Σ |C| a(C) b(C)`.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> BigRational {
        let s: BigInt = self.classes.iter().zip(a.iter().zip(b)).map(|(c, (x, y))| BigInt::from(c.size) * x * y).sum();
        BigRational::new(s, BigInt::from(self.order))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassValue {
    /// 1-based letters, as printed.
    pub word: Vec<usize>,
    pub size: usize,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroWeightCharacter {
    pub group: String,
    pub mu: Vec<i64>,
    pub classes: Vec<ClassValue>,
}

impl ZeroWeightCharacter {
    pub fn values(&self) -> Vec<i64> {
        self.classes.iter().map(|c| c.value).collect()
    }

    pub fn dim(&self) -> i64 {
        self.classes[0].value
    }
}

type EngineSlot = std::result::Result<ClassEngine, Error>;

static ENGINES: OnceLock<Mutex<HashMap<CartanType, Arc<Vec<EngineSlot>>>>> = OnceLock::new();

/// One engine per conjugacy class, each at its canonical torsion point.
pub fn class_engines(d: &Arc<RootDatum>) -> Arc<Vec<EngineSlot>> {
    let cache = ENGINES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(e) = cache.lock().get(&d.label) {
        return e.clone();
    }
    let g = d.weyl_group();
    let built: Vec<EngineSlot> =
        g.classes().par_iter().map(|c| ClassEngine::new(d.clone(), &g.element(d, c.representative), None)).collect();
    let built = Arc::new(built);
    cache.lock().insert(d.label, built.clone());
    built
}

/// A readable name for class `j`: `1`, `w0`, `cox`, `cox^k`, or its word.
pub fn class_label(d: &RootDatum, j: usize) -> String {
    let g = d.weyl_group();
    if j == 0 {
        return "1".into();
    }
    if g.class_of(g.longest()) == j {
        return "w0".into();
    }
    let cox = WeylElement::from_word(d, &(0..d.rank()).collect::<Vec<_>>()).expect("valid word");
    for k in 1..d.coxeter_number {
        if g.class_of_element(&cox.pow(k)) == j {
            return if k == 1 { "cox".into() } else { format!("cox^{k}") };
        }
    }
    let w = g.word(g.classes()[j].representative);
    w.iter().map(|x| format!("r{}", x + 1)).collect()
}

fn class_values(d: &RootDatum, values: Vec<i64>) -> Vec<ClassValue> {
    let g = d.weyl_group();
    g.classes()
        .iter()
        .zip(values)
        .map(|(c, value)| ClassValue {
            word: g.word(c.representative).iter().map(|x| x + 1).collect(),
            size: c.size,
            value,
        })
        .collect()
}

/// Traces on the classes that have a canonical torsion point; `None` elsewhere.
pub fn partial_character(d: &Arc<RootDatum>, mu: &Weight) -> Result<Vec<Option<i64>>> {
    let engines = class_engines(d);
    engines
        .par_iter()
        .map(|e| match e {
            Ok(e) => e.trace(mu).map(Some),
            Err(Error::MissingTorsionPoint) => Ok(None),
            Err(e) => Err(e.clone()),
        })
        .collect()
}

/// `χ_{V_μ^T}` on every class. Classes without a canonical torsion point take theirs
/// from `torsion`, keyed by class index.
pub fn full_character_with(
    d: &Arc<RootDatum>,
    mu: &Weight,
    torsion: &BTreeMap<usize, TorusPoint>,
) -> Result<ZeroWeightCharacter> {
    let g = d.weyl_group();
    let partial = partial_character(d, mu)?;
    let missing: Vec<usize> =
        (0..partial.len()).filter(|&j| partial[j].is_none() && !torsion.contains_key(&j)).collect();
    if !missing.is_empty() {
        let names: Vec<String> = missing.iter().map(|&j| format!("#{j} ({})", class_label(d, j))).collect();
        return Err(Error::UnsupportedClass(names.join(", ")));
    }
    let values = partial
        .into_iter()
        .enumerate()
        .map(|(j, v)| match v {
            Some(v) => Ok(v),
            None => {
                let w = g.element(d, g.classes()[j].representative);
                ClassEngine::new(d.clone(), &w, torsion.get(&j))?.trace(mu)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ZeroWeightCharacter { group: d.label.to_string(), mu: mu.0.clone(), classes: class_values(d, values) })
}

pub fn full_character(d: &Arc<RootDatum>, mu: &Weight) -> Result<ZeroWeightCharacter> {
    full_character_with(d, mu, &BTreeMap::new())
}

/// Multiplicities of every irreducible, in table order.
pub fn multiplicities(chi: &ZeroWeightCharacter, table: &CharacterTable) -> Result<Vec<u64>> {
    if chi.group != table.group {
        return Err(Error::Dimension { expected: table.classes.len(), got: chi.classes.len() });
    }
    let v = chi.values();
    table
        .irreducibles
        .iter()
        .map(|x| {
            let m = table.inner(&v, &x.values);
            if !m.is_integer() || m < BigRational::zero() {
                return Err(Error::NonIntegralMultiplicity(format!("{} (got {m})", x.name)));
            }
            Ok(m.to_integer().to_u64().expect("multiplicity fits"))
        })
        .collect()
}

/// Nonzero multiplicities, by name.
pub fn decompose(chi: &ZeroWeightCharacter, table: &CharacterTable) -> Result<Vec<(String, u64)>> {
    let m = multiplicities(chi, table)?;
    Ok(table.irreducibles.iter().zip(m).filter(|(_, m)| *m > 0).map(|(x, m)| (x.name.clone(), m)).collect())
}

pub fn format_decomposition(parts: &[(String, u64)]) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    parts.iter().map(|(n, m)| if *m == 1 { n.clone() } else { format!("{m}·{n}") }).collect::<Vec<_>>().join(" + ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "lowercase")]
pub enum Verdict {
    Irreducible(String),
    Eliminated(String),
    Undecided(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    pub mu: Vec<i64>,
    pub trace: i64,
    /// `dim V^T`, when it was needed.
    pub dim: Option<i64>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub group: String,
    pub class: String,
    pub modulus: i64,
    /// `χ(w)` over the irreducibles, sorted and deduplicated.
    pub targets: Vec<i64>,
    pub candidates: Vec<Candidate>,
    /// Residues mod `m` where the monomial bound never closes: every principal μ there
    /// has `|tr(w)| = 1`.
    pub infinite_families: Vec<Vec<i64>>,
    pub notes: Vec<String>,
}

/// Upper limit on any coordinate during enumeration.
pub const SEARCH_CAP: i64 = 50;
const DFS_BUDGET: usize = 20_000_000;

/// The elliptic class used by the search and its order.
fn search_class(d: &RootDatum) -> Result<(String, WeylElement, i64)> {
    let g = d.weyl_group();
    let w0 = g.element(d, g.longest());
    let r = d.rank();
    if (0..r).all(|i| (0..r).all(|j| w0.entry(i, j) == -((i == j) as i64))) {
        return Ok(("w0".into(), w0, 2));
    }
    if d.label.to_string() == "E6" {
        return Ok(("cox^4".into(), parse_class(d, "cox^4")?, 3));
    }
    Err(Error::UnsupportedClass(format!("{}: −1 ∉ W and no elliptic class of order 3 is configured", d.label)))
}

/// All nonnegative integer combinations of irreducibles matching the known class values.
/// Returns `None` when the budget runs out.
fn consistent_decompositions(table: &CharacterTable, known: &[Option<i64>], limit: usize) -> Option<Vec<Vec<u64>>> {
    let cols: Vec<usize> = (0..known.len()).filter(|&j| known[j].is_some()).collect();
    let target: Vec<i64> = cols.iter().map(|&j| known[j].unwrap()).collect();
    let rows: Vec<Vec<i64>> = table.irreducibles.iter().map(|x| cols.iter().map(|&j| x.values[j]).collect()).collect();
    let deg: Vec<i64> = table.irreducibles.iter().map(|x| x.degree()).collect();
    let dim = known[0].expect("identity class is always computable");
    let mut out = Vec::new();
    let mut counts = vec![0u64; rows.len()];
    let mut budget = DFS_BUDGET;
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        left: i64,
        res: &mut Vec<i64>,
        rows: &[Vec<i64>],
        deg: &[i64],
        counts: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
        budget: &mut usize,
        limit: usize,
    ) -> bool {
        if *budget == 0 || out.len() > limit {
            return false;
        }
        *budget -= 1;
        // |χ(g)| ≤ χ(1) bounds what the remaining degree can still contribute.
        if res.iter().any(|r| r.abs() > left) {
            return true;
        }
        if left == 0 {
            if res.iter().all(|&r| r == 0) {
                out.push(counts.clone());
            }
            return true;
        }
        if i == rows.len() {
            return true;
        }
        let mut k = 0;
        loop {
            if !go(i + 1, left - k * deg[i], res, rows, deg, counts, out, budget, limit) {
                return false;
            }
            if left - (k + 1) * deg[i] < 0 {
                break;
            }
            k += 1;
            counts[i] += 1;
            for (r, v) in res.iter_mut().zip(&rows[i]) {
                *r -= v;
            }
        }
        for (r, v) in res.iter_mut().zip(&rows[i]) {
            *r += k * v;
        }
        counts[i] = 0;
        true
    }
    let mut res = target;
    if go(0, dim, &mut res, &rows, &deg, &mut counts, &mut out, &mut budget, limit) {
        Some(out)
    } else {
        None
    }
}

/// Weyl dimension of `V_μ` above which `dim V^T` is computed last.
const EAGER_DIM: u64 = 10_000_000;

fn judge(
    d: &Arc<RootDatum>,
    table: &CharacterTable,
    mu: &Weight,
    wj: usize,
    wname: &str,
    tr: i64,
) -> Result<(Option<i64>, Verdict)> {
    let engines = class_engines(d);
    let g = d.weyl_group();
    let k = g.classes().len();
    let mut known: Vec<Option<i64>> = vec![None; k];
    known[wj] = Some(tr);
    let mut fits: Vec<&Irreducible> = table.irreducibles.iter().filter(|x| x.values[wj] == tr).collect();

    // Cheap classes first: the Coxeter class, then by dimension of the fixed torus.
    // The identity leads when V_μ is small and trails otherwise.
    let cox = WeylElement::from_word(d, &(0..d.rank()).collect::<Vec<_>>())?;
    let cj = g.class_of_element(&cox);
    let mut order: Vec<usize> = (1..k).filter(|&j| j != cj && j != wj && engines[j].is_ok()).collect();
    order.sort_by_key(|&j| engines[j].as_ref().map(|e| e.info.d).unwrap_or(usize::MAX));
    order.insert(0, cj);
    let small = d.weyl_dimension(mu).to_integer() <= BigInt::from(EAGER_DIM);
    if small {
        order.insert(0, 0);
    } else {
        order.push(0);
    }
    for &j in &order {
        let v = engines[j].as_ref().map_err(Clone::clone)?.trace(mu)?;
        known[j] = Some(v);
        if j == 0 && !table.irreducibles.iter().any(|x| x.degree() == v) {
            return Ok((Some(v), Verdict::Eliminated(format!("dim V^T = {v} is not the degree of an irreducible"))));
        }
        let before: Vec<String> = fits.iter().map(|x| format!("{}({})", x.name, x.values[j])).collect();
        fits.retain(|x| x.values[j] == v);
        if fits.is_empty() {
            let name = class_label(d, j);
            let why = if j == 0 {
                format!("no irreducible of degree {v} has χ({wname}) = {tr}")
            } else {
                format!("tr({name}) = {v}, but the remaining candidates give {}", before.join(", "))
            };
            return Ok((known[0], Verdict::Eliminated(why)));
        }
    }
    let dim = known[0];
    if known.iter().all(Option::is_some) {
        let chi = ZeroWeightCharacter {
            group: table.group.clone(),
            mu: mu.0.clone(),
            classes: class_values(d, known.into_iter().map(Option::unwrap).collect()),
        };
        let parts = decompose(&chi, table)?;
        return Ok((
            dim,
            match parts.as_slice() {
                [(n, 1)] => Verdict::Irreducible(n.clone()),
                _ => Verdict::Eliminated(format!("V^T = {}", format_decomposition(&parts))),
            },
        ));
    }
    let unknown: Vec<String> = (0..k).filter(|&j| known[j].is_none()).map(|j| class_label(d, j)).collect();
    let Some(all) = consistent_decompositions(table, &known, 64) else {
        return Ok((
            dim,
            Verdict::Undecided(format!("decomposition search exhausted; unknown classes {}", unknown.join(", "))),
        ));
    };
    let single: Vec<&str> = all
        .iter()
        .filter(|c| c.iter().sum::<u64>() == 1)
        .map(|c| table.irreducibles[c.iter().position(|&m| m == 1).unwrap()].name.as_str())
        .collect();
    Ok((
        dim,
        match (single.len(), all.len()) {
            (1, 1) => Verdict::Irreducible(single[0].to_string()),
            (0, _) => Verdict::Eliminated(format!(
                "none of the {} decompositions fitting the computed classes is irreducible",
                all.len()
            )),
            _ => Verdict::Undecided(format!(
                "{} decompositions fit the computed classes; unknown classes {}",
                all.len(),
                unknown.join(", ")
            )),
        },
    ))
}

/// Finds every μ whose zero weight space could be irreducible, judged through the traces
/// of an elliptic regular class (`w0 = −1` when available, else `cox^4` for E6).
/// `bound` overrides the coordinate cap.
pub fn search_irreducible(group: &str, bound: Option<i64>) -> Result<SearchReport> {
    let d = lookup(group)?;
    let table = character_table(&d)?;
    let (wname, w, m) = search_class(&d)?;
    let g = d.weyl_group();
    let wj = g.class_of_element(&w);
    let cap = bound.unwrap_or(SEARCH_CAP);
    let mut targets: Vec<i64> = table.irreducibles.iter().map(|x| x.values[wj]).filter(|&v| v != 0).collect();
    targets.sort();
    targets.dedup();
    let tmax = targets.iter().map(|v| v.abs()).max().unwrap_or(0) as i128;

    let r = d.rank();
    let forms = &d.pos_coroots;
    let pair = |mu: &[i64], f: &[i64]| mu.iter().zip(f).map(|(a, b)| (a * b) as i128).sum::<i128>();
    let rho = &d.rho.0;
    let base: Vec<usize> = (0..forms.len()).filter(|&i| pair(rho, &forms[i]) % m as i128 == 0).collect();
    let den: i128 = base.iter().map(|&i| pair(rho, &forms[i])).product();
    let engine = ClassEngine::with_method(d.clone(), &w, None, Method::Ellreg)?;

    // Residues mod m, as representatives in 1..=m.
    let residues: Vec<Vec<i64>> = (0..(m as usize).pow(r as u32))
        .map(|mut x| {
            (0..r)
                .map(|_| {
                    let c = (x % m as usize) as i64;
                    x /= m as usize;
                    if c == 0 {
                        m
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let per_residue: Vec<(Vec<Weight>, Option<Vec<i64>>)> = residues
        .par_iter()
        .map(|res| {
            let rf: Vec<&Vec<i64>> = forms.iter().filter(|f| pair(res, f) % m as i128 == 0).collect();
            if rf.len() != base.len() {
                return (vec![], None);
            }
            if (0..r).any(|i| rf.iter().all(|f| f[i] == 0)) {
                return (vec![], Some(res.clone()));
            }
            // Down-set of μ = res + m·k under `Π ⟨μ, α̌⟩ ≤ tmax · den`, grown one coordinate at a time.
            let mut out = Vec::new();
            let mut mu = res.clone();
            fn walk(i: usize, mu: &mut Vec<i64>, m: i64, cap: i64, ok: &dyn Fn(&[i64]) -> bool, out: &mut Vec<Weight>) {
                if i == mu.len() {
                    out.push(Weight(mu.clone()));
                    return;
                }
                let start = mu[i];
                while mu[i] <= cap && ok(mu) {
                    walk(i + 1, mu, m, cap, ok, out);
                    mu[i] += m;
                }
                mu[i] = start;
            }
            let ok = |mu: &[i64]| {
                let mut p: i128 = 1;
                for f in &rf {
                    p = p.saturating_mul(pair(mu, f));
                }
                p <= tmax * den
            };
            walk(0, &mut mu, m, cap, &ok, &mut out);
            (out, None)
        })
        .collect();
    let mut infinite_families: Vec<Vec<i64>> = per_residue.iter().filter_map(|(_, f)| f.clone()).collect();
    infinite_families.sort();
    let mut pool: Vec<Weight> = per_residue.into_iter().flat_map(|(v, _)| v).collect();
    pool.sort();

    let hits: Vec<(Weight, i64)> = pool
        .par_iter()
        .map(|mu| engine.trace(mu).map(|t| (mu.clone(), t)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, t)| *t != 0 && targets.contains(t))
        .collect();
    let mut candidates = hits
        .par_iter()
        .map(|(mu, t)| {
            let (dim, verdict) = judge(&d, &table, mu, wj, &wname, *t)?;
            Ok(Candidate { mu: mu.0.clone(), trace: *t, dim, verdict })
        })
        .collect::<Result<Vec<_>>>()?;
    candidates.sort_by(|a, b| a.mu.cmp(&b.mu));

    let mut notes = Vec::new();
    let vanishing: Vec<&str> =
        table.irreducibles.iter().filter(|x| x.values[wj] == 0).map(|x| x.name.as_str()).collect();
    if !vanishing.is_empty() {
        notes.push(format!(
            "irreducibles with χ({wname}) = 0 are invisible to this search and stay undecided: {}",
            vanishing.join(", ")
        ));
    }
    if !infinite_families.is_empty() {
        notes.push(format!("{} residue classes mod {m} have an empty monomial", infinite_families.len()));
    }
    Ok(SearchReport {
        group: d.label.to_string(),
        class: wname,
        modulus: m,
        targets,
        candidates,
        infinite_families,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_tables_validate() {
        for l in CartanType::SUPPORTED {
            let d = lookup(l).unwrap();
            let t = character_table(&d).unwrap();
            assert_eq!(t.irreducibles.len(), d.weyl_group().classes().len());
        }
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let d = lookup("G2").unwrap();
        let text = SHIPPED.iter().find(|(l, _)| *l == "G2").unwrap().1;
        let broken = text.replace("char refl2 2 2 0 0 -1 -1 2", "char refl2 2 2 0 0 1 -1 2");
        assert_ne!(broken, text);
        assert!(matches!(parse_character_table(&d, &broken), Err(Error::BadTable(_))));
    }

    #[test]
    fn reflection_representation_of_s3() {
        let d = lookup("A2").unwrap();
        let chi = full_character(&d, &Weight(vec![2, 2])).unwrap();
        assert_eq!(chi.values(), vec![2, 0, -1]);
        let t = character_table(&d).unwrap();
        assert_eq!(decompose(&chi, &t).unwrap(), vec![("refl".to_string(), 1)]);
    }

    #[test]
    fn sp4_example() {
        let d = lookup("C2").unwrap();
        let chi = full_character(&d, &Weight(vec![1, 2])).unwrap();
        let g = d.weyl_group();
        let by_name: Vec<i64> = ["1", "r_a", "r_b", "cox^2", "cox"]
            .iter()
            .map(|c| chi.classes[g.class_of_element(&parse_class(&d, c).unwrap())].value)
            .collect();
        assert_eq!(by_name, vec![1, -1, 1, 1, -1]);
    }

    #[test]
    fn regular_representation_of_s4() {
        let d = lookup("A3").unwrap();
        let chi = full_character(&d, &Weight(vec![2, 4, 12])).unwrap();
        assert_eq!(chi.values(), vec![24, 0, 0, 0, 0]);
    }

    #[test]
    fn missing_classes_are_reported() {
        let d = lookup("B3").unwrap();
        assert!(matches!(full_character(&d, &d.rho), Err(Error::UnsupportedClass(_))));
    }

    #[test]
    fn decomposition_search_finds_the_true_split() {
        let d = lookup("A2").unwrap();
        let t = character_table(&d).unwrap();
        // triv + sign + 2·refl.
        let known = vec![Some(6), Some(0), None];
        let all = consistent_decompositions(&t, &known, 100).unwrap();
        assert!(all.iter().any(|c| c.iter().sum::<u64>() == 4));
        assert!(all
            .iter()
            .all(|c| t.irreducibles.iter().zip(c).map(|(x, &k)| x.degree() * k as i64).sum::<i64>() == 6));
    }
}
