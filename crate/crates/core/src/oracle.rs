//! Independent reference computations: Freudenthal multiplicities, constant-term traces
//! and literal partition enumeration.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::cyclo::{extract_integer, CycloNum, TorusPoint};
use crate::error::{Error, Result};
use crate::intlin;
use crate::lattice::{RootDatum, Weight};
use crate::partition::SubtorusData;
use crate::weyl::WeylElement;

pub const DEFAULT_CAP: u128 = 10_000_000;

#[derive(Debug, Clone)]
pub struct WeightMultiplicityTable {
    /// `Λ = μ − ρ`.
    pub highest: Weight,
    /// Multiplicities of dominant weights.
    pub dominant: BTreeMap<Weight, u64>,
    pub dim: u128,
}

impl WeightMultiplicityTable {
    pub fn multiplicity(&self, datum: &RootDatum, lambda: &Weight) -> u64 {
        self.dominant.get(&datum.dominant_conjugate(lambda)).copied().unwrap_or(0)
    }

    pub fn zero_weight(&self) -> u64 {
        self.dominant.get(&Weight(vec![0; self.highest.rank()])).copied().unwrap_or(0)
    }
}

pub fn weyl_dimension_of_highest(datum: &RootDatum, lambda: &Weight) -> BigInt {
    datum.weyl_dimension(&lambda.add(&datum.rho)).to_integer()
}

/// `W`-orbit of a weight.
pub fn orbit(datum: &RootDatum, lambda: &Weight) -> Vec<Weight> {
    let mut seen = HashSet::from([lambda.clone()]);
    let mut out = vec![lambda.clone()];
    let mut k = 0;
    while k < out.len() {
        for i in 0..datum.rank() {
            if out[k].0[i] != 0 {
                let y = datum.reflect(i, &out[k]);
                if seen.insert(y.clone()) {
                    out.push(y);
                }
            }
        }
        k += 1;
    }
    out
}

fn int_form(f: &[Vec<i64>], a: &[i64], b: &[i64]) -> i128 {
    let mut s = 0i128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (k, &y) in b.iter().enumerate() {
            s += (x as i128) * (f[i][k] as i128) * (y as i128);
        }
    }
    s
}

/// Freudenthal's recursion over dominant weights, highest first.
pub fn freudenthal(datum: &RootDatum, lambda: &Weight, cap: u128) -> Result<WeightMultiplicityTable> {
    if !lambda.is_dominant() || lambda.rank() != datum.rank() {
        return Err(Error::NotRegularDominant(lambda.add(&datum.rho).0));
    }
    let dim = weyl_dimension_of_highest(datum, lambda);
    if dim > BigInt::from(cap) {
        return Err(Error::CapExceeded { dim: dim.to_string(), cap });
    }
    let e = datum.center_exponent;
    let depth = |w: &Weight| -> i64 { datum.scaled_root_coords(&lambda.sub(w)).iter().sum::<i64>() / e };
    let mut dominant = vec![lambda.clone()];
    let mut seen = HashSet::from([lambda.clone()]);
    let mut k = 0;
    while k < dominant.len() {
        let cur = dominant[k].clone();
        for a in &datum.root_weights {
            let y = cur.sub(a);
            if y.is_dominant() && seen.insert(y.clone()) {
                dominant.push(y);
            }
        }
        k += 1;
    }
    dominant.sort_by_key(|w| (depth(w), w.clone()));

    let (_, f) = datum.integer_form();
    let top = lambda.add(&datum.rho);
    let top_norm = int_form(&f, &top.0, &top.0);
    let mut mult: HashMap<Weight, u64> = HashMap::new();
    mult.insert(lambda.clone(), 1);
    for w in dominant.iter().skip(1) {
        let mut num = 0i128;
        for a in &datum.root_weights {
            let mut x = w.add(a);
            loop {
                let m = mult.get(&datum.dominant_conjugate(&x)).copied().unwrap_or(0);
                if m == 0 {
                    break;
                }
                num += 2 * m as i128 * int_form(&f, &x.0, &a.0);
                x = x.add(a);
            }
        }
        let wr = w.add(&datum.rho);
        let den = top_norm - int_form(&f, &wr.0, &wr.0);
        debug_assert!(den > 0 && num % den == 0);
        let m = (num / den) as u64;
        if m > 0 {
            mult.insert(w.clone(), m);
        }
    }
    let total: u128 = mult.iter().map(|(w, &m)| m as u128 * orbit(datum, w).len() as u128).sum();
    if BigInt::from(total) != dim {
        return Err(Error::GoldenData(format!("Freudenthal total {total} differs from Weyl dimension {dim}")));
    }
    Ok(WeightMultiplicityTable { highest: lambda.clone(), dominant: mult.into_iter().collect(), dim: total })
}

/// `tr(t, V_μ)` as a cyclotomic number, summed over all weights.
pub fn torus_trace(datum: &RootDatum, mu: &Weight, t: &TorusPoint, cap: u128) -> Result<CycloNum> {
    constant_term(datum, mu, t, &[], cap)
}

fn constant_term(datum: &RootDatum, mu: &Weight, t: &TorusPoint, fixed: &[Vec<i64>], cap: u128) -> Result<CycloNum> {
    let table = freudenthal(datum, &mu.sub(&datum.rho), cap)?;
    Ok(constant_term_of(datum, &table, t, fixed))
}

fn constant_term_of(
    datum: &RootDatum,
    table: &WeightMultiplicityTable,
    t: &TorusPoint,
    fixed: &[Vec<i64>],
) -> CycloNum {
    let n = t.modulus as usize;
    let mut acc = vec![BigInt::zero(); n];
    for (w, &m) in &table.dominant {
        for x in orbit(datum, w) {
            let on_s = fixed.iter().all(|c| x.0.iter().zip(c).map(|(a, b)| a * b).sum::<i64>() == 0);
            if on_s {
                acc[t.exponent(&x) as usize] += m;
            }
        }
    }
    CycloNum::from_group_ring(t.modulus, &acc)
}

fn fixed_coweights(datum: &RootDatum, w: &WeylElement) -> Vec<Vec<i64>> {
    let r = datum.rank();
    // Kernel of Mᵀ − 1.
    let mt: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| w.entry(j, i) - (i == j) as i64).collect()).collect();
    intlin::integer_kernel(&mt, r)
}

/// `Σ_{λ|_S = 0} m_λ e_λ(t)` with `S` the fixed torus of `w` and `t` valid for `w`.
pub fn oracle_trace(datum: &RootDatum, mu: &Weight, w: &WeylElement, t: &TorusPoint, cap: u128) -> Result<i64> {
    let x = constant_term(datum, mu, t, &fixed_coweights(datum, w), cap)?;
    extract_integer(&x)?.to_i64().ok_or(Error::Overflow("oracle trace"))
}

/// [`oracle_trace`] against a precomputed multiplicity table, for sweeping many classes.
pub fn oracle_trace_from(
    datum: &RootDatum,
    table: &WeightMultiplicityTable,
    w: &WeylElement,
    t: &TorusPoint,
) -> Result<i64> {
    let x = constant_term_of(datum, table, t, &fixed_coweights(datum, w));
    extract_integer(&x)?.to_i64().ok_or(Error::Overflow("oracle trace"))
}

/// Literal enumeration of `𝒫_w(ν)` without memoization.
pub fn brute_weighted_partition(sd: &SubtorusData, nu: &[i64], bound: i64) -> Result<CycloNum> {
    let n = sd.modulus() as usize;
    let h = sd.height(nu);
    if h > bound {
        return Err(Error::BoundExceeded(format!("height {h} > {bound}")));
    }
    let mut acc = vec![0i128; n];
    if h < 0 {
        return Ok(CycloNum::from_group_ring_i128(sd.modulus(), &acc));
    }
    let heights: Vec<i64> = sd.nu_list.iter().map(|v| sd.height(v)).collect();
    let d = nu.len();
    let mut counts = vec![0i64; sd.nu_list.len()];
    fn walk(
        i: usize,
        left: i64,
        counts: &mut Vec<i64>,
        heights: &[i64],
        sd: &SubtorusData,
        nu: &[i64],
        d: usize,
        acc: &mut [i128],
    ) {
        if i == counts.len() {
            let sum: Vec<i64> = (0..d).map(|c| counts.iter().zip(&sd.nu_list).map(|(k, v)| k * v[c]).sum()).collect();
            if sum == nu {
                let n = acc.len() as i64;
                let e: i64 = counts.iter().zip(&sd.z_exponents).map(|(k, &z)| k * z as i64).sum();
                acc[e.rem_euclid(n) as usize] += 1;
            }
            return;
        }
        let mut k = 0;
        while k * heights[i] <= left {
            counts[i] = k;
            walk(i + 1, left - k * heights[i], counts, heights, sd, nu, d, acc);
            k += 1;
        }
        counts[i] = 0;
    }
    walk(0, h, &mut counts, &heights, sd, nu, d, &mut acc);
    Ok(CycloNum::from_group_ring_i128(sd.modulus(), &acc))
}
