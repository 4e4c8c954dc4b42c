//! Kostant's partition function, weighted partition functions on a fixed subtorus,
//! and the two-generator closed form.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use parking_lot::RwLock;

use crate::cyclo::{CycloNum, TorusPoint};
use crate::error::{Error, Result};
use crate::intlin;
use crate::lattice::{pairing, CorootVec, RootDatum, Weight};
use crate::weyl::WeylElement;

/// Memoized count of ways to write `ν` (root coordinates) as a sum of positive roots.
pub struct KostantCounter {
    roots: Vec<Vec<i64>>,
    memo: RwLock<HashMap<(Vec<i64>, usize), u128>>,
}

impl KostantCounter {
    pub fn new(datum: &RootDatum) -> Self {
        // Largest roots first keeps the recursion shallow in the big coordinates.
        let mut roots = datum.pos_roots.clone();
        roots.reverse();
        KostantCounter { roots, memo: RwLock::new(HashMap::new()) }
    }

    pub fn count(&self, nu: &[i64]) -> u128 {
        if nu.iter().any(|&x| x < 0) {
            return 0;
        }
        self.rec(nu.to_vec(), 0)
    }

    fn rec(&self, nu: Vec<i64>, i: usize) -> u128 {
        if nu.iter().all(|&x| x == 0) {
            return 1;
        }
        if i == self.roots.len() {
            return 0;
        }
        let key = (nu, i);
        if let Some(&v) = self.memo.read().get(&key) {
            return v;
        }
        let (nu, _) = &key;
        let mut cur = nu.clone();
        let mut total = 0u128;
        loop {
            total += self.rec(cur.clone(), i + 1);
            for (c, r) in cur.iter_mut().zip(&self.roots[i]) {
                *c -= r;
            }
            if cur.iter().any(|&x| x < 0) {
                break;
            }
        }
        self.memo.write().insert(key, total);
        total
    }
}

pub fn kostant_partition(datum: &RootDatum, nu: &[i64]) -> u128 {
    KostantCounter::new(datum).count(nu)
}

/// Fixed subtorus of a normalized element with its root partition and partition weights.
pub struct SubtorusData {
    pub w: WeylElement,
    pub j: Vec<usize>,
    pub torus: TorusPoint,
    /// ℤ-basis of the fixed coweight lattice.
    pub fixed_basis: Vec<CorootVec>,
    pub r_ts_plus: Vec<usize>,
    pub r1: Vec<usize>,
    pub r2: Vec<usize>,
    /// Restrictions of the roots in `r2`, in `fixed_basis` coordinates.
    pub nu_list: Vec<Vec<i64>>,
    pub z_list: Vec<CycloNum>,
    /// `z_i = ζ_N^{z_exponents[i]}`.
    pub z_exponents: Vec<u32>,
    pub positivity_functional: CorootVec,
    cone_rows: Vec<Vec<i64>>,
    cone_from_res: Vec<Vec<i64>>,
    cone_gens: Vec<Vec<i64>>,
    support: Vec<Vec<bool>>,
    memo: RwLock<HashMap<Vec<i64>, Arc<[i128]>>>,
}

impl std::fmt::Debug for SubtorusData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubtorusData")
            .field("j", &self.j)
            .field("torus", &self.torus)
            .field("r_ts_plus", &self.r_ts_plus)
            .field("r1", &self.r1)
            .field("r2", &self.r2)
            .field("nu_list", &self.nu_list)
            .field("z_exponents", &self.z_exponents)
            .finish()
    }
}

/// Requires `w` to fix exactly the face of the dominant chamber cut out by `j`.
pub fn build_subtorus(datum: &RootDatum, w: &WeylElement, j: &[usize], t: &TorusPoint) -> Result<SubtorusData> {
    let r = datum.rank();
    let fixed_basis = w.fixed_coweights();
    let d = fixed_basis.len();
    if d + j.len() != r {
        return Err(Error::PointednessFailure);
    }
    let outside: Vec<usize> = (0..r).filter(|i| !j.contains(i)).collect();
    let cone_rows: Vec<Vec<i64>> = outside.iter().map(|&i| datum.inv_cartan_scaled[i].clone()).collect();
    // Each scaled fundamental coweight off J must be fixed by w.
    for row in &cone_rows {
        let moved: Vec<i64> = (0..r).map(|b| (0..r).map(|a| row[a] * w.entry(a, b)).sum()).collect();
        if &moved != row {
            return Err(Error::PointednessFailure);
        }
    }
    let mut y0 = vec![0i64; r];
    for row in &cone_rows {
        for (a, b) in y0.iter_mut().zip(row) {
            *a += b;
        }
    }
    let basis_rows: Vec<Vec<i64>> = fixed_basis.iter().map(|c| c.0.clone()).collect();
    let cone_from_res = if d == 0 {
        Vec::new()
    } else {
        let x = intlin::solve_left(&basis_rows, &cone_rows).ok_or(Error::PointednessFailure)?;
        intlin::q_to_int_matrix(&x).ok_or(Error::PointednessFailure)?
    };

    let n = t.modulus;
    let (mut r_ts_plus, mut r1, mut r2) = (Vec::new(), Vec::new(), Vec::new());
    let (mut nu_list, mut z_list, mut z_exponents, mut cone_gens) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let parabolic = datum.parabolic_roots(j);
    for (k, alpha) in datum.root_weights.iter().enumerate() {
        let res: Vec<i64> = fixed_basis.iter().map(|y| pairing(alpha, y)).collect();
        let trivial_on_s = res.iter().all(|&x| x == 0);
        if trivial_on_s != parabolic.contains(&k) {
            return Err(Error::PointednessFailure);
        }
        if trivial_on_s {
            if t.exponent(alpha) == 0 {
                r_ts_plus.push(k);
            } else {
                r1.push(k);
            }
        } else {
            let g: Vec<i64> = outside.iter().map(|&i| datum.center_exponent * datum.pos_roots[k][i]).collect();
            debug_assert!(g.iter().all(|&x| x >= 0) && g.iter().any(|&x| x > 0));
            let ze = (n - t.exponent(alpha)) % n;
            r2.push(k);
            nu_list.push(res);
            z_list.push(CycloNum::zeta_pow(n, ze as i64));
            z_exponents.push(ze);
            cone_gens.push(g);
        }
    }
    // support[i][c]: some generator at position >= i is positive in cone coordinate c.
    let mut support = vec![vec![false; d]; cone_gens.len() + 1];
    for i in (0..cone_gens.len()).rev() {
        support[i] = support[i + 1].clone();
        for c in 0..d {
            if cone_gens[i][c] > 0 {
                support[i][c] = true;
            }
        }
    }
    Ok(SubtorusData {
        w: w.clone(),
        j: j.to_vec(),
        torus: t.clone(),
        fixed_basis,
        r_ts_plus,
        r1,
        r2,
        nu_list,
        z_list,
        z_exponents,
        positivity_functional: CorootVec(y0),
        cone_rows,
        cone_from_res,
        cone_gens,
        support,
        memo: RwLock::new(HashMap::new()),
    })
}

impl SubtorusData {
    pub fn dim(&self) -> usize {
        self.fixed_basis.len()
    }

    pub fn modulus(&self) -> u32 {
        self.torus.modulus
    }

    pub fn res(&self, lambda: &Weight) -> Vec<i64> {
        self.fixed_basis.iter().map(|y| pairing(lambda, y)).collect()
    }

    /// Coordinates along the positive cone; an injective linear image of `res`.
    pub fn cone_coords(&self, lambda: &Weight) -> Vec<i64> {
        self.cone_rows.iter().map(|row| row.iter().zip(&lambda.0).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn cone_from_res(&self, nu: &[i64]) -> Vec<i64> {
        self.cone_from_res.iter().map(|row| row.iter().zip(nu).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn cone_generators(&self) -> &[Vec<i64>] {
        &self.cone_gens
    }

    /// `⟨ν, y0⟩` for `ν` given in `res` coordinates.
    pub fn height(&self, nu: &[i64]) -> i64 {
        self.cone_from_res(nu).iter().sum()
    }

    /// Group-ring value of the weighted partition function at a cone vector.
    pub fn partition_group_ring(&self, cone: &[i64]) -> Arc<[i128]> {
        let n = self.torus.modulus as usize;
        if cone.iter().any(|&x| x < 0) {
            return vec![0; n].into();
        }
        self.rec(cone, 0)
    }

    fn rec(&self, nu: &[i64], i: usize) -> Arc<[i128]> {
        let n = self.torus.modulus as usize;
        let gens = &self.cone_gens;
        if nu.iter().zip(&self.support[i]).any(|(&x, &s)| x != 0 && !s) {
            return vec![0; n].into();
        }
        if i == gens.len() {
            let mut v = vec![0; n];
            v[0] = 1;
            return v.into();
        }
        if i + 1 == gens.len() {
            // Single generator left: ν must be an exact multiple.
            let g = &gens[i];
            let mut v = vec![0; n];
            let mut k: Option<i64> = None;
            for (x, y) in nu.iter().zip(g) {
                match (*y, *x) {
                    (0, 0) => {}
                    (0, _) => return v.into(),
                    (y, x) => {
                        if x % y != 0 || k.is_some_and(|k| k != x / y) {
                            return v.into();
                        }
                        k = Some(x / y);
                    }
                }
            }
            let k = k.unwrap_or(0);
            v[((k * self.z_exponents[i] as i64) % n as i64) as usize] = 1;
            return v.into();
        }
        let mut key = nu.to_vec();
        key.push(i as i64);
        if let Some(v) = self.memo.read().get(&key) {
            return v.clone();
        }
        let mut acc = vec![0i128; n];
        let mut cur = nu.to_vec();
        let step = self.z_exponents[i] as usize;
        let mut shift = 0usize;
        loop {
            let sub = self.rec(&cur, i + 1);
            for (e, &c) in sub.iter().enumerate() {
                if c != 0 {
                    acc[(e + shift) % n] += c;
                }
            }
            let mut neg = false;
            for (c, g) in cur.iter_mut().zip(&gens[i]) {
                *c -= g;
                neg |= *c < 0;
            }
            if neg {
                break;
            }
            shift = (shift + step) % n;
        }
        let v: Arc<[i128]> = acc.into();
        self.memo.write().insert(key, v.clone());
        v
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().len()
    }
}

/// `𝒫_w(ν)` for `ν` in `res` coordinates.
pub fn weighted_partition(sd: &SubtorusData, nu: &[i64]) -> CycloNum {
    let cone = sd.cone_from_res(nu);
    let v = sd.partition_group_ring(&cone);
    CycloNum::from_group_ring_i128(sd.modulus(), &v)
}

/// `𝒫_w(res λ)` computed directly from a weight.
pub fn weighted_partition_at(sd: &SubtorusData, lambda: &Weight) -> CycloNum {
    let v = sd.partition_group_ring(&sd.cone_coords(lambda));
    CycloNum::from_group_ring_i128(sd.modulus(), &v)
}

pub fn restrict_zero(sd: &SubtorusData, lambda: &Weight) -> bool {
    sd.res(lambda).iter().all(|&x| x == 0)
}

/// Number of `(x, y) ∈ ℕ²` with `m x + n y = q`, via Popoviciu's formula.
pub fn popoviciu(m: i64, n: i64, q: &BigRational) -> u64 {
    assert!(m > 0 && n > 0 && m.gcd(&n) == 1, "popoviciu needs coprime positive m, n");
    if !q.is_integer() || q.is_negative() {
        return 0;
    }
    let q = q.to_integer();
    let eg = m.extended_gcd(&n);
    // m·m' + n·n' = 1
    let (mp, np) = (eg.x, eg.y);
    let frac = |num: BigInt, den: i64| {
        let x = BigRational::new(num, den.into());
        &x - x.floor()
    };
    let val = BigRational::new(q.clone(), (m * n).into()) - frac(&q * mp, n) - frac(&q * np, m)
        + BigRational::from_integer(1.into());
    debug_assert!(val.is_integer());
    val.to_integer().to_u64().unwrap_or(0)
}

pub fn popoviciu_int(m: i64, n: i64, q: i64) -> u64 {
    popoviciu(m, n, &BigRational::from_integer(q.into()))
}

impl SubtorusData {
    /// Zero value helper used by callers that need the right modulus.
    pub fn zero(&self) -> CycloNum {
        CycloNum::zero(self.modulus())
    }

    pub fn gen_count(&self) -> usize {
        self.cone_gens.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.r2.is_empty()
    }

    pub fn has_zero_height_generator(&self) -> bool {
        self.cone_gens.iter().any(|g| g.iter().all(Zero::is_zero))
    }
}
