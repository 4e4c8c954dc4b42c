//! Exact arithmetic in ℚ(ζ_N) and torsion points of the maximal torus.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{pairing, CorootVec, RootDatum, Weight};

static PHI: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();

/// `Φ_n`, low degree first, computed by dividing `xⁿ − 1` by `Φ_d` for proper divisors `d`.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1);
    let cache = PHI.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_poly(d);
            num = exact_div_monic(&num, &phi_d);
        }
    }
    let p = Arc::new(num);
    cache.lock().insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[k + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

/// Element of ℚ(ζ_N) as a residue modulo `Φ_N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNum {
    n: u32,
    coeffs: Vec<BigRational>,
}

fn reduce_poly<T>(mut a: Vec<T>, phi: &[i64]) -> Vec<T>
where
    T: Clone + Zero + for<'a> std::ops::SubAssign<&'a T> + for<'a> Mul<&'a T, Output = T> + From<BigInt>,
{
    let deg = phi.len() - 1;
    for top in (deg..a.len()).rev() {
        let c = a[top].clone();
        if c.is_zero() {
            continue;
        }
        for (j, &pj) in phi.iter().enumerate() {
            if pj != 0 {
                let t = T::from(BigInt::from(pj)) * &c;
                a[top - deg + j] -= &t;
            }
        }
    }
    a.truncate(deg);
    a.resize(deg, T::zero());
    a
}

impl CycloNum {
    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn zero(n: u32) -> Self {
        CycloNum { n, coeffs: vec![BigRational::zero(); euler_phi(n)] }
    }

    pub fn from_rational(n: u32, q: BigRational) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(n: u32, k: i64) -> Self {
        Self::from_rational(n, BigRational::from_integer(k.into()))
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(n, 1)
    }

    /// `ζ_N^k`.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let e = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigInt::zero(); n as usize];
        v[e] = BigInt::one();
        Self::from_group_ring(n, &v)
    }

    /// Image of `Σ a_k x^k` (indices mod `N`) in the field.
    pub fn from_group_ring(n: u32, a: &[BigInt]) -> Self {
        let phi = cyclotomic_poly(n);
        let red = reduce_poly(a.to_vec(), &phi);
        CycloNum { n, coeffs: red.into_iter().map(BigRational::from_integer).collect() }
    }

    pub fn from_group_ring_i128(n: u32, a: &[i128]) -> Self {
        let v: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        Self::from_group_ring(n, &v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNum { n: self.n, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi: Vec<BigRational> =
            cyclotomic_poly(self.n).iter().map(|&c| BigRational::from_integer(c.into())).collect();
        let (g, s) = ext_gcd(trim(self.coeffs.clone()), phi);
        // g is a nonzero constant because Φ_N is irreducible.
        debug_assert_eq!(g.len(), 1);
        let inv_g = BigRational::one() / &g[0];
        let mut s: Vec<BigRational> = s.into_iter().map(|c| c * &inv_g).collect();
        s.resize(euler_phi(self.n), BigRational::zero());
        Some(CycloNum { n: self.n, coeffs: s })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.n);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.n, o.n, "cyclotomic moduli differ");
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let mut r = trim(a.to_vec());
    if r.len() - 1 < db || r.iter().all(Zero::is_zero) {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &b[db];
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[k + j] -= t;
        }
        q[k] = c;
    }
    r.truncate(db.max(1));
    if db == 0 {
        r = vec![BigRational::zero()];
    }
    (trim(q), trim(r))
}

/// Returns `(g, s)` with `s·a ≡ g (mod b)`.
fn ext_gcd(a: Vec<BigRational>, b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (vec![BigRational::one()], vec![BigRational::zero()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    (r0, s0)
}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, o: &CycloNum) -> CycloNum {
        self.check(o);
        CycloNum { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, o: &CycloNum) -> CycloNum {
        self.check(o);
        CycloNum { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { n: self.n, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, o: &CycloNum) -> CycloNum {
        self.check(o);
        let prod = poly_mul(&self.coeffs, &o.coeffs);
        let phi = cyclotomic_poly(self.n);
        CycloNum { n: self.n, coeffs: reduce_poly(prod, &phi) }
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}·ζ{}", self.n),
                _ => format!("{c}·ζ{}^{k}", self.n),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

pub fn extract_rational(x: &CycloNum) -> Result<BigRational> {
    if x.is_rational() {
        Ok(x.coeffs[0].clone())
    } else {
        Err(Error::NonRationalResult)
    }
}

pub fn extract_integer(x: &CycloNum) -> Result<BigInt> {
    let q = extract_rational(x)?;
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::NonIntegralTrace(q.to_string()))
    }
}

/// `t = exp(2πi·k/N)` with `k` in simple-coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusPoint {
    pub modulus: u32,
    pub k: CorootVec,
}

impl TorusPoint {
    pub fn identity(rank: usize) -> Self {
        TorusPoint { modulus: 1, k: CorootVec(vec![0; rank]) }
    }

    /// Exponent `e` with `e_λ(t) = ζ_N^e`.
    pub fn exponent(&self, lambda: &Weight) -> u32 {
        pairing(lambda, &self.k).rem_euclid(self.modulus as i64) as u32
    }

    /// Same point with modulus `n`, a multiple of the current one.
    pub fn lift(&self, n: u32) -> Self {
        assert!(n % self.modulus == 0);
        TorusPoint { modulus: n, k: self.k.scale((n / self.modulus) as i64) }
    }

    /// Removes common factors between the modulus and every coordinate.
    pub fn reduced(&self) -> Self {
        let g = self.k.0.iter().fold(self.modulus as i64, |g, &x| g.gcd(&x)).max(1);
        TorusPoint { modulus: self.modulus / g as u32, k: CorootVec(self.k.0.iter().map(|x| x / g).collect()) }
    }
}

impl std::str::FromStr for TorusPoint {
    type Err = Error;

    /// `N:k1,k2,…`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("torsion point `{s}` must look like N:k1,k2,..."));
        let (n, k) = s.split_once(':').ok_or_else(bad)?;
        let modulus: u32 = n.trim().parse().map_err(|_| bad())?;
        if modulus == 0 {
            return Err(bad());
        }
        let k = k.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
        Ok(TorusPoint { modulus, k: CorootVec(k) })
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k: Vec<String> = self.k.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}:{}", self.modulus, k.join(","))
    }
}

pub fn eval_char(lambda: &Weight, t: &TorusPoint) -> CycloNum {
    CycloNum::zeta_pow(t.modulus, t.exponent(lambda) as i64)
}

/// Order of `Ad(t)`: lcm over roots of the order of `e_α(t)`.
pub fn ad_order(datum: &RootDatum, t: &TorusPoint) -> u32 {
    let n = t.modulus as i64;
    datum.root_weights.iter().fold(1i64, |acc, a| {
        let e = pairing(a, &t.k).rem_euclid(n);
        acc.lcm(&(n / n.gcd(&e)))
    }) as u32
}

/// `2ρ̌_J` evaluated at a primitive `2m`-th root of unity.
pub fn principal_torsion_point(datum: &RootDatum, j: &[usize], m: u32) -> TorusPoint {
    let mut k = vec![0i64; datum.rank()];
    for idx in datum.parabolic_roots(j) {
        for (a, b) in k.iter_mut().zip(&datum.pos_coroots[idx]) {
            *a += b;
        }
    }
    TorusPoint { modulus: 2 * m, k: CorootVec(k) }
}

/// Rational number as a signed `(numerator, denominator)` string pair helper.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

pub fn is_negative(q: &BigRational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::datum;

    #[test]
    fn phi_12() {
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn norm_of_one_minus_i() {
        let one = CycloNum::one(4);
        let a = &one - &CycloNum::zeta_pow(4, 1);
        let b = &one - &CycloNum::zeta_pow(4, 3);
        assert_eq!(extract_rational(&(&a * &b)).unwrap(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn galois_trace_of_zeta5() {
        let s = (1..5).fold(CycloNum::zero(5), |acc, k| &acc + &CycloNum::zeta_pow(5, k));
        assert_eq!(extract_rational(&s).unwrap(), BigRational::from_integer((-1).into()));
    }

    #[test]
    fn two_i_is_not_rational() {
        let x = CycloNum::zeta_pow(4, 1).scale(&BigRational::from_integer(2.into()));
        assert_eq!(extract_rational(&x), Err(Error::NonRationalResult));
    }

    #[test]
    fn inverse_round_trip() {
        let x = &CycloNum::from_int(12, 3) - &CycloNum::zeta_pow(12, 5);
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, CycloNum::one(12));
    }

    #[test]
    fn eval_examples() {
        let a1 = datum("A1").unwrap();
        let t = TorusPoint { modulus: 4, k: CorootVec(vec![1]) };
        assert_eq!(eval_char(&Weight(vec![1]), &t), CycloNum::zeta_pow(4, 1));
        assert_eq!(ad_order(&a1, &t), 2);
        let a2 = datum("A2").unwrap();
        let t = TorusPoint { modulus: 6, k: a2.rho_check.clone() };
        assert_eq!(eval_char(&a2.rho, &t), CycloNum::zeta_pow(6, 4));
        let g2 = datum("G2").unwrap();
        let t = principal_torsion_point(&g2, &[0, 1], 6);
        assert_eq!(ad_order(&g2, &t), 6);
        assert_eq!(ad_order(&g2, &TorusPoint::identity(2)), 1);
    }

    #[test]
    fn principal_point_on_one_root() {
        let c2 = datum("Sp4").unwrap();
        let t = principal_torsion_point(&c2, &[0], 2);
        let alpha = c2.simple_root(0);
        assert_eq!(eval_char(&alpha, &t), CycloNum::from_int(4, -1));
    }
}
