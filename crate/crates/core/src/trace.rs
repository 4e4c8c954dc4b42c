//! Traces of Weyl group elements on zero weight spaces.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::{ad_order, extract_integer, CycloNum, TorusPoint};
use crate::error::{Error, Result};
use crate::lattice::{CorootVec, RootDatum, Weight};
use crate::partition::{build_subtorus, SubtorusData};
use crate::weyl::{
    classify, normalize_to_parabolic, principal_search, stabilizer_generators, ClassInfo, Normalized, WeylElement,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Ellreg,
    Elliptic,
    General,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Ellreg => "ellreg",
            Method::Elliptic => "elliptic",
            Method::General => "general",
        })
    }
}

#[derive(Debug, Clone)]
pub struct TraceRequest {
    pub datum: Arc<RootDatum>,
    pub mu: Weight,
    pub w: WeylElement,
    pub t: Option<TorusPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceResult {
    pub value: i64,
    pub method: Method,
}

/// `λ ↦ Π ⟨λ, α̌⟩ / ⟨ρ_X, α̌⟩` over a set `X` of positive roots.
#[derive(Debug, Clone)]
pub struct HarmonicFactor {
    pub roots: Vec<usize>,
    /// `2ρ_X`.
    pub two_rho: Weight,
    denominator: BigRational,
}

impl HarmonicFactor {
    pub fn new(datum: &RootDatum, roots: &[usize]) -> Self {
        let mut two_rho = Weight(vec![0; datum.rank()]);
        for &k in roots {
            two_rho = two_rho.add(&datum.root_weights[k]);
        }
        let mut den = BigRational::one();
        for &k in roots {
            den *= BigRational::new(datum.pair_coroot(&two_rho, k).into(), 2.into());
        }
        HarmonicFactor { roots: roots.to_vec(), two_rho, denominator: den }
    }

    pub fn numerator(&self, datum: &RootDatum, lambda: &Weight) -> i128 {
        self.roots.iter().map(|&k| datum.pair_coroot(lambda, k) as i128).product()
    }

    pub fn denominator(&self) -> &BigRational {
        &self.denominator
    }

    pub fn evaluate(&self, datum: &RootDatum, lambda: &Weight) -> BigRational {
        BigRational::from_integer(self.numerator(datum, lambda).into()) / &self.denominator
    }
}

/// `Π (1 − e_{−α}(t))` over the given positive roots.
fn one_minus_product(datum: &RootDatum, t: &TorusPoint, roots: &[usize]) -> CycloNum {
    let n = t.modulus;
    let one = CycloNum::one(n);
    roots.iter().fold(one.clone(), |acc, &k| {
        let e = t.exponent(&datum.root_weights[k]) as i64;
        &acc * &(&one - &CycloNum::zeta_pow(n, -e))
    })
}

/// Positive roots with `e_α(t) = 1`.
pub fn centralizer_roots(datum: &RootDatum, t: &TorusPoint) -> Vec<usize> {
    (0..datum.num_pos_roots()).filter(|&k| t.exponent(&datum.root_weights[k]) == 0).collect()
}

/// Weyl denominator at `t` with the centralizer factors removed.
pub fn delta(datum: &RootDatum, t: &TorusPoint) -> CycloNum {
    let rt = centralizer_roots(datum, t);
    let rest: Vec<usize> = (0..datum.num_pos_roots()).filter(|k| !rt.contains(k)).collect();
    let rho = CycloNum::zeta_pow(t.modulus, t.exponent(&datum.rho) as i64);
    &rho * &one_minus_product(datum, t, &rest)
}

/// `Σ_{v ∈ W^t} ε(v) e_{vλ}(t) H_t(vλ)`.
pub fn alternating_sum(datum: &RootDatum, t: &TorusPoint, lambda: &Weight) -> CycloNum {
    let rt = centralizer_roots(datum, t);
    let h = HarmonicFactor::new(datum, &rt);
    let g = datum.weyl_group();
    let n = t.modulus as usize;
    let mut acc = vec![BigInt::zero(); n];
    for v in g.coset_reps(datum, &rt) {
        let vl = g.act(v, lambda);
        acc[t.exponent(&vl) as usize] += BigInt::from(g.sign(v) as i128 * h.numerator(datum, &vl));
    }
    CycloNum::from_group_ring(t.modulus, &acc).scale(&(BigRational::one() / h.denominator()))
}

/// `|R_t| < |Ř_μ|` with `m` the order of `Ad(t)`.
pub fn vanishing_by_centralizer(datum: &RootDatum, mu: &Weight, t: &TorusPoint) -> bool {
    let m = ad_order(datum, t) as i64;
    centralizer_roots(datum, t).len() < stabilizer_generators(datum, mu, m).len()
}

#[derive(Debug, Clone, PartialEq)]
pub enum CosetConstant {
    Zero,
    Value(CycloNum),
}

/// Constant `C` with `tr(t, V_μ) = C · Π_{α̌ ∈ Ř_y⁺} ⟨μ, α̌⟩` for `μ` in the coset of `mu0`.
pub fn coset_constant(datum: &RootDatum, t: &TorusPoint, mu0: &Weight) -> Result<CosetConstant> {
    if !mu0.is_regular_dominant() {
        return Err(Error::NotRegularDominant(mu0.0.clone()));
    }
    let m = ad_order(datum, t) as i64;
    let rt = centralizer_roots(datum, t).len();
    let ry_roots = stabilizer_generators(datum, mu0, m);
    let ry = ry_roots.len();
    if rt < ry {
        return Ok(CosetConstant::Zero);
    }
    if rt > ry {
        return Err(Error::InequalityStrict { rt, ry });
    }
    let k = alternating_sum(datum, t, mu0);
    let prod: BigInt = ry_roots.iter().map(|&k| BigInt::from(datum.pair_coroot(mu0, k))).product();
    let den = &delta(datum, t) * &CycloNum::from_rational(t.modulus, BigRational::from_integer(prod));
    Ok(CosetConstant::Value(&k * &den.inverse().expect("Δ(t) ≠ 0")))
}

fn to_i64(x: BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow("trace value"))
}

fn check_mu(datum: &RootDatum, mu: &Weight) -> Result<()> {
    if mu.rank() != datum.rank() {
        return Err(Error::Dimension { expected: datum.rank(), got: mu.rank() });
    }
    if !mu.is_regular_dominant() {
        return Err(Error::NotRegularDominant(mu.0.clone()));
    }
    Ok(())
}

/// Monomial formula for elliptic regular `w` of order `m`.
fn ellreg_value(datum: &RootDatum, mu: &Weight, m: i64) -> Result<i64> {
    let Some(hit) = principal_search(datum, mu, m) else { return Ok(0) };
    let mut num = BigInt::from(hit.sign);
    let mut den = BigInt::one();
    for k in 0..datum.num_pos_roots() {
        let h = datum.coroot_height(k);
        if h % m == 0 {
            num *= datum.pair_coroot(&hit.image, k);
            den *= h;
        }
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::NonIntegralTrace(format!("{num}/{den}")));
    }
    to_i64(q)
}

pub fn trace_elliptic_regular(datum: &RootDatum, mu: &Weight, w: &WeylElement) -> Result<i64> {
    check_mu(datum, mu)?;
    let info = classify(datum, w);
    if !(info.elliptic && info.regular) {
        return Err(Error::NotEllipticRegular);
    }
    ellreg_value(datum, mu, info.order as i64)
}

/// Torsion point `Π_k 2ρ̌_{J_k}(η_{2m_k})` for a normalized element regular on each component.
pub fn canonical_torsion_point(datum: &RootDatum, norm: &Normalized) -> Option<TorusPoint> {
    if norm.j.is_empty() {
        return Some(TorusPoint::identity(datum.rank()));
    }
    if !norm.components.iter().all(|c| c.regular) {
        return None;
    }
    let n = norm.components.iter().fold(1i64, |acc, c| acc.lcm(&(2 * c.order as i64)));
    let mut k = vec![0i64; datum.rank()];
    for c in &norm.components {
        let f = n / (2 * c.order as i64);
        for idx in datum.parabolic_roots(&c.nodes) {
            for (a, b) in k.iter_mut().zip(&datum.pos_coroots[idx]) {
                *a += f * b;
            }
        }
    }
    Some(TorusPoint { modulus: n as u32, k: CorootVec(k) })
}

/// Canonical torsion point expressed for `w` itself rather than its normalized conjugate.
pub fn canonical_torsion_for(datum: &RootDatum, w: &WeylElement) -> Option<TorusPoint> {
    let norm = normalize_to_parabolic(datum, w);
    let t = canonical_torsion_point(datum, &norm)?;
    let back = norm.u.inverse();
    Some(TorusPoint { modulus: t.modulus, k: back.act_coroot(&t.k) })
}

/// Checks `t` against the Levi of the normalized element: the adjoint trace of `t` on the
/// Levi must match the trace of `w` on the span of `J`.
fn levi_adjoint_check(datum: &RootDatum, norm: &Normalized, t: &TorusPoint) -> Result<()> {
    let r = datum.rank();
    let d = r - norm.j.len();
    let n = t.modulus;
    let mut acc = vec![BigInt::zero(); n as usize];
    acc[0] += BigInt::from((r - d) as i64);
    for k in datum.parabolic_roots(&norm.j) {
        let e = t.exponent(&datum.root_weights[k]) as usize;
        acc[e] += 1;
        acc[(n as usize - e) % n as usize] += 1;
    }
    let lhs = CycloNum::from_group_ring(n, &acc);
    let tr_w: i64 = (0..r).map(|i| norm.w.entry(i, i)).sum::<i64>() - d as i64;
    if lhs != CycloNum::from_int(n, tr_w) {
        return Err(Error::BadTorsionPoint(format!("adjoint trace of t on the Levi is {lhs}, expected {tr_w}")));
    }
    Ok(())
}

enum Plan {
    Ellreg { m: i64 },
    Elliptic(Box<EllipticPlan>),
    General(Box<GeneralPlan>),
}

struct EllipticPlan {
    t: TorusPoint,
    cosets: Vec<usize>,
    harmonic: HarmonicFactor,
    delta_inv: CycloNum,
}

struct GeneralPlan {
    sd: SubtorusData,
    cosets: Vec<usize>,
    harmonic: HarmonicFactor,
    r1_inv: CycloNum,
}

/// Precomputed data for evaluating one class on many weights.
pub struct ClassEngine {
    datum: Arc<RootDatum>,
    pub w: WeylElement,
    pub info: ClassInfo,
    pub method: Method,
    plan: Plan,
}

impl ClassEngine {
    /// Picks the cheapest applicable formula: ellreg, then elliptic, then general.
    pub fn new(datum: Arc<RootDatum>, w: &WeylElement, t: Option<&TorusPoint>) -> Result<Self> {
        let info = classify(&datum, w);
        let method = if info.elliptic && info.regular {
            Method::Ellreg
        } else if info.elliptic {
            Method::Elliptic
        } else {
            Method::General
        };
        Self::with_method(datum, w, t, method)
    }

    pub fn with_method(datum: Arc<RootDatum>, w: &WeylElement, t: Option<&TorusPoint>, method: Method) -> Result<Self> {
        let info = classify(&datum, w);
        if let Some(t) = t {
            if t.k.0.len() != datum.rank() {
                return Err(Error::Dimension { expected: datum.rank(), got: t.k.0.len() });
            }
        }
        let plan = match method {
            Method::Ellreg => {
                if !(info.elliptic && info.regular) {
                    return Err(Error::NotEllipticRegular);
                }
                Plan::Ellreg { m: info.order as i64 }
            }
            Method::Elliptic => {
                if !info.elliptic {
                    return Err(Error::NotElliptic);
                }
                let norm = normalize_to_parabolic(&datum, w);
                let t = match t {
                    Some(t) => {
                        let t = t.clone();
                        let moved = TorusPoint { modulus: t.modulus, k: norm.u.act_coroot(&t.k) };
                        levi_adjoint_check(&datum, &norm, &moved)?;
                        t
                    }
                    None => canonical_torsion_point(&datum, &norm).ok_or(Error::MissingTorsionPoint)?,
                };
                let rt = centralizer_roots(&datum, &t);
                let g = datum.weyl_group();
                let cosets = g.coset_reps(&datum, &rt);
                let harmonic = HarmonicFactor::new(&datum, &rt);
                let delta_inv = delta(&datum, &t).inverse().expect("Δ(t) ≠ 0");
                Plan::Elliptic(Box::new(EllipticPlan { t, cosets, harmonic, delta_inv }))
            }
            Method::General => {
                let norm = normalize_to_parabolic(&datum, w);
                let t = match t {
                    Some(t) => {
                        let moved = TorusPoint { modulus: t.modulus, k: norm.u.act_coroot(&t.k) };
                        levi_adjoint_check(&datum, &norm, &moved)?;
                        moved
                    }
                    None => canonical_torsion_point(&datum, &norm).ok_or(Error::MissingTorsionPoint)?,
                };
                let sd = build_subtorus(&datum, &norm.w, &norm.j, &t)?;
                let g = datum.weyl_group();
                let cosets = g.coset_reps(&datum, &sd.r_ts_plus);
                let harmonic = HarmonicFactor::new(&datum, &sd.r_ts_plus);
                let r1_inv = one_minus_product(&datum, &t, &sd.r1).inverse().expect("nonzero product");
                Plan::General(Box::new(GeneralPlan { sd, cosets, harmonic, r1_inv }))
            }
        };
        Ok(ClassEngine { datum, w: w.clone(), info, method, plan })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    /// Subtorus data of the general plan, if that is the plan in use.
    pub fn subtorus(&self) -> Option<&SubtorusData> {
        match &self.plan {
            Plan::General(p) => Some(&p.sd),
            _ => None,
        }
    }

    pub fn torsion_point(&self) -> Option<&TorusPoint> {
        match &self.plan {
            Plan::General(p) => Some(&p.sd.torus),
            Plan::Elliptic(p) => Some(&p.t),
            Plan::Ellreg { .. } => None,
        }
    }

    pub fn trace(&self, mu: &Weight) -> Result<i64> {
        check_mu(&self.datum, mu)?;
        let datum = &*self.datum;
        match &self.plan {
            Plan::Ellreg { m } => ellreg_value(datum, mu, *m),
            Plan::Elliptic(p) => {
                if vanishing_by_centralizer(datum, mu, &p.t) {
                    return Ok(0);
                }
                let n = p.t.modulus as usize;
                let g = datum.weyl_group();
                let acc = sum_group_ring(&p.cosets, n, |v| {
                    let vm = g.act(v, mu);
                    let c = (g.sign(v) as i128).checked_mul(p.harmonic.numerator(datum, &vm))?;
                    Some((p.t.exponent(&vm) as usize, c, None))
                })?;
                let s = CycloNum::from_group_ring(p.t.modulus, &acc);
                let x = (&s * &p.delta_inv).scale(&(BigRational::one() / p.harmonic.denominator()));
                to_i64(extract_integer(&x)?)
            }
            Plan::General(p) => {
                let sd = &p.sd;
                let n = sd.modulus() as usize;
                let g = datum.weyl_group();
                let acc = sum_group_ring(&p.cosets, n, |v| {
                    let vm = g.act(v, mu);
                    let shifted = vm.sub(&datum.rho);
                    let cone = sd.cone_coords(&shifted);
                    if cone.iter().any(|&x| x < 0) {
                        return Some((0, 0, None));
                    }
                    let part = sd.partition_group_ring(&cone);
                    if part.iter().all(|&x| x == 0) {
                        return Some((0, 0, None));
                    }
                    let c = (g.sign(v) as i128).checked_mul(p.harmonic.numerator(datum, &vm))?;
                    Some((sd.torus.exponent(&shifted) as usize, c, Some(part)))
                })?;
                let s = CycloNum::from_group_ring(sd.modulus(), &acc);
                let x = (&s * &p.r1_inv).scale(&(BigRational::one() / p.harmonic.denominator()));
                to_i64(extract_integer(&x)?)
            }
        }
    }

    pub fn trace_result(&self, mu: &Weight) -> Result<TraceResult> {
        Ok(TraceResult { value: self.trace(mu)?, method: self.method })
    }
}

/// Parallel accumulation of `c · ζ^shift · part` (or `c · ζ^shift` when `part` is absent).
fn sum_group_ring<F>(cosets: &[usize], n: usize, term: F) -> Result<Vec<BigInt>>
where
    F: Fn(usize) -> Option<(usize, i128, Option<Arc<[i128]>>)> + Sync,
{
    let partial = cosets
        .par_chunks(256)
        .map(|chunk| {
            let mut acc = vec![0i128; n];
            for &v in chunk {
                let (shift, c, part) = term(v).ok_or(Error::Overflow("coset term"))?;
                if c == 0 {
                    continue;
                }
                match part {
                    None => {
                        acc[shift] = acc[shift].checked_add(c).ok_or(Error::Overflow("accumulator"))?;
                    }
                    Some(p) => {
                        for (e, &x) in p.iter().enumerate() {
                            if x != 0 {
                                let y = x.checked_mul(c).ok_or(Error::Overflow("partition term"))?;
                                let slot = &mut acc[(e + shift) % n];
                                *slot = slot.checked_add(y).ok_or(Error::Overflow("accumulator"))?;
                            }
                        }
                    }
                }
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = vec![BigInt::zero(); n];
    for part in partial {
        for (t, x) in total.iter_mut().zip(part) {
            *t += x;
        }
    }
    Ok(total)
}

pub fn trace_elliptic(datum: &Arc<RootDatum>, mu: &Weight, w: &WeylElement, t: Option<&TorusPoint>) -> Result<i64> {
    ClassEngine::with_method(datum.clone(), w, t, Method::Elliptic)?.trace(mu)
}

pub fn trace_general(req: &TraceRequest) -> Result<i64> {
    ClassEngine::with_method(req.datum.clone(), &req.w, req.t.as_ref(), Method::General)?.trace(&req.mu)
}

/// Dispatching entry point.
pub fn trace(datum: &Arc<RootDatum>, mu: &Weight, w: &WeylElement, t: Option<&TorusPoint>) -> Result<TraceResult> {
    ClassEngine::new(datum.clone(), w, t)?.trace_result(mu)
}

/// `dim V_μ^T` through the identity class.
pub fn zero_weight_dimension(datum: &Arc<RootDatum>, mu: &Weight) -> Result<i64> {
    ClassEngine::new(datum.clone(), &WeylElement::identity(datum.rank()), None)?.trace(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::datum;
    use crate::weyl::parse_class;

    fn tr(group: &str, class: &str, mu: &[i64]) -> i64 {
        let d = datum(group).unwrap();
        let w = parse_class(&d, class).unwrap();
        trace(&d, &Weight(mu.to_vec()), &w, None).unwrap().value
    }

    #[test]
    fn trivial_representation() {
        for g in ["A2", "C2", "G2", "A3", "B3"] {
            let d = datum(g).unwrap();
            for c in d.weyl_group().classes() {
                let w = d.weyl_group().element(&d, c.representative);
                let e = ClassEngine::new(d.clone(), &w, None);
                if let Ok(e) = e {
                    assert_eq!(e.trace(&d.rho).unwrap(), 1, "{g} {w}");
                }
            }
        }
    }

    #[test]
    fn paper_spot_values() {
        assert_eq!(tr("G2", "cox^3", &[3, 2]), -2);
        assert_eq!(tr("F4", "w0", &[2, 2, 1, 1]), 4);
        assert_eq!(tr("SU3", "1", &[4, 7]), 4);
        assert_eq!(tr("SU3", "cox", &[4, 7]), 1);
        assert_eq!(tr("SU3", "r", &[2, 5]), 0);
        assert_eq!(tr("SU3", "r", &[1, 4]), -1);
    }

    #[test]
    fn adjoint_of_g2_is_reflection_rep() {
        // Zero weight space of the adjoint is the Cartan subalgebra.
        let d = datum("G2").unwrap();
        let mu = Weight(vec![2, 1]);
        for c in d.weyl_group().classes() {
            let w = d.weyl_group().element(&d, c.representative);
            let expect: i64 = (0..2).map(|i| w.entry(i, i)).sum();
            assert_eq!(trace(&d, &mu, &w, None).unwrap().value, expect, "{w}");
        }
    }

    #[test]
    fn elliptic_formula_matches_monomial_formula() {
        for g in ["C2", "G2"] {
            let d = datum(g).unwrap();
            for k in 1..=d.coxeter_number / 2 {
                let w = parse_class(&d, &format!("cox^{k}")).unwrap();
                if !classify(&d, &w).elliptic {
                    continue;
                }
                let a = ClassEngine::with_method(d.clone(), &w, None, Method::Ellreg).unwrap();
                let b = ClassEngine::with_method(d.clone(), &w, None, Method::Elliptic).unwrap();
                for x in 1..=6 {
                    for y in 1..=6 {
                        let mu = Weight(vec![x, y]);
                        assert_eq!(a.trace(&mu).unwrap(), b.trace(&mu).unwrap(), "{g} cox^{k} {mu}");
                    }
                }
            }
        }
    }

    #[test]
    fn weyl_identity_at_rho() {
        for g in ["C2", "G2", "A3"] {
            let d = datum(g).unwrap();
            let w = parse_class(&d, "cox").unwrap();
            let norm = normalize_to_parabolic(&d, &w);
            let t = canonical_torsion_point(&d, &norm).unwrap();
            assert_eq!(alternating_sum(&d, &t, &d.rho), delta(&d, &t));
        }
    }

    #[test]
    fn coset_constant_cases() {
        let d = datum("Sp4").unwrap();
        let norm = normalize_to_parabolic(&d, &parse_class(&d, "w0").unwrap());
        let t = canonical_torsion_point(&d, &norm).unwrap();
        let CosetConstant::Value(c) = coset_constant(&d, &t, &d.rho).unwrap() else { panic!() };
        // On ρ + 2Q the trace is C times the product over the stabilizer coroots.
        let mut seen = 0;
        for mu in [[1, 1], [3, 1], [1, 3], [3, 3], [5, 1], [1, 5], [5, 5], [3, 5]] {
            let mu = Weight(mu.to_vec());
            let half = Weight(mu.sub(&d.rho).0.iter().map(|x| x / 2).collect());
            if mu.sub(&d.rho).0.iter().any(|x| x % 2 != 0) || !d.in_root_lattice(&half) {
                continue;
            }
            seen += 1;
            let prod: i64 = stabilizer_generators(&d, &mu, 2).iter().map(|&k| d.pair_coroot(&mu, k)).product();
            let expect = c.scale(&BigRational::from_integer(prod.into()));
            let got = crate::oracle::torus_trace(&d, &mu, &t, 1_000_000).unwrap();
            assert_eq!(got, expect);
        }
        assert!(seen >= 4);
        // All four coroots pair evenly with (2,2) but only one root is trivial at t.
        assert_eq!(coset_constant(&d, &t, &Weight(vec![2, 2])).unwrap(), CosetConstant::Zero);
    }
}
