//! Root data for the simple simply connected groups of rank at most six.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlin;
use crate::weyl::WeylGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub const SUPPORTED: &'static [&'static str] =
        &["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2", "F4", "E6"];

    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => (1..=5).contains(&rank),
            Family::B | Family::C => (2..=4).contains(&rank),
            Family::D => rank == 4,
            Family::E => rank == 6,
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::UnsupportedLabel(format!("{family:?}{rank}")))
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Accepts Cartan labels (`F4`) and the compact-group names `SUn`, `Spn`, `Spinn`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedLabel(s.to_string());
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        let num = |p: &str| lower[p.len()..].parse::<usize>().map_err(|_| bad());
        if lower.starts_with("su") {
            let n = num("su")?;
            return CartanType::new(Family::A, n.checked_sub(1).ok_or_else(bad)?).map_err(|_| bad());
        }
        if lower.starts_with("spin") {
            let n = num("spin")?;
            let ty = if n % 2 == 1 { CartanType::new(Family::B, n / 2) } else { CartanType::new(Family::D, n / 2) };
            return ty.map_err(|_| bad());
        }
        if lower.starts_with("sp") {
            let n = num("sp")?;
            if n % 2 == 1 {
                return Err(bad());
            }
            return CartanType::new(Family::C, n / 2).map_err(|_| bad());
        }
        let mut chars = t.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank = chars.as_str().parse::<usize>().map_err(|_| bad())?;
        CartanType::new(family, rank).map_err(|_| bad())
    }
}

/// Weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

/// Coweight or coroot in simple-coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CorootVec(pub Vec<i64>);

impl Weight {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_regular_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 1)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        t.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<i64>().map_err(|_| Error::Parse(format!("bad weight `{s}`"))))
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl CorootVec {
    pub fn add(&self, o: &CorootVec) -> CorootVec {
        CorootVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> CorootVec {
        CorootVec(self.0.iter().map(|a| a * k).collect())
    }
}

pub fn pairing(mu: &Weight, cv: &CorootVec) -> i64 {
    mu.0.iter().zip(&cv.0).map(|(a, b)| a * b).sum()
}

#[derive(Debug, Serialize)]
pub struct RootDatum {
    pub label: CartanType,
    /// `cartan[i][j] = ⟨α_j, α̌_i⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// Simple-root coordinates, sorted by height.
    pub pos_roots: Vec<Vec<i64>>,
    /// Simple-coroot coordinates; `pos_coroots[k]` is the coroot of `pos_roots[k]`.
    pub pos_coroots: Vec<Vec<i64>>,
    /// Positive roots in fundamental-weight coordinates.
    pub root_weights: Vec<Weight>,
    pub rho: Weight,
    pub rho_check: CorootVec,
    pub center_exponent: i64,
    pub coxeter_number: usize,
    /// Gram matrix of the invariant form on the fundamental weights.
    #[serde(skip)]
    pub form: Vec<Vec<BigRational>>,
    /// `center_exponent · cartan⁻¹`, an integer matrix.
    pub inv_cartan_scaled: Vec<Vec<i64>>,
    /// `(α_i, α_i)/2` with long roots normalized to 1.
    #[serde(skip)]
    pub root_length: Vec<BigRational>,
    #[serde(skip)]
    root_index: HashMap<Vec<i64>, usize>,
    #[serde(skip)]
    group: OnceLock<WeylGroup>,
}

fn cartan_matrix(t: CartanType) -> Vec<Vec<i64>> {
    let r = t.rank;
    let mut a = vec![vec![0i64; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match t.family {
        Family::A | Family::B | Family::C => {
            for i in 0..r - 1 {
                link(i, i + 1);
            }
        }
        Family::D => {
            // Node 2 (index 1) is central.
            link(0, 1);
            link(1, 2);
            link(1, 3);
        }
        Family::E => {
            // Chain 1-2-3-4-5, node 6 attached to node 3.
            for i in 0..4 {
                link(i, i + 1);
            }
            link(2, 5);
        }
        Family::F => {
            for i in 0..3 {
                link(i, i + 1);
            }
        }
        Family::G => link(0, 1),
    }
    match t.family {
        // Last root short.
        Family::B => a[r - 1][r - 2] = -2,
        // Last root long.
        Family::C => a[r - 2][r - 1] = -2,
        // Roots 1, 2 long; 3, 4 short.
        Family::F => a[2][1] = -2,
        // Root 1 long, root 2 short.
        Family::G => a[1][0] = -3,
        _ => {}
    }
    a
}

static CACHE: OnceLock<Mutex<HashMap<CartanType, Arc<RootDatum>>>> = OnceLock::new();

/// Builds (or fetches the cached) root datum.
pub fn build_datum(label: CartanType) -> Arc<RootDatum> {
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock();
    guard.entry(label).or_insert_with(|| Arc::new(RootDatum::construct(label))).clone()
}

pub fn datum(label: &str) -> Result<Arc<RootDatum>> {
    Ok(build_datum(label.parse()?))
}

impl RootDatum {
    fn construct(label: CartanType) -> RootDatum {
        let cartan = cartan_matrix(label);
        let r = label.rank;

        // Close (root, coroot) pairs under simple reflections.
        let unit = |i: usize| (0..r).map(|j| (i == j) as i64).collect::<Vec<_>>();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut pairs: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = (0..r).map(|i| (unit(i), unit(i))).collect();
        while let Some((root, coroot)) = queue.pop_front() {
            if !seen.insert(root.clone()) {
                continue;
            }
            for i in 0..r {
                let p: i64 = (0..r).map(|j| cartan[i][j] * root[j]).sum();
                let q: i64 = (0..r).map(|j| coroot[j] * cartan[j][i]).sum();
                let mut nr = root.clone();
                nr[i] -= p;
                let mut nc = coroot.clone();
                nc[i] -= q;
                if !seen.contains(&nr) {
                    queue.push_back((nr, nc));
                }
            }
            pairs.push((root, coroot));
        }
        let mut positive: Vec<(Vec<i64>, Vec<i64>)> =
            pairs.into_iter().filter(|(r, _)| r.iter().all(|&x| x >= 0)).collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });
        let pos_roots: Vec<Vec<i64>> = positive.iter().map(|p| p.0.clone()).collect();
        let pos_coroots: Vec<Vec<i64>> = positive.iter().map(|p| p.1.clone()).collect();
        let root_weights: Vec<Weight> = pos_roots
            .iter()
            .map(|q| Weight((0..r).map(|i| (0..r).map(|j| cartan[i][j] * q[j]).sum()).collect()))
            .collect();
        let mut rho_check = vec![0i64; r];
        for c in &pos_coroots {
            for (a, b) in rho_check.iter_mut().zip(c) {
                *a += b;
            }
        }
        let (e, inv_scaled) = intlin::scaled_inverse(&cartan).expect("Cartan matrix is invertible");

        // Root lengths from symmetrizability: d_i A_ij = d_j A_ji.
        let mut d: Vec<Option<BigRational>> = vec![None; r];
        d[0] = Some(BigRational::one());
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for j in 0..r {
                if i != j && cartan[i][j] != 0 && d[j].is_none() {
                    let di = d[i].clone().unwrap();
                    d[j] = Some(di * BigRational::new(cartan[i][j].into(), cartan[j][i].into()));
                    stack.push(j);
                }
            }
        }
        let d: Vec<BigRational> = d.into_iter().map(Option::unwrap).collect();
        let dmax = d.iter().max().unwrap().clone();
        let root_length: Vec<BigRational> = d.iter().map(|x| x / &dmax).collect();
        let inv = intlin::inverse(&cartan).unwrap();
        let form: Vec<Vec<BigRational>> =
            (0..r).map(|i| (0..r).map(|k| &inv[i][k] * &root_length[i]).collect()).collect();

        let root_index = pos_roots.iter().enumerate().map(|(k, v)| (v.clone(), k)).collect();
        let coxeter_number = 2 * pos_roots.len() / r;
        RootDatum {
            label,
            cartan,
            pos_roots,
            pos_coroots,
            root_weights,
            rho: Weight(vec![1; r]),
            rho_check: CorootVec(rho_check),
            center_exponent: e,
            coxeter_number,
            form,
            inv_cartan_scaled: inv_scaled,
            root_length,
            root_index,
            group: OnceLock::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.label.rank
    }

    pub fn num_pos_roots(&self) -> usize {
        self.pos_roots.len()
    }

    pub fn coroot(&self, k: usize) -> CorootVec {
        CorootVec(self.pos_coroots[k].clone())
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan.iter().map(|row| row[i]).collect())
    }

    /// Pairing with the k-th positive coroot.
    pub fn pair_coroot(&self, mu: &Weight, k: usize) -> i64 {
        mu.0.iter().zip(&self.pos_coroots[k]).map(|(a, b)| a * b).sum()
    }

    /// Root coordinates scaled by the center exponent; always integral.
    pub fn scaled_root_coords(&self, mu: &Weight) -> Vec<i64> {
        self.inv_cartan_scaled.iter().map(|row| row.iter().zip(&mu.0).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn root_coords(&self, mu: &Weight) -> Vec<BigRational> {
        let e = BigInt::from(self.center_exponent);
        self.scaled_root_coords(mu).into_iter().map(|x| BigRational::new(x.into(), e.clone())).collect()
    }

    pub fn in_root_lattice(&self, mu: &Weight) -> bool {
        self.scaled_root_coords(mu).iter().all(|x| x % self.center_exponent == 0)
    }

    /// Weight with the given root coordinates.
    pub fn weight_from_root_coords(&self, q: &[i64]) -> Weight {
        Weight(self.cartan.iter().map(|row| row.iter().zip(q).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn form(&self, lambda: &Weight, mu: &Weight) -> BigRational {
        let r = self.rank();
        let mut s = BigRational::zero();
        for i in 0..r {
            if lambda.0[i] == 0 {
                continue;
            }
            for k in 0..r {
                if mu.0[k] != 0 {
                    s += &self.form[i][k] * BigRational::from_integer((lambda.0[i] * mu.0[k]).into());
                }
            }
        }
        s
    }

    /// `(L, L·form)` with `L·form` integral, for integer-only recursions.
    pub fn integer_form(&self) -> (i64, Vec<Vec<i64>>) {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let mut l = BigInt::one();
        for row in &self.form {
            for x in row {
                l = l.lcm(x.denom());
            }
        }
        let lq = BigRational::from_integer(l.clone());
        let m = self
            .form
            .iter()
            .map(|row| row.iter().map(|x| (x * &lq).to_integer().to_i64().unwrap()).collect())
            .collect();
        (l.to_i64().unwrap(), m)
    }

    /// Index of a positive root given in simple-root coordinates.
    pub fn root_position(&self, root: &[i64]) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    /// Index of a positive root and its sign, for a root given as a weight.
    pub fn signed_root_position(&self, w: &Weight) -> Option<(usize, i64)> {
        let e = self.center_exponent;
        let q = self.scaled_root_coords(w);
        if q.iter().any(|x| x % e != 0) {
            return None;
        }
        let q: Vec<i64> = q.iter().map(|x| x / e).collect();
        if let Some(k) = self.root_position(&q) {
            return Some((k, 1));
        }
        let neg: Vec<i64> = q.iter().map(|x| -x).collect();
        self.root_position(&neg).map(|k| (k, -1))
    }

    pub fn coroot_height(&self, k: usize) -> i64 {
        self.pos_coroots[k].iter().sum()
    }

    /// Positive roots whose support lies inside `j`.
    pub fn parabolic_roots(&self, j: &[usize]) -> Vec<usize> {
        (0..self.num_pos_roots())
            .filter(|&k| self.pos_roots[k].iter().enumerate().all(|(i, &c)| c == 0 || j.contains(&i)))
            .collect()
    }

    /// Connected components of the Dynkin subdiagram on `j`.
    pub fn components(&self, j: &[usize]) -> Vec<Vec<usize>> {
        let mut left: Vec<usize> = j.to_vec();
        let mut out = Vec::new();
        while let Some(start) = left.pop() {
            let mut comp = vec![start];
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                let (adj, rest): (Vec<usize>, Vec<usize>) = left.iter().partition(|&&x| self.cartan[i][x] != 0);
                comp.extend(adj);
                left = rest;
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out.sort();
        out
    }

    /// Reflection `s_i` applied to a weight.
    pub fn reflect(&self, i: usize, mu: &Weight) -> Weight {
        let c = mu.0[i];
        Weight(mu.0.iter().enumerate().map(|(k, &x)| x - c * self.cartan[k][i]).collect())
    }

    /// Moves a weight into the dominant chamber.
    pub fn dominant_conjugate(&self, mu: &Weight) -> Weight {
        let mut x = mu.clone();
        while let Some(i) = x.0.iter().position(|&c| c < 0) {
            x = self.reflect(i, &x);
        }
        x
    }

    /// `w0` sends dominant to antidominant; `μ ↦ −w0 μ` is the dual.
    pub fn dual_weight(&self, mu: &Weight) -> Weight {
        self.dominant_conjugate(&mu.neg())
    }

    pub fn weyl_group(&self) -> &WeylGroup {
        self.group.get_or_init(|| WeylGroup::enumerate(self))
    }

    /// Product of `⟨μ, α̌⟩ / ⟨ρ, α̌⟩` over all positive coroots.
    pub fn weyl_dimension(&self, mu: &Weight) -> BigRational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for k in 0..self.num_pos_roots() {
            num *= self.pair_coroot(mu, k);
            den *= self.coroot_height(k);
        }
        BigRational::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts() {
        let counts = [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("A4", 10),
            ("A5", 15),
            ("B2", 4),
            ("B3", 9),
            ("B4", 16),
            ("C2", 4),
            ("C3", 9),
            ("C4", 16),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
        ];
        for (l, n) in counts {
            let d = datum(l).unwrap();
            assert_eq!(d.num_pos_roots(), n, "{l}");
            let maxh = (0..n).map(|k| d.coroot_height(k)).max().unwrap();
            assert_eq!(maxh as usize, d.coxeter_number - 1, "{l}");
        }
    }

    #[test]
    fn labels_parse() {
        assert_eq!("SU3".parse::<CartanType>().unwrap().to_string(), "A2");
        assert_eq!("Sp4".parse::<CartanType>().unwrap().to_string(), "C2");
        assert_eq!("Spin8".parse::<CartanType>().unwrap().to_string(), "D4");
        assert!("E7".parse::<CartanType>().is_err());
        assert!("A6".parse::<CartanType>().is_err());
    }

    #[test]
    fn g2_and_e6_data() {
        let g2 = datum("G2").unwrap();
        assert_eq!(g2.coxeter_number, 6);
        assert_eq!(g2.center_exponent, 1);
        let e6 = datum("E6").unwrap();
        assert_eq!(e6.form(&e6.rho, &e6.rho), BigRational::from_integer(78.into()));
        assert_eq!(e6.center_exponent, 3);
    }

    #[test]
    fn root_coords_of_a2() {
        let a2 = datum("A2").unwrap();
        let q = a2.root_coords(&Weight(vec![1, 0]));
        assert_eq!(q, vec![BigRational::new(2.into(), 3.into()), BigRational::new(1.into(), 3.into())]);
        assert!(a2.in_root_lattice(&a2.rho));
    }

    #[test]
    fn simple_coroots_pair_to_one_with_rho() {
        for l in CartanType::SUPPORTED {
            let d = datum(l).unwrap();
            for i in 0..d.rank() {
                let mut c = vec![0; d.rank()];
                c[i] = 1;
                assert_eq!(pairing(&d.rho, &CorootVec(c)), 1);
            }
        }
    }

    #[test]
    fn short_roots_where_expected() {
        let g2 = datum("G2").unwrap();
        assert!(g2.root_length[0] > g2.root_length[1]);
        let c2 = datum("C2").unwrap();
        assert!(c2.root_length[0] < c2.root_length[1]);
        let f4 = datum("F4").unwrap();
        assert!(f4.root_length[1] > f4.root_length[2]);
    }
}
