//! Weyl group elements, full group enumeration, classification and coset searches.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intlin;
use crate::lattice::{CorootVec, Family, RootDatum, Weight};

/// Integer matrix on fundamental-weight coordinates, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub rank: usize,
    pub matrix: Vec<i64>,
    pub word: Option<Vec<usize>>,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        let mut matrix = vec![0; rank * rank];
        for i in 0..rank {
            matrix[i * rank + i] = 1;
        }
        Self { rank, matrix, word: Some(Vec::new()) }
    }

    pub fn simple(datum: &RootDatum, i: usize) -> Self {
        let r = datum.rank();
        let mut m = Self::identity(r);
        for k in 0..r {
            m.matrix[k * r + i] -= datum.cartan[k][i];
        }
        m.word = Some(vec![i]);
        m
    }

    /// Product `s_{w[0]} s_{w[1]} ⋯`, 0-based letters.
    pub fn from_word(datum: &RootDatum, word: &[usize]) -> Result<Self> {
        let r = datum.rank();
        let mut m = Self::identity(r);
        for &i in word {
            if i >= r {
                return Err(Error::Parse(format!("simple reflection index {} out of range", i + 1)));
            }
            m = m.compose(&Self::simple(datum, i));
        }
        m.word = Some(word.to_vec());
        Ok(m)
    }

    /// Reflection in the `k`-th positive root.
    pub fn root_reflection(datum: &RootDatum, k: usize) -> Self {
        let r = datum.rank();
        let alpha = &datum.root_weights[k];
        let c = &datum.pos_coroots[k];
        let mut m = Self::identity(r);
        for a in 0..r {
            for b in 0..r {
                m.matrix[a * r + b] -= alpha.0[a] * c[b];
            }
        }
        m.word = None;
        m
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.matrix.chunks(self.rank).map(|c| c.to_vec()).collect()
    }

    pub fn act(&self, mu: &Weight) -> Weight {
        let r = self.rank;
        Weight((0..r).map(|i| (0..r).map(|j| self.matrix[i * r + j] * mu.0[j]).sum()).collect())
    }

    /// Action on coweights: the inverse transpose.
    pub fn act_coroot(&self, c: &CorootVec) -> CorootVec {
        let inv = self.inverse();
        let r = self.rank;
        CorootVec((0..r).map(|i| (0..r).map(|j| inv.matrix[j * r + i] * c.0[j]).sum()).collect())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let r = self.rank;
        let mut m = vec![0; r * r];
        for i in 0..r {
            for k in 0..r {
                let a = self.matrix[i * r + k];
                if a == 0 {
                    continue;
                }
                for j in 0..r {
                    m[i * r + j] += a * other.matrix[k * r + j];
                }
            }
        }
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        WeylElement { rank: r, matrix: m, word }
    }

    pub fn inverse(&self) -> WeylElement {
        let inv = intlin::inverse(&self.rows()).expect("Weyl elements are invertible");
        let matrix = intlin::q_to_int_matrix(&inv).expect("integral inverse").concat();
        let word = self.word.as_ref().map(|w| w.iter().rev().copied().collect());
        WeylElement { rank: self.rank, matrix, word }
    }

    pub fn is_identity(&self) -> bool {
        let r = self.rank;
        (0..r).all(|i| (0..r).all(|j| self.matrix[i * r + j] == (i == j) as i64))
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    pub fn sign(&self) -> i64 {
        determinant(&self.rows())
    }

    pub fn conjugate_by(&self, u: &WeylElement) -> WeylElement {
        u.compose(self).compose(&u.inverse())
    }

    pub fn pow(&self, k: usize) -> WeylElement {
        let mut p = WeylElement::identity(self.rank);
        for _ in 0..k {
            p = p.compose(self);
        }
        p
    }

    /// Fixed coweight lattice as a ℤ-basis (saturated).
    pub fn fixed_coweights(&self) -> Vec<CorootVec> {
        let r = self.rank;
        let mt: Vec<Vec<i64>> =
            (0..r).map(|i| (0..r).map(|j| self.matrix[j * r + i] - (i == j) as i64).collect()).collect();
        intlin::integer_kernel(&mt, r).into_iter().map(CorootVec).collect()
    }

    pub fn fixed_weights(&self) -> Vec<Weight> {
        let r = self.rank;
        let m: Vec<Vec<i64>> =
            (0..r).map(|i| (0..r).map(|j| self.matrix[i * r + j] - (i == j) as i64).collect()).collect();
        intlin::integer_kernel(&m, r).into_iter().map(Weight).collect()
    }
}

fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    // Bareiss fraction-free elimination.
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else { return 0 };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * if n == 0 { 1 } else { a[n - 1][n - 1] }) as i64
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.word {
            Some(w) if w.is_empty() => write!(f, "1"),
            Some(w) => {
                let s: Vec<String> = w.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "{}", s.join(" "))
            }
            None => write!(f, "{:?}", self.rows()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassInfo {
    pub order: usize,
    pub d: usize,
    pub elliptic: bool,
    pub regular: bool,
    pub parabolic_support: Vec<usize>,
    pub regular_in_closure: bool,
}

#[derive(Debug, Clone)]
pub struct ParabolicComponent {
    pub nodes: Vec<usize>,
    pub element: WeylElement,
    pub order: usize,
    pub regular: bool,
}

#[derive(Debug, Clone)]
pub struct Normalized {
    /// `u w u⁻¹`, elliptic in the standard parabolic `W_J`.
    pub w: WeylElement,
    pub u: WeylElement,
    pub j: Vec<usize>,
    pub components: Vec<ParabolicComponent>,
}

/// True when every `⟨w⟩`-orbit on the given roots has size `order(w)`.
fn acts_freely(datum: &RootDatum, w: &WeylElement, roots: &[usize]) -> bool {
    let m = w.order();
    for &k in roots {
        for s in [1i64, -1] {
            let a = datum.root_weights[k].scale(s);
            let mut x = w.act(&a);
            let mut len = 1;
            while x != a {
                x = w.act(&x);
                len += 1;
            }
            if len != m {
                return false;
            }
        }
    }
    true
}

pub fn is_regular(datum: &RootDatum, w: &WeylElement) -> bool {
    let all: Vec<usize> = (0..datum.num_pos_roots()).collect();
    acts_freely(datum, w, &all)
}

/// Conjugates `w` into a standard parabolic subgroup in which it is elliptic.
pub fn normalize_to_parabolic(datum: &RootDatum, w: &WeylElement) -> Normalized {
    let r = datum.rank();
    let basis = w.fixed_weights();
    let mut x = vec![0i64; r];
    if !basis.is_empty() {
        // Balanced base-K digits keep every nonzero coroot pairing nonzero.
        let kmax = basis
            .iter()
            .flat_map(|b| (0..datum.num_pos_roots()).map(move |k| datum.pair_coroot(b, k).abs()))
            .max()
            .unwrap_or(0);
        let base = 2 * kmax + 1;
        let mut scale = 1i64;
        for b in &basis {
            for (xi, bi) in x.iter_mut().zip(&b.0) {
                *xi += scale * bi;
            }
            scale *= base;
        }
    }
    let mut xw = Weight(x);
    let mut u = WeylElement::identity(r);
    while let Some(i) = xw.0.iter().position(|&c| c < 0) {
        xw = datum.reflect(i, &xw);
        u = WeylElement::simple(datum, i).compose(&u);
    }
    let j: Vec<usize> = (0..r).filter(|&i| xw.0[i] == 0).collect();
    debug_assert_eq!(j.len(), r - basis.len());
    let mut wp = w.conjugate_by(&u);
    let group = datum.weyl_group();
    let idx = group.find(&wp);
    let word = group.word(idx);
    wp.word = Some(word.clone());
    let components = datum
        .components(&j)
        .into_iter()
        .map(|nodes| {
            let sub: Vec<usize> = word.iter().copied().filter(|i| nodes.contains(i)).collect();
            let element = WeylElement::from_word(datum, &sub).unwrap();
            let roots = datum.parabolic_roots(&nodes);
            let order = element.order();
            let regular = acts_freely(datum, &element, &roots);
            ParabolicComponent { nodes, element, order, regular }
        })
        .collect();
    let u_idx = group.find(&u);
    u.word = Some(group.word(u_idx));
    Normalized { w: wp, u, j, components }
}

pub fn classify(datum: &RootDatum, w: &WeylElement) -> ClassInfo {
    let n = normalize_to_parabolic(datum, w);
    let d = datum.rank() - n.j.len();
    ClassInfo {
        order: w.order(),
        d,
        elliptic: d == 0,
        regular: is_regular(datum, w),
        regular_in_closure: n.components.iter().all(|c| c.regular),
        parabolic_support: n.j,
    }
}

/// Class of a weight in `P/mQ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CosetClass {
    pub modulus: i64,
    pub key: Vec<i64>,
}

impl CosetClass {
    pub fn of(datum: &RootDatum, mu: &Weight, m: i64) -> Self {
        let em = datum.center_exponent * m;
        let key = datum.scaled_root_coords(mu).into_iter().map(|x| x.rem_euclid(em)).collect();
        CosetClass { modulus: m, key }
    }

    pub fn representative(&self, datum: &RootDatum) -> Weight {
        let e = datum.center_exponent;
        let w = datum.weight_from_root_coords(&self.key);
        Weight(w.0.iter().map(|x| x / e).collect())
    }
}

#[derive(Debug, Clone)]
pub struct PrincipalHit {
    pub v: WeylElement,
    pub sign: i64,
    /// `vμ`, which lies in `ρ + mQ`.
    pub image: Weight,
}

/// BFS over the orbit of `μ + mQ`; finds `v` with `vμ ∈ ρ + mQ`.
pub fn principal_search(datum: &RootDatum, mu: &Weight, m: i64) -> Option<PrincipalHit> {
    principal_search_ordered(datum, mu, m, &(0..datum.rank()).collect::<Vec<_>>())
}

/// As [`principal_search`] with an explicit generator order for the BFS.
pub fn principal_search_ordered(datum: &RootDatum, mu: &Weight, m: i64, order: &[usize]) -> Option<PrincipalHit> {
    let start = CosetClass::of(datum, mu, m);
    let target = CosetClass::of(datum, &datum.rho, m);
    let mut parent: HashMap<CosetClass, Option<(CosetClass, usize)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    let mut found = None;
    while let Some(y) = queue.pop_front() {
        if y == target {
            found = Some(y);
            break;
        }
        let rep = y.representative(datum);
        for &i in order {
            let z = CosetClass::of(datum, &datum.reflect(i, &rep), m);
            if !parent.contains_key(&z) {
                parent.insert(z.clone(), Some((y.clone(), i)));
                queue.push_back(z);
            }
        }
    }
    let mut y = found?;
    let mut letters = Vec::new();
    while let Some(Some((p, i))) = parent.get(&y) {
        letters.push(*i);
        y = p.clone();
    }
    // letters are last-applied first, which is the product order.
    let v = WeylElement::from_word(datum, &letters).unwrap();
    let image = v.act(mu);
    let sign = if letters.len() % 2 == 0 { 1 } else { -1 };
    Some(PrincipalHit { v, sign, image })
}

/// Size of the `W`-orbit of `μ + mQ`.
pub fn coset_orbit_size(datum: &RootDatum, mu: &Weight, m: i64) -> usize {
    let start = CosetClass::of(datum, mu, m);
    let mut seen = std::collections::HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(y) = queue.pop_front() {
        let rep = y.representative(datum);
        for i in 0..datum.rank() {
            let z = CosetClass::of(datum, &datum.reflect(i, &rep), m);
            if seen.insert(z.clone()) {
                queue.push_back(z);
            }
        }
    }
    seen.len()
}

/// Positive roots `α` with `⟨μ, α̌⟩ ∈ mℤ`; their reflections generate the stabilizer of `μ + mQ`.
pub fn stabilizer_generators(datum: &RootDatum, mu: &Weight, m: i64) -> Vec<usize> {
    (0..datum.num_pos_roots()).filter(|&k| datum.pair_coroot(mu, k) % m == 0).collect()
}

/// Full enumeration of `W` keyed by `wρ`.
#[derive(Debug)]
pub struct WeylGroup {
    rank: usize,
    images: Vec<Vec<i64>>,
    matrices: Vec<i64>,
    index: HashMap<Vec<i64>, u32>,
    words: Vec<Vec<u8>>,
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
    inverse: Vec<u32>,
    class_of: Vec<u32>,
    classes: Vec<ConjugacyClass>,
    longest: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: usize,
    pub order: usize,
    pub length: usize,
}

impl WeylGroup {
    pub(crate) fn enumerate(datum: &RootDatum) -> WeylGroup {
        let r = datum.rank();
        let rho = datum.rho.clone();
        let mut images = vec![rho.0.clone()];
        let mut index = HashMap::from([(rho.0.clone(), 0u32)]);
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut matrices = WeylElement::identity(r).matrix;
        let mut head = 0;
        while head < images.len() {
            let cur = Weight(images[head].clone());
            for i in 0..r {
                let nxt = datum.reflect(i, &cur);
                if !index.contains_key(&nxt.0) {
                    index.insert(nxt.0.clone(), images.len() as u32);
                    let mut w = Vec::with_capacity(words[head].len() + 1);
                    w.push(i as u8);
                    w.extend_from_slice(&words[head]);
                    words.push(w);
                    images.push(nxt.0);
                    // s_i M: subtract A[k][i] times row i.
                    let base = head * r * r;
                    let row_i: Vec<i64> = matrices[base + i * r..base + i * r + r].to_vec();
                    for k in 0..r {
                        for j in 0..r {
                            let v = matrices[base + k * r + j] - datum.cartan[k][i] * row_i[j];
                            matrices.push(v);
                        }
                    }
                }
            }
            head += 1;
        }
        let n = images.len();
        let left: Vec<Vec<u32>> =
            (0..r).map(|i| (0..n).map(|x| index[&datum.reflect(i, &Weight(images[x].clone())).0]).collect()).collect();
        // (x s_i)ρ = xρ − x α_i; x α_i is recovered through the word of x.
        let right: Vec<Vec<u32>> = (0..r)
            .map(|i| {
                (0..n)
                    .map(|x| {
                        let mut a = datum.simple_root(i);
                        for &l in words[x].iter().rev() {
                            a = datum.reflect(l as usize, &a);
                        }
                        let key: Vec<i64> = images[x].iter().zip(&a.0).map(|(p, q)| p - q).collect();
                        index[&key]
                    })
                    .collect()
            })
            .collect();
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            let mut y = 0u32;
            for &l in &words[x] {
                y = left[l as usize][y as usize];
            }
            inverse[x] = y;
        }
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != u32::MAX {
                continue;
            }
            let c = classes.len() as u32;
            class_of[x] = c;
            let mut members = vec![x];
            let mut k = 0;
            while k < members.len() {
                let y = members[k];
                for i in 0..r {
                    let z = left[i][right[i][y] as usize] as usize;
                    if class_of[z] == u32::MAX {
                        class_of[z] = c;
                        members.push(z);
                    }
                }
                k += 1;
            }
            let rep = *members.iter().min_by_key(|&&y| (words[y].len(), words[y].clone())).unwrap();
            classes.push(ConjugacyClass {
                representative: rep,
                size: members.len(),
                order: 0,
                length: words[rep].len(),
            });
        }
        let longest = (0..n).max_by_key(|&x| words[x].len()).unwrap();
        let mut g =
            WeylGroup { rank: r, images, matrices, index, words, left, right, inverse, class_of, classes, longest };
        for c in 0..g.classes.len() {
            let rep = g.classes[c].representative;
            g.classes[c].order = g.element_order(rep);
        }
        g.classes.sort_by_key(|c| (c.length, c.order, usize::MAX - c.size, c.representative));
        let remap: HashMap<usize, u32> =
            g.classes.iter().enumerate().map(|(k, c)| (c.representative, k as u32)).collect();
        let old_reps: Vec<usize> = {
            let mut v = vec![0; g.classes.len()];
            for c in &g.classes {
                v[g.class_of[c.representative] as usize] = c.representative;
            }
            v
        };
        for x in 0..n {
            g.class_of[x] = remap[&old_reps[g.class_of[x] as usize]];
        }
        g
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn find(&self, w: &WeylElement) -> usize {
        let r = self.rank;
        let key: Vec<i64> = (0..r).map(|i| (0..r).map(|j| w.matrix[i * r + j]).sum()).collect();
        self.index[&key] as usize
    }

    pub fn index_of_image(&self, rho_image: &[i64]) -> Option<usize> {
        self.index.get(rho_image).map(|&x| x as usize)
    }

    /// `wρ` for the element with this index.
    pub fn rho_image(&self, x: usize) -> &[i64] {
        &self.images[x]
    }

    pub fn matrix(&self, x: usize) -> &[i64] {
        let r2 = self.rank * self.rank;
        &self.matrices[x * r2..(x + 1) * r2]
    }

    /// `x·μ` for the element with index `x`.
    pub fn act(&self, x: usize, mu: &Weight) -> Weight {
        let r = self.rank;
        let m = self.matrix(x);
        Weight((0..r).map(|i| (0..r).map(|j| m[i * r + j] * mu.0[j]).sum()).collect())
    }

    pub fn word(&self, x: usize) -> Vec<usize> {
        self.words[x].iter().map(|&l| l as usize).collect()
    }

    pub fn length(&self, x: usize) -> usize {
        self.words[x].len()
    }

    pub fn sign(&self, x: usize) -> i64 {
        if self.words[x].len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn element(&self, datum: &RootDatum, x: usize) -> WeylElement {
        WeylElement::from_word(datum, &self.word(x)).unwrap()
    }

    pub fn left_mul(&self, i: usize, x: usize) -> usize {
        self.left[i][x] as usize
    }

    pub fn right_mul(&self, x: usize, i: usize) -> usize {
        self.right[i][x] as usize
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    /// Index of `x·y`.
    pub fn multiply(&self, x: usize, y: usize) -> usize {
        let mut z = x;
        for &l in &self.words[y] {
            z = self.right[l as usize][z] as usize;
        }
        z
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut p = x;
        let mut k = 1;
        while p != 0 {
            p = self.multiply(p, x);
            k += 1;
        }
        k
    }

    pub fn longest(&self) -> usize {
        self.longest
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn class_of_element(&self, w: &WeylElement) -> usize {
        self.class_of(self.find(w))
    }

    pub fn are_conjugate(&self, a: &WeylElement, b: &WeylElement) -> bool {
        self.class_of_element(a) == self.class_of_element(b)
    }

    /// Minimal coset representatives `v` with `v⁻¹α > 0` for each given positive root.
    pub fn coset_reps(&self, datum: &RootDatum, roots: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| {
                let img = Weight(self.images[x].clone());
                roots.iter().all(|&k| datum.pair_coroot(&img, k) > 0)
            })
            .collect()
    }

    /// Order of the subgroup generated by the given elements.
    pub fn subgroup_order(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.multiply(x, g);
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count
    }
}

/// Named class selectors understood by [`parse_class`].
pub fn known_class_names(datum: &RootDatum) -> Vec<String> {
    let r = datum.rank();
    let mut v = vec!["1".to_string(), "cox".into(), "cox^k".into(), "w0".into()];
    v.extend((1..=r).map(|i| format!("refl:{i}")));
    if r == 2 {
        v.extend(["r_alpha".into(), "r_beta".into()]);
    }
    if datum.label.family == Family::A {
        v.extend(["r".into(), "[partition], e.g. [211]".into()]);
    }
    v.push("word such as \"1 2 1\"".into());
    v
}

/// Parses a class selector into a representative element.
pub fn parse_class(datum: &RootDatum, name: &str) -> Result<WeylElement> {
    let r = datum.rank();
    let s = name.trim();
    let unknown = || Error::UnknownClass { name: s.to_string(), known: known_class_names(datum).join(", ") };
    let cox = || WeylElement::from_word(datum, &(0..r).collect::<Vec<_>>());
    let with_word = |w: WeylElement| -> WeylElement {
        let g = datum.weyl_group();
        let idx = g.find(&w);
        WeylElement { word: Some(g.word(idx)), ..w }
    };
    match s {
        "1" | "e" | "id" | "1_W" => return Ok(WeylElement::identity(r)),
        "cox" => return cox(),
        "w0" => {
            let g = datum.weyl_group();
            return Ok(g.element(datum, g.longest()));
        }
        "r" | "r_alpha" | "r_a" => return WeylElement::from_word(datum, &[0]),
        "r_beta" | "r_b" if r >= 2 => return WeylElement::from_word(datum, &[1]),
        _ => {}
    }
    if let Some(k) = s.strip_prefix("cox^") {
        let k: usize = k.parse().map_err(|_| unknown())?;
        return Ok(with_word(cox()?.pow(k)));
    }
    if let Some(i) = s.strip_prefix("refl:") {
        let i: usize = i.parse().map_err(|_| unknown())?;
        if i == 0 || i > r {
            return Err(unknown());
        }
        return WeylElement::from_word(datum, &[i - 1]);
    }
    if s.starts_with('[') && s.ends_with(']') {
        if datum.label.family != Family::A {
            return Err(unknown());
        }
        let parts: Vec<usize> = s[1..s.len() - 1]
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(unknown))
            .collect::<Result<_>>()?;
        if parts.iter().sum::<usize>() != r + 1 || parts.contains(&0) {
            return Err(unknown());
        }
        let mut word = Vec::new();
        let mut p = 0;
        for k in parts {
            word.extend(p..p + k - 1);
            p += k;
        }
        return WeylElement::from_word(datum, &word);
    }
    let letters: std::result::Result<Vec<usize>, _> =
        s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(str::parse::<usize>).collect();
    match letters {
        Ok(l) if !l.is_empty() && l.iter().all(|&i| (1..=r).contains(&i)) => {
            WeylElement::from_word(datum, &l.iter().map(|i| i - 1).collect::<Vec<_>>())
        }
        _ => Err(unknown()),
    }
}
