//! Writes `data/chartab/<label>.txt`: the character table of each supported Weyl group.
//!
//! Characters are the common eigenvectors of the class multiplication matrices. Their
//! eigenvalues are integers bounded by the class size, found as roots of the
//! characteristic polynomial of the restriction to each invariant subspace.
//!
//!     cargo run --release -p zerowt-core --example gen_chartab

use std::fmt::Write as _;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use zerowt::{datum, CartanType, RootDatum, WeylGroup};

type Vector = Vec<BigRational>;

fn structure_constants(g: &WeylGroup) -> Vec<Vec<Vec<i64>>> {
    let k = g.classes().len();
    let mut members = vec![Vec::new(); k];
    for x in 0..g.len() {
        members[g.class_of(x)].push(x);
    }
    // c[i][j][l] = #{x ∈ C_i : x⁻¹ z_l ∈ C_j}.
    let mut c = vec![vec![vec![0i64; k]; k]; k];
    for l in 0..k {
        let z = g.classes()[l].representative;
        for (i, mem) in members.iter().enumerate() {
            for &x in mem {
                let y = g.multiply(g.inverse(x), z);
                c[i][g.class_of(y)][l] += 1;
            }
        }
    }
    c
}

fn nullspace(m: &[Vector], cols: usize) -> Vec<Vector> {
    let mut a: Vec<Vector> = m.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..cols {
                    let v = &a[row][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Integer eigenvalues of `M` on the invariant subspace spanned by `basis`.
fn integer_eigenvalues(m: &[Vec<i64>], basis: &[Vector], bound: i64) -> Vec<i64> {
    let k = m.len();
    let s = basis.len();
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let image: Vec<Vector> = basis
        .iter()
        .map(|b| {
            (0..k)
                .map(|j| (0..k).filter(|&l| m[j][l] != 0).fold(BigRational::zero(), |acc, l| acc + q(m[j][l]) * &b[l]))
                .collect()
        })
        .collect();
    // Solve basis·R = image by reducing the augmented system.
    let mut rows: Vec<Vector> = (0..k)
        .map(|j| basis.iter().map(|b| b[j].clone()).chain(image.iter().map(|v| v[j].clone())).collect())
        .collect();
    for col in 0..s {
        let p = (col..k).find(|&x| !rows[x][col].is_zero()).expect("basis is independent");
        rows.swap(col, p);
        let inv = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x = &*x * &inv;
        }
        for x in 0..k {
            if x != col && !rows[x][col].is_zero() {
                let f = rows[x][col].clone();
                for y in 0..2 * s {
                    let v = &rows[col][y] * &f;
                    rows[x][y] -= v;
                }
            }
        }
    }
    let restricted: Vec<Vector> = (0..s).map(|a| rows[a][s..].to_vec()).collect();
    let mul = |a: &[Vector], b: &[Vector]| -> Vec<Vector> {
        (0..s)
            .map(|x| (0..s).map(|y| (0..s).fold(BigRational::zero(), |acc, z| acc + &a[x][z] * &b[z][y])).collect())
            .collect()
    };
    // Faddeev–LeVerrier.
    let mut coeffs = vec![BigRational::one()];
    let mut mk: Vec<Vector> = vec![vec![BigRational::zero(); s]; s];
    for step in 1..=s {
        let mut next = mul(&restricted, &mk);
        for d in 0..s {
            next[d][d] += &coeffs[step - 1];
        }
        let am = mul(&restricted, &next);
        let tr = (0..s).fold(BigRational::zero(), |acc, d| acc + &am[d][d]);
        coeffs.push(-tr / q(step as i64));
        mk = next;
    }
    let coeffs: Vec<BigInt> = coeffs
        .iter()
        .map(|c| {
            assert!(c.is_integer());
            c.to_integer()
        })
        .collect();
    (-bound..=bound)
        .filter(|&lam| {
            let x = BigInt::from(lam);
            coeffs.iter().fold(BigInt::zero(), |acc, c| acc * &x + c).is_zero()
        })
        .collect()
}

fn characters(g: &WeylGroup) -> Vec<Vec<i64>> {
    let k = g.classes().len();
    let c = structure_constants(g);
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let mut spaces: Vec<Vec<Vector>> = vec![(0..k)
        .map(|i| (0..k).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()];
    for i in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for s in spaces {
            if s.len() == 1 {
                next.push(s);
                continue;
            }
            let eig = integer_eigenvalues(&c[i], &s, g.classes()[i].size as i64);
            let mut found = 0;
            for &lam in &eig {
                // Rows of (M_i − λ)B, with B the basis of s as columns.
                let rows: Vec<Vector> = (0..k)
                    .map(|j| {
                        s.iter()
                            .map(|b| {
                                let mut acc = -(q(lam) * &b[j]);
                                for l in 0..k {
                                    if c[i][j][l] != 0 {
                                        acc += q(c[i][j][l]) * &b[l];
                                    }
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect();
                let ker = nullspace(&rows, s.len());
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                next.push(
                    ker.iter()
                        .map(|cv| {
                            (0..k)
                                .map(|j| cv.iter().zip(&s).fold(BigRational::zero(), |acc, (x, b)| acc + x * &b[j]))
                                .collect()
                        })
                        .collect(),
                );
            }
            assert_eq!(found, s.len(), "class matrix not diagonalizable on a common eigenspace");
        }
        spaces = next;
    }
    assert!(spaces.iter().all(|s| s.len() == 1));
    let order = BigRational::from_integer(BigInt::from(g.len()));
    let sizes: Vec<BigRational> = g.classes().iter().map(|cl| q(cl.size as i64)).collect();
    let mut rows: Vec<Vec<i64>> = spaces
        .into_iter()
        .map(|s| {
            let v = &s[0];
            let w: Vector = v.iter().map(|x| x / &v[0]).collect();
            let ratio: Vector = w.iter().zip(&sizes).map(|(x, n)| x / n).collect();
            let norm = ratio.iter().zip(&sizes).fold(BigRational::zero(), |acc, (r, n)| acc + r * r * n);
            let deg2 = &order / norm;
            assert!(deg2.is_integer());
            let d2 = deg2.to_integer().to_i64().unwrap();
            let d = (d2 as f64).sqrt().round() as i64;
            assert_eq!(d * d, d2);
            ratio
                .iter()
                .map(|r| {
                    let x = r * q(d);
                    assert!(x.is_integer(), "irrational character value");
                    x.to_integer().to_i64().unwrap()
                })
                .collect()
        })
        .collect();
    rows.sort_by_key(|r| (r[0], r.iter().map(|x| -x).collect::<Vec<_>>()));
    rows
}

/// `det(1 − qM)` via Newton's identities.
fn det_one_minus(m: &[i64], r: usize) -> Vec<i128> {
    let mul = |a: &[i128], b: &[i128]| -> Vec<i128> {
        let mut c = vec![0i128; r * r];
        for i in 0..r {
            for k in 0..r {
                for j in 0..r {
                    c[i * r + j] += a[i * r + k] * b[k * r + j];
                }
            }
        }
        c
    };
    let base: Vec<i128> = m.iter().map(|&x| x as i128).collect();
    let mut pw = base.clone();
    let mut p = vec![0i128; r + 1];
    for k in 1..=r {
        p[k] = (0..r).map(|i| pw[i * r + i]).sum();
        pw = mul(&pw, &base);
    }
    let mut e = vec![0i128; r + 1];
    e[0] = 1;
    for k in 1..=r {
        let mut s = 0i128;
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            s += sign * e[k - i] * p[i];
        }
        assert_eq!(s % k as i128, 0);
        e[k] = s / k as i128;
    }
    (0..=r).map(|k| if k % 2 == 0 { e[k] } else { -e[k] }).collect()
}

fn series_inverse(p: &[i128], n: usize) -> Vec<i128> {
    let mut out = vec![0i128; n + 1];
    out[0] = 1;
    for i in 1..=n {
        let mut s = 0i128;
        for j in 1..p.len().min(i + 1) {
            s -= p[j] * out[i - j];
        }
        out[i] = s;
    }
    out
}

/// Lowest degree in which each character occurs in the symmetric algebra.
fn b_values(d: &RootDatum, g: &WeylGroup, rows: &[Vec<i64>]) -> Vec<usize> {
    let n = d.num_pos_roots();
    let series: Vec<Vec<i128>> =
        g.classes().iter().map(|cl| series_inverse(&det_one_minus(g.matrix(cl.representative), d.rank()), n)).collect();
    rows.iter()
        .map(|chi| {
            (0..=n)
                .find(|&i| {
                    let s: i128 = g
                        .classes()
                        .iter()
                        .enumerate()
                        .map(|(j, cl)| cl.size as i128 * chi[j] as i128 * series[j][i])
                        .sum();
                    assert_eq!(s % g.len() as i128, 0);
                    s != 0
                })
                .expect("every character occurs in degree ≤ N")
        })
        .collect()
}

fn frame_name(d: i64, b: usize) -> Option<&'static str> {
    Some(match (d, b) {
        (1, 0) => "1_p",
        (1, 36) => "1_p'",
        (6, 1) => "6_p",
        (6, 25) => "6_p'",
        (10, 9) => "10_s",
        (15, 5) => "15_p",
        (15, 17) => "15_p'",
        (15, 4) => "15_q",
        (15, 16) => "15_q'",
        (20, 2) => "20_p",
        (20, 20) => "20_p'",
        (20, 10) => "20_s",
        (24, 6) => "24_p",
        (24, 12) => "24_p'",
        (30, 3) => "30_p",
        (30, 15) => "30_p'",
        (60, 5) => "60_p",
        (60, 11) => "60_p'",
        (60, 8) => "60_s",
        (64, 4) => "64_p",
        (64, 13) => "64_p'",
        (80, 7) => "80_s",
        (81, 6) => "81_p",
        (81, 10) => "81_p'",
        (90, 8) => "90_s",
        _ => return None,
    })
}

fn names(d: &RootDatum, g: &WeylGroup, rows: &[Vec<i64>], b: &[usize]) -> Vec<String> {
    let label = d.label.to_string();
    let sign: Vec<i64> = g.classes().iter().map(|c| g.sign(c.representative)).collect();
    let refl: Vec<i64> = g
        .classes()
        .iter()
        .map(|c| {
            let m = g.matrix(c.representative);
            (0..d.rank()).map(|i| m[i * d.rank() + i]).sum()
        })
        .collect();
    // Value on the class of a simple reflection.
    let on = |chi: &[i64], i: usize| chi[g.class_of(g.left_mul(i, 0))];
    let tensor = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).collect::<Vec<_>>();
    let small = ["A1", "A2", "A3", "B2", "C2", "G2"].contains(&label.as_str());
    let mut out: Vec<String> = rows
        .iter()
        .zip(b)
        .map(|(chi, &bb)| {
            if label == "E6" {
                return frame_name(chi[0], bb).expect("unknown E6 (d,b)").to_string();
            }
            if chi.iter().all(|&x| x == 1) {
                return "triv".into();
            }
            if *chi == sign {
                return "sign".into();
            }
            if *chi == refl {
                return "refl".into();
            }
            if small {
                if *chi == tensor(&refl, &sign) {
                    return "refl_sign".into();
                }
                if chi[0] == 1 {
                    return if on(chi, 0) == -1 { "eps_a".into() } else { "eps_b".into() };
                }
                if chi[0] == 2 {
                    return if label == "A3" { "rho2".into() } else { "refl2".into() };
                }
            }
            format!("phi_{{{},{}}}", chi[0], bb)
        })
        .collect();
    // Primes separate characters sharing (d, b); order follows the row order.
    let snapshot = out.clone();
    for i in 0..out.len() {
        let same: Vec<usize> = (0..snapshot.len()).filter(|&j| snapshot[j] == snapshot[i]).collect();
        if same.len() > 1 {
            let pos = same.iter().position(|&j| j == i).unwrap();
            out[i] = format!("{}{}", snapshot[i], "'".repeat(pos + 1));
        }
    }
    out
}

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/chartab");
    std::fs::create_dir_all(&dir).unwrap();
    for label in CartanType::SUPPORTED {
        let d = datum(label).unwrap();
        let g = d.weyl_group();
        let rows = characters(g);
        let b = b_values(&d, g, &rows);
        let nm = names(&d, g, &rows, &b);
        let mut s = String::new();
        writeln!(s, "# Character table of W({label}), generated by examples/gen_chartab.rs").unwrap();
        writeln!(s, "group {label}").unwrap();
        writeln!(s, "order {}", g.len()).unwrap();
        for cl in g.classes() {
            let w = g.word(cl.representative);
            let word = if w.is_empty() {
                "-".to_string()
            } else {
                w.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(".")
            };
            writeln!(s, "class {} {} {}", cl.size, cl.order, word).unwrap();
        }
        for ((chi, name), bb) in rows.iter().zip(&nm).zip(&b) {
            let vals: Vec<String> = chi.iter().map(|x| x.to_string()).collect();
            writeln!(s, "char {name} {bb} {}", vals.join(" ")).unwrap();
        }
        std::fs::write(dir.join(format!("{label}.txt")), s).unwrap();
        println!("{label}: {} classes", rows.len());
    }
}
