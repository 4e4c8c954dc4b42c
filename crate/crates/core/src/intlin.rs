//! Small exact linear algebra over ℤ and ℚ for rank ≤ 8 matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type QMatrix = Vec<Vec<BigRational>>;

pub fn to_q(m: &[Vec<i64>]) -> QMatrix {
    m.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect()
}

/// Inverse over ℚ, or `None` when singular.
pub fn inverse(m: &[Vec<i64>]) -> Option<QMatrix> {
    let n = m.len();
    let mut a = to_q(m);
    let mut inv: QMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - t;
                    let t = &f * &inv[col][j];
                    inv[r][j] = &inv[r][j] - t;
                }
            }
        }
    }
    Some(inv)
}

/// Returns `(e, e·M⁻¹)` with `e` the least common denominator of the inverse.
pub fn scaled_inverse(m: &[Vec<i64>]) -> Option<(i64, Vec<Vec<i64>>)> {
    let inv = inverse(m)?;
    let mut e = BigInt::one();
    for row in &inv {
        for x in row {
            e = e.lcm(x.denom());
        }
    }
    let scaled = inv
        .iter()
        .map(|row| {
            row.iter().map(|x| (x * BigRational::from_integer(e.clone())).to_integer().to_i64().unwrap()).collect()
        })
        .collect();
    Some((e.to_i64().unwrap(), scaled))
}

pub fn rank(m: &[Vec<i64>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let mut a = to_q(m);
    let (rows, cols) = (a.len(), a[0].len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] = &a[i][j] - t;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// ℤ-basis of `{x ∈ ℤⁿ : M x = 0}` via unimodular column reduction.
/// The result is saturated by construction.
pub fn integer_kernel(m: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut c: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    // Columns are stored as the second index; helpers act on column pairs.
    let col_axpy = |mat: &mut Vec<Vec<i128>>, dst: usize, src: usize, q: i128| {
        for row in mat.iter_mut() {
            row[dst] -= q * row[src];
        }
    };
    let col_swap = |mat: &mut Vec<Vec<i128>>, a: usize, b: usize| {
        for row in mat.iter_mut() {
            row.swap(a, b);
        }
    };
    let mut piv = 0;
    for i in 0..c.len() {
        if piv == n {
            break;
        }
        loop {
            let best = (piv..n).filter(|&j| c[i][j] != 0).min_by_key(|&j| c[i][j].abs());
            let Some(j0) = best else { break };
            col_swap(&mut c, piv, j0);
            col_swap(&mut u, piv, j0);
            let mut clean = true;
            for j in piv + 1..n {
                if c[i][j] != 0 {
                    let q = Integer::div_floor(&c[i][j], &c[i][piv]);
                    col_axpy(&mut c, j, piv, q);
                    col_axpy(&mut u, j, piv, q);
                    if c[i][j] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                piv += 1;
                break;
            }
        }
    }
    let mut basis: Vec<Vec<i64>> = (piv..n).map(|j| (0..n).map(|i| u[i][j] as i64).collect()).collect();
    size_reduce(&mut basis);
    basis
}

/// Cheap pairwise size reduction; keeps the lattice, shrinks entries.
fn size_reduce(basis: &mut [Vec<i64>]) {
    let norm = |v: &[i64]| v.iter().map(|x| x * x).sum::<i64>();
    for _ in 0..8 {
        let mut changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                let nj = norm(&basis[j]);
                if nj == 0 {
                    continue;
                }
                let dot: i64 = basis[i].iter().zip(&basis[j]).map(|(a, b)| a * b).sum();
                let q = Integer::div_floor(&(2 * dot + nj), &(2 * nj));
                if q != 0 {
                    let bj = basis[j].clone();
                    for (x, y) in basis[i].iter_mut().zip(bj) {
                        *x -= q * y;
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Solves `X · A = B` for `X` (rows × k) given `A` (k × n) of full row rank.
pub fn solve_left(a: &[Vec<i64>], b: &[Vec<i64>]) -> Option<QMatrix> {
    let k = a.len();
    let n = a.first()?.len();
    // Pick k independent columns of A.
    let mut cols = Vec::new();
    for j in 0..n {
        let mut trial = cols.clone();
        trial.push(j);
        let sub: Vec<Vec<i64>> = a.iter().map(|r| trial.iter().map(|&c| r[c]).collect()).collect();
        if rank(&sub) == trial.len() {
            cols = trial;
        }
        if cols.len() == k {
            break;
        }
    }
    if cols.len() < k {
        return None;
    }
    let sub: Vec<Vec<i64>> = a.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
    let inv = inverse(&sub)?;
    let x: QMatrix = b
        .iter()
        .map(|brow| {
            (0..k)
                .map(|j| {
                    cols.iter().enumerate().fold(BigRational::zero(), |acc, (l, &c)| {
                        acc + BigRational::from_integer(brow[c].into()) * &inv[l][j]
                    })
                })
                .collect()
        })
        .collect();
    // Verify on all columns.
    for (xrow, brow) in x.iter().zip(b) {
        for j in 0..n {
            let v =
                (0..k).fold(BigRational::zero(), |acc, l| acc + &xrow[l] * BigRational::from_integer(a[l][j].into()));
            if v != BigRational::from_integer(brow[j].into()) {
                return None;
            }
        }
    }
    Some(x)
}

pub fn q_to_int_matrix(m: &QMatrix) -> Option<Vec<Vec<i64>>> {
    m.iter().map(|r| r.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect()).collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter().map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum()).collect()).collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.first().map_or(0, |r| r.len());
    (0..n).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn abs_max(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

pub fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

pub fn is_positive_rational(x: &BigRational) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_inverse_has_denominator_three() {
        let (e, s) = scaled_inverse(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(e, 3);
        assert_eq!(s, vec![vec![2, 1], vec![1, 2]]);
    }

    #[test]
    fn kernel_is_saturated() {
        // x + 2y + 3z = 0 has a rank-2 saturated kernel.
        let k = integer_kernel(&[vec![2, 4, 6]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(2 * v[0] + 4 * v[1] + 6 * v[2], 0);
        }
        let det_minor = |i: usize, j: usize| k[0][i] * k[1][j] - k[0][j] * k[1][i];
        let g = [det_minor(0, 1), det_minor(0, 2), det_minor(1, 2)].iter().fold(0i64, |g, &x| g.gcd(&x));
        assert_eq!(g, 1);
    }

    #[test]
    fn solve_left_recovers_integer_change_of_basis() {
        let a = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let x_true = vec![vec![2, -1], vec![1, 3]];
        let b = mat_mul(&x_true, &a);
        let x = q_to_int_matrix(&solve_left(&a, &b).unwrap()).unwrap();
        assert_eq!(x, x_true);
    }
}
