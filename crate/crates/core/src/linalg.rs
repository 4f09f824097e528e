//! Exact integer and rational matrix routines.
//!
//! Matrices are dense `Vec<Vec<_>>` in row-major order. Everything here is
//! exact: integers are `BigInt`, fractions are `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn ncols(m: &IntMatrix, fallback: usize) -> usize {
    m.first().map_or(fallback, Vec::len)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// col[dst] -= q * col[src]
fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let t = &row[src] * q;
        row[dst] -= t;
    }
}

fn negate_col(m: &mut IntMatrix, c: usize) {
    for row in m.iter_mut() {
        row[c] = -row[c].clone();
    }
}

/// Column-style Hermite normal form `h = m * transform`.
///
/// Pivots are positive; entries to the left of a pivot in its row are
/// reduced into `[0, pivot)`. Columns `rank..` of `h` are zero and the
/// matching columns of `transform` span the integer kernel of `m`.
#[derive(Debug, Clone)]
pub struct ColumnHnf {
    pub h: IntMatrix,
    pub transform: IntMatrix,
    pub rank: usize,
    pub pivot_rows: Vec<usize>,
}

pub fn column_hnf(m: &IntMatrix, cols: usize) -> ColumnHnf {
    let n = ncols(m, cols);
    let mut h = m.clone();
    let mut u = identity(n);
    let mut k = 0;
    let mut pivot_rows = Vec::new();
    for row in 0..h.len() {
        if k == n {
            break;
        }
        loop {
            let best = (k..n)
                .filter(|&j| !h[row][j].is_zero())
                .min_by(|&a, &b| h[row][a].abs().cmp(&h[row][b].abs()));
            let Some(p) = best else { break };
            swap_cols(&mut h, p, k);
            swap_cols(&mut u, p, k);
            let mut clean = true;
            for j in k + 1..n {
                if h[row][j].is_zero() {
                    continue;
                }
                let q = h[row][j].div_floor(&h[row][k]);
                col_axpy(&mut h, j, k, &q);
                col_axpy(&mut u, j, k, &q);
                if !h[row][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[row][k].is_zero() {
            continue;
        }
        if h[row][k].is_negative() {
            negate_col(&mut h, k);
            negate_col(&mut u, k);
        }
        for j in 0..k {
            let q = h[row][j].div_floor(&h[row][k]);
            if !q.is_zero() {
                col_axpy(&mut h, j, k, &q);
                col_axpy(&mut u, j, k, &q);
            }
        }
        pivot_rows.push(row);
        k += 1;
    }
    ColumnHnf {
        h,
        transform: u,
        rank: k,
        pivot_rows,
    }
}

pub fn rank(m: &IntMatrix) -> usize {
    column_hnf(m, 0).rank
}

/// Basis (as columns of an `cols × k` matrix) of `{x ∈ Z^cols : m x = 0}`,
/// put in column Hermite form so the output is canonical.
pub fn integer_kernel(m: &IntMatrix, cols: usize) -> IntMatrix {
    let hnf = column_hnf(m, cols);
    let n = hnf.transform.len();
    let kernel: IntMatrix = hnf
        .transform
        .iter()
        .map(|row| row[hnf.rank..n].to_vec())
        .collect();
    if n == hnf.rank {
        return vec![Vec::new(); n];
    }
    let canon = column_hnf(&kernel, n - hnf.rank);
    canon.h
}

/// Smith normal form `left * m * right = diag(d_1, d_2, ...)` with
/// `d_1 | d_2 | ...` and all `d_i >= 0`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diagonal: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix, cols: usize) -> Smith {
    let r = m.len();
    let c = ncols(m, cols);
    let mut a = m.clone();
    let mut left = identity(r);
    let mut right = identity(c);
    let steps = r.min(c);
    let mut diagonal = Vec::with_capacity(steps);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => a[i][j].abs() < a[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(pi, t);
            left.swap(pi, t);
            swap_cols(&mut a, pj, t);
            swap_cols(&mut right, pj, t);

            let mut clean = true;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in 0..c {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                for j in 0..r {
                    let v = &left[t][j] * &q;
                    left[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_axpy(&mut a, j, t, &q);
                col_axpy(&mut right, j, t, &q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..r).find(|&i| {
                (t + 1..c).any(|j| !a[i][j].is_multiple_of(&a[t][t]))
            });
            match bad {
                Some(i) => {
                    for j in 0..c {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                    for j in 0..r {
                        let v = left[i][j].clone();
                        left[t][j] += v;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for j in 0..c {
                a[t][j] = -a[t][j].clone();
            }
            for j in 0..r {
                left[t][j] = -left[t][j].clone();
            }
        }
        diagonal.push(a[t][t].clone());
    }
    Smith {
        diagonal,
        left,
        right,
    }
}

/// Inverse over Q, `None` if singular.
pub fn rational_inverse(m: &IntMatrix) -> Option<RatMatrix> {
    let n = m.len();
    let mut a: RatMatrix = m
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut inv: RatMatrix = identity(n)
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(p, k);
        inv.swap(p, k);
        let pivot = a[k][k].clone();
        for j in 0..n {
            a[k][j] = &a[k][j] / &pivot;
            inv[k][j] = &inv[k][j] / &pivot;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                let x = &f * &a[k][j];
                a[i][j] -= x;
                let y = &f * &inv[k][j];
                inv[i][j] -= y;
            }
        }
    }
    Some(inv)
}

/// Counts of (positive, negative, zero) entries in an exact congruence
/// diagonalization of the symmetric matrix `m`.
pub fn inertia(m: &IntMatrix) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: RatMatrix = m
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for k in 0..n {
        let diag = (k..n).find(|&i| !a[i][i].is_zero());
        let pivot = match diag {
            Some(i) => i,
            None => {
                let off = (k..n)
                    .flat_map(|i| (k..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = off else {
                    zero += n - k;
                    break;
                };
                // row_i += row_j, col_i += col_j makes a[i][i] = 2 a[i][j]
                for t in 0..n {
                    let v = a[j][t].clone();
                    a[i][t] += v;
                }
                for t in 0..n {
                    let v = a[t][j].clone();
                    a[t][i] += v;
                }
                i
            }
        };
        a.swap(pivot, k);
        for row in a.iter_mut() {
            row.swap(pivot, k);
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k..n {
                let x = &f * &a[k][j];
                a[i][j] -= x;
            }
        }
        for i in k + 1..n {
            a[k][i] = BigRational::zero();
        }
    }
    (pos, neg, zero)
}

pub fn mat_vec(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}
