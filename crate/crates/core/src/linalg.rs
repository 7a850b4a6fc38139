//! Small dense exact linear algebra: fraction-free determinants, rational
//! solves and ranks, plus a pivoted floating-point determinant.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::rational::denominator_lcm;

/// Determinant of a square integer matrix by Bareiss elimination with row
/// pivoting. Every intermediate division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Exact determinant of a rational matrix: each row is cleared of
/// denominators, the integer determinant is taken fraction-free, and the
/// row scales are divided back out.
pub fn rational_determinant(m: &[Vec<BigRational>]) -> BigRational {
    let mut scale = BigInt::one();
    let int_rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = denominator_lcm(row);
            let out = row
                .iter()
                .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                .collect();
            scale *= l;
            out
        })
        .collect();
    BigRational::new(bareiss_determinant(int_rows), scale)
}

/// `det` of each leading `k x k` block, `k = 1..=n`.
pub fn leading_principal_minors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    (1..=m.len())
        .map(|k| bareiss_determinant(m[..k].iter().map(|row| row[..k].to_vec()).collect()))
        .collect()
}

/// Solves `a x = b` by Gauss-Jordan elimination over the rationals.
/// Returns `None` when `a` is singular.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    debug_assert_eq!(b.len(), n);
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut().skip(col) {
            *v *= &inv;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..=n {
                let delta = &factor * &aug[col][c];
                aug[r][c] -= delta;
            }
        }
    }
    Some(
        aug.into_iter()
            .map(|mut row| row.pop().expect("augmented column"))
            .collect(),
    )
}

/// Rank of a rational matrix (any shape).
pub fn rational_rank(m: &[Vec<BigRational>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = m.to_vec();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &rows[rank][col];
            for c in col..cols {
                let delta = &factor * &rows[rank][c];
                rows[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant by LU with partial pivoting.
pub fn float_determinant(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .expect("non-empty range");
        if a[p][k] == 0.0 {
            return 0.0;
        }
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    det
}
