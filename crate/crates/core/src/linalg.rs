//! Exact integer and rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `C(n, k)` with the convention that out-of-range or negative arguments give 0.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Determinant of a square integer matrix by fraction-free Bareiss elimination.
pub fn det(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
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

pub fn det_i64(matrix: &[Vec<i64>]) -> BigInt {
    let m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    det(&m)
}

/// Row echelon form in place; returns the pivot columns.
pub fn echelon(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let m = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for j in c..ncols {
            rows[r][j] = &rows[r][j] * &inv;
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a = rows.to_vec();
    echelon(&mut a).len()
}

pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let a: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect();
    rank(&a)
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse(matrix: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<Rational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let pivots = echelon(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Adjugate of a square integer matrix, `adj(A) = det(A) A^{-1}` for invertible `A`.
pub fn adjugate(matrix: &[Vec<BigInt>]) -> Option<Vec<Vec<BigInt>>> {
    let q: Vec<Vec<Rational>> = matrix
        .iter()
        .map(|r| r.iter().cloned().map(rat_int).collect())
        .collect();
    let inv = inverse(&q)?;
    let d = rat_int(det(matrix));
    Some(
        inv.into_iter()
            .map(|r| r.into_iter().map(|x| (x * &d).to_integer()).collect())
            .collect(),
    )
}

/// Solve `A x = b` for square invertible `A`.
pub fn solve(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let inv = inverse(matrix)?;
    Some(
        inv.iter()
            .map(|row| row.iter().zip(rhs).map(|(a, b)| a * b).sum())
            .collect(),
    )
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn abs_det_is(matrix: &[Vec<i64>], value: u64) -> bool {
    det_i64(matrix).abs() == BigInt::from(value)
}
