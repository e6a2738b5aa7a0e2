//! Closed forms for uniform matroid polytopes (hypersimplices) built on the
//! coefficients of `(1 + T + ... + T^(r-1))^n`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{binomial, factorial, rat_int};
use crate::polynomial::{EhrhartPolynomial, HStarVector, Poly};

/// Coefficients `A_0 .. A_{n(r-1)}` of `(1 + T + ... + T^(r-1))^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KatzmanTable {
    pub n: usize,
    pub r: usize,
    pub coeffs: Vec<BigInt>,
}

impl KatzmanTable {
    /// `A_i`, zero outside the support.
    pub fn get(&self, i: i64) -> BigInt {
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }
}

/// Built with the window recurrence `A_i^{n,r} = sum_{k=i-r+1}^{i} A_k^{n-1,r}`.
pub fn katzman(n: usize, r: usize) -> KatzmanTable {
    assert!(r >= 1, "r must be positive");
    let mut t = KatzmanTable { n: 0, r, coeffs: vec![BigInt::one()] };
    for _ in 0..n {
        t = t.next();
    }
    t
}

impl KatzmanTable {
    /// Table for `n + 1`: one more factor `1 + T + ... + T^(r-1)`.
    pub fn next(&self) -> KatzmanTable {
        let cur = &self.coeffs;
        let r = self.r;
        let mut prefix = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            prefix[i + 1] = &prefix[i] + c;
        }
        let coeffs = (0..cur.len() + r - 1)
            .map(|i| {
                let hi = (i + 1).min(cur.len());
                let lo = (i + 1).saturating_sub(r).min(hi);
                &prefix[hi] - &prefix[lo]
            })
            .collect();
        KatzmanTable { n: self.n + 1, r, coeffs }
    }
}

/// Same coefficients from the multinomial expansion; used as a cross-check.
pub fn katzman_multinomial(n: usize, r: usize) -> KatzmanTable {
    let mut coeffs = vec![BigInt::zero(); n * (r - 1) + 1];
    let mut parts = vec![0usize; r];
    multinomial_walk(n, r, 0, n, &mut parts, &mut coeffs);
    KatzmanTable { n, r, coeffs }
}

fn multinomial_walk(n: usize, r: usize, j: usize, left: usize, parts: &mut [usize], out: &mut [BigInt]) {
    if j + 1 == r {
        parts[j] = left;
        let exponent: usize = parts.iter().enumerate().map(|(p, &c)| p * c).sum();
        let denom = parts.iter().fold(BigInt::one(), |acc, &c| acc * factorial(c as u64));
        out[exponent] += factorial(n as u64) / denom;
        return;
    }
    for c in 0..=left {
        parts[j] = c;
        multinomial_walk(n, r, j + 1, left - c, parts, out);
    }
}

/// `sum_{k+l=i} C(n,k) A_l^{k,r-1}` for every `i`, which equals `A_i^{n,r}`.
pub fn katzman_rank_relation(n: usize, r: usize) -> Vec<BigInt> {
    assert!(r >= 2);
    let lower: Vec<KatzmanTable> = (0..=n).map(|k| katzman(k, r - 1)).collect();
    (0..=n * (r - 1))
        .map(|i| {
            (0..=n.min(i))
                .map(|k| binomial(n as i64, k as i64) * lower[k].get((i - k) as i64))
                .sum()
        })
        .collect()
}

fn check_range(n: usize, r: usize) -> Result<()> {
    if r < 1 || r + 1 > n {
        return Err(Error::Invalid(format!("rank {r} outside 1..={} for {n} elements", n.saturating_sub(1))));
    }
    Ok(())
}

/// h*-vector of the hypersimplex `P(U^{r,n})`.
pub fn hstar_uniform(n: usize, r: usize) -> Result<HStarVector> {
    check_range(n, r)?;
    let mut tables: HashMap<(usize, usize), KatzmanTable> = HashMap::new();
    // (signed coefficient, table key, shift k, stride r - s)
    let mut terms = Vec::new();
    let ni = n as i64;
    for s in 0..r {
        let mut t = katzman(n - s, r - s);
        for _ in 0..s {
            let next = t.next();
            tables.insert((t.n, r - s), t);
            t = next;
        }
        tables.insert((n, r - s), t);
        for j in 0..=s {
            for k in 0..=j {
                let sign = if (s + j + k) % 2 == 0 { 1 } else { -1 };
                let c = binomial(ni, s as i64) * binomial(s as i64, j as i64) * binomial(j as i64, k as i64) * sign;
                terms.push((c, (n - j, r - s), k as i64, (r - s) as i64));
            }
        }
    }
    let h = (0..ni)
        .map(|l| {
            terms
                .iter()
                .map(|(c, key, k, stride)| {
                    let a = tables[key].get((l - k) * stride);
                    if a.is_zero() {
                        a
                    } else {
                        c * a
                    }
                })
                .sum()
        })
        .collect();
    Ok(HStarVector::new(h))
}

/// Rank-2 closed form `sum_l C(n,2l) T^l - n T`.
pub fn hstar_rank2(n: usize) -> HStarVector {
    let ni = n as i64;
    HStarVector::new(
        (0..n as i64)
            .map(|l| binomial(ni, 2 * l) - if l == 1 { BigInt::from(n) } else { BigInt::zero() })
            .collect(),
    )
}

/// Rank-3 closed form `A_{3l}^{n,3} - n C(n, 2l-1) + [l = 2] C(n, 2)`.
pub fn hstar_rank3(n: usize) -> HStarVector {
    let a = katzman(n, 3);
    let ni = n as i64;
    HStarVector::new(
        (0..n as i64)
            .map(|l| {
                let delta = if l == 2 { binomial(ni, 2) } else { BigInt::zero() };
                a.get(3 * l) - BigInt::from(n) * binomial(ni, 2 * l - 1) + delta
            })
            .collect(),
    )
}

/// `i(k) = sum_{s<r} (-1)^s C(n,s) C(k(r-s) - s + n - 1, n - 1)` expanded in `k`.
pub fn ehrhart_uniform(n: usize, r: usize) -> Result<EhrhartPolynomial> {
    check_range(n, r)?;
    let mut p = Poly::constant(Default::default());
    for s in 0..r {
        let c = binomial(n as i64, s as i64) * if s % 2 == 0 { 1 } else { -1 };
        let term = Poly::binomial_in((r - s) as i64, n as i64 - 1 - s as i64, n as u64 - 1);
        p = p.add(&term.scale(&rat_int(c)));
    }
    Ok(EhrhartPolynomial::from_poly(p))
}

/// Weakly increasing then weakly decreasing.
pub fn is_unimodal<T: Ord>(v: &[T]) -> bool {
    let mut i = 1;
    while i < v.len() && v[i - 1] <= v[i] {
        i += 1;
    }
    while i < v.len() && v[i - 1] >= v[i] {
        i += 1;
    }
    i >= v.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn katzman_examples() {
        assert_eq!(katzman(5, 1).coeffs, ints(&[1]));
        assert_eq!(katzman(4, 2).coeffs, ints(&[1, 4, 6, 4, 1]));
        assert_eq!(katzman(2, 3).coeffs, ints(&[1, 2, 3, 2, 1]));
        assert_eq!(katzman(0, 3).coeffs, ints(&[1]));
    }

    #[test]
    fn katzman_agrees_with_multinomial() {
        for n in 0..=8 {
            for r in 1..=5 {
                assert_eq!(katzman(n, r), katzman_multinomial(n, r), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn hstar_examples() {
        assert_eq!(hstar_uniform(4, 2).unwrap(), HStarVector::from_i64(&[1, 2, 1]));
        assert_eq!(hstar_uniform(4, 3).unwrap(), HStarVector::from_i64(&[1]));
        assert!(hstar_uniform(4, 4).is_err());
        assert!(hstar_uniform(4, 0).is_err());
    }

    #[test]
    fn rank2_and_rank3_closed_forms() {
        for n in 3..=14 {
            assert_eq!(hstar_uniform(n, 2).unwrap(), hstar_rank2(n), "n={n}");
        }
        for n in 4..=12 {
            assert_eq!(hstar_uniform(n, 3).unwrap(), hstar_rank3(n), "n={n}");
        }
    }

    #[test]
    fn ehrhart_values() {
        let p = ehrhart_uniform(4, 2).unwrap();
        assert_eq!(p.count(0).unwrap(), BigInt::from(1));
        assert_eq!(p.count(1).unwrap(), BigInt::from(6));
        assert_eq!(p.count(2).unwrap(), BigInt::from(19));
        assert_eq!(p.degree(), 3);
    }

    #[test]
    fn unimodality() {
        assert!(is_unimodal(&[1, 2, 1]));
        assert!(!is_unimodal(&[1, 0, 2]));
        assert!(is_unimodal(&[1, 10, 20, 10, 1]));
        assert!(is_unimodal::<i32>(&[]));
        assert!(is_unimodal(&[3, 3, 1]));
    }
}
