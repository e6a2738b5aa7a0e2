//! Todd polynomials from the Taylor coefficients of `x / (1 - e^{-x})`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::{binomial, factorial, Rational};

/// Integers `c_n` with `x / (1 - e^{-x}) = sum_n c_n / (n! (n+1)!) x^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToddCache {
    c: Vec<BigInt>,
    b: Vec<Rational>,
}

impl ToddCache {
    pub fn new(order: usize) -> Self {
        let mut c = vec![BigInt::one()];
        for n in 1..=order {
            let mut acc = BigInt::zero();
            for j in 1..=n {
                let term = binomial(n as i64 + 1, j as i64 + 1) * factorial(n as u64) / factorial((n - j + 1) as u64) * &c[n - j];
                if j % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            c.push(acc);
        }
        let b = c
            .iter()
            .enumerate()
            .map(|(n, cn)| Rational::new(cn.clone(), factorial(n as u64) * factorial(n as u64 + 1)))
            .collect();
        ToddCache { c, b }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn c(&self) -> &[BigInt] {
        &self.c
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    /// Coefficients `td_0 .. td_m` of `prod_j x xi_j / (1 - e^{-x xi_j})`.
    pub fn series(&self, m: usize, xis: &[Rational]) -> Vec<Rational> {
        assert!(m <= self.order(), "Todd cache too short");
        let mut acc = vec![Rational::zero(); m + 1];
        acc[0] = Rational::one();
        for xi in xis {
            let mut factor = Vec::with_capacity(m + 1);
            let mut power = Rational::one();
            for n in 0..=m {
                factor.push(&self.b[n] * &power);
                power *= xi;
            }
            let mut next = vec![Rational::zero(); m + 1];
            for (i, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, f) in factor.iter().enumerate().take(m + 1 - i) {
                    next[i + j] += a * f;
                }
            }
            acc = next;
        }
        acc
    }
}

/// `td_m(xi_1, ..., xi_s)`.
pub fn todd_eval(m: usize, xis: &[Rational]) -> Rational {
    ToddCache::new(m).series(m, xis).pop().expect("series has m + 1 terms")
}
