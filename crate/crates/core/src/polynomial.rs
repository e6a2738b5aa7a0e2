//! Ehrhart polynomials, h*-vectors and the conversions between them and
//! lattice-point count tables.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{binomial, rat, rat_int, Rational};

/// Dense univariate polynomial with rational coefficients, ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(pub Vec<Rational>);

impl Poly {
    pub fn constant(c: Rational) -> Self {
        Poly(vec![c])
    }

    /// `a k + b`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        Poly(vec![b, a])
    }

    pub fn trimmed(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        if self.0.is_empty() {
            self.0.push(Rational::zero());
        }
        self
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out).trimmed()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.0.len().max(other.0.len());
        let z = Rational::zero();
        Poly((0..len).map(|i| self.0.get(i).unwrap_or(&z) + other.0.get(i).unwrap_or(&z)).collect()).trimmed()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly(self.0.iter().map(|x| x * c).collect()).trimmed()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `C(a k + b, m)` as a polynomial in `k`.
    pub fn binomial_in(a: i64, b: i64, m: u64) -> Poly {
        let mut p = Poly::constant(Rational::one());
        for j in 0..m as i64 {
            p = p.mul(&Poly::linear(rat(a), rat(b - j)));
        }
        p.scale(&rat_int(crate::linalg::factorial(m)).recip())
    }
}

/// Coefficients `c_0 .. c_deg` of `k -> #(kP ∩ Z^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    pub coeffs: Vec<Rational>,
}

impl EhrhartPolynomial {
    pub fn from_poly(p: Poly) -> Self {
        EhrhartPolynomial { coeffs: p.trimmed().0 }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, k: u64) -> Rational {
        Poly(self.coeffs.clone()).eval(&rat(k as i64))
    }

    /// Value at `k`, which must be a non-negative integer for a lattice polytope.
    pub fn count(&self, k: u64) -> Result<BigInt> {
        let v = self.eval(k);
        if !v.is_integer() || v.is_negative() {
            return Err(Error::Inconsistent(format!("Ehrhart value {v} at k = {k} is not a count")));
        }
        Ok(v.to_integer())
    }

    /// Coefficients as `p/q` strings (integers print without a denominator).
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

/// Numerator `h*_0 + h*_1 t + ...` of the Ehrhart series, trailing zeros removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HStarVector {
    pub coeffs: Vec<BigInt>,
}

impl HStarVector {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        HStarVector { coeffs }
    }

    pub fn from_i64(v: &[i64]) -> Self {
        HStarVector::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Normalized volume, `h*(1)`.
    pub fn volume(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

/// Lattice-point counts of the dilates `kP`, `k = 0, 1, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCountTable {
    pub counts: Vec<BigInt>,
}

impl LatticeCountTable {
    pub fn new(counts: Vec<BigInt>) -> Self {
        LatticeCountTable { counts }
    }

    pub fn from_u64(v: &[u64]) -> Self {
        LatticeCountTable { counts: v.iter().map(|&x| BigInt::from(x)).collect() }
    }

    /// CSV with header `k,count`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,count\n");
        for (k, c) in self.counts.iter().enumerate() {
            s.push_str(&format!("{k},{c}\n"));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut counts = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if i == 0 {
                if line != "k,count" {
                    return Err(Error::parse(1, 1, "expected header `k,count`"));
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let (k, c) = line
                .split_once(',')
                .ok_or_else(|| Error::parse(i + 1, 1, "expected `k,count`"))?;
            let k: usize = k.trim().parse().map_err(|_| Error::parse(i + 1, 1, "bad k"))?;
            if k != counts.len() {
                return Err(Error::parse(i + 1, 1, format!("expected k = {}", counts.len())));
            }
            let c: BigInt = c
                .trim()
                .parse()
                .map_err(|_| Error::parse(i + 1, line.find(',').unwrap_or(0) + 2, "bad count"))?;
            counts.push(c);
        }
        Ok(LatticeCountTable { counts })
    }
}

/// Unique degree-`dim` polynomial through the counts; extra points must agree.
pub fn interpolate_ehrhart(table: &LatticeCountTable, dim: usize) -> Result<EhrhartPolynomial> {
    if table.counts.len() < dim + 1 {
        return Err(Error::Invalid(format!("{} counts cannot determine degree {dim}", table.counts.len())));
    }
    // Newton forward differences: i(k) = sum_j Δ^j i(0) C(k, j)
    let mut diffs: Vec<Rational> = table.counts[..=dim].iter().cloned().map(rat_int).collect();
    let mut leading = Vec::with_capacity(dim + 1);
    for _ in 0..=dim {
        leading.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let mut p = Poly::constant(Rational::zero());
    for (j, d) in leading.iter().enumerate() {
        p = p.add(&Poly::binomial_in(1, 0, j as u64).scale(d));
    }
    let poly = EhrhartPolynomial::from_poly(p);
    for (k, c) in table.counts.iter().enumerate() {
        if poly.eval(k as u64) != rat_int(c.clone()) {
            return Err(Error::Inconsistent(format!("count at k = {k} disagrees with the degree-{dim} interpolant")));
        }
    }
    Ok(poly)
}

/// Numerator of `sum_k i(k) t^k = h*(t) / (1-t)^(dim+1)`.
pub fn hstar_from_counts(table: &LatticeCountTable, dim: usize) -> Result<HStarVector> {
    if table.counts.len() < dim + 1 {
        return Err(Error::Invalid(format!("{} counts cannot determine an h*-vector of a {dim}-polytope", table.counts.len())));
    }
    let coeff = |j: usize| -> BigInt {
        (0..=j)
            .map(|i| {
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                sign * binomial(dim as i64 + 1, i as i64) * &table.counts[j - i]
            })
            .sum()
    };
    let h: Vec<BigInt> = (0..=dim).map(coeff).collect();
    for j in dim + 1..table.counts.len() {
        if !coeff(j).is_zero() {
            return Err(Error::Inconsistent(format!("series numerator has a nonzero term of degree {j} > {dim}")));
        }
    }
    if h.iter().any(|c| c.is_negative()) {
        return Err(Error::Inconsistent(format!("negative h* entry in {h:?}")));
    }
    Ok(HStarVector::new(h))
}

/// Counts `i(0..=kmax)` from an Ehrhart polynomial.
pub fn counts_of(poly: &EhrhartPolynomial, kmax: u64) -> Result<LatticeCountTable> {
    Ok(LatticeCountTable::new((0..=kmax).map(|k| poly.count(k)).collect::<Result<_>>()?))
}
