//! Ehrhart polynomials of arbitrary matroid polytopes from short rational
//! generating functions.
//!
//! Each vertex contributes the generating function of its tangent cone. The
//! cone is triangulated into unimodular cells, made disjoint with half-open
//! facets, and every cell becomes one term `z^a / prod (1 - z^b)`. Summing the
//! terms at `z = 1` along a generic direction yields lattice-point counts and
//! the Ehrhart coefficients.

pub mod cone;
pub mod lp;
pub mod todd;
pub mod triangulation;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{binomial, factorial, rat_int, Rational};
use crate::matroid::{Caps, Matroid};
use crate::oracles::all_bases;
use crate::polynomial::EhrhartPolynomial;

pub use cone::{
    cell_determinant, cone_triangulation, facet_normals, generic_interior_point, genfun_of_halfopen, half_open_decompose,
    tangent_cone, vertex_terms, Cone, GenFunTerm, HalfOpenSimplicialCone, LatticeFrame,
};
pub use todd::{todd_eval, ToddCache};
pub use triangulation::{join_apex, placing_triangulation, visible, Triangulation};

/// Sum of the tangent-cone generating functions over all vertices.
pub fn brion_genfun(m: &Matroid, caps: &Caps) -> Result<Vec<GenFunTerm>> {
    let bases = all_bases(m, caps)?;
    let frame = LatticeFrame::of_matroid(m);
    let per_vertex: Vec<Vec<GenFunTerm>> = bases.par_iter().map(|b| vertex_terms(m, b, &frame)).collect::<Result<_>>()?;
    Ok(per_vertex.into_iter().flatten().collect())
}

fn dot_big(lambda: &[BigInt], x: &[i64]) -> BigInt {
    lambda.iter().zip(x).map(|(l, &v)| l * v).sum()
}

/// First point `(1, xi, xi^2, ...)` of the moment curve that is orthogonal to
/// no denominator exponent.
pub fn generic_lambda(terms: &[GenFunTerm]) -> Result<Vec<BigInt>> {
    let Some(n) = terms.first().map(|t| t.a.len()) else {
        return Ok(Vec::new());
    };
    let mut exponents: Vec<&Vec<i64>> = terms.iter().flat_map(|t| &t.b).collect();
    if exponents.iter().any(|b| b.len() != n) {
        return Err(Error::Dimension("exponents of mixed length".into()));
    }
    if exponents.iter().any(|b| b.iter().all(|&x| x == 0)) {
        return Err(Error::Invalid("zero denominator exponent".into()));
    }
    exponents.sort();
    exponents.dedup();
    let s = terms.iter().map(|t| t.b.len()).max().unwrap_or(0);
    let bound = (n.max(1) - 1) * s * terms.len() + 1;
    for xi in 0..=bound {
        let mut lambda = Vec::with_capacity(n);
        let mut power = BigInt::one();
        for _ in 0..n {
            lambda.push(power.clone());
            power *= xi;
        }
        if exponents.iter().all(|b| !dot_big(&lambda, b).is_zero()) {
            return Ok(lambda);
        }
    }
    Err(Error::Inconsistent("moment curve search exhausted".into()))
}

/// Weights `w_l`, `l = 0..=s`, with the term at `z = e^{tau lambda}` having
/// constant coefficient `sum_l w_l <lambda, a>^l`.
fn term_weights(t: &GenFunTerm, lambda: &[BigInt], todd: &ToddCache) -> Result<Vec<Rational>> {
    let s = t.b.len();
    let betas: Vec<Rational> = t.b.iter().map(|b| rat_int(dot_big(lambda, b))).collect();
    let product: Rational = betas.iter().product();
    if product.is_zero() {
        return Err(Error::Invalid("lambda is orthogonal to a denominator exponent".into()));
    }
    let negated: Vec<Rational> = betas.iter().map(|b| -b).collect();
    let series = todd.series(s, &negated);
    let sign = if s.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    Ok((0..=s)
        .map(|l| &sign * &series[s - l] / (rat_int(factorial(l as u64)) * &product))
        .collect())
}

fn todd_for(terms: &[GenFunTerm]) -> ToddCache {
    ToddCache::new(terms.iter().map(|t| t.b.len()).max().unwrap_or(0))
}

/// Number of lattice points encoded by the terms.
pub fn specialize_count(terms: &[GenFunTerm], lambda: &[BigInt]) -> Result<BigInt> {
    let todd = todd_for(terms);
    let mut total = Rational::zero();
    for t in terms {
        let w = term_weights(t, lambda, &todd)?;
        let alpha = rat_int(dot_big(lambda, &t.a));
        let mut power = Rational::one();
        let mut acc = Rational::zero();
        for wl in &w {
            acc += wl * &power;
            power *= &alpha;
        }
        total += acc * rat_int(BigInt::from(t.sign));
    }
    if !total.is_integer() {
        return Err(Error::Inconsistent(format!("specialization gave the non-integer {total}")));
    }
    Ok(total.to_integer())
}

/// Coefficients of `k -> #(kP ∩ Z^n)` when term `i` of `kP` has numerator
/// `a_i + (k-1) v_i`. Coefficients above `dim` must vanish.
pub fn ehrhart_from_terms(terms: &[GenFunTerm], lambda: &[BigInt], dim: usize) -> Result<EhrhartPolynomial> {
    let todd = todd_for(terms);
    let top = terms.iter().map(|t| t.b.len()).max().unwrap_or(0);
    let mut coeffs = vec![Rational::zero(); top + 1];
    for t in terms {
        let w = term_weights(t, lambda, &todd)?;
        let lv = rat_int(dot_big(lambda, &t.v));
        let diff: Vec<i64> = t.a.iter().zip(&t.v).map(|(a, v)| a - v).collect();
        let ld = rat_int(dot_big(lambda, &diff));
        let sign = rat_int(BigInt::from(t.sign));
        let ld_powers: Vec<Rational> = std::iter::successors(Some(Rational::one()), |p| Some(p * &ld)).take(w.len()).collect();
        let mut lv_power = Rational::one();
        for (mdeg, slot) in coeffs.iter_mut().enumerate().take(w.len()) {
            let inner: Rational = (mdeg..w.len())
                .map(|l| rat_int(binomial(l as i64, mdeg as i64)) * &w[l] * &ld_powers[l - mdeg])
                .sum();
            *slot += &sign * &lv_power * inner;
            lv_power *= &lv;
        }
    }
    if let Some((deg, c)) = coeffs.iter().enumerate().skip(dim + 1).find(|(_, c)| !c.is_zero()) {
        return Err(Error::Inconsistent(format!("coefficient {c} of k^{deg} above dimension {dim}")));
    }
    coeffs.truncate(dim + 1);
    Ok(EhrhartPolynomial { coeffs })
}

/// Ehrhart polynomial of the matroid polytope through the generating-function pipeline.
pub fn ehrhart_polynomial(m: &Matroid, caps: &Caps) -> Result<EhrhartPolynomial> {
    let terms = brion_genfun(m, caps)?;
    let lambda = generic_lambda(&terms)?;
    ehrhart_from_terms(&terms, &lambda, m.polytope_dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::k4;
    use crate::linalg::rat;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    /// Vertex cones of the box `prod [0, a_i]`.
    pub(crate) fn box_terms(sides: &[i64]) -> Vec<GenFunTerm> {
        let d = sides.len();
        (0..1u32 << d)
            .map(|mask| {
                let v: Vec<i64> = (0..d).map(|i| if mask >> i & 1 == 1 { sides[i] } else { 0 }).collect();
                let b = (0..d)
                    .map(|i| (0..d).map(|j| if i == j { if mask >> i & 1 == 1 { -1 } else { 1 } } else { 0 }).collect())
                    .collect();
                GenFunTerm { sign: 1, a: v.clone(), v, b }
            })
            .collect()
    }

    #[test]
    fn lambda_examples() {
        let t = GenFunTerm { sign: 1, a: vec![0, 0, 0], v: vec![0, 0, 0], b: vec![vec![1, 0, 0]] };
        assert_eq!(generic_lambda(&[t]).unwrap(), vec![BigInt::from(1), BigInt::zero(), BigInt::zero()]);
        let t = GenFunTerm { sign: 1, a: vec![0; 3], v: vec![0; 3], b: vec![vec![1, -1, 0], vec![0, 1, -1]] };
        let l: Vec<BigInt> = [1, 2, 4].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(generic_lambda(&[t]).unwrap(), l);
    }

    #[test]
    fn segment_and_square() {
        let seg = box_terms(&[3]);
        let l = generic_lambda(&seg).unwrap();
        assert_eq!(specialize_count(&seg, &l).unwrap(), BigInt::from(4));
        let sq = box_terms(&[1, 1]);
        let l = generic_lambda(&sq).unwrap();
        assert_eq!(specialize_count(&sq, &l).unwrap(), BigInt::from(4));
        let p = ehrhart_from_terms(&sq, &l, 2).unwrap();
        assert_eq!(p.coeffs, vec![rat(1), rat(2), rat(1)]);
    }

    #[test]
    fn segment_matroid() {
        let u = Matroid::uniform(2, 1).unwrap();
        let terms = brion_genfun(&u, &Caps::default()).unwrap();
        assert_eq!(terms.len(), 2);
        let l = generic_lambda(&terms).unwrap();
        assert_eq!(specialize_count(&terms, &l).unwrap(), BigInt::from(2));
        assert_eq!(ehrhart_polynomial(&u, &Caps::default()).unwrap().coeffs, vec![rat(1), rat(1)]);
    }

    #[test]
    fn k4_polynomial() {
        let p = ehrhart_polynomial(&k4(), &Caps::default()).unwrap();
        assert_eq!(p.coeffs, vec![rat(1), q(107, 30), q(21, 4), q(49, 12), q(7, 4), q(7, 20)]);
    }

    #[test]
    fn uniform_count() {
        let u = Matroid::uniform(4, 2).unwrap();
        let terms = brion_genfun(&u, &Caps::default()).unwrap();
        let l = generic_lambda(&terms).unwrap();
        assert_eq!(specialize_count(&terms, &l).unwrap(), BigInt::from(6));
    }
}
