//! Test-only oracles that do not share code paths with the library's multiplication
//! or combinatorics.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use qqcalc::laurent::LaurentPoly;
use qqcalc::ncalg::{NCPoly, RelationConst};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Expands `prod (x + c_i y)` by enumerating all `2^n` words and normal-ordering each
/// one by counting `y...x` inversions: every such pair contributes one factor of `R`.
pub fn word_expansion(coeffs: &[LaurentPoly], rel: RelationConst) -> NCPoly {
    let n = coeffs.len();
    let mut acc: BTreeMap<(u32, u32), LaurentPoly> = BTreeMap::new();
    for mask in 0u64..(1u64 << n) {
        let mut scalar = LaurentPoly::one();
        let mut ys_seen = 0i64;
        let mut inversions = 0i64;
        for (i, c) in coeffs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                scalar = &scalar * c;
                ys_seen += 1;
            } else {
                inversions += ys_seen;
            }
        }
        let ys = mask.count_ones();
        let word = (n as u32 - ys, ys);
        let term = &scalar * &rel.pow(inversions);
        let slot = acc.entry(word).or_default();
        *slot = &*slot + &term;
    }
    NCPoly::from_terms(rel, acc.into_iter().map(|((a, b), c)| (qqcalc::ncalg::Word::new(a, b), c)))
}

/// Normal-ordered polynomial with rational coefficients and a rational relation value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatNc {
    pub r: BigRational,
    pub terms: BTreeMap<(u32, u32), BigRational>,
}

impl RatNc {
    pub fn one(r: &BigRational) -> Self {
        RatNc { r: r.clone(), terms: BTreeMap::from([((0, 0), BigRational::one())]) }
    }

    pub fn factor(r: &BigRational, c: &BigRational) -> Self {
        let mut terms = BTreeMap::from([((1, 0), BigRational::one())]);
        if !c.is_zero() {
            terms.insert((0, 1), c.clone());
        }
        RatNc { r: r.clone(), terms }
    }

    pub fn mul(&self, other: &RatNc) -> RatNc {
        let mut terms: BTreeMap<(u32, u32), BigRational> = BTreeMap::new();
        for (&(a, b), ca) in &self.terms {
            for (&(c, d), cb) in &other.terms {
                let mut s = ca * cb;
                for _ in 0..(b * c) {
                    s *= &self.r;
                }
                *terms.entry((a + c, b + d)).or_insert_with(BigRational::zero) += s;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        RatNc { r: self.r.clone(), terms }
    }

    pub fn from_ncpoly(p: &NCPoly, q0: &BigRational, big_q0: &BigRational) -> RatNc {
        let r = p.relation().as_poly().evaluate(q0, big_q0).unwrap();
        let terms = p
            .evaluate(q0, big_q0)
            .unwrap()
            .into_iter()
            .map(|(w, v)| ((w.x, w.y), v))
            .collect();
        RatNc { r, terms }
    }
}

/// Numeric ordered product of `(x + c_i y)` at the given base values.
pub fn numeric_product(coeffs: &[LaurentPoly], rel: RelationConst, q0: &BigRational, big_q0: &BigRational) -> RatNc {
    let r = rel.as_poly().evaluate(q0, big_q0).unwrap();
    coeffs.iter().fold(RatNc::one(&r), |acc, c| {
        acc.mul(&RatNc::factor(&r, &c.evaluate(q0, big_q0).unwrap()))
    })
}

/// `n! / (k! (n-k)!)` via factorials.
pub fn choose(n: u64, k: u64) -> BigInt {
    let fact = |m: u64| (1..=m).fold(BigInt::one(), |a, i| a * BigInt::from(i));
    fact(n) / (fact(k) * fact(n - k))
}
