//! Exact bivariate Laurent polynomials in `q` and `Q` over arbitrary-precision integers.
//!
//! [`LaurentPoly`] is the coefficient ring for every other module. Terms are kept in a
//! sparse map keyed by [`ExponentPair`]; the map never holds a zero coefficient, so
//! structural equality is ring equality.
//!
//! The special cases of the two-base binomial formula are ring homomorphisms out of this
//! ring, described by [`SubstTarget`]. Substitutions that send `q`, `Q` to Laurent
//! monomials land back in [`LaurentPoly`]; numeric ones land in exact rationals and the
//! golden one lands in [`GoldenNum`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::golden::GoldenNum;

/// Exponents of `q` and `Q` in one monomial. Negative values are legal.
///
/// The derived order is lexicographic on `(big_q, q)`, which is the canonical key
/// order used for serialisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExponentPair {
    /// Power of `Q`.
    pub big_q: i64,
    /// Power of `q`.
    pub q: i64,
}

impl ExponentPair {
    pub const ZERO: ExponentPair = ExponentPair { q: 0, big_q: 0 };

    pub fn new(q: i64, big_q: i64) -> Self {
        ExponentPair { q, big_q }
    }

    pub fn total_degree(&self) -> i64 {
        self.q + self.big_q
    }

    fn is_negative_anywhere(&self) -> bool {
        self.q < 0 || self.big_q < 0
    }
}

impl Add for ExponentPair {
    type Output = ExponentPair;
    fn add(self, rhs: ExponentPair) -> ExponentPair {
        ExponentPair::new(self.q + rhs.q, self.big_q + rhs.big_q)
    }
}

/// Element of `Z[q, q^-1, Q, Q^-1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<ExponentPair, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        LaurentPoly::monomial(c, 0, 0)
    }

    /// `c * q^q_exp * Q^big_q_exp`.
    pub fn monomial(c: impl Into<BigInt>, q_exp: i64, big_q_exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ExponentPair::new(q_exp, big_q_exp), c);
        }
        LaurentPoly { terms }
    }

    /// The symbol `q`.
    pub fn q() -> Self {
        LaurentPoly::monomial(1, 1, 0)
    }

    /// The symbol `Q`.
    pub fn big_q() -> Self {
        LaurentPoly::monomial(1, 0, 1)
    }

    pub fn q_pow(e: i64) -> Self {
        LaurentPoly::monomial(1, e, 0)
    }

    pub fn big_q_pow(e: i64) -> Self {
        LaurentPoly::monomial(1, 0, e)
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (ExponentPair, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPoly::zero();
        for (e, c) in iter {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, e: ExponentPair, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&ExponentPair::ZERO).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical key order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentPair, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, q_exp: i64, big_q_exp: i64) -> BigInt {
        self.terms
            .get(&ExponentPair::new(q_exp, big_q_exp))
            .cloned()
            .unwrap_or_default()
    }

    /// Returns the single term if this is a monomial.
    pub fn as_monomial(&self) -> Option<(ExponentPair, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(ExponentPair::is_negative_anywhere)
    }

    /// Multiplies every term by `c * q^e.q * Q^e.big_q`.
    pub fn mul_monomial(&self, e: ExponentPair, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (*k + e, v * c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        self.mul_monomial(ExponentPair::ZERO, c)
    }

    /// Integer power. Negative exponents are only defined for units, i.e. monomials
    /// with coefficient `±1`.
    pub fn pow(&self, n: i64) -> Result<LaurentPoly> {
        if n >= 0 {
            return Ok(self.pow_unsigned(n as u64));
        }
        match self.as_monomial() {
            Some((e, c)) if c.abs().is_one() => {
                let m = -n;
                let sign = if m % 2 == 1 { c.clone() } else { BigInt::one() };
                Ok(LaurentPoly::monomial(sign, -e.q * m, -e.big_q * m))
            }
            _ => Err(Error::NonUnitInverse(self.to_string())),
        }
    }

    fn pow_unsigned(&self, mut n: u64) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exchanges the roles of `q` and `Q`.
    pub fn swap_bases(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (ExponentPair::new(e.big_q, e.q), c.clone()))
                .collect(),
        }
    }

    /// Ring homomorphism `q -> q_image`, `Q -> big_q_image` back into this ring.
    ///
    /// Negative exponents require the corresponding image to be a unit.
    pub fn compose(&self, q_image: &LaurentPoly, big_q_image: &LaurentPoly) -> Result<LaurentPoly> {
        if let (Some((qe, qc)), Some((be, bc))) = (q_image.as_monomial(), big_q_image.as_monomial()) {
            if qc.is_one() && bc.is_one() {
                // Both images are coefficient-1 monomials: pure exponent relabelling.
                let mut out = LaurentPoly::zero();
                for (e, c) in &self.terms {
                    let img = ExponentPair::new(
                        qe.q * e.q + be.q * e.big_q,
                        qe.big_q * e.q + be.big_q * e.big_q,
                    );
                    out.add_term(img, c.clone());
                }
                return Ok(out);
            }
        }
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.terms {
            let t = &q_image.pow(e.q)? * &big_q_image.pow(e.big_q)?;
            out = out + t.scale(c);
        }
        Ok(out)
    }

    /// Evaluates at rational values of the two bases.
    pub fn evaluate(&self, q0: &BigRational, big_q0: &BigRational) -> Result<BigRational> {
        let mut sum = BigRational::zero();
        for (e, c) in &self.terms {
            let qv = rational_pow(q0, e.q).ok_or(Error::ZeroBase("q"))?;
            let bv = rational_pow(big_q0, e.big_q).ok_or(Error::ZeroBase("Q"))?;
            sum += BigRational::from_integer(c.clone()) * qv * bv;
        }
        Ok(sum)
    }

    /// Evaluates with `q`, `Q` sent to elements of `Z[phi]`.
    pub fn evaluate_golden(&self, q0: &GoldenNum, big_q0: &GoldenNum) -> Result<GoldenNum> {
        let mut sum = GoldenNum::zero();
        for (e, c) in &self.terms {
            let t = q0.pow(e.q)? * big_q0.pow(e.big_q)?;
            sum = sum + t.scale(c);
        }
        Ok(sum)
    }

    /// Applies one of the named specialisations.
    pub fn substitute(&self, target: &SubstTarget) -> Result<SubstValue> {
        match target {
            SubstTarget::Numeric { q, big_q } => self.evaluate(q, big_q).map(SubstValue::Rational),
            SubstTarget::Golden => self
                .evaluate_golden(&GoldenNum::one_minus_phi(), &GoldenNum::phi())
                .map(SubstValue::Golden),
            other => {
                let (qi, bi) = other.laurent_images().expect("symbolic target");
                self.compose(&qi, &bi).map(SubstValue::Laurent)
            }
        }
    }

    /// Display order: total degree ascending, then `Q`-degree descending.
    fn display_order(&self) -> Vec<(&ExponentPair, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            a.total_degree()
                .cmp(&b.total_degree())
                .then(b.big_q.cmp(&a.big_q))
        });
        v
    }
}

fn rational_pow(base: &BigRational, e: i64) -> Option<BigRational> {
    if e < 0 && base.is_zero() {
        return None;
    }
    let e = i32::try_from(e).expect("exponent out of range");
    Some(num_traits::Pow::pow(base, e))
}

/// Named ring homomorphisms out of the Laurent ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubstTarget {
    /// `Q -> 1`.
    BigQToOne,
    /// `q -> 1`.
    QToOne,
    /// `Q -> q`.
    BigQToQ,
    /// `Q -> q^-1`.
    BigQToInvQ,
    /// Both bases to nonzero rationals (zero is rejected only where an inverse is needed).
    Numeric { q: BigRational, big_q: BigRational },
    /// `q -> 1 - phi = -1/phi`, `Q -> phi`.
    Golden,
}

impl SubstTarget {
    /// Images of `q` and `Q` for the targets that stay inside the Laurent ring.
    pub fn laurent_images(&self) -> Option<(LaurentPoly, LaurentPoly)> {
        let q = LaurentPoly::q();
        let big_q = LaurentPoly::big_q();
        match self {
            SubstTarget::BigQToOne => Some((q, LaurentPoly::one())),
            SubstTarget::QToOne => Some((LaurentPoly::one(), big_q)),
            SubstTarget::BigQToQ => Some((q.clone(), q)),
            SubstTarget::BigQToInvQ => Some((q, LaurentPoly::q_pow(-1))),
            SubstTarget::Numeric { .. } | SubstTarget::Golden => None,
        }
    }
}

/// Image of a [`LaurentPoly`] under a [`SubstTarget`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubstValue {
    Laurent(LaurentPoly),
    Rational(BigRational),
    Golden(GoldenNum),
}

impl fmt::Display for SubstValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubstValue::Laurent(p) => p.fmt(f),
            SubstValue::Rational(r) => r.fmt(f),
            SubstValue::Golden(g) => g.fmt(f),
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str("-")?,
                (_, false) => f.write_str("+")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if !abs.is_one() || *e == ExponentPair::ZERO {
                factors.push(abs.to_string());
            }
            for (sym, p) in [("Q", e.big_q), ("q", e.q)] {
                match p {
                    0 => {}
                    1 => factors.push(sym.to_string()),
                    _ => factors.push(format!("{sym}^{p}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(*ea + *eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    q: i64,
    #[serde(rename = "Q")]
    big_q: i64,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    terms: Vec<TermJson>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentJson {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson { q: e.q, big_q: e.big_q, c: c.to_str_radix(10) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = LaurentJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let c: BigInt = t
                .c
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad integer {:?}", t.c)))?;
            terms.push((ExponentPair::new(t.q, t.big_q), c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}
