//! Truncated two-base exponentials
//! `e(x) = sum x^n / [n]!` and `E(x) = sum q^{n(n-1)/2} x^n / [n]!`
//! over the `yx = Q xy` algebra, and the factorisation `e((x+y)_{<q}) = e(x) E(y)`.
//!
//! Coefficients are unreduced fractions of Laurent polynomials. No GCDs are taken:
//! two fractions are equal when their cross products agree.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::ncalg::{binomial_lt, RelationConst, Word};
use crate::qcomb::{qq_factorial, t_exponent};
use crate::report::{run_cases, CaseResult, Report, VerifyOptions};

#[derive(Clone, Serialize, Deserialize)]
pub struct Frac {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl Frac {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Frac { num, den })
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Frac { num, den: LaurentPoly::one() }
    }

    pub fn zero() -> Self {
        Frac::from_poly(LaurentPoly::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Frac) -> Frac {
        if self.den == other.den {
            return Frac { num: &self.num + &other.num, den: self.den.clone() };
        }
        Frac {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    pub fn mul(&self, other: &Frac) -> Frac {
        Frac { num: &self.num * &other.num, den: &self.den * &other.den }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Frac {
        Frac { num: &self.num * c, den: self.den.clone() }
    }

    pub fn compose(&self, q_image: &LaurentPoly, big_q_image: &LaurentPoly) -> Result<Frac> {
        Frac::new(self.num.compose(q_image, big_q_image)?, self.den.compose(q_image, big_q_image)?)
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Frac) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for Frac {}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &LaurentPoly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frac({self})")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    X,
    Y,
}

impl Generator {
    fn word(self, n: u32) -> Word {
        match self {
            Generator::X => Word::new(n, 0),
            Generator::Y => Word::new(0, n),
        }
    }
}

/// Noncommutative series in normal order, truncated above total degree `order`.
#[derive(Clone)]
pub struct TruncSeries {
    order: u32,
    relation: RelationConst,
    terms: BTreeMap<Word, Frac>,
}

impl TruncSeries {
    pub fn zero(order: u32, relation: RelationConst) -> Self {
        TruncSeries { order, relation, terms: BTreeMap::new() }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn relation(&self) -> RelationConst {
        self.relation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Frac)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: Word) -> Frac {
        self.terms.get(&w).cloned().unwrap_or_else(Frac::zero)
    }

    fn add_term(&mut self, w: Word, c: Frac) {
        if w.degree() > self.order || c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&w) {
            Some(existing) => existing.add(&c),
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(w, merged);
        }
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        Ok(out)
    }

    /// Normal-ordered product with every term above the truncation order dropped.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check(other)?;
        let r = self.relation.exponents();
        let mut out = TruncSeries::zero(self.order, self.relation);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                if wa.degree() + wb.degree() > self.order {
                    continue;
                }
                let m = i64::from(wa.y) * i64::from(wb.x);
                let shift = LaurentPoly::monomial(1, r.q * m, r.big_q * m);
                out.add_term(Word::new(wa.x + wb.x, wa.y + wb.y), ca.mul(cb).scale(&shift));
            }
        }
        Ok(out)
    }

    fn check(&self, other: &TruncSeries) -> Result<()> {
        if self.relation != other.relation {
            return Err(Error::RelationMismatch(self.relation.to_string(), other.relation.to_string()));
        }
        if self.order != other.order {
            return Err(Error::Parse(format!("truncation orders differ: {} vs {}", self.order, other.order)));
        }
        Ok(())
    }

    pub fn compose(&self, q_image: &LaurentPoly, big_q_image: &LaurentPoly) -> Result<TruncSeries> {
        let rel = RelationConst::new(&self.relation.as_poly().compose(q_image, big_q_image)?)?;
        let mut out = TruncSeries::zero(self.order, rel);
        for (w, c) in &self.terms {
            out.add_term(*w, c.compose(q_image, big_q_image)?);
        }
        Ok(out)
    }
}

/// `None` when equal termwise; otherwise the first differing word.
pub fn series_diff(lhs: &TruncSeries, rhs: &TruncSeries) -> Option<String> {
    if lhs.relation != rhs.relation || lhs.order != rhs.order {
        return Some(format!(
            "shape: lhs (R={}, N={}), rhs (R={}, N={})",
            lhs.relation, lhs.order, rhs.relation, rhs.order
        ));
    }
    let mut words: Vec<Word> = lhs.terms.keys().chain(rhs.terms.keys()).copied().collect();
    words.sort();
    words.dedup();
    words.into_iter().find_map(|w| {
        let (a, b) = (lhs.coeff(w), rhs.coeff(w));
        (a != b).then(|| format!("{w}: lhs = {a}, rhs = {b}"))
    })
}

impl PartialEq for TruncSeries {
    fn eq(&self, other: &TruncSeries) -> bool {
        series_diff(self, other).is_none()
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(w, _)| (w.degree(), **w));
        let parts: Vec<String> = ordered
            .into_iter()
            .map(|(w, c)| {
                if *w == Word::new(0, 0) {
                    c.to_string()
                } else if c.num.is_one() && c.den.is_one() {
                    w.to_string()
                } else {
                    format!("{c}·{w}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0 + O({})", self.order + 1)
        } else {
            write!(f, "{} + O({})", parts.join(" + "), self.order + 1)
        }
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries({self})")
    }
}

#[derive(Serialize)]
struct SeriesTermJson<'a> {
    x: u32,
    y: u32,
    coeff: &'a Frac,
}

#[derive(Serialize)]
struct SeriesJson<'a> {
    order: u32,
    relation: LaurentPoly,
    terms: Vec<SeriesTermJson<'a>>,
}

impl Serialize for TruncSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            order: self.order,
            relation: self.relation.as_poly(),
            terms: self.terms.iter().map(|(w, c)| SeriesTermJson { x: w.x, y: w.y, coeff: c }).collect(),
        }
        .serialize(s)
    }
}

fn exp_with(order: u32, gen: Generator, scalar: impl Fn(i64) -> LaurentPoly) -> TruncSeries {
    let mut s = TruncSeries::zero(order, RelationConst::big_q());
    for n in 0..=order {
        let c = Frac::new(scalar(i64::from(n)), qq_factorial(n)).expect("factorials are nonzero");
        s.add_term(gen.word(n), c);
    }
    s
}

/// `e_{q,Q}` truncated at degree `order`, in the chosen generator.
pub fn exp_small(order: u32, gen: Generator) -> TruncSeries {
    exp_with(order, gen, |_| LaurentPoly::one())
}

/// `E_{q,Q}` truncated at degree `order`, in the chosen generator.
pub fn exp_big(order: u32, gen: Generator) -> TruncSeries {
    exp_with(order, gen, |n| LaurentPoly::q_pow(t_exponent(n, n)))
}

/// `sum_{n <= order} (x+y)^n_{<q} / [n]!` with `yx = Q xy`.
pub fn exp_of_binomial(order: u32) -> TruncSeries {
    let mut s = TruncSeries::zero(order, RelationConst::big_q());
    for n in 0..=order {
        let den = qq_factorial(n);
        for (w, c) in binomial_lt(n, RelationConst::big_q()).terms() {
            s.add_term(*w, Frac { num: c.clone(), den: den.clone() });
        }
    }
    s
}

/// `e((x+y)_{<q}) = e(x) E(y)` at every truncation order `0..=order`.
pub fn verify_factorization(order: u32, opts: &VerifyOptions) -> Report {
    let cases = run_cases(opts, 0..=order, |n| {
        let lhs = exp_of_binomial(n);
        let mut rhs = exp_small(n, Generator::X)
            .mul(&exp_big(n, Generator::Y))
            .expect("same relation and order");
        if opts.perturb {
            rhs.add_term(Word::new(0, 0), Frac::from_poly(LaurentPoly::one()));
        }
        vec![CaseResult::new(format!("N={n}"), n, series_diff(&lhs, &rhs))]
    });
    Report::new("exp", cases)
}

/// At `q = 1` both exponentials reduce to the same Jackson-type series.
pub fn verify_jackson_degeneration(order: u32, opts: &VerifyOptions) -> Report {
    let one = LaurentPoly::one();
    let bq = LaurentPoly::big_q();
    let cases = run_cases(opts, 0..=order, |n| {
        let small = exp_small(n, Generator::X).compose(&one, &bq).expect("unit images");
        let mut big = exp_big(n, Generator::X).compose(&one, &bq).expect("unit images");
        if opts.perturb {
            big.add_term(Word::new(0, 0), Frac::from_poly(LaurentPoly::one()));
        }
        vec![CaseResult::new(format!("N={n}"), n, series_diff(&small, &big))]
    });
    Report::new("exp-degeneration", cases)
}
