//! The algebra `Z[q^±1, Q^±1]<x, y> / (yx - R xy)` with `R` a central unit monomial.
//!
//! Elements are stored in normal order (`x`'s left of `y`'s), so
//! `(x^a y^b)(x^c y^d) = R^(bc) x^(a+c) y^(b+d)` is the whole multiplication rule.
//! On top of that sit the ordered q-products `(x+y)^n_{<q}`, `(x+y)^n_{>q}`, the
//! closed-form expansion of the Q-commutative binomial theorem, and checkers for the
//! theorem, the product-reordering relations and the special cases.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::golden::{fibonomial, GoldenNum};
use crate::laurent::{ExponentPair, LaurentPoly};
use crate::qcomb::{gaussian_binomial, integer_binomial, qq_binomial, qq_binomial_in_bases, symmetric_binomial, t_exponent};
use crate::report::{run_cases, CaseResult, Report, VerifyOptions};

/// Commutation constant `R` in `yx = R xy`: a monomial `q^a Q^b` with coefficient 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelationConst(ExponentPair);

impl RelationConst {
    pub fn new(r: &LaurentPoly) -> Result<Self> {
        match r.as_monomial() {
            Some((e, c)) if c.is_one() => Ok(RelationConst(e)),
            _ => Err(Error::InvalidRelation(r.to_string())),
        }
    }

    pub fn from_exponents(q: i64, big_q: i64) -> Self {
        RelationConst(ExponentPair::new(q, big_q))
    }

    /// `yx = Q xy`.
    pub fn big_q() -> Self {
        RelationConst::from_exponents(0, 1)
    }

    /// `yx = q^-1 xy`.
    pub fn inv_q() -> Self {
        RelationConst::from_exponents(-1, 0)
    }

    /// Commuting generators.
    pub fn one() -> Self {
        RelationConst::from_exponents(0, 0)
    }

    pub fn exponents(&self) -> ExponentPair {
        self.0
    }

    pub fn as_poly(&self) -> LaurentPoly {
        LaurentPoly::monomial(1, self.0.q, self.0.big_q)
    }

    /// `R^m`, defined for every integer `m`.
    pub fn pow(&self, m: i64) -> LaurentPoly {
        LaurentPoly::monomial(1, self.0.q * m, self.0.big_q * m)
    }
}

impl fmt::Display for RelationConst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.as_poly().fmt(f)
    }
}

/// Scalar produced by moving one `x` leftwards through `y^b`: `y^b x = R^b x y^b`.
pub fn normal_order_step(b: u32, rel: RelationConst) -> LaurentPoly {
    rel.pow(i64::from(b))
}

/// Normal-ordered monomial `x^x y^y`. Sorted by `x` descending, then `y` ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    pub x: u32,
    pub y: u32,
}

impl Word {
    pub fn new(x: u32, y: u32) -> Self {
        Word { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        other.x.cmp(&self.x).then(self.y.cmp(&other.y))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (sym, p) in [("x", self.x), ("y", self.y)] {
            match p {
                0 => {}
                1 => parts.push(sym.to_string()),
                _ => parts.push(format!("{sym}^{p}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("·"))
        }
    }
}

/// Normal-ordered noncommutative polynomial `sum c_{a,b} x^a y^b`.
#[derive(Clone, PartialEq, Eq)]
pub struct NCPoly {
    relation: RelationConst,
    terms: BTreeMap<Word, LaurentPoly>,
}

impl NCPoly {
    pub fn zero(relation: RelationConst) -> Self {
        NCPoly { relation, terms: BTreeMap::new() }
    }

    pub fn one(relation: RelationConst) -> Self {
        NCPoly::term(relation, 0, 0, LaurentPoly::one())
    }

    pub fn x(relation: RelationConst) -> Self {
        NCPoly::term(relation, 1, 0, LaurentPoly::one())
    }

    pub fn y(relation: RelationConst) -> Self {
        NCPoly::term(relation, 0, 1, LaurentPoly::one())
    }

    /// `c x^a y^b`.
    pub fn term(relation: RelationConst, a: u32, b: u32, c: LaurentPoly) -> Self {
        let mut p = NCPoly::zero(relation);
        p.add_term(Word::new(a, b), c);
        p
    }

    pub fn from_terms(relation: RelationConst, terms: impl IntoIterator<Item = (Word, LaurentPoly)>) -> Self {
        let mut p = NCPoly::zero(relation);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    fn add_term(&mut self, w: Word, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn relation(&self) -> RelationConst {
        self.relation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in `x`-degree descending, `y`-degree ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: u32, b: u32) -> LaurentPoly {
        self.terms.get(&Word::new(a, b)).cloned().unwrap_or_default()
    }

    /// Largest `a + b` over stored terms; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Word::degree).max()
    }

    fn check_relation(&self, other: &NCPoly) -> Result<()> {
        if self.relation == other.relation {
            Ok(())
        } else {
            Err(Error::RelationMismatch(self.relation.to_string(), other.relation.to_string()))
        }
    }

    pub fn try_add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_relation(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        Ok(out)
    }

    /// Normal-ordered product.
    pub fn try_mul(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_relation(other)?;
        let r = self.relation.exponents();
        let mut out = NCPoly::zero(self.relation);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let m = i64::from(wa.y) * i64::from(wb.x);
                let shift = ExponentPair::new(r.q * m, r.big_q * m);
                let c = (ca * cb).mul_monomial(shift, &BigInt::one());
                out.add_term(Word::new(wa.x + wb.x, wa.y + wb.y), c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> NCPoly {
        (0..n).fold(NCPoly::one(self.relation), |acc, _| acc.try_mul(self).expect("same relation"))
    }

    /// Multiplies by a central scalar.
    pub fn scale(&self, c: &LaurentPoly) -> NCPoly {
        NCPoly::from_terms(self.relation, self.terms.iter().map(|(w, v)| (*w, v * c)))
    }

    /// Applies `q -> q_image`, `Q -> big_q_image` to every coefficient and to the
    /// relation constant. The image of the relation must again be a valid relation.
    pub fn compose(&self, q_image: &LaurentPoly, big_q_image: &LaurentPoly) -> Result<NCPoly> {
        let rel = RelationConst::new(&self.relation.as_poly().compose(q_image, big_q_image)?)?;
        let mut out = NCPoly::zero(rel);
        for (w, c) in &self.terms {
            out.add_term(*w, c.compose(q_image, big_q_image)?);
        }
        Ok(out)
    }

    /// Coefficients evaluated at rational bases.
    pub fn evaluate(&self, q0: &BigRational, big_q0: &BigRational) -> Result<BTreeMap<Word, BigRational>> {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let v = c.evaluate(q0, big_q0)?;
            if v != BigRational::default() {
                out.insert(*w, v);
            }
        }
        Ok(out)
    }

    /// Coefficients evaluated at `q = 1 - phi`, `Q = phi`.
    pub fn evaluate_golden(&self) -> Result<BTreeMap<Word, GoldenNum>> {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let v = c.evaluate_golden(&GoldenNum::one_minus_phi(), &GoldenNum::phi())?;
            if !v.is_zero() {
                out.insert(*w, v);
            }
        }
        Ok(out)
    }

    /// Adds 1 to the coefficient of the last stored term (or to the constant term of
    /// zero). Used by the checker fault-injection hook.
    pub fn perturbed(&self) -> NCPoly {
        let w = self.terms.keys().next_back().copied().unwrap_or(Word::new(0, 0));
        let mut out = self.clone();
        out.add_term(w, LaurentPoly::one());
        out
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mono = *w != Word::new(0, 0);
            let (neg, body) = match c.as_monomial() {
                Some((_, v)) if v.is_negative() => (true, (-c).to_string()),
                Some(_) => (false, c.to_string()),
                None if mono => (false, format!("({c})")),
                None => (false, c.to_string()),
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mono {
                f.write_str(&body)?;
            } else if body == "1" {
                write!(f, "{w}")?;
            } else {
                write!(f, "{body}·{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly[R={}]({self})", self.relation)
    }
}

#[derive(Serialize, Deserialize)]
struct NcTermJson {
    x: u32,
    y: u32,
    coeff: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct NcJson {
    relation: LaurentPoly,
    terms: Vec<NcTermJson>,
}

impl Serialize for NCPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NcJson {
            relation: self.relation.as_poly(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| NcTermJson { x: w.x, y: w.y, coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NCPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = NcJson::deserialize(d)?;
        let rel = RelationConst::new(&raw.relation).map_err(serde::de::Error::custom)?;
        Ok(NCPoly::from_terms(rel, raw.terms.into_iter().map(|t| (Word::new(t.x, t.y), t.coeff))))
    }
}

/// One factor `(x + c y)` of an ordered product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFactor {
    pub c: LaurentPoly,
}

impl QFactor {
    pub fn new(c: LaurentPoly) -> Self {
        QFactor { c }
    }

    pub fn to_ncpoly(&self, rel: RelationConst) -> NCPoly {
        NCPoly::from_terms(rel, [(Word::new(1, 0), LaurentPoly::one()), (Word::new(0, 1), self.c.clone())])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `f_0 f_1 ... f_n`.
    Ascending,
    /// `f_n ... f_1 f_0`.
    Descending,
}

pub fn ordered_product(factors: &[QFactor], rel: RelationConst, direction: Direction) -> NCPoly {
    let mul = |acc: NCPoly, f: &QFactor| acc.try_mul(&f.to_ncpoly(rel)).expect("same relation");
    match direction {
        Direction::Ascending => factors.iter().fold(NCPoly::one(rel), mul),
        Direction::Descending => factors.iter().rev().fold(NCPoly::one(rel), mul),
    }
}

fn q_power_factors(n: u32) -> Vec<QFactor> {
    (0..i64::from(n)).map(|k| QFactor::new(LaurentPoly::q_pow(k))).collect()
}

/// `(x+y)^n_{<q} = (x+y)(x+qy)...(x+q^(n-1)y)`.
pub fn binomial_lt(n: u32, rel: RelationConst) -> NCPoly {
    ordered_product(&q_power_factors(n), rel, Direction::Ascending)
}

/// `(x+y)^n_{>q} = (x+q^(n-1)y)...(x+qy)(x+y)`.
pub fn binomial_gt(n: u32, rel: RelationConst) -> NCPoly {
    ordered_product(&q_power_factors(n), rel, Direction::Descending)
}

/// `sum_k [n k]_{Q,q} q^{k(k-1)/2} x^(n-k) y^k`, relation `yx = Q xy`.
pub fn theorem_expansion(n: u32) -> NCPoly {
    let n64 = i64::from(n);
    NCPoly::from_terms(
        RelationConst::big_q(),
        (0..=n).map(|k| {
            let k64 = i64::from(k);
            (Word::new(n - k, k), &qq_binomial(n, k64) * &LaurentPoly::q_pow(t_exponent(n64, k64)))
        }),
    )
}

/// `None` when equal; otherwise a description of the first mismatching term.
pub fn nc_diff(lhs: &NCPoly, rhs: &NCPoly) -> Option<String> {
    if lhs.relation != rhs.relation {
        return Some(format!("relation: lhs R = {}, rhs R = {}", lhs.relation, rhs.relation));
    }
    let mut words: Vec<Word> = lhs.terms.keys().chain(rhs.terms.keys()).copied().collect();
    words.sort();
    words.dedup();
    words.into_iter().find_map(|w| {
        let (a, b) = (lhs.coeff(w.x, w.y), rhs.coeff(w.x, w.y));
        (a != b).then(|| format!("{w}: lhs = {a}, rhs = {b}"))
    })
}

fn compare(lhs: &NCPoly, rhs: &NCPoly, opts: &VerifyOptions) -> Option<String> {
    if opts.perturb {
        nc_diff(lhs, &rhs.perturbed())
    } else {
        nc_diff(lhs, rhs)
    }
}

fn case(label: &str, n: u32, lhs: &NCPoly, rhs: &NCPoly, opts: &VerifyOptions) -> CaseResult {
    let name = if label.is_empty() { format!("n={n}") } else { format!("{label} n={n}") };
    CaseResult::new(name, n, compare(lhs, rhs, opts))
}

/// `(x+y)^n_{<q}` by normal-ordering multiplication against the closed form, `0 <= n <= n_max`.
pub fn verify_main_theorem(n_max: u32, opts: &VerifyOptions) -> Report {
    let cases = run_cases(opts, 0..=n_max, |n| {
        vec![case("", n, &binomial_lt(n, RelationConst::big_q()), &theorem_expansion(n), opts)]
    });
    Report::new("theorem", cases)
}

/// `prod_{k=0}^N (x+q^k y)_{<q} = prod_{k=0}^N (x+Q^(N-2k) q^k y)_{>q}`, `0 <= N <= n_max`.
pub fn verify_order_relation(n_max: u32, opts: &VerifyOptions) -> Report {
    let rel = RelationConst::big_q();
    let cases = run_cases(opts, 0..=n_max, |n| {
        let n64 = i64::from(n);
        let asc: Vec<_> = (0..=n64).map(|k| QFactor::new(LaurentPoly::q_pow(k))).collect();
        let desc: Vec<_> = (0..=n64)
            .map(|k| QFactor::new(LaurentPoly::monomial(1, k, n64 - 2 * k)))
            .collect();
        let lhs = ordered_product(&asc, rel, Direction::Ascending);
        let rhs = ordered_product(&desc, rel, Direction::Descending);
        vec![case("", n, &lhs, &rhs, opts)]
    });
    Report::new("order-relation", cases)
}

/// `(x+y)^n = (x+Q^-(n-1) y)(x+Q^-(n-3) y)...(x+Q^(n-1) y)` under `yx = Q xy`.
pub fn verify_symmetric_q1(n_max: u32, opts: &VerifyOptions) -> Report {
    let rel = RelationConst::big_q();
    let cases = run_cases(opts, 1..=n_max, |n| {
        let n64 = i64::from(n);
        let lhs = NCPoly::x(rel).try_add(&NCPoly::y(rel)).unwrap().pow(n);
        let factors: Vec<_> = (0..n64)
            .map(|j| QFactor::new(LaurentPoly::big_q_pow(-(n64 - 1) + 2 * j)))
            .collect();
        let rhs = ordered_product(&factors, rel, Direction::Ascending);
        vec![case("", n, &lhs, &rhs, opts)]
    });
    Report::new("symmetric", cases)
}

/// `(x+y)^N_{<q} = (x+Q^(N-1) y)^N_{>q/Q^2}`.
pub fn verify_order_reversal(n_max: u32, opts: &VerifyOptions) -> Report {
    let rel = RelationConst::big_q();
    let cases = run_cases(opts, 1..=n_max, |n| {
        let n64 = i64::from(n);
        let factors: Vec<_> = (0..n64)
            .map(|k| QFactor::new(LaurentPoly::monomial(1, k, -2 * k + n64 - 1)))
            .collect();
        let rhs = ordered_product(&factors, rel, Direction::Descending);
        vec![case("", n, &binomial_lt(n, rel), &rhs, opts)]
    });
    Report::new("reversal", cases)
}

/// Closed form of the descending product:
/// `sum_k [N k]_{qQ^2, Q} (qQ^2)^{k(k-1)/2} Q^{-k(N-1)} x^(N-k) y^k`.
pub fn descending_expansion(n: u32) -> NCPoly {
    let n64 = i64::from(n);
    let base_a = LaurentPoly::monomial(1, 1, 2);
    let base_b = LaurentPoly::big_q();
    NCPoly::from_terms(
        RelationConst::big_q(),
        (0..=n64).map(|k| {
            let t = t_exponent(n64, k);
            let coeff = qq_binomial_in_bases(n, k, &base_a, &base_b).expect("unit bases");
            let scalar = LaurentPoly::monomial(1, t, 2 * t - k * (n64 - 1));
            (Word::new(n - k as u32, k as u32), &coeff * &scalar)
        }),
    )
}

pub fn verify_descending_expansion(n_max: u32, opts: &VerifyOptions) -> Report {
    let cases = run_cases(opts, 1..=n_max, |n| {
        vec![case("", n, &binomial_gt(n, RelationConst::big_q()), &descending_expansion(n), opts)]
    });
    Report::new("descending", cases)
}

fn expansion_with(rel: RelationConst, n: u32, coeff: impl Fn(i64) -> LaurentPoly) -> NCPoly {
    NCPoly::from_terms(rel, (0..=n).map(|k| (Word::new(n - k, k), coeff(i64::from(k)))))
}

/// Cases (i)-(vi): the two-base formula degenerates to the Gauss, noncommutative,
/// symmetric, Newton-type, Binet-Fibonacci and commutative two-base formulas.
pub fn verify_special_cases(n_max: u32, opts: &VerifyOptions) -> Report {
    let q = LaurentPoly::q;
    let bq = LaurentPoly::big_q;
    let one = LaurentPoly::one;
    let cases = run_cases(opts, 1..=n_max, |n| {
        let n64 = i64::from(n);
        let theorem = theorem_expansion(n);
        let mut out = Vec::new();

        // (i) Q -> 1: Gauss binomial formula with commuting x, y.
        let gauss = expansion_with(RelationConst::one(), n, |k| {
            &gaussian_binomial(n, k) * &LaurentPoly::q_pow(t_exponent(n64, k))
        });
        let sub = theorem.compose(&q(), &one()).expect("unit images");
        out.push(case("(i) Q->1", n, &sub, &gauss, opts));
        out.push(case("(i) commutative product", n, &binomial_lt(n, RelationConst::one()), &gauss, opts));

        // (ii) q -> 1: sum [n k]_Q x^(n-k) y^k with yx = Q xy.
        let nc = expansion_with(RelationConst::big_q(), n, |k| {
            gaussian_binomial(n, k).compose(&bq(), &bq()).expect("polynomial")
        });
        let sub = theorem.compose(&one(), &bq()).expect("unit images");
        out.push(case("(ii) q->1", n, &sub, &nc, opts));
        let plain = NCPoly::x(RelationConst::big_q())
            .try_add(&NCPoly::y(RelationConst::big_q()))
            .unwrap()
            .pow(n);
        out.push(case("(ii) plain power", n, &plain, &nc, opts));

        // (iii) Q -> 1/q: symmetric q-binomials, yx = q^-1 xy.
        let sym = expansion_with(RelationConst::inv_q(), n, |k| {
            &symmetric_binomial(n, k) * &LaurentPoly::q_pow(t_exponent(n64, k))
        });
        let sub = theorem.compose(&q(), &LaurentPoly::q_pow(-1)).expect("unit images");
        out.push(case("(iii) Q->1/q", n, &sub, &sym, opts));
        out.push(case("(iii) product", n, &binomial_lt(n, RelationConst::inv_q()), &sym, opts));

        // (iv) Q -> q: C(n,k) q^{k(n-(k+1)/2)}, yx = q xy.
        let rel_q = RelationConst::from_exponents(1, 0);
        let newton = expansion_with(rel_q, n, |k| {
            LaurentPoly::monomial(integer_binomial(n, k), k * (2 * n64 - k - 1) / 2, 0)
        });
        let sub = theorem.compose(&q(), &q()).expect("unit images");
        out.push(case("(iv) Q->q", n, &sub, &newton, opts));
        out.push(case("(iv) product", n, &binomial_lt(n, rel_q), &newton, opts));

        // (v) Q -> phi, q -> -1/phi: Fibonomial coefficients times (-1/phi)^{k(k-1)/2}.
        out.push(CaseResult::new(format!("(v) golden n={n}"), n, golden_diff(n, &theorem, opts)));

        // (vi) commuting x, y with factors (x + q^(n-1-k) Q^k y).
        let factors: Vec<_> = (0..n64)
            .map(|k| QFactor::new(LaurentPoly::monomial(1, n64 - 1 - k, k)))
            .collect();
        let lhs = ordered_product(&factors, RelationConst::one(), Direction::Ascending);
        let rhs = expansion_with(RelationConst::one(), n, |k| {
            let t = t_exponent(n64, k);
            &qq_binomial(n, k) * &LaurentPoly::monomial(1, t, t)
        });
        out.push(case("(vi) commutative two-base", n, &lhs, &rhs, opts));
        out
    });
    Report::new("special-cases", cases)
}

fn golden_diff(n: u32, theorem: &NCPoly, opts: &VerifyOptions) -> Option<String> {
    let lhs = theorem.evaluate_golden().expect("phi is a unit");
    let psi = GoldenNum::one_minus_phi();
    for k in 0..=n {
        let w = Word::new(n - k, k);
        let got = lhs.get(&w).cloned().unwrap_or_default();
        let t = t_exponent(i64::from(n), i64::from(k));
        let mut want = psi.pow(t).expect("unit").scale(&fibonomial(n, k));
        if opts.perturb && k == n {
            want = want + GoldenNum::one();
        }
        if got != want {
            return Some(format!("{w}: lhs = {got}, rhs = {want}"));
        }
    }
    None
}
