//! Q-dilatation `M` and Q-derivative `D` acting on polynomials in `z`:
//! `M z^n = Q^n z^n`, `D z^n = [n]_Q z^(n-1)` with `[n]_Q = 1 + Q + ... + Q^(n-1)`.
//!
//! They satisfy `D M = Q M D`, so they realise the generators of the `yx = Q xy`
//! algebra with `x -> M`, `y -> D`.

use std::collections::BTreeMap;
use std::fmt;

use crate::laurent::LaurentPoly;
use crate::ncalg::{theorem_expansion, NCPoly};
use crate::report::{run_cases, CaseResult, Report, VerifyOptions};

/// Polynomial in `z` with Laurent coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    terms: BTreeMap<u32, LaurentPoly>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly::default()
    }

    /// `c z^n`.
    pub fn term(n: u32, c: LaurentPoly) -> Self {
        let mut p = UniPoly::zero();
        p.add_term(n, c);
        p
    }

    pub fn monomial(n: u32) -> Self {
        UniPoly::term(n, LaurentPoly::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, LaurentPoly)>) -> Self {
        let mut p = UniPoly::zero();
        for (n, c) in terms {
            p.add_term(n, c);
        }
        p
    }

    fn add_term(&mut self, n: u32, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(n).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, n: u32) -> LaurentPoly {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (n, c) in &other.terms {
            out.add_term(*n, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> UniPoly {
        UniPoly::from_terms(self.terms.iter().map(|(n, v)| (*n, v * c)))
    }

    /// Multiplication by `z`.
    pub fn shift_up(&self) -> UniPoly {
        UniPoly::from_terms(self.terms.iter().map(|(n, v)| (n + 1, v.clone())))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(n, c)| match n {
                0 => format!("({c})"),
                1 => format!("({c})*z"),
                _ => format!("({c})*z^{n}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

/// `1 + Q + ... + Q^(n-1)`.
pub fn q_integer(n: u32) -> LaurentPoly {
    LaurentPoly::from_terms((0..i64::from(n)).map(|i| (crate::laurent::ExponentPair::new(0, i), 1)))
}

pub fn apply_m(p: &UniPoly) -> UniPoly {
    UniPoly::from_terms(p.terms.iter().map(|(n, c)| (*n, c * &LaurentPoly::big_q_pow(i64::from(*n)))))
}

pub fn apply_d(p: &UniPoly) -> UniPoly {
    UniPoly::from_terms(
        p.terms
            .iter()
            .filter(|(n, _)| **n > 0)
            .map(|(n, c)| (n - 1, c * &q_integer(*n))),
    )
}

/// Acts with a normal-ordered operator `sum c x^a y^b`, read as `sum c M^a D^b`.
pub fn apply_ncpoly(op: &NCPoly, p: &UniPoly) -> UniPoly {
    let mut out = UniPoly::zero();
    for (w, c) in op.terms() {
        let mut v = p.clone();
        for _ in 0..w.y {
            v = apply_d(&v);
        }
        for _ in 0..w.x {
            v = apply_m(&v);
        }
        out = out.add(&v.scale(c));
    }
    out
}

/// Checks `D(M z^n) = Q M(D z^n)` for every `n <= degree_max`.
pub fn verify_qcommutation(degree_max: u32) -> bool {
    (0..=degree_max).all(|n| {
        let z = UniPoly::monomial(n);
        apply_d(&apply_m(&z)) == apply_m(&apply_d(&z)).scale(&LaurentPoly::big_q())
    })
}

/// Applies `(M+D)(M+qD)...(M+q^(n-1)D)` to `p` factor by factor, rightmost first.
pub fn apply_factored_binomial(n: u32, p: &UniPoly) -> UniPoly {
    (0..i64::from(n)).rev().fold(p.clone(), |v, k| {
        apply_m(&v).add(&apply_d(&v).scale(&LaurentPoly::q_pow(k)))
    })
}

/// For each `1 <= n <= n_max` and `z^m` with `m <= degree_max`, compares the factored
/// operator product with the closed-form expansion `sum [n k] q^{k(k-1)/2} M^(n-k) D^k`.
pub fn verify_operator_binomial(n_max: u32, degree_max: u32, opts: &VerifyOptions) -> Report {
    let cases = run_cases(opts, 1..=n_max, |n| {
        let expansion = theorem_expansion(n);
        (0..=degree_max)
            .map(|m| {
                let z = UniPoly::monomial(m);
                let lhs = apply_factored_binomial(n, &z);
                let mut rhs = apply_ncpoly(&expansion, &z);
                if opts.perturb {
                    rhs = rhs.add(&UniPoly::monomial(0));
                }
                let diff = (lhs != rhs).then(|| {
                    let d = lhs.sub(&rhs);
                    let (deg, _) = d.terms.iter().next().expect("nonzero difference");
                    format!("z^{deg}: lhs = {}, rhs = {}", lhs.coeff(*deg), rhs.coeff(*deg))
                });
                CaseResult::new(format!("n={n} m={m}"), n, diff)
            })
            .collect()
    });
    Report::new("operators", cases)
}

/// `verify_qcommutation` packaged as a report, one case per degree.
pub fn qcommutation_report(degree_max: u32, opts: &VerifyOptions) -> Report {
    let cases = run_cases(opts, 0..=degree_max, |n| {
        let z = UniPoly::monomial(n);
        let lhs = apply_d(&apply_m(&z));
        let mut rhs = apply_m(&apply_d(&z)).scale(&LaurentPoly::big_q());
        if opts.perturb {
            rhs = rhs.add(&UniPoly::monomial(0));
        }
        let diff = (lhs != rhs).then(|| format!("z^{n}: DM = {lhs}, QMD = {rhs}"));
        vec![CaseResult::new(format!("n={n}"), n, diff)]
    });
    Report::new("qcommutation", cases)
}
