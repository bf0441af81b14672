//! Two-base combinatorics: `(Q,q)`-numbers, factorials, binomial coefficients,
//! the two Pascal recurrences and the coefficient triangle of the Q-commutative
//! binomial expansion.
//!
//! Everything is built without division. Binomial coefficients come from the
//! recurrence `[n k] = q^k [n-1 k] + Q^(n-k) [n-1 k-1]` and are memoised row by row.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::report::{run_cases, CaseResult, Report, VerifyOptions};

/// `[n]_{Q,q} = sum_{i<n} Q^(n-1-i) q^i`.
pub fn qq_number(n: u32) -> LaurentPoly {
    let n = i64::from(n);
    LaurentPoly::from_terms((0..n).map(|i| (crate::laurent::ExponentPair::new(i, n - 1 - i), 1)))
}

/// `[n]_{Q,q}! = [1][2]...[n]`.
pub fn qq_factorial(n: u32) -> LaurentPoly {
    (1..=n).fold(LaurentPoly::one(), |acc, i| &acc * &qq_number(i))
}

static BINOMIAL_ROWS: RwLock<Vec<Vec<LaurentPoly>>> = RwLock::new(Vec::new());

fn ensure_rows(n: u32) {
    let n = n as usize;
    if BINOMIAL_ROWS.read().unwrap().len() > n {
        return;
    }
    let mut rows = BINOMIAL_ROWS.write().unwrap();
    if rows.is_empty() {
        rows.push(vec![LaurentPoly::one()]);
    }
    while rows.len() <= n {
        let m = rows.len() as i64;
        let prev = rows.last().unwrap();
        let row: Vec<LaurentPoly> = (0..=m)
            .map(|k| {
                let left = if k < m {
                    &prev[k as usize] * &LaurentPoly::q_pow(k)
                } else {
                    LaurentPoly::zero()
                };
                let right = if k > 0 {
                    &prev[k as usize - 1] * &LaurentPoly::big_q_pow(m - k)
                } else {
                    LaurentPoly::zero()
                };
                left + right
            })
            .collect();
        rows.push(row);
    }
}

/// `[n choose k]_{Q,q}`; zero outside `0 <= k <= n`.
pub fn qq_binomial(n: u32, k: i64) -> LaurentPoly {
    if k < 0 || k > i64::from(n) {
        return LaurentPoly::zero();
    }
    ensure_rows(n);
    BINOMIAL_ROWS.read().unwrap()[n as usize][k as usize].clone()
}

/// Row `n` of the binomial coefficients, `k = 0..=n`.
pub fn qq_binomial_row(n: u32) -> Vec<LaurentPoly> {
    ensure_rows(n);
    BINOMIAL_ROWS.read().unwrap()[n as usize].clone()
}

/// `[n choose k]` with the two bases replaced by the given unit monomials.
/// The coefficient is symmetric in its bases, so the order of the two does not matter.
pub fn qq_binomial_in_bases(n: u32, k: i64, base_a: &LaurentPoly, base_b: &LaurentPoly) -> Result<LaurentPoly> {
    qq_binomial(n, k).compose(base_b, base_a)
}

/// `[n k] == q^k [n-1 k] + Q^(n-k) [n-1 k-1]`.
pub fn pascal_check_1(n: u32, k: i64) -> bool {
    if n == 0 {
        return false;
    }
    let n1 = i64::from(n);
    let rhs = &qq_binomial(n - 1, k) * &LaurentPoly::q_pow(k)
        + &qq_binomial(n - 1, k - 1) * &LaurentPoly::big_q_pow(n1 - k);
    qq_binomial(n, k) == rhs
}

/// `[n k] == Q^k [n-1 k] + q^(n-k) [n-1 k-1]`.
pub fn pascal_check_2(n: u32, k: i64) -> bool {
    if n == 0 {
        return false;
    }
    let n1 = i64::from(n);
    let rhs = &qq_binomial(n - 1, k) * &LaurentPoly::big_q_pow(k)
        + &qq_binomial(n - 1, k - 1) * &LaurentPoly::q_pow(n1 - k);
    qq_binomial(n, k) == rhs
}

/// Exponent of `q` multiplying `[n k]` in the expansion: `k(k-1)/2`.
///
/// `n` is accepted to mirror `t(n, k)`; the value does not depend on it.
pub fn t_exponent(n: i64, k: i64) -> i64 {
    debug_assert!(0 <= k && k <= n, "t_exponent requires 0 <= k <= n");
    k * (k - 1) / 2
}

/// Expansion coefficients of `(x+y)^n_{<q}` built from the three-branch recursion
/// obtained by multiplying by `(x + q^n y)` on the right:
///
/// * `{n+1, 0} = {n, 0}`
/// * `{n+1, n+1} = q^n {n, n}`
/// * `{n+1, k} = Q^k {n, k} + q^n {n, k-1}` for `1 <= k <= n`
pub fn brace_rows(n_max: u32) -> Vec<Vec<LaurentPoly>> {
    let mut rows = vec![vec![LaurentPoly::one()]];
    for n in 0..i64::from(n_max) {
        let prev = rows.last().unwrap();
        let qn = LaurentPoly::q_pow(n);
        let mut row = Vec::with_capacity(prev.len() + 1);
        row.push(prev[0].clone());
        for k in 1..=n {
            let k_us = k as usize;
            row.push(&prev[k_us] * &LaurentPoly::big_q_pow(k) + &prev[k_us - 1] * &qn);
        }
        row.push(&prev[n as usize] * &qn);
        rows.push(row);
    }
    rows
}

/// Checks `{n, k} = q^{t(n,k)} [n k]_{Q,q}` for all `0 <= k <= n <= n_max`.
pub fn recursion_solver_check(n_max: u32) -> bool {
    brace_rows(n_max).iter().enumerate().all(|(n, row)| {
        row.iter().enumerate().all(|(k, brace)| {
            let (n, k) = (n as i64, k as i64);
            *brace == &LaurentPoly::q_pow(t_exponent(n, k)) * &qq_binomial(n as u32, k)
        })
    })
}

/// Rows `0..=n_max` of the Q-commutative q-Pascal triangle: entry `(n, k)` is
/// `q^{k(k-1)/2} [n k]_{Q,q}`, the coefficient of `x^(n-k) y^k` in `(x+y)^n_{<q}`.
pub fn triangle_rows(n_max: u32) -> Vec<Vec<LaurentPoly>> {
    (0..=n_max)
        .map(|n| {
            qq_binomial_row(n)
                .into_iter()
                .enumerate()
                .map(|(k, c)| {
                    let k = k as i64;
                    &c * &LaurentPoly::q_pow(t_exponent(i64::from(n), k))
                })
                .collect()
        })
        .collect()
}

/// Centred plain-text rendering of triangle rows.
pub fn triangle_text(rows: &[Vec<LaurentPoly>]) -> String {
    let lines: Vec<String> = rows
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>().join("    "))
        .collect();
    let width = lines.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for l in lines {
        let pad = (width - l.chars().count()) / 2;
        out.push_str(&" ".repeat(pad));
        out.push_str(&l);
        out.push('\n');
    }
    out
}

/// Both Pascal recurrences for every `1 <= k < n`, one case per `n` in `2..=n_max`.
pub fn pascal_report(n_max: u32, opts: &VerifyOptions) -> Report {
    let cases = run_cases(opts, 2..=n_max.max(1), |n| {
        let bad = (1..i64::from(n)).find(|&k| !(pascal_check_1(n, k) && pascal_check_2(n, k)));
        vec![CaseResult::new(format!("n={n}"), n, bad.map(|k| format!("k={k}: recurrence fails")))]
    });
    Report::new("pascal", cases)
}

/// Recursion-built coefficients against `q^{t(n,k)} [n k]`, one case per `n`.
pub fn recursion_report(n_max: u32) -> Report {
    let cases = brace_rows(n_max)
        .iter()
        .enumerate()
        .map(|(n, row)| {
            let n = n as u32;
            let bad = row.iter().enumerate().find_map(|(k, brace)| {
                let k = k as i64;
                let want = &LaurentPoly::q_pow(t_exponent(i64::from(n), k)) * &qq_binomial(n, k);
                (*brace != want).then(|| format!("k={k}: recursion = {brace}, closed form = {want}"))
            });
            CaseResult::new(format!("n={n}"), n, bad)
        })
        .collect();
    Report::new("recursion", cases)
}

/// Classical Gaussian binomial in `q` alone, from
/// `[n k]_q = [n-1 k-1]_q + q^k [n-1 k]_q`.
pub fn gaussian_binomial(n: u32, k: i64) -> LaurentPoly {
    let n = i64::from(n);
    if k < 0 || k > n {
        return LaurentPoly::zero();
    }
    let mut row = vec![LaurentPoly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(row.len() + 1);
        for j in 0..=m {
            let a = if j > 0 { row[j as usize - 1].clone() } else { LaurentPoly::zero() };
            let b = if j < m { &row[j as usize] * &LaurentPoly::q_pow(j) } else { LaurentPoly::zero() };
            next.push(a + b);
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

/// Symmetric-calculus binomial built from `[n]~ = (q^n - q^-n)/(q - q^-1)`,
/// computed as `q^{-k(n-k)}` times the Gaussian binomial in `q^2`.
pub fn symmetric_binomial(n: u32, k: i64) -> LaurentPoly {
    let g = gaussian_binomial(n, k);
    let squared = g
        .compose(&LaurentPoly::q_pow(2), &LaurentPoly::big_q())
        .expect("polynomial composition");
    &squared * &LaurentPoly::q_pow(-k * (i64::from(n) - k))
}

/// Plain integer binomial `C(n, k)` by the additive Pascal rule.
pub fn integer_binomial(n: u32, k: i64) -> BigInt {
    if k < 0 || k > i64::from(n) {
        return BigInt::default();
    }
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{ExponentPair, SubstTarget, SubstValue};
    use proptest::prelude::*;

    fn lp(s: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(s.iter().map(|&(q, bq, c)| (ExponentPair::new(q, bq), c)))
    }

    #[test]
    fn numbers() {
        assert!(qq_number(0).is_zero());
        assert!(qq_number(1).is_one());
        assert_eq!(qq_number(2).to_string(), "Q+q");
        assert_eq!(qq_number(4).to_string(), "Q^3+Q^2*q+Q*q^2+q^3");
    }

    #[test]
    fn factorials() {
        assert!(qq_factorial(0).is_one());
        assert_eq!(qq_factorial(2), qq_number(2));
        // (Q+q)(Q^2+Qq+q^2), expanded by hand
        let expected = lp(&[(0, 3, 1), (1, 2, 2), (2, 1, 2), (3, 0, 1)]);
        assert_eq!(qq_factorial(3), expected);
    }

    #[test]
    fn binomials() {
        assert_eq!(qq_binomial(2, 1), qq_number(2));
        assert_eq!(qq_binomial(4, 2).to_string(), "Q^4+Q^3*q+2*Q^2*q^2+Q*q^3+q^4");
        assert!(qq_binomial(3, 5).is_zero());
        assert!(qq_binomial(3, -1).is_zero());
        for n in 0..10 {
            assert!(qq_binomial(n, 0).is_one());
            assert!(qq_binomial(n, i64::from(n)).is_one());
        }
        let gauss = lp(&[(0, 0, 1), (1, 0, 1), (2, 0, 2), (3, 0, 1), (4, 0, 1)]);
        assert_eq!(
            qq_binomial(4, 2).substitute(&SubstTarget::BigQToOne).unwrap(),
            SubstValue::Laurent(gauss)
        );
    }

    #[test]
    fn binomial_times_factorials_is_factorial() {
        for n in 0..=10 {
            for k in 0..=i64::from(n) {
                let lhs = &(&qq_binomial(n, k) * &qq_factorial(k as u32)) * &qq_factorial(n - k as u32);
                assert_eq!(lhs, qq_factorial(n), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn pascal_examples() {
        assert!(pascal_check_1(2, 1));
        assert!(pascal_check_1(4, 2));
        assert!(pascal_check_1(6, 3));
        assert!(pascal_check_2(2, 1));
        assert!(pascal_check_2(4, 2));
        assert!(pascal_check_2(5, 1));
        for n in 2..=12 {
            for k in 1..i64::from(n) {
                assert!(pascal_check_1(n, k) && pascal_check_2(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn t_exponent_values() {
        assert_eq!(t_exponent(5, 0), 0);
        assert_eq!(t_exponent(0, 0), 0);
        assert_eq!(t_exponent(1, 1), 0);
        assert_eq!(t_exponent(7, 2), 1);
        assert_eq!(t_exponent(9, 4), 6);
    }

    #[test]
    fn t_exponent_solves_difference_system() {
        for n in 0..20 {
            for k in 0..=n {
                assert_eq!(t_exponent(n + 1, k), t_exponent(n, k));
                if k >= 1 {
                    assert_eq!(t_exponent(n, k), t_exponent(n, k - 1) + k - 1);
                }
            }
        }
    }

    #[test]
    fn recursion_reconstruction() {
        assert!(recursion_solver_check(1));
        assert!(recursion_solver_check(4));
        assert!(recursion_solver_check(8));
        let rows = brace_rows(1);
        assert!(rows[1][0].is_one() && rows[1][1].is_one());
    }

    #[test]
    fn triangle() {
        let rows = triangle_rows(3);
        assert_eq!(rows[0], vec![LaurentPoly::one()]);
        assert_eq!(rows[2], vec![LaurentPoly::one(), qq_number(2), LaurentPoly::q()]);
        let three = qq_number(3);
        assert_eq!(
            rows[3],
            vec![LaurentPoly::one(), three.clone(), &three * &LaurentPoly::q(), LaurentPoly::q_pow(3)]
        );
        assert_eq!(triangle_text(&triangle_rows(0)), "1\n");
        assert_eq!(triangle_text(&triangle_rows(1)), "  1\n1    1\n");
    }

    #[test]
    fn specialisations() {
        for n in 0..=12u32 {
            for k in 0..=i64::from(n) {
                let c = qq_binomial(n, k);
                // Q -> 1 gives the Gaussian binomial, then q -> 1 gives C(n, k)
                let g = c.compose(&LaurentPoly::q(), &LaurentPoly::one()).unwrap();
                assert_eq!(g, gaussian_binomial(n, k));
                let i = g.compose(&LaurentPoly::one(), &LaurentPoly::one()).unwrap();
                assert_eq!(i, LaurentPoly::constant(integer_binomial(n, k)));
                assert!(!c.has_negative_exponents());
                assert!(c.terms().all(|(_, v)| v > &BigInt::default()));
            }
        }
        for n in 0..=8u32 {
            for k in 0..=i64::from(n) {
                let c = qq_binomial(n, k).compose(&LaurentPoly::q(), &LaurentPoly::q()).unwrap();
                let expected = LaurentPoly::monomial(integer_binomial(n, k), k * (i64::from(n) - k), 0);
                assert_eq!(c, expected);
            }
        }
    }

    #[test]
    fn symmetric_binomial_matches_symmetric_numbers() {
        // [n]~ = sum q^(n-1-2i); [n k]~ [k]~! [n-k]~! = [n]~!
        let sym_number = |n: i64| {
            LaurentPoly::from_terms((0..n).map(|i| (ExponentPair::new(n - 1 - 2 * i, 0), 1)))
        };
        let sym_fact = |n: i64| (1..=n).fold(LaurentPoly::one(), |a, i| &a * &sym_number(i));
        for n in 0..=8i64 {
            for k in 0..=n {
                let lhs = &(&symmetric_binomial(n as u32, k) * &sym_fact(k)) * &sym_fact(n - k);
                assert_eq!(lhs, sym_fact(n));
            }
        }
    }

    #[test]
    fn concurrent_cache_matches_sequential() {
        let sequential: Vec<_> = (0..=14).map(qq_binomial_row).collect();
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| (0..=14).rev().map(|n| (n, qq_binomial_row(n))).collect::<Vec<_>>()))
            .collect();
        for h in handles {
            for (n, row) in h.join().unwrap() {
                assert_eq!(row, sequential[n as usize]);
            }
        }
    }

    proptest! {
        #[test]
        fn base_symmetry(n in 0u32..=10, k_frac in 0.0f64..=1.0) {
            let k = (k_frac * f64::from(n)).round() as i64;
            prop_assert_eq!(qq_binomial(n, k).swap_bases(), qq_binomial(n, k));
            prop_assert_eq!(qq_binomial(n, k).swap_bases(), qq_binomial(n, i64::from(n) - k).swap_bases());
            prop_assert_eq!(qq_number(n).swap_bases(), qq_number(n));
        }

        #[test]
        fn t_exponent_ignores_n(k in 0i64..50, n1 in 0i64..50, n2 in 0i64..50) {
            prop_assert_eq!(t_exponent(k + n1, k), t_exponent(k + n2, k));
        }
    }
}
