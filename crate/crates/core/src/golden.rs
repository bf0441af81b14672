//! Exact arithmetic in `Z[phi]`, `phi^2 = phi + 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// `a + b*phi`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GoldenNum {
    pub a: BigInt,
    pub b: BigInt,
}

impl GoldenNum {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        GoldenNum { a: a.into(), b: b.into() }
    }

    pub fn zero() -> Self {
        GoldenNum::default()
    }

    pub fn one() -> Self {
        GoldenNum::new(1, 0)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        GoldenNum::new(n, 0)
    }

    pub fn phi() -> Self {
        GoldenNum::new(0, 1)
    }

    /// `1 - phi`, which equals `-1/phi`.
    pub fn one_minus_phi() -> Self {
        GoldenNum::new(1, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The rational integer this represents, if `b == 0`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.b.is_zero().then_some(&self.a)
    }

    /// Field norm `a^2 + ab - b^2`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a + &self.a * &self.b - &self.b * &self.b
    }

    /// Galois conjugate, `phi -> 1 - phi`.
    pub fn conjugate(&self) -> GoldenNum {
        GoldenNum { a: &self.a + &self.b, b: -&self.b }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    pub fn inverse(&self) -> Result<GoldenNum> {
        let n = self.norm();
        if !n.abs().is_one() {
            return Err(Error::NonUnitInverse(self.to_string()));
        }
        // x * conj(x) = N(x), and N(x) = +-1 is its own inverse.
        Ok(self.conjugate().scale(&n))
    }

    pub fn scale(&self, c: &BigInt) -> GoldenNum {
        GoldenNum { a: &self.a * c, b: &self.b * c }
    }

    pub fn pow(&self, n: i64) -> Result<GoldenNum> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut base = base;
        let mut acc = GoldenNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }
}

/// `F_0 = 0, F_1 = 1, F_n = F_{n-1} + F_{n-2}`.
pub fn fibonacci(n: u32) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Fibonomial coefficient `F_n! / (F_k! F_(n-k)!)` by exact integer division;
/// zero outside `0 <= k <= n`.
pub fn fibonomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let fact = |m: u32| (1..=m).fold(BigInt::one(), |acc, i| acc * fibonacci(i));
    let den = fact(k) * fact(n - k);
    let (quot, rem) = num_integer::Integer::div_rem(&fact(n), &den);
    debug_assert!(rem.is_zero(), "Fibonomial coefficients are integers");
    quot
}

/// The two-base number `[n]` at `Q = phi`, `q = 1 - phi`, as the geometric sum
/// `sum_{i<n} phi^(n-1-i) (1-phi)^i`. Equals `F_n` embedded in `Z[phi]`.
pub fn golden_qnumber(n: u32) -> GoldenNum {
    let phi = GoldenNum::phi();
    let psi = GoldenNum::one_minus_phi();
    let n = i64::from(n);
    (0..n).fold(GoldenNum::zero(), |acc, i| {
        acc + phi.pow(n - 1 - i).unwrap() * psi.pow(i).unwrap()
    })
}

impl Add<&GoldenNum> for &GoldenNum {
    type Output = GoldenNum;
    fn add(self, rhs: &GoldenNum) -> GoldenNum {
        GoldenNum { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Add for GoldenNum {
    type Output = GoldenNum;
    fn add(self, rhs: GoldenNum) -> GoldenNum {
        &self + &rhs
    }
}

impl Sub<&GoldenNum> for &GoldenNum {
    type Output = GoldenNum;
    fn sub(self, rhs: &GoldenNum) -> GoldenNum {
        GoldenNum { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Sub for GoldenNum {
    type Output = GoldenNum;
    fn sub(self, rhs: GoldenNum) -> GoldenNum {
        &self - &rhs
    }
}

impl Neg for GoldenNum {
    type Output = GoldenNum;
    fn neg(self) -> GoldenNum {
        GoldenNum { a: -self.a, b: -self.b }
    }
}

impl Mul<&GoldenNum> for &GoldenNum {
    type Output = GoldenNum;
    fn mul(self, rhs: &GoldenNum) -> GoldenNum {
        let bd = &self.b * &rhs.b;
        GoldenNum {
            a: &self.a * &rhs.a + &bd,
            b: &self.a * &rhs.b + &self.b * &rhs.a + bd,
        }
    }
}

impl Mul for GoldenNum {
    type Output = GoldenNum;
    fn mul(self, rhs: GoldenNum) -> GoldenNum {
        &self * &rhs
    }
}

impl fmt::Display for GoldenNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let phi_part = match (self.b.is_one(), (-&self.b).is_one()) {
            (true, _) => "phi".to_string(),
            (_, true) => "-phi".to_string(),
            _ => format!("{}*phi", self.b),
        };
        if self.a.is_zero() {
            f.write_str(&phi_part)
        } else if phi_part.starts_with('-') {
            write!(f, "{}{}", self.a, phi_part)
        } else {
            write!(f, "{}+{}", self.a, phi_part)
        }
    }
}

impl fmt::Debug for GoldenNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GoldenNum({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct GoldenJson {
    a: String,
    b: String,
}

impl Serialize for GoldenNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GoldenJson { a: self.a.to_string(), b: self.b.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GoldenNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GoldenJson::deserialize(d)?;
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| serde::de::Error::custom(format!("bad integer {s:?}")))
        };
        Ok(GoldenNum { a: parse(&raw.a)?, b: parse(&raw.b)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn defining_relation_and_inverse() {
        assert_eq!(GoldenNum::phi() * GoldenNum::phi(), GoldenNum::new(1, 1));
        assert_eq!(GoldenNum::phi() * GoldenNum::new(-1, 1), GoldenNum::one());
        assert_eq!(GoldenNum::phi().inverse().unwrap(), GoldenNum::new(-1, 1));
        assert_eq!(-GoldenNum::phi().inverse().unwrap(), GoldenNum::one_minus_phi());
    }

    #[test]
    fn phi_powers_carry_fibonacci_pairs() {
        assert_eq!(GoldenNum::phi().pow(5).unwrap(), GoldenNum::new(3, 5));
        for n in 1..20u32 {
            let p = GoldenNum::phi().pow(i64::from(n)).unwrap();
            assert_eq!(p, GoldenNum::new(fibonacci(n - 1), fibonacci(n)));
        }
        let back = GoldenNum::phi().pow(-4).unwrap() * GoldenNum::phi().pow(4).unwrap();
        assert_eq!(back, GoldenNum::one());
    }

    #[test]
    fn non_unit_inverse_rejected() {
        assert!(matches!(GoldenNum::from_int(2).pow(-1), Err(Error::NonUnitInverse(_))));
        assert!(GoldenNum::new(1, 1).pow(-3).is_ok());
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(0), BigInt::from(0));
        assert_eq!(fibonacci(1), BigInt::from(1));
        assert_eq!(fibonacci(5), BigInt::from(5));
        assert_eq!(fibonacci(10), BigInt::from(55));
    }

    #[test]
    fn fibonomials() {
        assert_eq!(fibonomial(5, 2), BigInt::from(15));
        assert_eq!(fibonomial(3, 2), BigInt::from(2));
        assert_eq!(fibonomial(6, 3), BigInt::from(60));
        assert_eq!(fibonomial(4, 5), BigInt::zero());
        for n in 0..12 {
            assert!(fibonomial(n, 0).is_one() && fibonomial(n, n).is_one());
        }
    }

    #[test]
    fn golden_qnumbers_are_fibonacci() {
        assert_eq!(golden_qnumber(0), GoldenNum::zero());
        assert_eq!(golden_qnumber(2), GoldenNum::one());
        assert_eq!(golden_qnumber(5), GoldenNum::from_int(5));
        for n in 0..=30 {
            assert_eq!(golden_qnumber(n), GoldenNum::from_int(fibonacci(n)), "n = {n}");
        }
    }

    #[test]
    fn display_and_json() {
        assert_eq!(GoldenNum::new(2, -2).to_string(), "2-2*phi");
        assert_eq!(GoldenNum::new(0, 1).to_string(), "phi");
        assert_eq!(GoldenNum::new(1, -1).to_string(), "1-phi");
        assert_eq!(GoldenNum::from_int(15).to_string(), "15");
        let s = serde_json::to_string(&GoldenNum::new(3, -5)).unwrap();
        assert_eq!(s, r#"{"a":"3","b":"-5"}"#);
        assert_eq!(serde_json::from_str::<GoldenNum>(&s).unwrap(), GoldenNum::new(3, -5));
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let x = GoldenNum::new(a, b);
            let y = GoldenNum::new(c, d);
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn ring_laws(a in -20i64..20, b in -20i64..20, c in -20i64..20, d in -20i64..20, e in -20i64..20, f in -20i64..20) {
            let (x, y, z) = (GoldenNum::new(a, b), GoldenNum::new(c, d), GoldenNum::new(e, f));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
        }
    }
}
