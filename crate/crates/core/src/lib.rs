//! Exact two-base `(Q,q)`-calculus.
//!
//! * [`laurent`]: the coefficient ring `Z[q^±1, Q^±1]` and its specialisations
//! * [`golden`]: `Z[phi]`, Fibonacci numbers and Fibonomials
//! * [`qcomb`]: `(Q,q)`-numbers, factorials, binomials, Pascal recurrences, the triangle
//! * [`ncalg`]: the algebra `yx = R xy`, ordered q-products and identity checkers
//! * [`operators`]: the dilatation/derivative realisation of `yx = Q xy`
//! * [`qexp`]: truncated two-base exponentials and their factorisation
//! * [`cli`]: the `qqcalc` command line

pub mod cli;
pub mod error;
pub mod golden;
pub mod laurent;
pub mod ncalg;
pub mod operators;
pub mod qcomb;
pub mod qexp;
pub mod report;

pub use error::{Error, Result};
pub use golden::GoldenNum;
pub use laurent::{ExponentPair, LaurentPoly, SubstTarget, SubstValue};
pub use ncalg::{NCPoly, QFactor, RelationConst};
pub use report::{Report, VerifyOptions};
