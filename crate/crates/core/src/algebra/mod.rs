//! Exact polynomial and rational-function arithmetic over `Q[m1, m2, m3, t]`.

mod monomial;
mod poly;
mod ratfunc;
mod text;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use monomial::{Monomial, Var};
pub use poly::MultiPoly;
pub use ratfunc::RatFunc;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("no leading term: zero polynomial")]
    NoLeadingTerm,
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("epsilon must be +1 or -1, got {0}")]
    BadEpsilon(i64),
}

/// Sign of the sectional curvature of the space-form factor: `+1` for `S^3`, `-1` for `H^3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i64", try_from = "i64")]
pub enum Epsilon {
    Sphere,
    Hyperbolic,
}

impl Epsilon {
    pub const BOTH: [Epsilon; 2] = [Epsilon::Sphere, Epsilon::Hyperbolic];

    pub fn value(self) -> i64 {
        match self {
            Epsilon::Sphere => 1,
            Epsilon::Hyperbolic => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.value() as f64
    }

    pub fn poly(self) -> MultiPoly {
        MultiPoly::int(self.value())
    }

    pub fn flip(self) -> Epsilon {
        match self {
            Epsilon::Sphere => Epsilon::Hyperbolic,
            Epsilon::Hyperbolic => Epsilon::Sphere,
        }
    }
}

impl From<Epsilon> for i64 {
    fn from(e: Epsilon) -> i64 {
        e.value()
    }
}

impl TryFrom<i64> for Epsilon {
    type Error = AlgebraError;
    fn try_from(v: i64) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(Epsilon::Sphere),
            -1 => Ok(Epsilon::Hyperbolic),
            other => Err(AlgebraError::BadEpsilon(other)),
        }
    }
}

impl std::fmt::Display for Epsilon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:+}", self.value())
    }
}
