//! Exact arithmetic: rationals, integer matrices, Smith normal form, and
//! rational linear systems with strict sign constraints. Nothing in here
//! touches floating point.

mod feasible;
mod matrix;
mod smith;
mod solve;

pub use feasible::{positive_feasible, positive_point, Constraint};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithForm};
pub use solve::{solve_exact, AffineSolution};

use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `p/q` text, always with an explicit denominator ("5/1").
pub fn format_rational(r: &Rational) -> String {
    alloc::format!("{}/{}", r.numer(), r.denom())
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactError {
    Dimension { expected: usize, found: usize },
    Shape { rows: usize, cols: usize, len: usize },
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::Dimension { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            ExactError::Shape { rows, cols, len } => {
                write!(f, "{len} entries cannot fill a {rows}x{cols} matrix")
            }
        }
    }
}

pub(crate) fn rational_one() -> Rational {
    Rational::one()
}

pub(crate) fn rational_zero() -> Rational {
    Rational::zero()
}
