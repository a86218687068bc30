//! Exact scalars: rationals, elements of a real quadratic field `Q(√n)`, and
//! the integer utilities the order classification needs.
//!
//! Every value here is immutable. A computation lives in a single field
//! context: elements with radicands `n > 1` can only be combined with
//! rationals or with elements of the same radicand.

mod literal;
mod quad;
mod squarefree;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use literal::{parse_rational, parse_real_quad};
pub use quad::{rq_add, rq_div, rq_mul, rq_sign, rq_sub, RealQuad};
pub use squarefree::{is_squarefree, squarefree_decompose, SquarefreeDecomposition};

/// Arbitrary-precision fraction, always reduced with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot combine sqrt({left}) with sqrt({right}) in one quadratic field")]
    MixedRadicand { left: u64, right: u64 },
    #[error("squarefree decomposition of zero is undefined")]
    ZeroInput,
    #[error("invalid literal {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Returns `Rational` `n / 1`.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Returns `Rational` `num / den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
