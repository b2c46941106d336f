//! Exact arithmetic over `Q` and the cyclotomic fields `Q(zeta_n)`, plus
//! exact rank computation for dense matrices over these fields.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(phi(n)-1)`
//! with rational coordinates; arithmetic reduces modulo the n-th cyclotomic
//! polynomial. Ranks are computed by a deterministic multi-modular strategy
//! (two primes `p = 1 mod n` must agree, otherwise the computation escalates
//! to fraction-free exact elimination), so the strategy never affects the
//! result.

mod context;
mod element;
mod literal;
mod matrix;
pub(crate) mod modular;

pub use context::{cyclotomic_context, FieldContext};
pub use element::Scalar;
pub use literal::parse_scalar;
pub use matrix::{rank_of_rows, ScalarMatrix};

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;
