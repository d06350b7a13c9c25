//! Exact arithmetic: rationals, polynomials and rational functions in `q`,
//! integer Laurent polynomials, and cyclotomic factorization.

pub mod cyclotomic;
pub mod laurent;
pub mod poly;
pub mod ratfn;

pub use cyclotomic::{cyclotomic_certify, cyclotomic_poly, CycloProduct, CyclotomicFactorization};
pub use laurent::ZLaurent;
pub use poly::{Poly, PolyRecord};
pub use ratfn::RationalFunction;

/// Arbitrary-precision rational, always stored in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Lifts a machine integer into [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
