//! Arbitrary-precision scalars and dense univariate polynomials.

pub mod big;
pub mod laurent;
pub mod poly;
pub mod ratfun;

pub use big::{float_from_decimal, float_to_decimal, BigComplex, MIN_PREC};
pub use laurent::LaurentPrincipalPart;
pub use poly::{local_expansion, poly_gcd, polydiv, principal_parts, squarefree_part, CPoly};
pub use ratfun::RationalFunction;
