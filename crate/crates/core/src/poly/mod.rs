//! Exact multivariate polynomials.
//!
//! Variables are positional; names exist only at the parsing/printing layer.
//! Storage order is descending grevlex, which is also the default Gröbner
//! order, so canonical output and basis computations agree on what "leading"
//! means.

mod dual;
mod monomial;
mod polynomial;

pub use dual::FirstOrderPolynomial;
pub use monomial::Monomial;
pub(crate) use monomial::revlex_tail;
pub use polynomial::{Multiplicity, Polynomial};
