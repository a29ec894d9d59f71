//! Exact computer algebra for singular foliations on simplicial complete
//! toric varieties, in homogeneous (Cox) coordinates.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`] — sparse multivariate polynomials over an exact field,
//!   plus a first-order (dual number) extension;
//! * [`groebner`] — Buchberger bases and the ideal operations used by
//!   everything above (membership, quotient, saturation, elimination,
//!   dimension, radical membership);
//! * [`toric`] — fans, class groups via Smith normal form, gradings, radial
//!   fields, volume forms, de-torsion and the lifting step for rational maps;
//! * [`forms`] — graded exterior calculus on the Cox ring;
//! * [`foliation`] — validity checks, singular/Kupka ideals, Γ-sets,
//!   unfoldings and first-order deformations;
//! * [`ratmap`] — polynomial liftings of rational maps from projective space
//!   and everything transported along them.
//!
//! The polynomial and Gröbner layers are generic over [`Field`]; the
//! geometric layers are written for exact rationals, since every reported
//! answer must be exact in characteristic zero.

pub mod error;
pub mod field;
pub mod foliation;
pub mod forms;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod ratmap;
pub mod toric;

pub use error::{Error, Result};
pub use field::{Field, Zp};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;
/// Polynomials with rational coefficients.
pub type QPoly = poly::Polynomial<Rational>;
/// First-order polynomials with rational coefficients.
pub type QDual = poly::FirstOrderPolynomial<Rational>;
/// Ideals of rational polynomials.
pub type QIdeal = groebner::Ideal<Rational>;

/// Convenience constructor for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Convenience constructor for `a/b`.
pub fn frac(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}
