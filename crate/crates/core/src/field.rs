//! Coefficient fields.
//!
//! The algebra is written once against [`Field`] and instantiated for exact
//! rationals (the only field used for reported answers) and for small prime
//! fields, which are useful as a fast, non-authoritative sanity check.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, NumRef, One, Signed, Zero};

/// An exact field.
pub trait Field: Num + NumRef + Neg<Output = Self> + Clone + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn from_i64(n: i64) -> Self;
    /// Multiplicative inverse; callers guarantee `self != 0`.
    fn inv(&self) -> Self;
    /// Whether the canonical printed form starts with a minus sign.
    fn is_negative(&self) -> bool;
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Integers modulo the prime `P` (`P < 2^32` so products fit in `u64`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Zp<const P: u64>(u64);

impl<const P: u64> Zp<P> {
    pub fn new(v: i64) -> Self {
        Zp(v.rem_euclid(P as i64) as u64)
    }
    pub fn value(self) -> u64 {
        self.0
    }
    fn pow(self, mut e: u64) -> Self {
        let (mut b, mut acc) = (self.0, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        Zp(acc)
    }
    /// Reduce a rational number; `None` when `P` divides the denominator.
    pub fn from_rational(q: &BigRational) -> Option<Self> {
        let p = BigInt::from(P);
        let den = (q.denom() % &p + &p) % &p;
        if den.is_zero() {
            return None;
        }
        let num = (q.numer() % &p + &p) % &p;
        let to_u64 = |b: BigInt| -> u64 { b.to_u64_digits().1.first().copied().unwrap_or(0) };
        Some(Zp(to_u64(num)) / Zp(to_u64(den)))
    }
}

impl<const P: u64> fmt::Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Zp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Zp((self.0 + o.0) % P)
    }
}
impl<const P: u64> Sub for Zp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Zp((self.0 + P - o.0) % P)
    }
}
impl<const P: u64> Mul for Zp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Zp(self.0 * o.0 % P)
    }
}
impl<const P: u64> Div for Zp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}
impl<const P: u64> Rem for Zp<P> {
    type Output = Self;
    fn rem(self, _o: Self) -> Self {
        Zp(0)
    }
}
impl<const P: u64> Neg for Zp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Zp((P - self.0) % P)
    }
}

macro_rules! by_ref {
    ($($tr:ident $m:ident),*) => {$(
        impl<'a, const P: u64> $tr<&'a Zp<P>> for Zp<P> {
            type Output = Zp<P>;
            fn $m(self, o: &'a Zp<P>) -> Zp<P> { $tr::$m(self, *o) }
        }
    )*};
}
by_ref!(Add add, Sub sub, Mul mul, Div div, Rem rem);

impl<const P: u64> Zero for Zp<P> {
    fn zero() -> Self {
        Zp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}
impl<const P: u64> One for Zp<P> {
    fn one() -> Self {
        Zp(1 % P)
    }
}
impl<const P: u64> Num for Zp<P> {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> std::result::Result<Self, Self::FromStrRadixErr> {
        i64::from_str_radix(s, radix).map(Zp::new)
    }
}

impl<const P: u64> Field for Zp<P> {
    fn from_i64(n: i64) -> Self {
        Zp::new(n)
    }
    fn inv(&self) -> Self {
        debug_assert!(self.0 != 0, "inverse of zero in Z/{P}");
        self.pow(P - 2)
    }
    fn is_negative(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Zp<7>;

    #[test]
    fn prime_field_inverse() {
        for v in 1..7 {
            let x = F7::new(v);
            assert_eq!(x * x.inv(), F7::one());
        }
    }

    #[test]
    fn rational_reduction_mod_p() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(F7::from_rational(&half), Some(F7::new(4)));
        let seventh = BigRational::new(1.into(), 7.into());
        assert_eq!(F7::from_rational(&seventh), None);
        let neg = BigRational::new((-3).into(), 1.into());
        assert_eq!(F7::from_rational(&neg), Some(F7::new(4)));
    }
}
