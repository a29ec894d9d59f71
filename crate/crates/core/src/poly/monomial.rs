use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub(crate) type Exps = SmallVec<[u32; 8]>;

/// A power product `z^ν`, identified positionally.
///
/// The total degree is cached because every term order we use is graded or
/// partially graded, so it is consulted on nearly every comparison.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exps,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn new(exps: &[u32]) -> Self {
        Monomial { degree: exps.iter().sum(), exps: SmallVec::from_slice(exps) }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial { degree: exps.iter().sum(), exps }
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` is set when variable `i` (mod 64) occurs; a cheap divisibility
    /// pre-filter.
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
    }

    /// Relabel variables: position `i` moves to `map[i]` in a ring with
    /// `nvars` variables.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Monomial {
        let mut exps: Exps = SmallVec::from_elem(0, nvars);
        for (i, e) in self.exps.iter().enumerate() {
            exps[map[i]] += e;
        }
        Monomial { exps, degree: self.degree }
    }

    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| revlex_tail(&self.exps, &other.exps))
    }

    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}

/// Reverse-lex tie break: the monomial with the *smaller* exponent in the
/// last differing variable is the larger one.
pub(crate) fn revlex_tail(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grevlex(other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{:?}", self.exps.as_slice())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, e) in self.exps.iter().enumerate().filter(|(_, e)| **e > 0) {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "z{}", i + 1)?;
            } else {
                write!(f, "z{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        // x > y > z in three variables
        let x = Monomial::new(&[1, 0, 0]);
        let y = Monomial::new(&[0, 1, 0]);
        let z = Monomial::new(&[0, 0, 1]);
        assert!(x > y && y > z);
        // degree dominates
        assert!(Monomial::new(&[0, 0, 2]) > x);
        // x*z < y^2 in grevlex (last variable with smaller exponent wins)
        assert!(Monomial::new(&[1, 0, 1]) < Monomial::new(&[0, 2, 0]));
        // ... but x*z > y^2 in lex
        assert_eq!(Monomial::new(&[1, 0, 1]).cmp_lex(&Monomial::new(&[0, 2, 0])), Ordering::Greater);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::new(&[1, 2, 0]);
        let b = Monomial::new(&[2, 1, 1]);
        assert!(!a.divides(&b));
        let l = a.lcm(&b);
        assert_eq!(l.exps(), &[2, 2, 1]);
        assert_eq!(a.quotient_of(&l).exps(), &[1, 0, 1]);
        assert!(Monomial::new(&[1, 0, 0]).gcd_is_one(&Monomial::new(&[0, 3, 1])));
    }
}
