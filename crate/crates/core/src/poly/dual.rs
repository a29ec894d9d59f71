use std::ops::{Add, Mul, Sub};

use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::field::Field;

/// `body + ε·epsilon` with `ε² = 0`: a polynomial over `Q[ε]/(ε²)`.
#[derive(Clone, PartialEq, Eq)]
pub struct FirstOrderPolynomial<F> {
    pub body: Polynomial<F>,
    pub epsilon: Polynomial<F>,
}

impl<F: Field> std::fmt::Debug for FirstOrderPolynomial<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) + ε({})", self.body, self.epsilon)
    }
}

impl<F: Field> FirstOrderPolynomial<F> {
    pub fn new(body: Polynomial<F>, epsilon: Polynomial<F>) -> Result<Self> {
        if body.nvars() != epsilon.nvars() {
            return Err(Error::Context("first-order parts live in different rings".into()));
        }
        Ok(FirstOrderPolynomial { body, epsilon })
    }

    pub fn constant_part(body: Polynomial<F>) -> Self {
        let n = body.nvars();
        FirstOrderPolynomial { body, epsilon: Polynomial::zero(n) }
    }

    pub fn nvars(&self) -> usize {
        self.body.nvars()
    }

    pub fn scale(&self, p: &Polynomial<F>) -> Self {
        FirstOrderPolynomial { body: &self.body * p, epsilon: &self.epsilon * p }
    }

    pub fn partial(&self, i: usize) -> Self {
        FirstOrderPolynomial { body: self.body.partial(i), epsilon: self.epsilon.partial(i) }
    }
}

impl<F: Field> Add for &FirstOrderPolynomial<F> {
    type Output = FirstOrderPolynomial<F>;
    fn add(self, o: Self) -> FirstOrderPolynomial<F> {
        FirstOrderPolynomial { body: &self.body + &o.body, epsilon: &self.epsilon + &o.epsilon }
    }
}

impl<F: Field> Sub for &FirstOrderPolynomial<F> {
    type Output = FirstOrderPolynomial<F>;
    fn sub(self, o: Self) -> FirstOrderPolynomial<F> {
        FirstOrderPolynomial { body: &self.body - &o.body, epsilon: &self.epsilon - &o.epsilon }
    }
}

impl<F: Field> Mul for &FirstOrderPolynomial<F> {
    type Output = FirstOrderPolynomial<F>;
    fn mul(self, o: Self) -> FirstOrderPolynomial<F> {
        FirstOrderPolynomial {
            body: &self.body * &o.body,
            epsilon: &(&self.body * &o.epsilon) + &(&self.epsilon * &o.body),
        }
    }
}

impl<F: Field> Polynomial<F> {
    /// Evaluate at first-order images, using only dual-number arithmetic.
    ///
    /// This deliberately avoids the chain rule so it can serve as an
    /// independent path against derivative-based formulas.
    pub fn substitute_first_order(&self, images: &[FirstOrderPolynomial<F>]) -> Result<FirstOrderPolynomial<F>> {
        if images.len() != self.nvars() {
            return Err(Error::Context(format!(
                "substitute_first_order: {} images for {} variables",
                images.len(),
                self.nvars()
            )));
        }
        let target = images.first().map(|p| p.nvars()).unwrap_or(0);
        if images.iter().any(|p| p.nvars() != target) {
            return Err(Error::Context("substitute_first_order: images live in different rings".into()));
        }
        let one = FirstOrderPolynomial::constant_part(Polynomial::one(target));
        let mut acc = FirstOrderPolynomial::constant_part(Polynomial::zero(target));
        for (m, c) in self.terms() {
            let mut t = FirstOrderPolynomial::constant_part(Polynomial::constant(target, c.clone()));
            for (i, &e) in m.exps().iter().enumerate() {
                let mut pw = one.clone();
                for _ in 0..e {
                    pw = &pw * &images[i];
                }
                t = &t * &pw;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }
}
