use std::sync::OnceLock;

use crate::field::Field;
use crate::poly::Polynomial;

/// An ideal given by generators, with its reduced grevlex basis cached once
/// computed.
#[derive(Clone)]
pub struct Ideal<F> {
    nvars: usize,
    generators: Vec<Polynomial<F>>,
    basis: OnceLock<Vec<Polynomial<F>>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(nvars: usize, generators: Vec<Polynomial<F>>) -> Self {
        assert!(generators.iter().all(|g| g.nvars() == nvars), "generator ring mismatch");
        Ideal { nvars, generators: generators.into_iter().filter(|g| !g.is_zero()).collect(), basis: OnceLock::new() }
    }

    /// An ideal whose generators are already its reduced grevlex basis.
    pub(crate) fn with_basis(nvars: usize, basis: Vec<Polynomial<F>>) -> Self {
        let cache = OnceLock::new();
        let _ = cache.set(basis.clone());
        Ideal { nvars, generators: basis, basis: cache }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::with_basis(nvars, Vec::new())
    }

    pub fn unit(nvars: usize) -> Self {
        Self::with_basis(nvars, vec![Polynomial::one(nvars)])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn cached_basis(&self) -> Option<&[Polynomial<F>]> {
        self.basis.get().map(|v| v.as_slice())
    }

    pub(crate) fn set_basis(&self, b: Vec<Polynomial<F>>) -> &[Polynomial<F>] {
        // if another thread won the race, both computed the same reduced basis
        let _ = self.basis.set(b);
        self.basis.get().unwrap()
    }

    /// Sum of ideals.
    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ideal::new(self.nvars, g)
    }

    /// Generator-wise product with a polynomial list (used for `F*(I)`).
    pub fn map_generators(&self, nvars: usize, f: impl Fn(&Polynomial<F>) -> Polynomial<F>) -> Ideal<F> {
        Ideal::new(nvars, self.generators.iter().map(f).collect())
    }
}

impl<F: Field> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "⟨")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩")
    }
}
