use std::collections::BTreeMap;

use super::Monomial;

/// Which copy of the polynomial ring a polynomial lives in: the primal ring
/// in `x` variables or the dual ring in `y` variables. The polar pairing is
/// the only operation that combines the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Primal,
    Dual,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::Primal => 'x',
            Family::Dual => 'y',
        }
    }

    pub fn other(self) -> Family {
        match self {
            Family::Primal => Family::Dual,
            Family::Dual => Family::Primal,
        }
    }
}

/// Sparse polynomial with nonzero coefficients only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<E> {
    pub(crate) nvars: usize,
    pub(crate) family: Family,
    pub(crate) terms: BTreeMap<Monomial, E>,
}

impl<E: Clone> Polynomial<E> {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in the fixed monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms, if the polynomial is nonzero and
    /// homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// The same coefficients read in the other variable family.
    pub fn with_family(&self, family: Family) -> Self {
        Polynomial {
            nvars: self.nvars,
            family,
            terms: self.terms.clone(),
        }
    }

    /// First term in the fixed order.
    pub fn leading_term(&self) -> Option<(&Monomial, &E)> {
        self.terms.iter().next()
    }
}
