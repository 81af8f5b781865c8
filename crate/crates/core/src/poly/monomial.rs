use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Exponent vector of a monomial in a fixed number of variables.
///
/// Monomials are ordered first by total degree (ascending), then within a
/// degree by *descending* lexicographic order of exponent vectors, so that
/// `x0^3 < x0^2*x1 < ... < x4^3`. The "first" monomial of a graded piece is
/// therefore the pure power of `x0`, and every coordinate vector, matrix
/// column and printed polynomial in this crate follows that order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Product of the factorials of the exponents.
    pub fn factorial_weight(&self) -> u64 {
        self.0
            .iter()
            .map(|&e| (1..=e as u64).product::<u64>())
            .product()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `C(n, k)` as u64; panics on overflow, which never happens at the sizes
/// used here.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `dim S_k` for a polynomial ring in `nvars` variables: `C(nvars-1+k, k)`.
pub fn graded_dim(nvars: usize, k: u32) -> usize {
    if nvars == 0 {
        return usize::from(k == 0);
    }
    binomial(nvars as u64 - 1 + k as u64, k as u64) as usize
}

/// The monomials of one graded piece, in the fixed order, with a reverse
/// index.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let monomials = monomial_basis(nvars, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialBasis {
            degree,
            monomials,
            index,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// All monomials of degree `k` in `nvars` variables, in the fixed order.
pub fn monomial_basis(nvars: usize, k: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: usize, k: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(k);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e);
            rec(prefix, left - 1, k - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(graded_dim(nvars, k));
    if nvars == 0 {
        if k == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(&mut Vec::with_capacity(nvars), nvars, k, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_dims() {
        assert_eq!(graded_dim(5, 3), 35);
        assert_eq!(graded_dim(5, 5), 126);
        assert_eq!(graded_dim(5, 0), 1);
        assert_eq!(graded_dim(5, 12), 1820);
    }

    #[test]
    fn basis_is_sorted_and_complete() {
        let b = monomial_basis(5, 3);
        assert_eq!(b.len(), 35);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(b[0].exponents(), &[3, 0, 0, 0, 0]);
        assert_eq!(b[34].exponents(), &[0, 0, 0, 0, 3]);
        let b0 = monomial_basis(5, 0);
        assert_eq!(b0, vec![Monomial::one(5)]);
    }

    #[test]
    fn factorial_weight() {
        assert_eq!(Monomial::new(vec![3, 0]).factorial_weight(), 6);
        assert_eq!(Monomial::new(vec![2, 1, 2]).factorial_weight(), 4);
    }

    #[test]
    fn division() {
        let a = Monomial::new(vec![2, 1]);
        assert_eq!(a.div(&Monomial::new(vec![1, 1])), Some(Monomial::new(vec![1, 0])));
        assert_eq!(a.div(&Monomial::new(vec![0, 2])), None);
    }
}
