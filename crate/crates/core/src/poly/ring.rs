use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rand::Rng;

use super::parse::parse_terms;
use super::{Family, Monomial, MonomialBasis, Polynomial};
use crate::error::{Error, Result};
use crate::field::Field;

/// `K[x_0, ..., x_{nvars-1}]` together with its dual copy in `y` variables.
///
/// The ring owns the field object and caches the monomial bases of graded
/// pieces. Cloning is cheap and clones share the cache.
#[derive(Debug, Clone)]
pub struct PolyRing<K: Field> {
    field: K,
    nvars: usize,
    bases: Arc<Mutex<HashMap<u32, Arc<MonomialBasis>>>>,
}

impl<K: Field> PolyRing<K> {
    pub fn new(field: K, nvars: usize) -> Self {
        assert!(nvars >= 1, "a polynomial ring needs at least one variable");
        PolyRing {
            field,
            nvars,
            bases: Arc::default(),
        }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Monomial basis of the degree-`k` piece.
    pub fn basis(&self, k: u32) -> Arc<MonomialBasis> {
        let mut cache = self.bases.lock().expect("basis cache poisoned");
        cache
            .entry(k)
            .or_insert_with(|| Arc::new(MonomialBasis::new(self.nvars, k)))
            .clone()
    }

    pub fn graded_dim(&self, k: u32) -> usize {
        super::graded_dim(self.nvars, k)
    }

    pub fn zero(&self, family: Family) -> Polynomial<K::Elem> {
        Polynomial {
            nvars: self.nvars,
            family,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: K::Elem, family: Family) -> Polynomial<K::Elem> {
        self.term(Monomial::one(self.nvars), c, family)
    }

    pub fn one(&self, family: Family) -> Polynomial<K::Elem> {
        self.constant(self.field.one(), family)
    }

    pub fn var(&self, i: usize, family: Family) -> Polynomial<K::Elem> {
        self.term(Monomial::var(self.nvars, i), self.field.one(), family)
    }

    pub fn term(&self, m: Monomial, c: K::Elem, family: Family) -> Polynomial<K::Elem> {
        assert_eq!(m.nvars(), self.nvars);
        self.from_terms([(m, c)], family)
    }

    /// Sums the given terms, dropping zero coefficients.
    pub fn from_terms<I>(&self, terms: I, family: Family) -> Polynomial<K::Elem>
    where
        I: IntoIterator<Item = (Monomial, K::Elem)>,
    {
        let mut map: BTreeMap<Monomial, K::Elem> = BTreeMap::new();
        for (m, c) in terms {
            self.accumulate(&mut map, m, c);
        }
        Polynomial {
            nvars: self.nvars,
            family,
            terms: map,
        }
    }

    fn accumulate(&self, map: &mut BTreeMap<Monomial, K::Elem>, m: Monomial, c: K::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match map.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, a: &Polynomial<K::Elem>, b: &Polynomial<K::Elem>) {
        assert_eq!(a.nvars, self.nvars);
        assert_eq!(b.nvars, self.nvars);
        assert_eq!(a.family, b.family, "primal and dual polynomials do not mix");
    }

    pub fn add(&self, a: &Polynomial<K::Elem>, b: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        self.check_same(a, b);
        let mut out = a.clone();
        for (m, c) in &b.terms {
            self.accumulate(&mut out.terms, m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, a: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        Polynomial {
            nvars: a.nvars,
            family: a.family,
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, a: &Polynomial<K::Elem>, b: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, c: &K::Elem, a: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        if self.field.is_zero(c) {
            return self.zero(a.family);
        }
        Polynomial {
            nvars: a.nvars,
            family: a.family,
            terms: a
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), self.field.mul(c, x)))
                .collect(),
        }
    }

    pub fn mul(&self, a: &Polynomial<K::Elem>, b: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        self.check_same(a, b);
        let mut map = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.accumulate(&mut map, ma.mul(mb), self.field.mul(ca, cb));
            }
        }
        Polynomial {
            nvars: self.nvars,
            family: a.family,
            terms: map,
        }
    }

    /// `m * a` for a monomial `m`.
    pub fn mul_monomial(&self, m: &Monomial, a: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        Polynomial {
            nvars: a.nvars,
            family: a.family,
            terms: a.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, a: &Polynomial<K::Elem>, e: u32) -> Polynomial<K::Elem> {
        let mut acc = self.one(a.family);
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial(&self, a: &Polynomial<K::Elem>, i: usize) -> Result<Polynomial<K::Elem>> {
        if i >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut map = BTreeMap::new();
        for (m, c) in &a.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            let coeff = self.field.mul(c, &self.field.from_u64(e as u64));
            self.accumulate(&mut map, Monomial::new(exps), coeff);
        }
        Ok(Polynomial {
            nvars: self.nvars,
            family: a.family,
            terms: map,
        })
    }

    /// All first partial derivatives, in variable order.
    pub fn partials(&self, a: &Polynomial<K::Elem>) -> Vec<Polynomial<K::Elem>> {
        (0..self.nvars)
            .map(|i| self.partial(a, i).expect("index in range"))
            .collect()
    }

    pub fn evaluate(&self, a: &Polynomial<K::Elem>, point: &[K::Elem]) -> Result<K::Elem> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &a.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = f.mul(&t, &f.pow(x, e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Coordinates of a polynomial in the monomial basis of `S_k`. The zero
    /// polynomial is accepted in every degree.
    pub fn coordinates(&self, a: &Polynomial<K::Elem>, k: u32) -> Result<Vec<K::Elem>> {
        let basis = self.basis(k);
        let mut v = vec![self.field.zero(); basis.len()];
        for (m, c) in &a.terms {
            let i = basis.index_of(m).ok_or(Error::Inhomogeneous {
                expected: k,
                found: m.degree(),
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coordinates(&self, v: &[K::Elem], k: u32, family: Family) -> Polynomial<K::Elem> {
        let basis = self.basis(k);
        assert_eq!(v.len(), basis.len(), "coordinate vector length");
        Polynomial {
            nvars: self.nvars,
            family,
            terms: basis
                .monomials()
                .iter()
                .zip(v)
                .filter(|(_, c)| !self.field.is_zero(c))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Checks that `p > k` in prime-field mode, so factorials up to `k!`
    /// are invertible.
    pub fn require_characteristic_above(&self, k: u64) -> Result<()> {
        let ch = self.field.characteristic();
        if ch != 0 && ch <= k {
            return Err(Error::CharacteristicTooSmall {
                characteristic: ch,
                required: k,
            });
        }
        Ok(())
    }

    /// `<x^a, y^b> = a!` if `a = b`, else 0, extended bilinearly.
    pub fn polar_weight(&self, m: &Monomial) -> K::Elem {
        m.exponents().iter().fold(self.field.one(), |acc, &e| {
            (1..=e as u64).fold(acc, |acc, i| self.field.mul(&acc, &self.field.from_u64(i)))
        })
    }

    /// Polar pairing `G(d/dx_0, ..., d/dx_n) F` of a primal `F` and a dual
    /// `G` of the same degree.
    pub fn polar_pair(&self, f: &Polynomial<K::Elem>, g: &Polynomial<K::Elem>) -> Result<K::Elem> {
        if f.family != Family::Primal || g.family != Family::Dual {
            return Err(Error::Precondition(
                "polar pairing takes a primal (x) polynomial and a dual (y) polynomial".into(),
            ));
        }
        let df = f.homogeneous_degree();
        let dg = g.homogeneous_degree();
        let k = match (df, dg) {
            (Some(a), Some(b)) if a == b => a,
            (None, _) if !f.is_homogeneous() => {
                return Err(Error::DegreeMismatch("first argument is not homogeneous".into()))
            }
            (_, None) if !g.is_homogeneous() => {
                return Err(Error::DegreeMismatch("second argument is not homogeneous".into()))
            }
            (None, _) | (_, None) => return Ok(self.field.zero()),
            (Some(a), Some(b)) => {
                return Err(Error::DegreeMismatch(format!(
                    "pairing needs equal degrees, got {a} and {b}"
                )))
            }
        };
        self.require_characteristic_above(k as u64)?;
        let mut acc = self.field.zero();
        for (m, a) in &f.terms {
            if let Some(b) = g.terms.get(m) {
                let t = self.field.mul(&self.field.mul(a, b), &self.polar_weight(m));
                acc = self.field.add(&acc, &t);
            }
        }
        Ok(acc)
    }

    /// Divides by the first coefficient in the fixed order so that it
    /// becomes 1. The zero polynomial is returned unchanged.
    pub fn normalize(&self, a: &Polynomial<K::Elem>) -> Polynomial<K::Elem> {
        match a.leading_term() {
            None => a.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("stored coefficients are nonzero");
                self.scale(&inv, a)
            }
        }
    }

    /// Homogeneous polynomial of degree `k` with independently drawn
    /// coefficients.
    pub fn random_homogeneous<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        k: u32,
        bound: u64,
        family: Family,
    ) -> Polynomial<K::Elem> {
        let basis = self.basis(k);
        let coeffs: Vec<K::Elem> = (0..basis.len())
            .map(|_| self.field.random_element(rng, bound))
            .collect();
        self.from_coordinates(&coeffs, k, family)
    }

    /// Parses a polynomial in the text grammar. All variables must belong to
    /// `family`; with `expected_degree` every term must have that degree.
    pub fn parse(
        &self,
        text: &str,
        family: Family,
        expected_degree: Option<u32>,
    ) -> Result<Polynomial<K::Elem>> {
        let raw = parse_terms(text, self.nvars)?;
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            if let Some((fam, _)) = t.family {
                if fam != family {
                    return Err(Error::WrongFamily {
                        expected: family.letter(),
                        found: fam.letter(),
                    });
                }
            }
            if let Some(d) = expected_degree {
                let found = t.monomial.degree();
                if found != d && !num_traits::Zero::is_zero(&t.coeff) {
                    return Err(Error::Inhomogeneous { expected: d, found });
                }
            }
            terms.push((t.monomial, self.field.from_rational(&t.coeff)?));
        }
        Ok(self.from_terms(terms, family))
    }

    /// Canonical text form: terms in the fixed order joined by `" + "`,
    /// explicit `*`, coefficient 1 omitted, negative coefficients written as
    /// `-c*...`.
    pub fn format(&self, a: &Polynomial<K::Elem>) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let letter = a.family.letter();
        let parts: Vec<String> = a
            .terms
            .iter()
            .map(|(m, c)| {
                let powers: Vec<String> = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("{letter}{i}")
                        } else {
                            format!("{letter}{i}^{e}")
                        }
                    })
                    .collect();
                let coeff = self.field.format(c);
                if powers.is_empty() {
                    coeff
                } else if self.field.is_one(c) {
                    powers.join("*")
                } else {
                    format!("{}*{}", coeff, powers.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn ring() -> PolyRing<Rationals> {
        PolyRing::new(Rationals, 5)
    }

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    #[test]
    fn parse_fermat_type_sum() {
        let r = ring();
        let p = r.parse("x0^3 + x1^3", Family::Primal, Some(3)).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.homogeneous_degree(), Some(3));
    }

    #[test]
    fn parse_signed_terms() {
        let r = ring();
        let p = r.parse("x0*x1*x2 - 2*x3^2*x4", Family::Primal, None).unwrap();
        let coeffs: Vec<_> = p.terms().map(|(_, c)| c.clone()).collect();
        assert_eq!(coeffs, vec![q(1), q(-2)]);
    }

    #[test]
    fn parse_rejects_inhomogeneous() {
        let r = ring();
        let e = r.parse("x0^2 + x1^3", Family::Primal, Some(3)).unwrap_err();
        assert_eq!(e, Error::Inhomogeneous { expected: 3, found: 2 });
    }

    #[test]
    fn parse_rejects_wrong_family_and_reports_position() {
        let r = ring();
        assert!(matches!(
            r.parse("y0^3", Family::Primal, None),
            Err(Error::WrongFamily { .. })
        ));
        match r.parse("x0^3 + * x1", Family::Primal, None) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 7),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(matches!(
            r.parse("x7", Family::Primal, None),
            Err(Error::VariableOutOfRange { index: 7, nvars: 5 })
        ));
        assert!(r.parse("x0^0", Family::Primal, None).is_err());
        assert!(r.parse("1/0*x0", Family::Primal, None).is_err());
    }

    #[test]
    fn partial_derivatives() {
        let r = ring();
        let f = r.parse("x0^3", Family::Primal, None).unwrap();
        assert_eq!(r.partial(&f, 0).unwrap(), r.parse("3*x0^2", Family::Primal, None).unwrap());
        assert!(r.partial(&f, 1).unwrap().is_zero());
        assert!(r.partial(&f, 5).is_err());
    }

    #[test]
    fn polar_pairing_on_monomials() {
        let r = ring();
        let x = r.parse("x0^3", Family::Primal, None).unwrap();
        let y = r.parse("y0^3", Family::Dual, None).unwrap();
        assert_eq!(r.polar_pair(&x, &y).unwrap(), q(6));
        let x = r.parse("x0^2*x1", Family::Primal, None).unwrap();
        let y = r.parse("y0*y1^2", Family::Dual, None).unwrap();
        assert_eq!(r.polar_pair(&x, &y).unwrap(), q(0));
        let y2 = r.parse("y0^2", Family::Dual, None).unwrap();
        assert!(matches!(r.polar_pair(&x, &y2), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn pairing_needs_large_characteristic() {
        let r = PolyRing::new(PrimeField::new(3).unwrap(), 5);
        let x = r.parse("x0^3", Family::Primal, None).unwrap();
        let y = r.parse("y0^3", Family::Dual, None).unwrap();
        assert!(matches!(
            r.polar_pair(&x, &y),
            Err(Error::CharacteristicTooSmall { .. })
        ));
    }

    #[test]
    fn evaluation_and_products() {
        let r = ring();
        let f = r.parse("x0^2", Family::Primal, None).unwrap();
        let pt = vec![q(3), q(1), q(1), q(1), q(1)];
        assert_eq!(r.evaluate(&f, &pt).unwrap(), q(9));
        assert!(r.evaluate(&f, &pt[..2]).is_err());
        let a = r.parse("x0 + x1", Family::Primal, None).unwrap();
        let b = r.parse("x0 - x1", Family::Primal, None).unwrap();
        assert_eq!(r.mul(&a, &b), r.parse("x0^2 - x1^2", Family::Primal, None).unwrap());
    }

    #[test]
    fn canonical_printing() {
        let r = ring();
        let f = r.parse("-x1^2 + 1/2*x0*x1 - 3", Family::Primal, None).unwrap();
        assert_eq!(r.format(&f), "-3 + 1/2*x0*x1 + -1*x1^2");
        assert_eq!(r.parse(&r.format(&f), Family::Primal, None).unwrap(), f);
        assert_eq!(r.format(&r.zero(Family::Dual)), "0");
    }

    #[test]
    fn normalization_makes_leading_coefficient_one() {
        let r = ring();
        let f = r.parse("2*x0^3 + 4*x1^3", Family::Primal, None).unwrap();
        assert_eq!(r.format(&r.normalize(&f)), "x0^3 + 2*x1^3");
    }
}
