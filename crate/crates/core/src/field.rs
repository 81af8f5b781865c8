//! Exact coefficient fields.
//!
//! Two fields are supported: the rationals (arbitrary precision, always in
//! lowest terms) and prime fields `F_p` with a word-size modulus. Field
//! values are plain data; all arithmetic goes through a field object so the
//! prime-field modulus can be chosen at run time.

use std::fmt::{self, Debug};
use std::hash::Hash;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Matrix};

/// Largest modulus accepted for a prime field. Products of two residues must
/// fit in a `u64` together with an addend.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Default modulus for prime-field mode.
pub const DEFAULT_PRIME: u64 = 10007;

/// Which field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldConfig {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConfig::Rational => write!(f, "rational"),
            FieldConfig::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "rational" {
            return Ok(FieldConfig::Rational);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidField(format!("bad modulus '{rest}'")))?;
            PrimeField::new(p)?;
            return Ok(FieldConfig::Prime(p));
        }
        Err(Error::InvalidField(format!(
            "expected 'rational' or 'fp:<p>', got '{s}'"
        )))
    }
}

/// An exact field. Implementations are cheap to clone.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;

    fn config(&self) -> FieldConfig;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Result<Self::Elem>;
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem>;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;

    /// Canonical text form: `p`, `-p` or `p/q` for rationals, the residue in
    /// `[0, p)` for prime fields.
    fn format(&self, a: &Self::Elem) -> String;

    /// Fixed JSON form: always `p/q` for rationals; the residue for `F_p`.
    fn format_fixed(&self, a: &Self::Elem) -> String;

    /// Lossy conversion used only for reporting drift measurements.
    fn to_f64(&self, a: &Self::Elem) -> f64;

    /// Uniform draw: integers in `[-bound, bound]` over the rationals,
    /// uniform residues over `F_p` (the bound is ignored there).
    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> Self::Elem;

    /// Scale `v` by a nonzero constant that clears all denominators, then
    /// reduce modulo the word prime `p`. `None` when there is no such image
    /// (a denominator divisible by `p`, or a prime field of another
    /// characteristic).
    fn reduce_scaled(&self, v: &[Self::Elem], p: u64) -> Option<Vec<u64>>;

    /// Primes whose full-rank verdicts certify full rank over this field.
    fn certification_primes(&self) -> Vec<u64>;

    /// `v` times a nonzero constant making every entry an integer.
    fn scale_to_integers(&self, v: &[Self::Elem]) -> Vec<Self::Elem> {
        v.to_vec()
    }

    /// Canonical reduced row-echelon form.
    fn rref(&self, m: &Matrix<Self::Elem>) -> Echelon<Self::Elem> {
        linalg::rref_direct(self, m)
    }

    /// Exact rank.
    fn rank(&self, m: &Matrix<Self::Elem>) -> usize {
        self.rref(m).rank()
    }

    /// Exact rank of a matrix given by sparse rows `(column, value)`.
    fn sparse_rank(&self, rows: &[Vec<(usize, Self::Elem)>], cols: usize) -> usize {
        let dense = rows
            .iter()
            .map(|r| {
                let mut v = vec![self.zero(); cols];
                for (c, x) in r {
                    v[*c] = x.clone();
                }
                v
            })
            .collect();
        self.rank(&Matrix::from_rows(dense, cols))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_u64(&self, v: u64) -> Self::Elem {
        self.from_bigint(&BigInt::from(v))
            .expect("integers always embed in a field")
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn config(&self) -> FieldConfig {
        FieldConfig::Rational
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(&self, v: &BigInt) -> Result<BigRational> {
        Ok(BigRational::from_integer(v.clone()))
    }

    fn from_rational(&self, r: &BigRational) -> Result<BigRational> {
        Ok(r.clone())
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn format_fixed(&self, a: &BigRational) -> String {
        format!("{}/{}", a.numer(), a.denom())
    }

    fn to_f64(&self, a: &BigRational) -> f64 {
        rational_to_f64(a)
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> BigRational {
        let b = bound as i64;
        self.from_i64(rng.gen_range(-b..=b))
    }

    fn reduce_scaled(&self, v: &[BigRational], p: u64) -> Option<Vec<u64>> {
        let scaled = clear_denominators(v);
        Some(scaled.iter().map(|x| bigint_mod(x, p)).collect())
    }

    fn scale_to_integers(&self, v: &[BigRational]) -> Vec<BigRational> {
        clear_denominators(v)
            .into_iter()
            .map(BigRational::from_integer)
            .collect()
    }

    fn certification_primes(&self) -> Vec<u64> {
        word_primes()[..2].to_vec()
    }

    fn rref(&self, m: &Matrix<BigRational>) -> Echelon<BigRational> {
        if m.rows() * m.cols() <= linalg::DIRECT_RATIONAL_LIMIT {
            linalg::rref_direct(self, m)
        } else {
            linalg::rref_multimodular(m)
        }
    }

    fn rank(&self, m: &Matrix<BigRational>) -> usize {
        if m.rows() * m.cols() <= linalg::DIRECT_RATIONAL_LIMIT {
            return linalg::rref_direct(self, m).rank();
        }
        let rows: Vec<Vec<(usize, BigRational)>> = m
            .row_iter()
            .map(|r| r.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        self.sparse_rank(&rows, m.cols())
    }

    fn sparse_rank(&self, rows: &[Vec<(usize, BigRational)>], cols: usize) -> usize {
        let int_rows: Vec<Vec<(usize, BigInt)>> = rows
            .iter()
            .map(|r| {
                let vals: Vec<BigRational> = r.iter().map(|(_, x)| x.clone()).collect();
                r.iter().map(|(c, _)| *c).zip(clear_denominators(&vals)).collect()
            })
            .collect();
        linalg::rank_sparse(&int_rows, cols)
    }
}

/// The prime field `F_p` for a prime `p < 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::InvalidField(format!(
                "modulus {p} exceeds the supported bound 2^31"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("modulus {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn config(&self) -> FieldConfig {
        FieldConfig::Prime(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(inv_mod(*a, self.p))
        }
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn from_bigint(&self, v: &BigInt) -> Result<u64> {
        Ok(bigint_mod(v, self.p))
    }

    fn from_rational(&self, r: &BigRational) -> Result<u64> {
        let den = bigint_mod(r.denom(), self.p);
        if den == 0 {
            return Err(Error::NotRepresentable(format!(
                "denominator of {r} vanishes modulo {}",
                self.p
            )));
        }
        Ok(bigint_mod(r.numer(), self.p) * inv_mod(den, self.p) % self.p)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn format(&self, a: &u64) -> String {
        a.to_string()
    }

    fn format_fixed(&self, a: &u64) -> String {
        a.to_string()
    }

    fn to_f64(&self, a: &u64) -> f64 {
        *a as f64
    }

    fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, _bound: u64) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn reduce_scaled(&self, v: &[u64], p: u64) -> Option<Vec<u64>> {
        (p == self.p).then(|| v.to_vec())
    }

    fn certification_primes(&self) -> Vec<u64> {
        vec![self.p]
    }

    fn rref(&self, m: &Matrix<u64>) -> Echelon<u64> {
        let rows: Vec<Vec<u64>> = m.row_iter().map(|r| r.to_vec()).collect();
        let (reduced, pivots) = linalg::modp::rref(rows, m.cols(), self.p);
        Echelon::from_parts(Matrix::from_rows(reduced, m.cols()), pivots)
    }

    fn rank(&self, m: &Matrix<u64>) -> usize {
        let rows: Vec<Vec<u64>> = m.row_iter().map(|r| r.to_vec()).collect();
        linalg::modp::rank(rows, m.cols(), self.p)
    }

    fn sparse_rank(&self, rows: &[Vec<(usize, u64)>], cols: usize) -> usize {
        let mut ech = linalg::modp::IncrementalEchelon::new(cols, self.p);
        for r in rows {
            if ech.is_full() {
                break;
            }
            let mut v = vec![0u64; cols];
            for (c, x) in r {
                v[*c] = *x;
            }
            ech.insert(v);
        }
        ech.rank()
    }
}

/// Multiply a rational vector by the lcm of its denominators.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter()
        .map(|x| x.numer() * (&l / x.denom()))
        .collect()
}

pub fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Modular inverse for `0 < a < p`, `p` prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} is not invertible modulo {p}");
    t.rem_euclid(p as i64) as u64
}

/// Deterministic primality test for `n < 2^32` by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes below `2^31`, in decreasing order. Used for modular images.
pub fn word_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(4096);
        let mut n = MAX_MODULUS - 1;
        while out.len() < 4096 {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

pub(crate) fn rational_to_f64(a: &BigRational) -> f64 {
    let n = a.numer();
    let d = a.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(60) as usize;
    let n = (n.abs() >> shift).to_f64().unwrap_or(f64::MAX);
    let d = (d >> shift).to_f64().unwrap_or(f64::MAX);
    let v = if d == 0.0 { f64::INFINITY } else { n / d };
    if a.is_negative() {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn field_config_parsing() {
        assert_eq!("rational".parse::<FieldConfig>().unwrap(), FieldConfig::Rational);
        assert_eq!("fp:7".parse::<FieldConfig>().unwrap(), FieldConfig::Prime(7));
        assert!("fp:9".parse::<FieldConfig>().is_err());
        assert!("real".parse::<FieldConfig>().is_err());
        assert_eq!(FieldConfig::Prime(10007).to_string(), "fp:10007");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 6);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half).unwrap(), 4);
        let seventh = BigRational::new(1.into(), 7.into());
        assert!(f.from_rational(&seventh).is_err());
    }

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let q = Rationals;
        let a = BigRational::new(2.into(), 4.into());
        assert_eq!(q.format(&a), "1/2");
        assert_eq!(q.format_fixed(&q.from_i64(6)), "6/1");
        let b = BigRational::new(BigInt::from(3), BigInt::from(-6));
        assert_eq!(q.format(&b), "-1/2");
        assert!(b.denom().is_positive());
    }

    #[test]
    fn rejects_composite_and_oversized_moduli() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(10007).is_ok());
        assert!(PrimeField::new(10005).is_err());
        assert!(PrimeField::new(MAX_MODULUS + 11).is_err());
    }

    #[test]
    fn word_primes_are_prime_and_descending() {
        let ps = word_primes();
        assert_eq!(ps[0], 2147483647);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        assert!(ps[..20].iter().all(|&p| is_prime(p)));
    }

    #[test]
    fn random_elements_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let v = Rationals.random_element(&mut rng, 1);
            assert!(v.is_integer() && v.numer().abs() <= BigInt::one());
        }
        let f = PrimeField::new(11).unwrap();
        assert!((0..200).all(|_| f.random_element(&mut rng, 5) < 11));
    }

    #[test]
    fn scaled_reduction_clears_denominators() {
        let v = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 3.into()),
        ];
        assert_eq!(clear_denominators(&v), vec![BigInt::from(3), BigInt::from(2)]);
        assert_eq!(Rationals.reduce_scaled(&v, 5).unwrap(), vec![3, 2]);
    }
}
