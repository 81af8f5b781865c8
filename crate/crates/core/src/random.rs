//! Seeded randomness.
//!
//! Every randomized experiment draws from a [`SeedStream`], a ChaCha8
//! generator keyed by a `u64`. Independent sub-streams (one per trial, per
//! fixture, per named input) are keyed by [`derive_seed`]:
//!
//! ```text
//! derive_seed(seed, label, index) =
//!     splitmix64(seed ^ splitmix64(fnv1a64(label) ^ splitmix64(index)))
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Field;
use crate::poly::{Family, PolyRing, Polynomial};

pub type SeedStream = ChaCha8Rng;

pub fn stream(seed: u64) -> SeedStream {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn fnv1a64(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01B3)
    })
}

pub fn derive_seed(seed: u64, label: &str, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(fnv1a64(label) ^ splitmix64(index)))
}

pub fn sub_stream(seed: u64, label: &str, index: u64) -> SeedStream {
    stream(derive_seed(seed, label, index))
}

pub fn random_scalar<K: Field>(field: &K, rng: &mut SeedStream, bound: u64) -> K::Elem {
    field.random_element(rng, bound.max(1))
}

pub fn random_poly<K: Field>(
    ring: &PolyRing<K>,
    rng: &mut SeedStream,
    degree: u32,
    bound: u64,
) -> Polynomial<K::Elem> {
    ring.random_homogeneous(rng, degree, bound.max(1), Family::Primal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn same_seed_same_output() {
        let ring = PolyRing::new(Rationals, 5);
        let a = random_poly(&ring, &mut stream(42), 3, 10);
        let b = random_poly(&ring, &mut stream(42), 3, 10);
        assert_eq!(a, b);
        let c = random_poly(&ring, &mut stream(43), 3, 10);
        assert_ne!(a, c);
    }

    #[test]
    fn derived_seeds_differ_by_label_and_index() {
        assert_ne!(derive_seed(0, "trial", 0), derive_seed(0, "trial", 1));
        assert_ne!(derive_seed(0, "trial", 0), derive_seed(0, "fixture", 0));
        assert_eq!(derive_seed(5, "x", 9), derive_seed(5, "x", 9));
    }

    #[test]
    fn uniform_residues_mod_10007() {
        // Chi-square style check: 20 buckets of ~500 residues each, every
        // bucket within 5 sigma of its expectation.
        let f = PrimeField::new(10007).unwrap();
        let mut rng = stream(7);
        let mut buckets = [0u32; 20];
        let n = 10_000;
        for _ in 0..n {
            let v = random_scalar(&f, &mut rng, 1);
            buckets[(v * 20 / 10007) as usize] += 1;
        }
        let p = 1.0 / 20.0;
        let mean = n as f64 * p;
        let sigma = (n as f64 * p * (1.0 - p)).sqrt();
        for b in buckets {
            assert!((b as f64 - mean).abs() < 5.0 * sigma, "bucket {b}");
        }
        let chi2: f64 = buckets
            .iter()
            .map(|&b| (b as f64 - mean).powi(2) / mean)
            .sum();
        // 19 degrees of freedom; 43.8 is the 0.999 quantile.
        assert!(chi2 < 43.8, "chi2 = {chi2}");
    }
}
