mod common;

use common::*;
use gradus::linalg::{kernel, Matrix};
use gradus::{Field, PrimeField, Rationals};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn to_matrix(rows: &[Vec<BigRational>], cols: usize) -> Matrix<BigRational> {
    Matrix::from_rows(rows.to_vec(), cols)
}

#[test]
fn trivial_cases() {
    let id = Matrix::identity(&Rationals, 3);
    let e = Rationals.rref(&id);
    assert_eq!(e.basis(), &id);
    assert_eq!(e.rank(), 3);
    let z = Matrix::zeros(&Rationals, 2, 5);
    assert_eq!(Rationals.rank(&z), 0);
    assert_eq!(kernel(&Rationals, &id).rows(), 0);
    let m = Matrix::from_rows(vec![vec![q(1, 1), q(1, 1)]], 2);
    let k = kernel(&Rationals, &m);
    assert_eq!(k.rows(), 1);
    assert_eq!(k.row(0)[0], -k.row(0)[1].clone());
}

#[test]
fn rational_rank_rref_kernel_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..100 {
        let (r, c) = (rng.gen_range(1..=50), rng.gen_range(1..=70));
        let rows = random_matrix(&mut rng, r, c);
        let m = to_matrix(&rows, c);
        let expected = oracle_rank_q(&rows);
        let e = Rationals.rref(&m);
        assert_eq!(e.rank(), expected, "case {case}: {r}x{c}");
        assert_eq!(Rationals.rank(&m), expected, "case {case}");
        let basis = e.basis().to_rows();
        assert!(is_rref(&basis, e.pivots()), "case {case}");
        // Same row space: stacking adds nothing.
        let mut stacked = rows.clone();
        stacked.extend(basis.iter().cloned());
        assert_eq!(oracle_rank_q(&stacked), expected, "case {case}");
        let k = kernel(&Rationals, &m);
        assert_eq!(k.rows(), c - expected, "case {case}");
        assert_eq!(oracle_rank_q(&k.to_rows()), k.rows());
        assert!(m.mul(&Rationals, &k.transpose()).is_zero(&Rationals));
    }
}

#[test]
fn prime_field_rank_and_kernel_match_oracle() {
    let p = 10007;
    let f = PrimeField::new(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in 0..100 {
        let (r, c) = (rng.gen_range(1..=50), rng.gen_range(1..=70));
        let rows: Vec<Vec<u64>> = random_matrix(&mut rng, r, c)
            .iter()
            .map(|row| row.iter().map(|x| rat_mod(x, p)).collect())
            .collect();
        let m = Matrix::from_rows(rows.clone(), c);
        let expected = oracle_rank_p(rows, p);
        assert_eq!(f.rank(&m), expected, "case {case}");
        let k = kernel(&f, &m);
        assert_eq!(k.rows(), c - expected);
        assert!(m.mul(&f, &k.transpose()).is_zero(&f));
    }
}

#[test]
fn modular_rank_never_exceeds_rational_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let f7 = PrimeField::new(7).unwrap();
    for _ in 0..100 {
        let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let rows: Vec<Vec<BigRational>> =
            (0..r).map(|_| (0..c).map(|_| q(rng.gen_range(-20..=20), 1)).collect()).collect();
        let rq = Rationals.rank(&to_matrix(&rows, c));
        let rp = f7.rank(&Matrix::from_rows(
            rows.iter().map(|row| row.iter().map(|x| rat_mod(x, 7)).collect()).collect(),
            c,
        ));
        assert!(rp <= rq);
    }
}

#[test]
fn larger_rational_ranks_match_oracle() {
    // Large enough to take the multimodular path.
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..6 {
        let rows = random_matrix(&mut rng, 40, 60);
        let m = to_matrix(&rows, 60);
        assert_eq!(Rationals.rank(&m), oracle_rank_q(&rows));
        let e = Rationals.rref(&m);
        assert!(is_rref(&e.basis().to_rows(), e.pivots()));
    }
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..7).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-4i64..=4, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_is_canonical_and_idempotent(rows in small_matrix(), mix in proptest::collection::vec(-3i64..=3, 36)) {
        let r = rows.len();
        let c = rows[0].len();
        let a: Vec<Vec<BigRational>> = rows.iter().map(|row| row.iter().map(|&x| q(x, 1)).collect()).collect();
        // B = U A with U unit lower triangular, so A and B are row equivalent.
        let b: Vec<Vec<BigRational>> = (0..r)
            .map(|i| {
                (0..c)
                    .map(|j| {
                        let mut s = a[i][j].clone();
                        for t in 0..i {
                            s += q(mix[(i * 6 + t) % 36], 1) * &a[t][j];
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        let ea = Rationals.rref(&to_matrix(&a, c));
        let eb = Rationals.rref(&to_matrix(&b, c));
        prop_assert_eq!(ea.basis(), eb.basis());
        let again = Rationals.rref(ea.basis());
        prop_assert_eq!(again.basis(), ea.basis());
        prop_assert!(ea.rank() <= r.min(c));
    }
}
