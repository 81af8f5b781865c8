//! Rational RREF through modular images.
//!
//! Rows are scaled to integers and reduced modulo a sequence of word primes.
//! Images are combined by CRT and lifted by rational reconstruction. A
//! candidate is accepted only after an exact check:
//!
//! * the rank of one modular image is a lower bound for the rational rank,
//!   so the rational rank is at least the candidate's row count;
//! * every input row is verified to lie in the candidate's row space, so the
//!   rational rank is at most that count.
//!
//! Together these make the candidate the row space of the input, and since it
//! is in reduced echelon form it is the unique RREF. Unlucky primes can only
//! delay acceptance, never change the result.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{modp, Echelon, Matrix};
use crate::field::{bigint_mod, clear_denominators, inv_mod, word_primes};

/// Number of primes whose images are computed concurrently.
const BATCH: usize = 8;

struct Image {
    prime: u64,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

/// Positions `(row, col)` of entries that can be nonzero off the pivots.
fn free_positions(pivots: &[usize], cols: usize) -> Vec<(usize, usize)> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for c in p + 1..cols {
            if !is_pivot[c] {
                out.push((r, c));
            }
        }
    }
    out
}

pub fn rref_multimodular(m: &Matrix<BigRational>) -> Echelon<BigRational> {
    let cols = m.cols();
    let int_rows: Vec<Vec<BigInt>> = m
        .row_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(clear_denominators)
        .collect();
    if int_rows.is_empty() {
        return Echelon::from_parts(Matrix::from_rows(Vec::new(), cols), Vec::new());
    }

    let mut best: Option<(Vec<usize>, Vec<(usize, usize)>)> = None;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last_candidate: Option<Vec<BigRational>> = None;

    for batch in word_primes().chunks(BATCH) {
        let images: Vec<Image> = batch
            .par_iter()
            .map(|&p| {
                let rows = int_rows
                    .iter()
                    .map(|r| r.iter().map(|x| bigint_mod(x, p)).collect())
                    .collect();
                let (rows, pivots) = modp::rref(rows, cols, p);
                Image {
                    prime: p,
                    rows,
                    pivots,
                }
            })
            .collect();

        for img in images {
            let better = match &best {
                None => true,
                Some((piv, _)) => {
                    img.pivots.len() > piv.len()
                        || (img.pivots.len() == piv.len() && img.pivots < *piv)
                }
            };
            if better {
                let positions = free_positions(&img.pivots, cols);
                residues = positions
                    .iter()
                    .map(|&(r, c)| BigInt::from(img.rows[r][c]))
                    .collect();
                modulus = BigInt::from(img.prime);
                best = Some((img.pivots, positions));
                last_candidate = None;
            } else if best.as_ref().map(|(piv, _)| piv) == Some(&img.pivots) {
                let positions = &best.as_ref().expect("set above").1;
                let p = img.prime;
                let m_inv = inv_mod(bigint_mod(&modulus, p), p);
                for (res, &(r, c)) in residues.iter_mut().zip(positions) {
                    let a = bigint_mod(res, p);
                    let b = img.rows[r][c];
                    let t = (b + p - a) % p * m_inv % p;
                    *res += &modulus * t;
                }
                modulus *= p;
            } else {
                continue;
            }

            let (pivots, positions) = best.as_ref().expect("set above");
            let Some(values) = reconstruct_all(&residues, &modulus) else {
                continue;
            };
            if last_candidate.as_ref() == Some(&values) {
                continue;
            }
            let candidate = assemble(pivots, positions, &values, cols);
            if verify(&int_rows, &candidate) {
                return candidate;
            }
            last_candidate = Some(values);
        }
    }
    panic!("modular RREF failed to converge within the prime table");
}

/// Exact rank of a sparse integer matrix.
///
/// The rank `r` of a modular image bounds the rational rank from below. The
/// candidate kernel read off the image (one vector per free column) is lifted
/// by CRT and rational reconstruction and checked exactly against every row;
/// `cols - r` independent kernel vectors bound the rank from above.
pub fn rank_sparse(rows: &[Vec<(usize, BigInt)>], cols: usize) -> usize {
    let rows: Vec<&Vec<(usize, BigInt)>> = rows.iter().filter(|r| r.iter().any(|(_, x)| !x.is_zero())).collect();
    if rows.is_empty() {
        return 0;
    }
    let full = rows.len().min(cols);
    let mut best: Option<(Vec<usize>, Vec<(usize, usize)>)> = None;
    let mut residues: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last_candidate: Option<Vec<BigRational>> = None;

    for &p in word_primes() {
        let mut ech = modp::IncrementalEchelon::new(cols, p);
        for r in &rows {
            let mut dense = vec![0u64; cols];
            for (c, x) in r.iter() {
                dense[*c] = bigint_mod(x, p);
            }
            ech.insert(dense);
            if ech.rank() == full {
                break;
            }
        }
        if ech.rank() == full {
            return full;
        }
        let (img_rows, pivots) = ech.into_rref();
        let better = match &best {
            None => true,
            Some((piv, _)) => pivots.len() > piv.len() || (pivots.len() == piv.len() && pivots < *piv),
        };
        if better {
            let positions = free_positions(&pivots, cols);
            residues = positions.iter().map(|&(r, c)| BigInt::from(img_rows[r][c])).collect();
            modulus = BigInt::from(p);
            best = Some((pivots, positions));
            last_candidate = None;
        } else if best.as_ref().map(|(piv, _)| piv) == Some(&pivots) {
            let positions = &best.as_ref().expect("set above").1;
            let m_inv = inv_mod(bigint_mod(&modulus, p), p);
            for (res, &(r, c)) in residues.iter_mut().zip(positions) {
                let a = bigint_mod(res, p);
                let t = (img_rows[r][c] + p - a) % p * m_inv % p;
                *res += &modulus * t;
            }
            modulus *= p;
        } else {
            continue;
        }
        let (pivots, positions) = best.as_ref().expect("set above");
        let Some(values) = reconstruct_all(&residues, &modulus) else {
            continue;
        };
        if last_candidate.as_ref() == Some(&values) {
            continue;
        }
        if kernel_annihilates(&rows, pivots, positions, &values, cols) {
            return pivots.len();
        }
        last_candidate = Some(values);
    }
    panic!("modular rank failed to converge within the prime table");
}

/// Checks `M v_f = 0` for the kernel vectors `v_f = e_f - sum_i R[i][f] e_{pivot_i}`
/// of the candidate RREF `R`, in integer arithmetic.
fn kernel_annihilates(
    rows: &[&Vec<(usize, BigInt)>],
    pivots: &[usize],
    positions: &[(usize, usize)],
    values: &[BigRational],
    cols: usize,
) -> bool {
    let mut pivot_of = vec![None; cols];
    for (i, &p) in pivots.iter().enumerate() {
        pivot_of[p] = Some(i);
    }
    let mut kernel: Vec<(usize, Vec<(usize, BigRational)>)> = (0..cols)
        .filter(|c| pivot_of[*c].is_none())
        .map(|f| (f, vec![(f, BigRational::one())]))
        .collect();
    let slot: std::collections::HashMap<usize, usize> = kernel.iter().enumerate().map(|(i, (f, _))| (*f, i)).collect();
    for (&(r, c), v) in positions.iter().zip(values) {
        if !v.is_zero() {
            kernel[slot[&c]].1.push((pivots[r], -v.clone()));
        }
    }
    kernel.par_iter().all(|(_, entries)| {
        let den = entries.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
        let mut w: Vec<BigInt> = vec![BigInt::zero(); cols];
        for (c, v) in entries {
            w[*c] = v.numer() * (&den / v.denom());
        }
        rows.iter().all(|row| {
            let mut acc = BigInt::zero();
            for (c, x) in row.iter() {
                if !w[*c].is_zero() {
                    acc += x * &w[*c];
                }
            }
            acc.is_zero()
        })
    })
}

fn assemble(
    pivots: &[usize],
    positions: &[(usize, usize)],
    values: &[BigRational],
    cols: usize,
) -> Echelon<BigRational> {
    let mut m = Matrix::filled(pivots.len(), cols, BigRational::zero());
    for (r, &p) in pivots.iter().enumerate() {
        m[(r, p)] = BigRational::one();
    }
    for (&(r, c), v) in positions.iter().zip(values) {
        m[(r, c)] = v.clone();
    }
    Echelon::from_parts(m, pivots.to_vec())
}

/// Checks that each integer row equals the combination of candidate rows
/// prescribed by its pivot coordinates.
fn verify(int_rows: &[Vec<BigInt>], cand: &Echelon<BigRational>) -> bool {
    let free = cand.free_columns();
    let basis = cand.basis();
    // Column-wise common denominators keep the check in integer arithmetic.
    let scaled: Vec<(BigInt, Vec<BigInt>)> = free
        .iter()
        .map(|&c| {
            let den = (0..basis.rows()).fold(BigInt::one(), |acc, r| acc.lcm(basis[(r, c)].denom()));
            let nums = (0..basis.rows())
                .map(|r| {
                    let v = &basis[(r, c)];
                    v.numer() * (&den / v.denom())
                })
                .collect();
            (den, nums)
        })
        .collect();
    int_rows.par_iter().all(|row| {
        free.iter().zip(&scaled).all(|(&c, (den, nums))| {
            let mut acc = BigInt::zero();
            for (r, &p) in cand.pivots().iter().enumerate() {
                if !row[p].is_zero() && !nums[r].is_zero() {
                    acc += &row[p] * &nums[r];
                }
            }
            acc == &row[c] * den
        })
    })
}

fn reconstruct_all(residues: &[BigInt], modulus: &BigInt) -> Option<Vec<BigRational>> {
    let bound = (modulus >> 1usize).sqrt();
    residues
        .iter()
        .map(|u| rational_reconstruction(u, modulus, &bound))
        .collect()
}

/// Finds `n/d` with `|n|, d <= bound` and `n = u d (mod m)`, if one exists.
pub(crate) fn rational_reconstruction(
    u: &BigInt,
    m: &BigInt,
    bound: &BigInt,
) -> Option<BigRational> {
    let u = u.mod_floor(m);
    if &u <= bound {
        return Some(BigRational::from_integer(u));
    }
    let (mut r0, mut r1) = (m.clone(), u);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let (q, r2) = r0.div_rem(&r1);
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}
