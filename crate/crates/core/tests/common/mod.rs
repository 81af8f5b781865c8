#![allow(dead_code)]

use gradus::jacobian::{is_smooth_hypersurface, Verdict};
use gradus::linalg::{kernel, GradedSubspace, Matrix};
use gradus::poly::{Family, PolyRing, Polynomial};
use gradus::random::{random_poly, sub_stream};
use gradus::Rationals;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const FERMAT: &str = "x0^3 + x1^3 + x2^3 + x3^3 + x4^3";

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Rank by Bareiss fraction-free elimination over the integers.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Clears denominators row by row.
pub fn integer_rows(m: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            row.iter().map(|x| (x * BigRational::from(l.clone())).to_integer()).collect()
        })
        .collect()
}

pub fn oracle_rank_q(m: &[Vec<BigRational>]) -> usize {
    bareiss_rank(integer_rows(m))
}

/// Plain Gaussian elimination modulo `p` with 128-bit products.
pub fn oracle_rank_p(mut a: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let inv = |x: u64| {
        let (mut b, mut e, mut acc) = (x as u128, p - 2, 1u128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p as u128;
            }
            b = b * b % p as u128;
            e >>= 1;
        }
        acc as u64
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] % p != 0) else { continue };
        a.swap(r, piv);
        let s = inv(a[r][c]);
        for j in 0..cols {
            a[r][j] = (a[r][j] as u128 * s as u128 % p as u128) as u64;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c] as u128;
                for j in 0..cols {
                    let sub = f * a[r][j] as u128 % p as u128;
                    a[i][j] = ((a[i][j] as u128 + p as u128 - sub) % p as u128) as u64;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn rat_mod(x: &BigRational, p: u64) -> u64 {
    let pm = BigInt::from(p);
    let n = x.numer().mod_floor(&pm);
    let d = x.denom().mod_floor(&pm);
    let d: u64 = d.try_into().unwrap();
    assert!(d != 0);
    let n: u64 = n.try_into().unwrap();
    let mut inv = 1u128;
    let (mut b, mut e) = (d as u128, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    (n as u128 * inv % p as u128) as u64
}

pub fn is_rref(rows: &[Vec<BigRational>], pivots: &[usize]) -> bool {
    let mut last = None;
    for (r, &pc) in rows.iter().zip(pivots) {
        if last.is_some_and(|l| pc <= l) || !r[pc].is_one() || r[..pc].iter().any(|x| !x.is_zero()) {
            return false;
        }
        if rows.iter().filter(|o| !o[pc].is_zero()).count() != 1 {
            return false;
        }
        last = Some(pc);
    }
    true
}

/// Seeded random cubics in five variables that certify smooth over the
/// rationals, drawn from the sub-streams `("fixture", i)`.
pub fn smooth_cubics(ring: &PolyRing<Rationals>, count: usize, seed: u64) -> Vec<Polynomial<BigRational>> {
    let mut out = Vec::new();
    let mut i = 0;
    while out.len() < count {
        let f = random_poly(ring, &mut sub_stream(seed, "fixture", i), 3, 10);
        i += 1;
        if f.is_zero() {
            continue;
        }
        if is_smooth_hypersurface(ring, &f).unwrap().verdict == Verdict::Smooth {
            out.push(f);
        }
    }
    out
}

pub fn ring5() -> PolyRing<Rationals> {
    PolyRing::new(Rationals, 5)
}

pub fn parse(ring: &PolyRing<Rationals>, s: &str) -> Polynomial<BigRational> {
    let fam = if s.contains('y') { Family::Dual } else { Family::Primal };
    ring.parse(s, fam, None).unwrap()
}

/// Random matrix of the given shape, often rank deficient: a product of two
/// random factors with an inner dimension below the shape.
pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<BigRational>> {
    let entry = |rng: &mut ChaCha8Rng| {
        if rng.gen_bool(0.3) {
            BigRational::zero()
        } else {
            q(rng.gen_range(-9..=9), rng.gen_range(1..=4))
        }
    };
    if rng.gen_bool(0.5) {
        return (0..rows).map(|_| (0..cols).map(|_| entry(rng)).collect()).collect();
    }
    let inner = rng.gen_range(1..=rows.min(cols));
    let a: Vec<Vec<BigRational>> = (0..rows).map(|_| (0..inner).map(|_| entry(rng)).collect()).collect();
    let b: Vec<Vec<BigRational>> = (0..inner).map(|_| (0..cols).map(|_| entry(rng)).collect()).collect();
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| (0..inner).fold(BigRational::zero(), |s, t| s + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

/// `(J_F : Q)_k` from the joint system `a Q - sum b_i dF/dx_i = 0`,
/// projected to the `a` coordinates.
pub fn colon_oracle(
    ring: &PolyRing<Rationals>,
    f: &Polynomial<BigRational>,
    q: &Polynomial<BigRational>,
    k: u32,
) -> GradedSubspace<Rationals> {
    let d = f.homogeneous_degree().unwrap();
    let m = q.homogeneous_degree().unwrap();
    let top = k + m;
    let sk = ring.basis(k);
    let mut columns: Vec<Vec<BigRational>> = sk
        .monomials()
        .iter()
        .map(|a| ring.coordinates(&ring.mul_monomial(a, q), top).unwrap())
        .collect();
    if top + 1 >= d {
        let mult = ring.basis(top + 1 - d);
        for p in ring.partials(f) {
            for b in mult.monomials() {
                let prod = ring.neg(&ring.mul_monomial(b, &p));
                columns.push(ring.coordinates(&prod, top).unwrap());
            }
        }
    }
    let system = Matrix::from_rows(columns, ring.graded_dim(top)).transpose();
    let ker = kernel(&Rationals, &system);
    let projected = Matrix::from_rows(ker.row_iter().map(|r| r[..sk.len()].to_vec()).collect(), sk.len());
    GradedSubspace::span(&Rationals, ring.nvars(), k, Family::Primal, &projected).unwrap()
}
