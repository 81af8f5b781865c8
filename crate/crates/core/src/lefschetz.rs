//! Multiplication maps on Milnor algebras and the strong Lefschetz property.

use crate::apolarity::require_smooth;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::jacobian::{require_form, MilnorAlgebra};
use crate::linalg::Matrix;
use crate::poly::{Family, Polynomial};
use crate::random::{random_poly, sub_stream};

/// Matrix of multiplication by `g` from `M(F)_j` to `M(F)_{j + deg g}` in
/// the canonical complement bases; column `i` is the image of the `i`-th
/// basis class.
pub fn mult_map<K: Field>(alg: &MilnorAlgebra<K>, g: &Polynomial<K::Elem>, j: u32) -> Result<Matrix<K::Elem>> {
    let m = require_form(g, "g")?;
    if g.family() != Family::Primal {
        return Err(Error::WrongFamily {
            expected: 'x',
            found: g.family().letter(),
        });
    }
    let ring = alg.ring();
    let source = ring.basis(j);
    let target = alg.jacobian_piece(j + m);
    let columns: Vec<Vec<K::Elem>> = alg
        .quotient_basis(j)
        .into_iter()
        .map(|a| {
            let prod = ring.mul_monomial(source.get(a), g);
            target.quotient_coordinates(&ring.coordinates(&prod, j + m).expect("homogeneous"))
        })
        .collect();
    Ok(Matrix::from_rows(columns, target.codim()).transpose())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LefschetzStep {
    pub k: u32,
    pub exponent: u32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl LefschetzStep {
    pub fn is_iso(&self) -> bool {
        self.rank == self.source_dim && self.rank == self.target_dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzProfile<E> {
    pub ell: Polynomial<E>,
    pub steps: Vec<LefschetzStep>,
    pub verdict: bool,
}

impl<E> LefschetzProfile<E> {
    pub fn ranks(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.rank).collect()
    }
}

/// Ranks of `ℓ^{T-2k} : M(F)_k -> M(F)_{T-k}` for `0 <= k < T/2`.
pub fn slp_check<K: Field>(alg: &MilnorAlgebra<K>, ell: &Polynomial<K::Elem>) -> Result<LefschetzProfile<K::Elem>> {
    if require_form(ell, "ell")? != 1 {
        return Err(Error::DegreeMismatch("ell must be a linear form".into()));
    }
    require_smooth(alg)?;
    Ok(profile_unchecked(alg, ell))
}

fn profile_unchecked<K: Field>(alg: &MilnorAlgebra<K>, ell: &Polynomial<K::Elem>) -> LefschetzProfile<K::Elem> {
    let ring = alg.ring();
    let t = alg.socle_degree().max(0) as u32;
    let steps: Vec<LefschetzStep> = (0..t.div_ceil(2))
        .map(|k| {
            let e = t - 2 * k;
            let m = mult_map(alg, &ring.pow(ell, e), k).expect("linear form");
            LefschetzStep {
                k,
                exponent: e,
                source_dim: m.cols(),
                target_dim: m.rows(),
                rank: ring.field().rank(&m),
            }
        })
        .collect();
    let verdict = steps.iter().all(LefschetzStep::is_iso);
    LefschetzProfile {
        ell: ell.clone(),
        steps,
        verdict,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlpSearch<E> {
    /// Profile of the first successful trial.
    pub witness: Option<LefschetzProfile<E>>,
    pub trials_used: usize,
    /// Profiles of the failed trials, in trial order.
    pub failures: Vec<LefschetzProfile<E>>,
}

/// Tries random linear forms until one has the strong Lefschetz property.
/// Trial `i` draws from the sub-stream `("slp", i)` of `seed`.
pub fn slp_search<K: Field>(
    alg: &MilnorAlgebra<K>,
    trials: usize,
    bound: u64,
    seed: u64,
) -> Result<SlpSearch<K::Elem>> {
    if trials == 0 {
        return Err(Error::Precondition("trials must be at least 1".into()));
    }
    require_smooth(alg)?;
    let ring = alg.ring();
    let mut failures = Vec::new();
    for i in 0..trials {
        let mut rng = sub_stream(seed, "slp", i as u64);
        let ell = random_poly(ring, &mut rng, 1, bound);
        if ell.is_zero() {
            continue;
        }
        let p = profile_unchecked(alg, &ell);
        if p.verdict {
            return Ok(SlpSearch {
                witness: Some(p),
                trials_used: i + 1,
                failures,
            });
        }
        failures.push(p);
    }
    Ok(SlpSearch {
        witness: None,
        trials_used: trials,
        failures,
    })
}
