//! End-to-end experiments for cubic threefolds `F` and quadrics `Q` in five
//! variables: membership in the set `U` of cubics whose apolar cubics
//! contain a smooth one, construction of pairs `(F, Q)` with a prescribed
//! smooth cubic `C`, the three-item corollary check, the injectivity check
//! for general `Q`, and a deformation experiment towards the special cubic.
//!
//! Randomness is witness-producing: every verdict comes with the sampled
//! objects, and each retry is recorded.

use num_rational::BigRational;

use crate::apolarity::{annihilator_quadric, colon_graded, extract_c, perp_graded, socle_functional};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::jacobian::{
    ci_smooth, is_smooth_hypersurface, smooth_reference_dims, CiOptions, MilnorAlgebra,
    SmoothnessCertificate, Verdict,
};
use crate::lefschetz::mult_map;
use crate::linalg::{GradedSubspace, Matrix};
use crate::poly::{Family, PolyRing, Polynomial};
use crate::random::{random_poly, random_scalar, sub_stream};
use crate::singular::{
    brute_singular_search, check_lemma_defect, coordinate_points, defect, is_node, singular_points,
    special_q, LemmaCheck,
};

/// Sampling parameters shared by the randomized experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub seed: u64,
    pub trials: usize,
    pub bound: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            seed: 0,
            trials: 5,
            bound: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum UVerdict<E> {
    InU {
        /// The sampled witness, an integer combination of the integer-scaled
        /// perp basis.
        witness: Polynomial<E>,
        certificate: SmoothnessCertificate,
    },
    NotCertified {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct UMembership<E> {
    pub f_smooth: SmoothnessCertificate,
    /// `dim (J_{F,d})^⊥`; `None` when `F` failed the smoothness check.
    pub perp_dim: Option<usize>,
    pub verdict: UVerdict<E>,
    pub trials_used: usize,
    /// Verdicts of the rejected samples, in trial order.
    pub rejected: Vec<Verdict>,
}

impl<E> UMembership<E> {
    pub fn witness(&self) -> Option<&Polynomial<E>> {
        match &self.verdict {
            UVerdict::InU { witness, .. } => Some(witness),
            UVerdict::NotCertified { .. } => None,
        }
    }
}

/// The perp of `J_{F,d}` in the dual variables, with the expected dimension
/// `dim M(F)_d` checked.
pub fn apolar_cubics<K: Field>(alg: &MilnorAlgebra<K>) -> Result<GradedSubspace<K>> {
    let d = alg.degree();
    let perp = perp_graded(alg.ring(), &alg.jacobian_piece(d))?;
    let reference = smooth_reference_dims(alg.ring().nvars(), d)?;
    let expected = reference.get(d as usize).copied().unwrap_or(0) as usize;
    if perp.dim() != expected {
        return Err(Error::UnexpectedDimension {
            what: format!("(J_{{F,{d}}})^perp"),
            expected,
            found: perp.dim(),
        });
    }
    Ok(perp)
}

/// Searches `(J_{F,d})^⊥` for a smooth form. Sample `i` is drawn from the
/// sub-stream `("membership-u", i)`.
pub fn membership_u<K: Field>(alg: &MilnorAlgebra<K>, s: Sampling) -> Result<UMembership<K::Elem>> {
    let ring = alg.ring();
    let f_smooth = is_smooth_hypersurface(ring, alg.form())?;
    if f_smooth.verdict != Verdict::Smooth {
        return Ok(UMembership {
            verdict: UVerdict::NotCertified {
                reason: format!("F singular ({})", f_smooth.note),
            },
            f_smooth,
            perp_dim: None,
            trials_used: 0,
            rejected: Vec::new(),
        });
    }
    let perp = apolar_cubics(alg)?;
    let field = ring.field();
    let d = alg.degree();
    let basis: Vec<Vec<K::Elem>> = perp
        .basis()
        .row_iter()
        .map(|r| field.scale_to_integers(r))
        .collect();
    let mut rejected = Vec::new();
    for i in 0..s.trials {
        let mut rng = sub_stream(s.seed, "membership-u", i as u64);
        let mut v = vec![field.zero(); ring.graded_dim(d)];
        for b in &basis {
            let c = random_scalar(field, &mut rng, s.bound);
            for (x, y) in v.iter_mut().zip(b) {
                *x = field.add(x, &field.mul(&c, y));
            }
        }
        let g = ring.from_coordinates(&v, d, Family::Dual);
        if g.is_zero() {
            rejected.push(Verdict::Inconclusive);
            continue;
        }
        let cert = is_smooth_hypersurface(ring, &g)?;
        if cert.verdict == Verdict::Smooth {
            verify_apolar(alg, &g)?;
            return Ok(UMembership {
                f_smooth,
                perp_dim: Some(perp.dim()),
                verdict: UVerdict::InU {
                    witness: g,
                    certificate: cert,
                },
                trials_used: i + 1,
                rejected,
            });
        }
        rejected.push(cert.verdict);
    }
    Ok(UMembership {
        f_smooth,
        perp_dim: Some(perp.dim()),
        verdict: UVerdict::NotCertified {
            reason: format!("no smooth form in {} samples", s.trials),
        },
        trials_used: s.trials,
        rejected,
    })
}

/// Independent re-check that `<b, G> = 0` for every canonical basis
/// element `b` of `J_{F,d}`.
pub fn verify_apolar<K: Field>(alg: &MilnorAlgebra<K>, g: &Polynomial<K::Elem>) -> Result<()> {
    let ring = alg.ring();
    for b in alg.jacobian_piece(alg.degree()).basis_polys(ring) {
        if !ring.field().is_zero(&ring.polar_pair(&b, g)?) {
            return Err(Error::Invariant("witness does not pair to zero with J_F".into()));
        }
    }
    Ok(())
}

fn random_in<K: Field>(ring: &PolyRing<K>, space: &GradedSubspace<K>, label: &str, s: Sampling, i: u64) -> Polynomial<K::Elem> {
    let field = ring.field();
    let mut rng = sub_stream(s.seed, label, i);
    let mut v = vec![field.zero(); space.ambient_dim()];
    for b in space.basis().row_iter() {
        let c = random_scalar(field, &mut rng, s.bound);
        for (x, y) in v.iter_mut().zip(b) {
            *x = field.add(x, &field.mul(&c, y));
        }
    }
    ring.from_coordinates(&v, space.degree(), space.family())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairConstruction<E> {
    pub q_prime: Polynomial<E>,
    /// Every quadric tried, starting with `Q'`, with its verdict.
    pub attempts: Vec<(Polynomial<E>, SmoothnessCertificate)>,
    /// The certified pair, if the budget sufficed.
    pub pair: Option<PairCertificate<E>>,
    /// Perturbation used for the colon-invariance check.
    pub colon_probe: Polynomial<E>,
    pub colon_invariant: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairCertificate<E> {
    pub q: Polynomial<E>,
    pub y_smooth: SmoothnessCertificate,
    pub c: Polynomial<E>,
    pub c_matches_witness: bool,
    pub c_smooth: SmoothnessCertificate,
    pub colon1_dim: usize,
}

/// Builds `Q'` from a witness `G`, then perturbs by random elements of
/// `J_{F,2}` until `{F = Q = 0}` is certified smooth. Perturbation `i`
/// draws from the sub-stream `("perturb", i)`.
pub fn construct_pair<K: Field>(
    alg: &MilnorAlgebra<K>,
    g: &Polynomial<K::Elem>,
    s: Sampling,
    max_perturbations: usize,
    ci: CiOptions,
) -> Result<PairConstruction<K::Elem>> {
    let ring = alg.ring();
    let lambda = socle_functional(alg)?;
    let q_prime = annihilator_quadric(alg, &lambda, g)?;
    let m = q_prime.homogeneous_degree().expect("nonzero quadric");
    let jm = alg.jacobian_piece(m);

    let colon_k = alg.socle_degree() as u32 - m;
    let base_colon = colon_graded(alg, &q_prime, colon_k)?;
    let colon_probe = random_in(ring, &jm, "colon-probe", s, 0);
    let probe_colon = colon_graded(alg, &ring.add(&q_prime, &colon_probe), colon_k)?;
    let mut colon_invariant = base_colon == probe_colon;

    let mut attempts = Vec::new();
    let mut found = None;
    for i in 0..=max_perturbations {
        let q = if i == 0 {
            q_prime.clone()
        } else {
            ring.add(&q_prime, &random_in(ring, &jm, "perturb", s, i as u64))
        };
        let cert = ci_smooth(ring, alg.form(), &q, ci)?;
        let ok = cert.verdict == Verdict::Smooth;
        attempts.push((q.clone(), cert.clone()));
        if ok {
            found = Some((q, cert));
            break;
        }
    }
    let pair = match found {
        None => None,
        Some((q, y_smooth)) => {
            colon_invariant &= colon_graded(alg, &q, colon_k)? == base_colon;
            let c = extract_c(alg, &q)?;
            let c_matches_witness = c == ring.normalize(g);
            if !c_matches_witness {
                return Err(Error::Invariant("extracted C differs from the witness".into()));
            }
            let c_smooth = is_smooth_hypersurface(ring, &c)?;
            let colon1_dim = colon_graded(alg, &q, 1)?.dim();
            Some(PairCertificate {
                q,
                y_smooth,
                c,
                c_matches_witness,
                c_smooth,
                colon1_dim,
            })
        }
    };
    Ok(PairConstruction {
        q_prime,
        attempts,
        pair,
        colon_probe,
        colon_invariant,
    })
}

/// The three items of the corollary for a given pair, each checked on its
/// own and recorded whether it passes or not.
#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryReport<E> {
    pub f_smooth: SmoothnessCertificate,
    pub y_smooth: Result<SmoothnessCertificate>,
    pub c: Result<Polynomial<E>>,
    pub c_smooth: Option<SmoothnessCertificate>,
    pub colon1_dim: usize,
}

impl<E> CorollaryReport<E> {
    /// `X` and `Y = X ∩ {Q = 0}` smooth.
    pub fn item_i(&self) -> bool {
        self.f_smooth.verdict == Verdict::Smooth
            && matches!(&self.y_smooth, Ok(c) if c.verdict == Verdict::Smooth)
    }

    /// `C` exists and is smooth.
    pub fn item_ii(&self) -> bool {
        matches!(&self.c_smooth, Some(c) if c.verdict == Verdict::Smooth)
    }

    /// `(J_{F,3} : Q) = 0`.
    pub fn item_iii(&self) -> bool {
        self.colon1_dim == 0
    }

    pub fn passes(&self) -> bool {
        self.item_i() && self.item_ii() && self.item_iii()
    }
}

pub fn verify_corollary<K: Field>(
    alg: &MilnorAlgebra<K>,
    q: &Polynomial<K::Elem>,
    ci: CiOptions,
) -> Result<CorollaryReport<K::Elem>> {
    let ring = alg.ring();
    let f_smooth = is_smooth_hypersurface(ring, alg.form())?;
    let y_smooth = ci_smooth(ring, alg.form(), q, ci);
    let c = if f_smooth.verdict == Verdict::Smooth {
        extract_c(alg, q)
    } else {
        Err(Error::NotSmooth("F is not certified smooth".into()))
    };
    let c_smooth = match &c {
        Ok(c) => Some(is_smooth_hypersurface(ring, c)?),
        Err(_) => None,
    };
    let colon1_dim = colon_graded(alg, q, 1)?.dim();
    Ok(CorollaryReport {
        f_smooth,
        y_smooth,
        c,
        c_smooth,
        colon1_dim,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theorem14Report<E> {
    /// `ℓ` with `ℓ^2 : M(F)_1 -> M(F)_3` injective, and the trials used.
    pub ell: Option<(Polynomial<E>, usize)>,
    pub ell_trials: usize,
    /// `Q` with `Q : M(F)_1 -> M(F)_3` injective and `Y` smooth.
    pub q: Option<(Polynomial<E>, usize, SmoothnessCertificate)>,
    pub q_trials: usize,
    /// Every quadric sampled: the rank of its map and the verdict for `Y`.
    pub q_attempts: Vec<(usize, Verdict)>,
    pub source_dim: usize,
    pub colon1_dim: Option<usize>,
}

impl<E> Theorem14Report<E> {
    pub fn passes(&self) -> bool {
        self.ell.is_some() && self.q.is_some() && self.colon1_dim == Some(0)
    }
}

/// Finds `ℓ` with `ℓ^2` injective on `M(F)_1`, then random quadrics `Q`
/// with the same injectivity and a smooth intersection. Samples come from
/// the sub-streams `("t14-ell", i)` and `("t14-q", i)`.
pub fn theorem14_check<K: Field>(
    alg: &MilnorAlgebra<K>,
    s: Sampling,
    ci: CiOptions,
) -> Result<Theorem14Report<K::Elem>> {
    crate::apolarity::require_smooth(alg)?;
    let ring = alg.ring();
    let field = ring.field();
    let source_dim = alg.dim(1);
    let mut ell = None;
    let mut ell_trials = 0;
    for i in 0..s.trials {
        ell_trials = i + 1;
        let l = random_poly(ring, &mut sub_stream(s.seed, "t14-ell", i as u64), 1, s.bound);
        if l.is_zero() {
            continue;
        }
        let r = field.rank(&mult_map(alg, &ring.pow(&l, 2), 1)?);
        if r == source_dim {
            ell = Some((l, r));
            break;
        }
    }
    let mut q_found = None;
    let mut q_attempts = Vec::new();
    let mut q_trials = 0;
    for i in 0..s.trials {
        q_trials = i + 1;
        let q = random_poly(ring, &mut sub_stream(s.seed, "t14-q", i as u64), 2, s.bound);
        if q.is_zero() {
            continue;
        }
        let r = field.rank(&mult_map(alg, &q, 1)?);
        let cert = if r == source_dim {
            ci_smooth(ring, alg.form(), &q, ci)?
        } else {
            q_attempts.push((r, Verdict::Inconclusive));
            continue;
        };
        q_attempts.push((r, cert.verdict));
        if cert.verdict == Verdict::Smooth {
            q_found = Some((q, r, cert));
            break;
        }
    }
    let colon1_dim = match &q_found {
        Some((q, _, _)) => Some(colon_graded(alg, q, 1)?.dim()),
        None => None,
    };
    Ok(Theorem14Report {
        ell,
        ell_trials,
        q: q_found,
        q_trials,
        q_attempts,
        source_dim,
        colon1_dim,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeformationStep {
    pub t: BigRational,
    pub f: Polynomial<BigRational>,
    pub smooth: Verdict,
    pub perp_dim: usize,
    pub membership: Option<UMembership<BigRational>>,
    /// Largest coefficient of the Fermat cubic's residual against the
    /// canonical perp basis; zero iff the Fermat cubic lies in the perp.
    pub fermat_residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeformationReport {
    pub r: Polynomial<BigRational>,
    pub r_attempts: u64,
    /// Steps for `t = 1, 1/2, ..., 1/steps`, then `t = 0`.
    pub steps: Vec<DeformationStep>,
}

impl DeformationReport {
    pub fn smallest_in_u(&self) -> Option<&BigRational> {
        self.steps
            .iter()
            .filter(|s| s.membership.as_ref().is_some_and(|m| m.witness().is_some()))
            .map(|s| &s.t)
            .min()
    }
}

/// `F_t = Q_special + t R` over the rationals for a seeded random smooth
/// cubic `R`, recording smoothness, the apolar dimension, membership in `U`
/// and the distance of the Fermat cubic from the apolar cubics.
pub fn deformation_experiment(steps: u32, s: Sampling) -> Result<DeformationReport> {
    if steps == 0 {
        return Err(Error::Precondition("steps must be at least 1".into()));
    }
    let ring = PolyRing::new(Rationals, 5);
    let q = special_q(&ring, 3)?;
    let mut r = None;
    let mut r_attempts = 0;
    for i in 0..64 {
        r_attempts = i + 1;
        let cand = random_poly(&ring, &mut sub_stream(s.seed, "deformation-r", i), 3, s.bound);
        if !cand.is_zero() && is_smooth_hypersurface(&ring, &cand)?.verdict == Verdict::Smooth {
            r = Some(cand);
            break;
        }
    }
    let r = r.ok_or_else(|| Error::Precondition("no smooth R found in 64 draws".into()))?;
    let fermat_dual = ring
        .parse("y0^3 + y1^3 + y2^3 + y3^3 + y4^3", Family::Dual, Some(3))
        .expect("valid");
    let fermat_coords = ring.coordinates(&fermat_dual, 3)?;

    let mut out = Vec::new();
    let ts = (1..=steps as i64)
        .map(|k| BigRational::new(1.into(), k.into()))
        .chain(std::iter::once(Rationals.zero()));
    for t in ts {
        let f = ring.add(&q, &ring.scale(&t, &r));
        let alg = MilnorAlgebra::new(&ring, &f)?;
        let smooth = is_smooth_hypersurface(&ring, &f)?.verdict;
        let perp = perp_graded(&ring, &alg.jacobian_piece(3))?;
        let residual = perp.reduce(&fermat_coords);
        let fermat_residual = residual
            .iter()
            .map(|x| Rationals.to_f64(x).abs())
            .fold(0.0, f64::max);
        let membership = if smooth == Verdict::Smooth {
            Some(membership_u(&alg, s)?)
        } else {
            None
        };
        out.push(DeformationStep {
            t,
            f,
            smooth,
            perp_dim: perp.dim(),
            membership,
            fermat_residual,
        });
    }
    Ok(DeformationReport {
        r,
        r_attempts,
        steps: out,
    })
}

/// One golden check: a named quantity, its expected and computed values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenCheck {
    pub name: String,
    pub expected: String,
    pub found: String,
}

impl GoldenCheck {
    fn new(name: &str, expected: impl ToString, found: impl ToString) -> Self {
        GoldenCheck {
            name: name.into(),
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub fn passes(&self) -> bool {
        self.expected == self.found
    }
}

/// The special cubic `Q = Σ x_i x_j x_k` in five variables: its Milnor
/// algebra, apolar cubics, singular locus, nodes, defects and the defect
/// identity, each compared with its known value.
pub fn reproduce_example<K: Field>(field: &K) -> Result<Vec<GoldenCheck>> {
    let ring = PolyRing::new(field.clone(), 5);
    let q = special_q(&ring, 3)?;
    let alg = MilnorAlgebra::new(&ring, &q)?;
    let mut out = Vec::new();

    out.push(GoldenCheck::new(
        "smooth reference dims (n=4, d=3)",
        "[1, 5, 10, 10, 5, 1]",
        format!("{:?}", smooth_reference_dims(5, 3)?),
    ));
    out.push(GoldenCheck::new("dim M(Q)_3", 10, alg.dim(3)));
    out.push(GoldenCheck::new("dim M(Q)_5", 5, alg.dim(5)));
    let j3 = alg.jacobian_piece(3);
    let perp = perp_graded(&ring, &j3)?;
    out.push(GoldenCheck::new("dim (J_{Q,3})^perp", 10, perp.dim()));

    let fermat = ring
        .parse("y0^3 + y1^3 + y2^3 + y3^3 + y4^3", Family::Dual, Some(3))
        .expect("valid");
    let mut nonzero = 0;
    for b in j3.basis_polys(&ring) {
        if !field.is_zero(&ring.polar_pair(&b, &fermat)?) {
            nonzero += 1;
        }
    }
    out.push(GoldenCheck::new("nonzero pairings of J_{Q,3} with the Fermat cubic", 0, nonzero));

    let j4 = alg.jacobian_piece(4);
    let pure: Vec<usize> = (0..5)
        .map(|i| {
            let mut e = vec![0; 5];
            e[i] = 4;
            ring.basis(4).index_of(&crate::poly::Monomial::new(e)).expect("degree 4")
        })
        .collect();
    let mut w_rows = Vec::new();
    for i in (0..ring.graded_dim(4)).filter(|i| !pure.contains(i)) {
        let mut v = vec![field.zero(); ring.graded_dim(4)];
        v[i] = field.one();
        w_rows.push(v);
    }
    let w = GradedSubspace::span(field, 5, 4, Family::Primal, &Matrix::from_rows(w_rows, ring.graded_dim(4)))?;
    out.push(GoldenCheck::new("dim J_{Q,4}", 65, j4.dim()));
    out.push(GoldenCheck::new("J_{Q,4} = span of non-pure quartic monomials", true, *j4 == w));

    let coords = coordinate_points(field, 5);
    let verified = singular_points(&ring, &q, &coords)?;
    out.push(GoldenCheck::new("coordinate points that are singular", 5, verified.len()));
    // The integer form of Q reduces modulo 7 whatever the working field.
    let qz = PolyRing::new(Rationals, 5);
    let brute = brute_singular_search(&qz, &special_q(&qz, 3)?, 7)?;
    let unit: Vec<Vec<u64>> = (0..5).map(|i| (0..5).map(|j| (i == j) as u64).collect()).collect();
    out.push(GoldenCheck::new("singular points over F_7 are exactly e_0..e_4", true, brute == unit));
    let mut nodes = 0;
    for p in &verified {
        if is_node(&ring, &q, p, None)? {
            nodes += 1;
        }
    }
    out.push(GoldenCheck::new("nodes among the singular points", 5, nodes));

    out.push(GoldenCheck::new("defect_0", 4, defect(&ring, &verified, 0).defect));
    for k in 1..=4 {
        out.push(GoldenCheck::new(
            &format!("defect_{k}"),
            0,
            defect(&ring, &verified, k).defect,
        ));
    }
    for k in 0..=3 {
        let LemmaCheck { lhs, rhs, .. } = check_lemma_defect(&alg, &verified, k)?;
        out.push(GoldenCheck::new(
            &format!("dim M(Q)_{} = dim M(F_s)_{k} + defect_{k}", 5 - k),
            lhs,
            rhs,
        ));
    }
    // Fermat's own Milnor algebra matches the reference dims.
    let fp = fermat.with_family(Family::Primal);
    let falg = MilnorAlgebra::new(&ring, &fp)?;
    let dims: Vec<usize> = (0..=6).map(|k| falg.dim(k)).collect();
    out.push(GoldenCheck::new("Milnor dims of the Fermat cubic", "[1, 5, 10, 10, 5, 1, 0]", format!("{dims:?}")));
    Ok(out)
}
