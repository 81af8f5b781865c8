//! Jacobian ideals, Milnor algebras and smoothness certificates.
//!
//! Everything here is degree-truncated linear algebra: the degree-`k` piece
//! of an ideal is the span of all monomial multiples of its generators that
//! land in degree `k`. Smoothness of a hypersurface `F = 0` of degree `d` in
//! `n + 1` variables is certified by fullness of `J_{F,T+1}` with
//! `T = (n+1)(d-2)`; emptiness of a projective zero locus is certified by
//! fullness of the ideal in some degree.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::{Field, FieldConfig};
use crate::linalg::{modp, GradedSubspace, Matrix};
use crate::poly::{Family, Monomial, PolyRing, Polynomial};

/// Rows of the degree-`k` Macaulay matrix of `gens`: all products `m * g`
/// with `deg m = k - deg g`, as sparse `(column, coefficient)` lists.
fn macaulay_rows<K: Field>(
    ring: &PolyRing<K>,
    gens: &[Polynomial<K::Elem>],
    k: u32,
) -> Result<Vec<Vec<(usize, K::Elem)>>> {
    let target = ring.basis(k);
    let mut rows = Vec::new();
    for g in gens {
        let Some(d) = generator_degree(g)? else {
            continue;
        };
        if d > k {
            continue;
        }
        for m in ring.basis(k - d).monomials() {
            let row = g
                .terms()
                .map(|(t, c)| {
                    let col = target.index_of(&t.mul(m)).expect("degree matches");
                    (col, c.clone())
                })
                .collect();
            rows.push(row);
        }
    }
    Ok(rows)
}

fn generator_degree<E: Clone>(g: &Polynomial<E>) -> Result<Option<u32>> {
    if g.is_zero() {
        return Ok(None);
    }
    g.homogeneous_degree()
        .map(Some)
        .ok_or_else(|| Error::DegreeMismatch("ideal generators must be homogeneous".into()))
}

fn densify<K: Field>(field: &K, rows: Vec<Vec<(usize, K::Elem)>>, cols: usize) -> Matrix<K::Elem> {
    let dense = rows
        .into_iter()
        .map(|r| {
            let mut v = vec![field.zero(); cols];
            for (c, x) in r {
                v[c] = x;
            }
            v
        })
        .collect();
    Matrix::from_rows(dense, cols)
}

/// Degree-`k` piece of the ideal generated by `gens`, as a canonical
/// subspace of `S_k`.
pub fn ideal_graded<K: Field>(
    ring: &PolyRing<K>,
    gens: &[Polynomial<K::Elem>],
    k: u32,
) -> Result<GradedSubspace<K>> {
    let family = gens.first().map(|g| g.family()).unwrap_or(Family::Primal);
    let rows = macaulay_rows(ring, gens, k)?;
    let m = densify(ring.field(), rows, ring.graded_dim(k));
    GradedSubspace::span(ring.field(), ring.nvars(), k, family, &m)
}

/// `J_{F,k}`: the degree-`k` piece of the ideal of first partials.
pub fn jacobian_graded<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
    k: u32,
) -> Result<GradedSubspace<K>> {
    ideal_graded(ring, &ring.partials(f), k)
}

/// Outcome of a modular fullness test for one graded piece of an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullnessCheck {
    pub degree: u32,
    pub ambient: usize,
    /// Largest rank seen over the certification primes; a lower bound for
    /// the rank over the working field.
    pub rank: usize,
    /// The prime whose image was of full rank, if any.
    pub certified_by: Option<u64>,
}

impl FullnessCheck {
    pub fn is_full(&self) -> bool {
        self.certified_by.is_some()
    }
}

/// Rank of the degree-`k` Macaulay matrix of `gens` modulo `p`, stopping
/// once it fills `S_k`. Rational generators are scaled to integers first,
/// which does not change the ideal.
fn rank_mod<K: Field>(ring: &PolyRing<K>, gens: &[Polynomial<K::Elem>], k: u32, p: u64) -> Result<usize> {
    let ambient = ring.graded_dim(k);
    let target = ring.basis(k);
    let mut ech = modp::IncrementalEchelon::new(ambient, p);
    for g in gens {
        let Some(d) = generator_degree(g)? else {
            continue;
        };
        if d > k {
            continue;
        }
        let coeffs: Vec<K::Elem> = g.terms().map(|(_, c)| c.clone()).collect();
        let Some(reduced) = ring.field().reduce_scaled(&coeffs, p) else {
            continue;
        };
        let monos: Vec<&Monomial> = g.terms().map(|(m, _)| m).collect();
        for m in ring.basis(k - d).monomials() {
            let mut row = vec![0u64; ambient];
            for (t, &c) in monos.iter().zip(&reduced) {
                row[target.index_of(&t.mul(m)).expect("degree matches")] = c;
            }
            ech.insert(row);
            if ech.is_full() {
                return Ok(ambient);
            }
        }
    }
    Ok(ech.rank())
}

/// Tests whether `gens` span all of `S_k`. Full rank modulo a prime
/// certifies full rank over the working field.
pub fn check_full<K: Field>(
    ring: &PolyRing<K>,
    gens: &[Polynomial<K::Elem>],
    k: u32,
) -> Result<FullnessCheck> {
    let ambient = ring.graded_dim(k);
    let mut best = 0;
    for p in ring.field().certification_primes() {
        let rank = rank_mod(ring, gens, k, p)?;
        if rank == ambient {
            return Ok(FullnessCheck {
                degree: k,
                ambient,
                rank,
                certified_by: Some(p),
            });
        }
        best = best.max(rank);
    }
    Ok(FullnessCheck {
        degree: k,
        ambient,
        rank: best,
        certified_by: None,
    })
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Macaulay's bound `a^<k>` on the next value of a Hilbert function that
/// takes the value `a` in degree `k`.
pub fn macaulay_growth(a: usize, k: u32) -> usize {
    let mut rest = a as u128;
    let mut out = 0u128;
    let mut i = k as u64;
    while rest > 0 && i > 0 {
        let mut top = i;
        while binomial(top + 1, i) <= rest {
            top += 1;
        }
        rest -= binomial(top, i);
        out += binomial(top + 1, i + 1);
        i -= 1;
    }
    out as usize
}

/// `T = (n+1)(d-2)` for `nvars = n+1`; negative for linear forms.
pub fn socle_degree(nvars: usize, d: u32) -> i64 {
    nvars as i64 * (d as i64 - 2)
}

/// Coefficients of `((1 - t^{d-1}) / (1 - t))^{n+1}`, the Hilbert function
/// of the Milnor algebra of any smooth form of degree `d` in `n + 1`
/// variables, for degrees `0..=T`.
pub fn smooth_reference_dims(nvars: usize, d: u32) -> Result<Vec<u64>> {
    if d < 2 {
        return Err(Error::Precondition(format!("need d >= 2, got {d}")));
    }
    let mut poly = vec![1u64];
    for _ in 0..nvars {
        let mut next = vec![0u64; poly.len() + d as usize - 2];
        for (i, &c) in poly.iter().enumerate() {
            for j in 0..=(d as usize - 2) {
                next[i + j] += c;
            }
        }
        poly = next;
    }
    Ok(poly)
}

/// Hilbert function of a Milnor algebra up to some degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorProfile {
    pub nvars: usize,
    pub degree: u32,
    pub socle_degree: i64,
    pub dims: BTreeMap<u32, usize>,
}

/// The Milnor algebra `S / J_F` of a nonzero homogeneous `F`, with the
/// canonical bases of `J_{F,k}` computed on demand and cached.
#[derive(Debug)]
pub struct MilnorAlgebra<K: Field> {
    ring: PolyRing<K>,
    f: Polynomial<K::Elem>,
    degree: u32,
    partials: Vec<Polynomial<K::Elem>>,
    pieces: Mutex<BTreeMap<u32, Arc<GradedSubspace<K>>>>,
}

impl<K: Field> MilnorAlgebra<K> {
    pub fn new(ring: &PolyRing<K>, f: &Polynomial<K::Elem>) -> Result<Self> {
        let degree = require_form(f, "F")?;
        if f.family() != Family::Primal {
            return Err(Error::WrongFamily {
                expected: 'x',
                found: f.family().letter(),
            });
        }
        Ok(MilnorAlgebra {
            ring: ring.clone(),
            f: f.clone(),
            degree,
            partials: ring.partials(f),
            pieces: Mutex::default(),
        })
    }

    pub fn ring(&self) -> &PolyRing<K> {
        &self.ring
    }

    pub fn form(&self) -> &Polynomial<K::Elem> {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn partials(&self) -> &[Polynomial<K::Elem>] {
        &self.partials
    }

    pub fn socle_degree(&self) -> i64 {
        socle_degree(self.ring.nvars(), self.degree)
    }

    /// `J_{F,k}` as a canonical subspace.
    pub fn jacobian_piece(&self, k: u32) -> Arc<GradedSubspace<K>> {
        if let Some(p) = self.pieces.lock().expect("cache poisoned").get(&k) {
            return p.clone();
        }
        let piece = Arc::new(
            ideal_graded(&self.ring, &self.partials, k).expect("partials are homogeneous"),
        );
        self.pieces
            .lock()
            .expect("cache poisoned")
            .entry(k)
            .or_insert(piece)
            .clone()
    }

    /// `dim M(F)_k`.
    pub fn dim(&self, k: u32) -> usize {
        if let Some(p) = self.pieces.lock().expect("cache poisoned").get(&k) {
            return p.codim();
        }
        let ambient = self.ring.graded_dim(k);
        let rows = macaulay_rows(&self.ring, &self.partials, k).expect("homogeneous");
        ambient - self.ring.field().sparse_rank(&rows, ambient)
    }

    pub fn profile(&self, k_max: u32) -> MilnorProfile {
        let mut dims = BTreeMap::new();
        let mut vanished = false;
        for k in 0..=k_max {
            // J_{k+1} contains S_1 J_k, so fullness persists.
            let d = if vanished { 0 } else { self.dim(k) };
            vanished |= d == 0;
            dims.insert(k, d);
        }
        MilnorProfile {
            nvars: self.ring.nvars(),
            degree: self.degree,
            socle_degree: self.socle_degree(),
            dims,
        }
    }

    /// Monomial indices of `S_k` whose classes form the canonical basis of
    /// `M(F)_k`.
    pub fn quotient_basis(&self, k: u32) -> Vec<usize> {
        self.jacobian_piece(k).complement()
    }

    /// Coordinates of the class of a homogeneous degree-`k` polynomial in
    /// the canonical basis of `M(F)_k`.
    pub fn reduce(&self, p: &Polynomial<K::Elem>, k: u32) -> Result<Vec<K::Elem>> {
        let v = self.ring.coordinates(p, k)?;
        Ok(self.jacobian_piece(k).quotient_coordinates(&v))
    }
}

/// Degree of a nonzero homogeneous polynomial.
pub(crate) fn require_form<E: Clone>(f: &Polynomial<E>, name: &str) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial(format!("{name} is zero")));
    }
    f.homogeneous_degree()
        .ok_or_else(|| Error::DegreeMismatch(format!("{name} is not homogeneous")))
}

pub fn milnor_dim<K: Field>(ring: &PolyRing<K>, f: &Polynomial<K::Elem>, k: u32) -> Result<usize> {
    Ok(MilnorAlgebra::new(ring, f)?.dim(k))
}

pub fn milnor_profile<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
    k_max: u32,
) -> Result<MilnorProfile> {
    Ok(MilnorAlgebra::new(ring, f)?.profile(k_max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Smooth,
    Singular,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Smooth => "Smooth",
            Verdict::Singular => "Singular",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// Evidence for a smoothness verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessCertificate {
    pub verdict: Verdict,
    /// Field the input was given over.
    pub field: FieldConfig,
    /// Degree whose graded piece was tested (the certifying degree for
    /// `Smooth`, the last degree tried otherwise).
    pub degree: Option<u32>,
    /// Rank found in that degree and the dimension of the graded piece.
    pub rank: usize,
    pub ambient: usize,
    /// How the rank was established: `fp:<p>` for a modular image,
    /// `rational` for exact elimination over Q.
    pub certified_by: Option<String>,
    /// A witness singular point, if one was found.
    pub point: Option<Vec<String>>,
    /// Field of the witness point.
    pub point_field: Option<String>,
    pub note: String,
}

/// Coordinate points, then points with coordinates in `{-1, 0, 1}`, as
/// candidate singular points over any field.
fn small_candidate_points<K: Field>(field: &K, nvars: usize) -> Vec<Vec<K::Elem>> {
    let mut out = Vec::new();
    if nvars > 8 {
        for i in 0..nvars {
            let mut v = vec![field.zero(); nvars];
            v[i] = field.one();
            out.push(v);
        }
        return out;
    }
    let total = 3usize.pow(nvars as u32);
    let mut pts: Vec<Vec<i64>> = (0..total)
        .map(|mut code| {
            (0..nvars)
                .map(|_| {
                    let d = (code % 3) as i64 - 1;
                    code /= 3;
                    d
                })
                .collect()
        })
        .filter(|v: &Vec<i64>| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect();
    pts.sort_by_key(|v| v.iter().filter(|&&x| x != 0).count());
    for v in pts {
        out.push(v.into_iter().map(|x| field.from_i64(x)).collect());
    }
    out
}

/// Checks smoothness of the hypersurface `F = 0` via `J_{F,T+1} = S_{T+1}`.
///
/// Over the rationals a full-rank modular image certifies `Smooth`; if the
/// images are deficient the rank is recomputed exactly, and a deficient
/// exact rank certifies `Singular`. Over `F_p` a deficient rank is reported
/// as `Inconclusive`, since the input may be smooth in characteristic 0.
pub fn is_smooth_hypersurface<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
) -> Result<SmoothnessCertificate> {
    let d = require_form(f, "F")?;
    ring.require_characteristic_above(d as u64)?;
    let k = (socle_degree(ring.nvars(), d) + 1).max(0) as u32;
    let partials = ring.partials(f);
    let check = check_full(ring, &partials, k)?;
    let field = ring.field().config();
    if let Some(p) = check.certified_by {
        return Ok(SmoothnessCertificate {
            verdict: Verdict::Smooth,
            field,
            degree: Some(k),
            rank: check.ambient,
            ambient: check.ambient,
            certified_by: Some(format!("fp:{p}")),
            point: None,
            point_field: None,
            note: format!("J_{{F,{k}}} = S_{k}"),
        });
    }
    let point = small_candidate_points(ring.field(), ring.nvars())
        .into_iter()
        .find(|pt| {
            partials
                .iter()
                .all(|g| ring.field().is_zero(&ring.evaluate(g, pt).expect("length")))
        })
        .map(|pt| pt.iter().map(|x| ring.field().format_fixed(x)).collect());
    if field != FieldConfig::Rational {
        return Ok(SmoothnessCertificate {
            verdict: Verdict::Inconclusive,
            field,
            degree: Some(k),
            rank: check.rank,
            ambient: check.ambient,
            certified_by: Some(field.to_string()),
            point_field: point.as_ref().map(|_| field.to_string()),
            point,
            note: "rank deficient modulo p; recompute over the rationals to decide".into(),
        });
    }
    let piece = ideal_graded(ring, &partials, k)?;
    let (verdict, note) = if piece.is_full() {
        (Verdict::Smooth, format!("J_{{F,{k}}} = S_{k}"))
    } else {
        (
            Verdict::Singular,
            format!("dim M(F)_{k} = {} > 0", piece.codim()),
        )
    };
    Ok(SmoothnessCertificate {
        verdict,
        field,
        degree: Some(k),
        rank: piece.dim(),
        ambient: piece.ambient_dim(),
        certified_by: Some("rational".into()),
        point_field: point.as_ref().map(|_| field.to_string()),
        point,
        note,
    })
}

/// Result of a degree sweep for emptiness of a projective zero locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Emptiness {
    /// `I_k = S_k` at this degree, certified modulo `prime`.
    CertifiedEmpty { degree: u32, prime: u64 },
    /// No degree up to `k_max` was full. `stable_from` is the degree from
    /// which the Hilbert function modulo every certification prime grows
    /// maximally, so by Gotzmann persistence no later degree can be full
    /// modulo those primes either.
    Inconclusive {
        k_max: u32,
        checks: Vec<FullnessCheck>,
        stable_from: Option<u32>,
    },
}

/// Sweeps `k = max deg g, ..., k_max` looking for a degree where the ideal
/// fills `S_k` (projective Nullstellensatz). Reports the smallest such
/// degree.
pub fn projective_empty<K: Field>(
    ring: &PolyRing<K>,
    gens: &[Polynomial<K::Elem>],
    k_max: u32,
) -> Result<Emptiness> {
    let mut start = 0;
    for g in gens {
        if let Some(d) = generator_degree(g)? {
            start = start.max(d);
        }
    }
    let primes = ring.field().certification_primes();
    let mut previous: Vec<Option<usize>> = vec![None; primes.len()];
    let mut stable = vec![false; primes.len()];
    let mut checks = Vec::new();
    for k in start..=k_max {
        let ambient = ring.graded_dim(k);
        let mut best = 0;
        for (i, &p) in primes.iter().enumerate() {
            if stable[i] {
                continue;
            }
            let rank = rank_mod(ring, gens, k, p)?;
            if rank == ambient {
                return Ok(Emptiness::CertifiedEmpty { degree: k, prime: p });
            }
            let h = ambient - rank;
            if previous[i].is_some_and(|prev| h == macaulay_growth(prev, k - 1)) {
                stable[i] = true;
            }
            previous[i] = Some(h);
            best = best.max(rank);
        }
        checks.push(FullnessCheck {
            degree: k,
            ambient,
            rank: best,
            certified_by: None,
        });
        if stable.iter().all(|&s| s) {
            return Ok(Emptiness::Inconclusive {
                k_max,
                checks,
                stable_from: Some(k - 1),
            });
        }
    }
    Ok(Emptiness::Inconclusive {
        k_max,
        checks,
        stable_from: None,
    })
}

/// Options for [`ci_smooth`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CiOptions {
    pub k_max: u32,
    /// Accept configurations other than a cubic and a quadric in five
    /// variables.
    pub allow_general: bool,
    /// Prime for the point-search falsification path.
    pub search_prime: u64,
}

impl Default for CiOptions {
    fn default() -> Self {
        CiOptions {
            k_max: 12,
            allow_general: false,
            search_prime: 7,
        }
    }
}

/// Generators of the singular-locus ideal of `Y = {F = Q = 0}`: `F`, `Q`
/// and the 2x2 minors of the Jacobian matrix of `(F, Q)`.
pub fn ci_generators<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
    q: &Polynomial<K::Elem>,
) -> Vec<Polynomial<K::Elem>> {
    let fp = ring.partials(f);
    let qp = ring.partials(q);
    let mut gens = vec![f.clone(), q.clone()];
    for i in 0..ring.nvars() {
        for j in i + 1..ring.nvars() {
            let minor = ring.sub(&ring.mul(&fp[i], &qp[j]), &ring.mul(&fp[j], &qp[i]));
            gens.push(minor);
        }
    }
    gens
}

/// Smoothness of the complete intersection `Y = {F = Q = 0}` by the
/// Jacobian criterion: `Y` is smooth iff `F`, `Q` and the 2x2 minors have no
/// common projective zero.
///
/// A certified-empty sweep gives `Smooth`. Otherwise all of `P^n(F_p)` is
/// searched for a common zero of the generators reduced modulo the search
/// prime; a hit gives `Singular` for that reduction, with the point.
pub fn ci_smooth<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
    q: &Polynomial<K::Elem>,
    opts: CiOptions,
) -> Result<SmoothnessCertificate> {
    let df = require_form(f, "F")?;
    let dq = require_form(q, "Q")?;
    if !opts.allow_general && (ring.nvars() != 5 || df != 3 || dq != 2) {
        return Err(Error::DegreeMismatch(format!(
            "expected a cubic and a quadric in 5 variables, got degrees {df} and {dq} in {} \
             variables (set the generality flag to override)",
            ring.nvars()
        )));
    }
    let field = ring.field().config();
    let gens = ci_generators(ring, f, q);
    match projective_empty(ring, &gens, opts.k_max)? {
        Emptiness::CertifiedEmpty { degree, prime } => {
            let ambient = ring.graded_dim(degree);
            Ok(SmoothnessCertificate {
                verdict: Verdict::Smooth,
                field,
                degree: Some(degree),
                rank: ambient,
                ambient,
                certified_by: Some(format!("fp:{prime}")),
                point: None,
                point_field: None,
                note: format!("(F, Q, minors) fills S_{degree}"),
            })
        }
        Emptiness::Inconclusive { checks, stable_from, .. } => {
            let last = checks.last().cloned();
            let p = opts.search_prime;
            let hit = common_zero_mod_p(ring, &gens, p)?;
            let (verdict, note) = match &hit {
                Some(_) => (
                    Verdict::Singular,
                    format!("common zero of F, Q and all minors over F_{p} (singular reduction)"),
                ),
                None => (
                    Verdict::Inconclusive,
                    match stable_from {
                        Some(k) => format!(
                            "Hilbert function persistent from degree {k} modulo the certification \
                             primes and no singular point over F_{p}"
                        ),
                        None => format!(
                            "not full up to degree {} and no singular point over F_{p}",
                            opts.k_max
                        ),
                    },
                ),
            };
            Ok(SmoothnessCertificate {
                verdict,
                field,
                degree: last.as_ref().map(|c| c.degree),
                rank: last.as_ref().map_or(0, |c| c.rank),
                ambient: last.as_ref().map_or(0, |c| c.ambient),
                certified_by: None,
                point: hit.map(|v| v.iter().map(u64::to_string).collect()),
                point_field: Some(format!("fp:{p}")),
                note,
            })
        }
    }
}

/// A polynomial reduced modulo a small prime, ready for fast evaluation.
pub(crate) struct ModpPoly {
    terms: Vec<(Vec<u32>, u64)>,
    p: u64,
}

impl ModpPoly {
    /// Reduces `f` modulo `p` after clearing denominators. Scaling does not
    /// change the zero set.
    pub fn new<K: Field>(ring: &PolyRing<K>, f: &Polynomial<K::Elem>, p: u64) -> Result<Self> {
        let coeffs: Vec<K::Elem> = f.terms().map(|(_, c)| c.clone()).collect();
        let red = ring.field().reduce_scaled(&coeffs, p).ok_or_else(|| {
            Error::Precondition(format!("polynomial has no reduction modulo {p}"))
        })?;
        Ok(ModpPoly {
            terms: f
                .terms()
                .map(|(m, _)| m.exponents().to_vec())
                .zip(red)
                .filter(|(_, c)| *c != 0)
                .collect(),
            p,
        })
    }

    pub fn eval(&self, pt: &[u64]) -> u64 {
        let p = self.p;
        let mut acc = 0;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (x, &k) in pt.iter().zip(e) {
                for _ in 0..k {
                    t = t * x % p;
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }
}

/// All points of `P^{n}(F_p)` for `nvars = n + 1`, normalized so the first
/// nonzero coordinate is 1, in lexicographic order.
pub fn projective_points(nvars: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..nvars {
        let free = nvars - lead - 1;
        let count = p.pow(free as u32);
        for code in 0..count {
            let mut v = vec![0u64; nvars];
            v[lead] = 1;
            let mut c = code;
            for j in (lead + 1..nvars).rev() {
                v[j] = c % p;
                c /= p;
            }
            out.push(v);
        }
    }
    out
}

/// First point of `P^n(F_p)` where every generator vanishes modulo `p`.
pub fn common_zero_mod_p<K: Field>(
    ring: &PolyRing<K>,
    gens: &[Polynomial<K::Elem>],
    p: u64,
) -> Result<Option<Vec<u64>>> {
    let reduced = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| ModpPoly::new(ring, g, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(projective_points(ring.nvars(), p)
        .into_iter()
        .find(|pt| reduced.iter().all(|g| g.eval(pt) == 0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::singular::special_q;

    fn ring() -> PolyRing<Rationals> {
        PolyRing::new(Rationals, 5)
    }

    fn fermat(r: &PolyRing<Rationals>) -> Polynomial<num_rational::BigRational> {
        r.parse("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", Family::Primal, Some(3))
            .unwrap()
    }

    #[test]
    fn reference_dims() {
        assert_eq!(smooth_reference_dims(5, 3).unwrap(), vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(smooth_reference_dims(5, 2).unwrap(), vec![1]);
        assert_eq!(smooth_reference_dims(3, 4).unwrap(), vec![1, 3, 6, 7, 6, 3, 1]);
        assert!(smooth_reference_dims(3, 1).is_err());
    }

    #[test]
    fn jacobian_of_special_cubic() {
        let r = ring();
        let q = special_q(&r, 3).unwrap();
        assert_eq!(jacobian_graded(&r, &q, 3).unwrap().dim(), 25);
        let j4 = jacobian_graded(&r, &q, 4).unwrap();
        assert_eq!(j4.dim(), 65);
        // Exactly the pure fourth powers are missing.
        let pure: Vec<usize> = (0..5)
            .map(|i| {
                let mut e = vec![0; 5];
                e[i] = 4;
                r.basis(4).index_of(&Monomial::new(e)).unwrap()
            })
            .collect();
        assert_eq!(j4.complement(), pure);
        assert!(jacobian_graded(&r, &q, 1).unwrap().is_zero());
    }

    #[test]
    fn milnor_dims_of_special_cubic() {
        let r = ring();
        let q = special_q(&r, 3).unwrap();
        let alg = MilnorAlgebra::new(&r, &q).unwrap();
        assert_eq!(alg.dim(3), 10);
        assert_eq!(alg.dim(5), 5);
    }

    #[test]
    fn fermat_is_smooth_and_artinian() {
        let r = ring();
        let f = fermat(&r);
        assert_eq!(milnor_dim(&r, &f, 6).unwrap(), 0);
        let c = is_smooth_hypersurface(&r, &f).unwrap();
        assert_eq!(c.verdict, Verdict::Smooth);
        assert_eq!(c.degree, Some(6));
        assert_eq!(c.rank, 210);
    }

    #[test]
    fn singular_examples() {
        let r = ring();
        let q = special_q(&r, 3).unwrap();
        let c = is_smooth_hypersurface(&r, &q).unwrap();
        assert_eq!(c.verdict, Verdict::Singular);
        assert_eq!(c.point.as_deref(), Some(&["1/1", "0/1", "0/1", "0/1", "0/1"].map(String::from)[..]));
        let cube = r.parse("x0^3", Family::Primal, Some(3)).unwrap();
        assert_eq!(is_smooth_hypersurface(&r, &cube).unwrap().verdict, Verdict::Singular);
        assert!(matches!(
            is_smooth_hypersurface(&r, &r.zero(Family::Primal)),
            Err(Error::ZeroPolynomial(_))
        ));
    }

    #[test]
    fn prime_field_deficiency_is_inconclusive() {
        let r = PolyRing::new(PrimeField::new(10007).unwrap(), 5);
        let cube = r.parse("x0^3", Family::Primal, Some(3)).unwrap();
        assert_eq!(is_smooth_hypersurface(&r, &cube).unwrap().verdict, Verdict::Inconclusive);
        let f = r
            .parse("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", Family::Primal, Some(3))
            .unwrap();
        assert_eq!(is_smooth_hypersurface(&r, &f).unwrap().verdict, Verdict::Smooth);
        let small = PolyRing::new(PrimeField::new(3).unwrap(), 5);
        let g = small.parse("x0^3", Family::Primal, Some(3)).unwrap();
        assert!(matches!(
            is_smooth_hypersurface(&small, &g),
            Err(Error::CharacteristicTooSmall { .. })
        ));
    }

    #[test]
    fn ideal_pieces() {
        let r = ring();
        let vars: Vec<_> = (0..5).map(|i| r.var(i, Family::Primal)).collect();
        assert!(ideal_graded(&r, &vars, 1).unwrap().is_full());
        let f = fermat(&r);
        assert_eq!(ideal_graded(&r, &[f.clone()], 5).unwrap().dim(), r.graded_dim(2));
        assert_eq!(
            ideal_graded(&r, &r.partials(&f), 4).unwrap(),
            jacobian_graded(&r, &f, 4).unwrap()
        );
    }

    #[test]
    fn emptiness_sweeps() {
        let r = ring();
        let vars: Vec<_> = (0..5).map(|i| r.var(i, Family::Primal)).collect();
        assert!(matches!(
            projective_empty(&r, &vars, 4).unwrap(),
            Emptiness::CertifiedEmpty { degree: 1, .. }
        ));
        assert!(matches!(
            projective_empty(&r, &vars[..2], 6).unwrap(),
            Emptiness::Inconclusive { k_max: 6, .. }
        ));
        let f = fermat(&r);
        match projective_empty(&r, &r.partials(&f), 8).unwrap() {
            Emptiness::CertifiedEmpty { degree, .. } => assert_eq!(degree, 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn macaulay_growth_values() {
        assert_eq!(macaulay_growth(136, 9), 166);
        assert_eq!(macaulay_growth(47, 5), 65);
        assert_eq!(macaulay_growth(3, 4), 3);
        assert_eq!(macaulay_growth(0, 4), 0);
        // The polynomial ring itself grows maximally.
        for k in 1..8u32 {
            let r = ring();
            assert_eq!(macaulay_growth(r.graded_dim(k), k), r.graded_dim(k + 1));
        }
    }

    #[test]
    fn sweep_stops_once_the_hilbert_function_persists() {
        let r = ring();
        let vars: Vec<_> = (0..5).map(|i| r.var(i, Family::Primal)).collect();
        // S/(x0, x1) is a polynomial ring in three variables.
        match projective_empty(&r, &vars[..2], 12).unwrap() {
            Emptiness::Inconclusive { checks, stable_from, .. } => {
                assert_eq!(stable_from, Some(1));
                assert_eq!(checks.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn projective_point_count() {
        assert_eq!(projective_points(5, 7).len(), 2801);
        assert_eq!(projective_points(3, 2).len(), 7);
    }

    #[test]
    fn ci_rejects_zero_and_wrong_shape() {
        let r = ring();
        let f = fermat(&r);
        assert!(matches!(
            ci_smooth(&r, &f, &r.zero(Family::Primal), CiOptions::default()),
            Err(Error::ZeroPolynomial(_))
        ));
        let lin = r.var(0, Family::Primal);
        assert!(matches!(
            ci_smooth(&r, &f, &lin, CiOptions::default()),
            Err(Error::DegreeMismatch(_))
        ));
    }
}
