//! Special singular forms, singular points, nodes and defects of point sets.

use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::jacobian::{projective_points, require_form, smooth_reference_dims, socle_degree, MilnorAlgebra, ModpPoly};
use crate::linalg::Matrix;
use crate::poly::{Family, Monomial, PolyRing, Polynomial};

/// Largest number of projective points a brute-force search will scan.
pub const MAX_SEARCH_POINTS: u64 = 20_000_000;

/// The sum of all squarefree cubic monomials `x_i x_j x_k`, `i < j < k`.
///
/// Only `d = 3` is available: the degree-`d` family `x_i^{d-2} x_j^2 +
/// x_i^2 x_j^{d-3}` mixes degrees `d` and `d - 1`, so it is rejected with a
/// diagnostic rather than repaired.
pub fn special_q<K: Field>(ring: &PolyRing<K>, d: u32) -> Result<Polynomial<K::Elem>> {
    let nvars = ring.nvars();
    if nvars < 3 {
        return Err(Error::OutOfRange(format!("need n >= 2, got n = {}", nvars as i64 - 1)));
    }
    if d < 3 {
        return Err(Error::OutOfRange(format!("need d >= 3, got d = {d}")));
    }
    if d > 3 {
        let bad = ring.from_terms(
            [
                (Monomial::new(pair_exponents(nvars, d - 2, 2)), ring.field().one()),
                (Monomial::new(pair_exponents(nvars, 2, d - 3)), ring.field().one()),
            ],
            Family::Primal,
        );
        let found = bad.terms().map(|(m, _)| m.degree()).min().unwrap_or(d);
        return Err(Error::Inhomogeneous { expected: d, found });
    }
    let mut terms = Vec::new();
    for i in 0..nvars {
        for j in i + 1..nvars {
            for k in j + 1..nvars {
                let mut e = vec![0; nvars];
                e[i] = 1;
                e[j] = 1;
                e[k] = 1;
                terms.push((Monomial::new(e), ring.field().one()));
            }
        }
    }
    Ok(ring.from_terms(terms, Family::Primal))
}

fn pair_exponents(nvars: usize, a: u32, b: u32) -> Vec<u32> {
    let mut e = vec![0; nvars];
    e[0] = a;
    e[1] = b;
    e
}

/// Scales `v` so its first nonzero coordinate is 1; `None` for the zero
/// vector.
pub fn normalize_point<K: Field>(field: &K, v: &[K::Elem]) -> Option<Vec<K::Elem>> {
    let lead = v.iter().find(|x| !field.is_zero(x))?;
    let inv = field.inv(lead).expect("nonzero");
    Some(v.iter().map(|x| field.mul(x, &inv)).collect())
}

/// Normalizes a list of projective points and rejects zero or repeated
/// points.
pub fn point_set<K: Field>(field: &K, nvars: usize, pts: &[Vec<K::Elem>]) -> Result<Vec<Vec<K::Elem>>> {
    let mut out: Vec<Vec<K::Elem>> = Vec::new();
    for (i, p) in pts.iter().enumerate() {
        if p.len() != nvars {
            return Err(Error::PointFormat {
                line: i + 1,
                message: format!("expected {nvars} coordinates, found {}", p.len()),
            });
        }
        let Some(n) = normalize_point(field, p) else {
            return Err(Error::PointFormat {
                line: i + 1,
                message: "the zero vector is not a projective point".into(),
            });
        };
        if out.contains(&n) {
            return Err(Error::PointFormat {
                line: i + 1,
                message: "repeated point".into(),
            });
        }
        out.push(n);
    }
    Ok(out)
}

/// Parses a point-set file: one point per line, comma-separated integers or
/// rationals `p/q`, `#` starts a comment.
pub fn parse_points<K: Field>(field: &K, nvars: usize, text: &str) -> Result<Vec<Vec<K::Elem>>> {
    let mut pts = Vec::new();
    let mut lines = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut v = Vec::new();
        for tok in line.split(',') {
            let tok = tok.trim();
            let r: BigRational = tok.parse().map_err(|_| Error::PointFormat {
                line: ln + 1,
                message: format!("bad coordinate '{tok}'"),
            })?;
            v.push(field.from_rational(&r).map_err(|e| Error::PointFormat {
                line: ln + 1,
                message: e.to_string(),
            })?);
        }
        pts.push(v);
        lines.push(ln + 1);
    }
    point_set(field, nvars, &pts).map_err(|e| match e {
        Error::PointFormat { line, message } => Error::PointFormat {
            line: lines[line - 1],
            message,
        },
        other => other,
    })
}

/// The unit vectors `e_0, ..., e_n`.
pub fn coordinate_points<K: Field>(field: &K, nvars: usize) -> Vec<Vec<K::Elem>> {
    (0..nvars)
        .map(|i| {
            let mut v = vec![field.zero(); nvars];
            v[i] = field.one();
            v
        })
        .collect()
}

/// True iff `F` and all its first partials vanish at `pt`.
pub fn is_singular_point<K: Field>(ring: &PolyRing<K>, f: &Polynomial<K::Elem>, pt: &[K::Elem]) -> Result<bool> {
    if !ring.field().is_zero(&ring.evaluate(f, pt)?) {
        return Ok(false);
    }
    for g in ring.partials(f) {
        if !ring.field().is_zero(&ring.evaluate(&g, pt)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The candidates at which `F` is singular, in input order.
pub fn singular_points<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
    candidates: &[Vec<K::Elem>],
) -> Result<Vec<Vec<K::Elem>>> {
    let mut out = Vec::new();
    for c in candidates {
        if is_singular_point(ring, f, c)? {
            out.push(c.clone());
        }
    }
    Ok(out)
}

/// Every point of `P^n(F_p)` where the reduction of `F` modulo `p` is
/// singular, in lexicographic order of normalized coordinates.
pub fn brute_singular_search<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
    p: u64,
) -> Result<Vec<Vec<u64>>> {
    require_form(f, "F")?;
    if !crate::field::is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    let count = (0..ring.nvars() as u32).try_fold(0u64, |acc, i| acc.checked_add(p.checked_pow(i)?));
    if count.map_or(true, |c| c > MAX_SEARCH_POINTS) {
        return Err(Error::OutOfRange(format!(
            "P^{}(F_{p}) has more than {MAX_SEARCH_POINTS} points",
            ring.nvars() - 1
        )));
    }
    let mut gens = vec![ModpPoly::new(ring, f, p)?];
    for g in ring.partials(f) {
        if !g.is_zero() {
            gens.push(ModpPoly::new(ring, &g, p)?);
        }
    }
    Ok(projective_points(ring.nvars(), p)
        .into_par_iter()
        .filter(|pt| gens.iter().all(|g| g.eval(pt) == 0))
        .collect())
}

/// Hessian of `F` at `pt`: the matrix of second partials.
pub fn hessian_at<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
    pt: &[K::Elem],
) -> Result<Matrix<K::Elem>> {
    let n = ring.nvars();
    let first = ring.partials(f);
    let mut rows = Vec::with_capacity(n);
    for fi in &first {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(ring.evaluate(&ring.partial(fi, j)?, pt)?);
        }
        rows.push(row);
    }
    Ok(Matrix::from_rows(rows, n))
}

/// Affine Hessian at a singular point in the chart `x_c = 1`, where `c` is
/// `chart` or, by default, the first nonzero coordinate.
pub fn affine_hessian<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
    pt: &[K::Elem],
    chart: Option<usize>,
) -> Result<Matrix<K::Elem>> {
    let field = ring.field();
    let c = match chart {
        Some(c) => c,
        None => pt
            .iter()
            .position(|x| !field.is_zero(x))
            .ok_or_else(|| Error::Precondition("the zero vector is not a point".into()))?,
    };
    if c >= pt.len() || field.is_zero(&pt[c]) {
        return Err(Error::Precondition(format!("coordinate {c} of the point is zero")));
    }
    let inv = field.inv(&pt[c]).expect("nonzero");
    let scaled: Vec<K::Elem> = pt.iter().map(|x| field.mul(x, &inv)).collect();
    let h = hessian_at(ring, f, &scaled)?;
    let keep: Vec<usize> = (0..ring.nvars()).filter(|&i| i != c).collect();
    let rows = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| h[(i, j)].clone()).collect())
        .collect();
    Ok(Matrix::from_rows(rows, keep.len()))
}

/// True iff `pt` is an ordinary double point: the affine Hessian in a chart
/// through `pt` is nonsingular.
pub fn is_node<K: Field>(
    ring: &PolyRing<K>,
    f: &Polynomial<K::Elem>,
    pt: &[K::Elem],
    chart: Option<usize>,
) -> Result<bool> {
    require_form(f, "F")?;
    if pt.len() != ring.nvars() {
        return Err(Error::LengthMismatch {
            expected: ring.nvars(),
            found: pt.len(),
        });
    }
    if !is_singular_point(ring, f, pt)? {
        return Err(Error::Precondition("point is not a singular point of F".into()));
    }
    let h = affine_hessian(ring, f, pt, chart)?;
    Ok(ring.field().rank(&h) == h.rows())
}

/// `θ_k`: row `i` holds the values of the degree-`k` monomials at point `i`.
pub fn evaluation_matrix<K: Field>(ring: &PolyRing<K>, points: &[Vec<K::Elem>], k: u32) -> Matrix<K::Elem> {
    let field = ring.field();
    let basis = ring.basis(k);
    let rows = points
        .iter()
        .map(|pt| {
            basis
                .monomials()
                .iter()
                .map(|m| {
                    m.exponents()
                        .iter()
                        .zip(pt)
                        .fold(field.one(), |acc, (&e, x)| field.mul(&acc, &field.pow(x, e as u64)))
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(rows, basis.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DefectReport {
    pub k: u32,
    pub points: usize,
    pub rank: usize,
    pub defect: usize,
}

pub fn defect<K: Field>(ring: &PolyRing<K>, points: &[Vec<K::Elem>], k: u32) -> DefectReport {
    let rank = ring.field().rank(&evaluation_matrix(ring, points, k));
    DefectReport {
        k,
        points: points.len(),
        rank,
        defect: points.len() - rank,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaCheck {
    pub k: u32,
    pub holds: bool,
    /// `dim M(F)_{T-k}`.
    pub lhs: usize,
    /// `dim M(F_s)_k + defect_k`.
    pub rhs: usize,
    pub reference: usize,
    pub defect: usize,
}

/// Largest `k` for which the defect identity applies: `nd - 2n - 1`.
pub fn lemma_range(nvars: usize, d: u32) -> i64 {
    let n = nvars as i64 - 1;
    n * d as i64 - 2 * n - 1
}

/// Checks `dim M(F)_{T-k} = dim M(F_s)_k + defect_k` for a form whose
/// singular locus is the given reduced point set.
pub fn check_lemma_defect<K: Field>(
    alg: &MilnorAlgebra<K>,
    points: &[Vec<K::Elem>],
    k: u32,
) -> Result<LemmaCheck> {
    let ring = alg.ring();
    let d = alg.degree();
    let top = lemma_range(ring.nvars(), d);
    if k as i64 > top {
        return Err(Error::OutOfRange(format!("k = {k} outside 0..={top}")));
    }
    for p in points {
        if !is_singular_point(ring, alg.form(), p)? {
            return Err(Error::Precondition("a listed point is not singular".into()));
        }
    }
    let t = socle_degree(ring.nvars(), d);
    let reference = smooth_reference_dims(ring.nvars(), d)?[k as usize] as usize;
    let lhs = alg.dim((t - k as i64) as u32);
    let def = defect(ring, points, k).defect;
    Ok(LemmaCheck {
        k,
        holds: lhs == reference + def,
        lhs,
        rhs: reference + def,
        reference,
        defect: def,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn ring() -> PolyRing<Rationals> {
        PolyRing::new(Rationals, 5)
    }

    #[test]
    fn special_q_shapes() {
        let r = ring();
        let q = special_q(&r, 3).unwrap();
        assert_eq!(q.num_terms(), 10);
        assert_eq!(q.homogeneous_degree(), Some(3));
        let r3 = PolyRing::new(Rationals, 3);
        assert_eq!(r3.format(&special_q(&r3, 3).unwrap()), "x0*x1*x2");
        assert!(matches!(special_q(&r3, 4), Err(Error::Inhomogeneous { expected: 4, found: 3 })));
        assert!(special_q(&r, 2).is_err());
        assert!(special_q(&PolyRing::new(Rationals, 2), 3).is_err());
    }

    #[test]
    fn nodes_of_special_q() {
        let r = ring();
        let q = special_q(&r, 3).unwrap();
        let pts = coordinate_points(r.field(), 5);
        assert_eq!(singular_points(&r, &q, &pts).unwrap().len(), 5);
        let h = affine_hessian(&r, &q, &pts[0], None).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(h[(i, j)], r.field().from_i64((i != j) as i64));
            }
        }
        for p in &pts {
            assert!(is_node(&r, &q, p, None).unwrap());
        }
    }

    #[test]
    fn degenerate_hessian() {
        let r = ring();
        let f = r.parse("x0^3", Family::Primal, Some(3)).unwrap();
        let p = coordinate_points(r.field(), 5).pop().unwrap();
        assert!(!is_node(&r, &f, &p, None).unwrap());
        let q = special_q(&r, 3).unwrap();
        let ones = vec![r.field().one(); 5];
        assert!(matches!(is_node(&r, &q, &ones, None), Err(Error::Precondition(_))));
    }

    #[test]
    fn brute_search_over_f7() {
        let r = ring();
        let q = special_q(&r, 3).unwrap();
        let found = brute_singular_search(&r, &q, 7).unwrap();
        let expect: Vec<Vec<u64>> = (0..5)
            .map(|i| (0..5).map(|j| (i == j) as u64).collect())
            .collect();
        assert_eq!(found, expect);
        let fermat = r
            .parse("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", Family::Primal, Some(3))
            .unwrap();
        assert!(brute_singular_search(&r, &fermat, 7).unwrap().is_empty());
    }

    #[test]
    fn defects_of_coordinate_points() {
        let r = ring();
        let pts = coordinate_points(r.field(), 5);
        assert_eq!(defect(&r, &pts, 0).defect, 4);
        for k in 1..=4 {
            assert_eq!(defect(&r, &pts, k).defect, 0);
        }
        assert_eq!(defect(&r, &pts[..1], 3).defect, 0);
    }

    #[test]
    fn lemma_identity_for_special_q() {
        let r = ring();
        let alg = MilnorAlgebra::new(&r, &special_q(&r, 3).unwrap()).unwrap();
        let pts = coordinate_points(r.field(), 5);
        let c0 = check_lemma_defect(&alg, &pts, 0).unwrap();
        assert_eq!((c0.lhs, c0.reference, c0.defect), (5, 1, 4));
        for k in 0..=3 {
            assert!(check_lemma_defect(&alg, &pts, k).unwrap().holds);
        }
        assert!(matches!(check_lemma_defect(&alg, &pts, 4), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn point_file_format() {
        let f = PrimeField::new(7).unwrap();
        let pts = parse_points(&f, 3, "# header\n2, 4, 0\n\n0,0,1 # e2\n").unwrap();
        assert_eq!(pts, vec![vec![1, 2, 0], vec![0, 0, 1]]);
        assert!(matches!(
            parse_points(&f, 3, "1,2,0\n\n2,4,0\n"),
            Err(Error::PointFormat { line: 3, .. })
        ));
        assert!(parse_points(&Rationals, 3, "0,0,0").is_err());
        assert!(parse_points(&Rationals, 3, "1,a,0").is_err());
        let q = parse_points(&Rationals, 2, "2, 1/3").unwrap();
        assert_eq!(Rationals.format(&q[0][1]), "1/6");
    }
}
