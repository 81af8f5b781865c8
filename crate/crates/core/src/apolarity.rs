//! Apolarity: perp spaces, the socle functional, Macaulay pairings, colon
//! ideals and the cubic `C` of a pair `(F, Q)`.
//!
//! Primal polynomials live in `x` variables and the dual side in `y`
//! variables. The polar pairing `<x^a, y^b> = a! [a = b]` identifies the
//! dual of `S_k` with the degree-`k` forms in `y`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::jacobian::{is_smooth_hypersurface, require_form, MilnorAlgebra, Verdict};
use crate::linalg::{kernel, GradedSubspace, Matrix};
use crate::poly::{Family, PolyRing, Polynomial};

/// `E^⊥` in the other variable family. The dimension law and
/// `(E^⊥)^⊥ = E` are checked on every call.
pub fn perp_graded<K: Field>(ring: &PolyRing<K>, e: &GradedSubspace<K>) -> Result<GradedSubspace<K>> {
    let p = perp_unchecked(ring, e)?;
    if p.dim() + e.dim() != e.ambient_dim() {
        return Err(Error::Invariant(format!(
            "dim E + dim E^perp = {} + {} != {}",
            e.dim(),
            p.dim(),
            e.ambient_dim()
        )));
    }
    if perp_unchecked(ring, &p)? != *e {
        return Err(Error::Invariant("perp is not an involution".into()));
    }
    Ok(p)
}

fn perp_unchecked<K: Field>(ring: &PolyRing<K>, e: &GradedSubspace<K>) -> Result<GradedSubspace<K>> {
    let k = e.degree();
    ring.require_characteristic_above(k as u64)?;
    let field = ring.field();
    let weights: Vec<K::Elem> = ring
        .basis(k)
        .monomials()
        .iter()
        .map(|m| ring.polar_weight(m))
        .collect();
    let weighted = Matrix::from_rows(
        e.basis()
            .row_iter()
            .map(|r| r.iter().zip(&weights).map(|(a, w)| field.mul(a, w)).collect())
            .collect(),
        e.ambient_dim(),
    );
    let ker = kernel(field, &weighted);
    GradedSubspace::span(field, ring.nvars(), k, e.family().other(), &ker)
}

/// Normalizes a nonzero vector so that its first nonzero entry is 1.
pub fn normalize_vector<K: Field>(field: &K, v: &[K::Elem]) -> Option<Vec<K::Elem>> {
    let lead = v.iter().find(|x| !field.is_zero(x))?;
    let inv = field.inv(lead).expect("nonzero");
    Some(v.iter().map(|x| field.mul(x, &inv)).collect())
}

/// The linear functional on `S_T` that vanishes on `J_{F,T}`, normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct SocleFunctional<K: Field> {
    pub degree: u32,
    /// Values on the monomial basis of `S_T`.
    pub lambda: Vec<K::Elem>,
}

impl<K: Field> SocleFunctional<K> {
    pub fn apply(&self, field: &K, coords: &[K::Elem]) -> K::Elem {
        crate::linalg::dot(field, &self.lambda, coords)
    }
}

/// Requires a smooth-certified form. Used by every operation that relies on
/// `M(F)` being Gorenstein with one-dimensional socle.
pub fn require_smooth<K: Field>(alg: &MilnorAlgebra<K>) -> Result<()> {
    let cert = is_smooth_hypersurface(alg.ring(), alg.form())?;
    if cert.verdict != Verdict::Smooth {
        return Err(Error::NotSmooth(format!(
            "F is {} ({})",
            cert.verdict.as_str(),
            cert.note
        )));
    }
    Ok(())
}

fn socle_top<K: Field>(alg: &MilnorAlgebra<K>) -> Result<u32> {
    let t = alg.socle_degree();
    if t < 0 {
        return Err(Error::Precondition("F must have degree at least 2".into()));
    }
    Ok(t as u32)
}

pub fn socle_functional<K: Field>(alg: &MilnorAlgebra<K>) -> Result<SocleFunctional<K>> {
    require_smooth(alg)?;
    let t = socle_top(alg)?;
    let j = alg.jacobian_piece(t);
    if j.codim() != 1 {
        return Err(Error::NotSmooth(format!("dim M(F)_{t} = {}", j.codim())));
    }
    let field = alg.ring().field();
    let ker = kernel(field, j.basis());
    let lambda = normalize_vector(field, ker.row(0)).expect("kernel vector is nonzero");
    Ok(SocleFunctional { degree: t, lambda })
}

/// Matrix of `(a, b) -> λ(a b)` on the canonical bases of `M(F)_j` and
/// `M(F)_{T-j}`.
pub fn macaulay_pairing_matrix<K: Field>(
    alg: &MilnorAlgebra<K>,
    lambda: &SocleFunctional<K>,
    j: u32,
) -> Result<Matrix<K::Elem>> {
    let t = lambda.degree;
    if j > t {
        return Err(Error::OutOfRange(format!("j = {j} outside 0..={t}")));
    }
    let ring = alg.ring();
    let left = ring.basis(j);
    let right = ring.basis(t - j);
    let top = ring.basis(t);
    let rows = alg
        .quotient_basis(j)
        .into_iter()
        .map(|a| {
            alg.quotient_basis(t - j)
                .into_iter()
                .map(|b| {
                    let m = left.get(a).mul(right.get(b));
                    lambda.lambda[top.index_of(&m).expect("degree T")].clone()
                })
                .collect()
        })
        .collect();
    Ok(Matrix::from_rows(rows, alg.dim(t - j)))
}

/// `(J_F : Q)_k = { a in S_k : a Q in J_{F, k + deg Q} }`.
pub fn colon_graded<K: Field>(
    alg: &MilnorAlgebra<K>,
    q: &Polynomial<K::Elem>,
    k: u32,
) -> Result<GradedSubspace<K>> {
    let ring = alg.ring();
    if q.family() != Family::Primal {
        return Err(Error::WrongFamily {
            expected: 'x',
            found: q.family().letter(),
        });
    }
    if q.is_zero() {
        return Ok(GradedSubspace::full(ring.field(), ring.nvars(), k, Family::Primal));
    }
    let m = require_form(q, "Q")?;
    let target = alg.jacobian_piece(k + m);
    let images: Vec<Vec<K::Elem>> = ring
        .basis(k)
        .monomials()
        .iter()
        .map(|a| {
            let prod = ring.mul_monomial(a, q);
            target.quotient_coordinates(&ring.coordinates(&prod, k + m).expect("homogeneous"))
        })
        .collect();
    let image_matrix = Matrix::from_rows(images, target.codim());
    let ker = kernel(ring.field(), &image_matrix.transpose());
    GradedSubspace::span(ring.field(), ring.nvars(), k, Family::Primal, &ker)
}

/// Degree in which the colon ideal determines `C`: `T - deg Q`.
fn colon_degree<K: Field>(alg: &MilnorAlgebra<K>, q: &Polynomial<K::Elem>) -> Result<u32> {
    let t = socle_top(alg)?;
    let m = require_form(q, "Q")?;
    if m > t {
        return Err(Error::DegreeMismatch(format!("deg Q = {m} exceeds T = {t}")));
    }
    Ok(t - m)
}

/// The normalized generator of `((J_{F,T} : Q)_{T - deg Q})^⊥`.
pub fn extract_c<K: Field>(alg: &MilnorAlgebra<K>, q: &Polynomial<K::Elem>) -> Result<Polynomial<K::Elem>> {
    let k = colon_degree(alg, q)?;
    let ring = alg.ring();
    let colon = colon_graded(alg, q, k)?;
    let perp = perp_graded(ring, &colon)?;
    if perp.dim() != 1 {
        return Err(Error::UnexpectedDimension {
            what: format!("perp of the degree-{k} colon"),
            expected: 1,
            found: perp.dim(),
        });
    }
    let c = ring.from_coordinates(perp.basis().row(0), k, Family::Dual);
    Ok(ring.normalize(&c))
}

/// The quadric `Q'` (class modulo `J_{F,2}`) with `λ(Q' b) = 0` for every
/// `b` in the hyperplane `G^⊥`. Returned reduced against the canonical basis
/// of `J_F` in its degree and normalized.
pub fn annihilator_quadric<K: Field>(
    alg: &MilnorAlgebra<K>,
    lambda: &SocleFunctional<K>,
    g: &Polynomial<K::Elem>,
) -> Result<Polynomial<K::Elem>> {
    let ring = alg.ring();
    let field = ring.field();
    if g.family() != Family::Dual {
        return Err(Error::WrongFamily {
            expected: 'y',
            found: g.family().letter(),
        });
    }
    let k = require_form(g, "G")?;
    let t = lambda.degree;
    if k > t {
        return Err(Error::DegreeMismatch(format!("deg G = {k} exceeds T = {t}")));
    }
    let m = t - k;
    let jk = alg.jacobian_piece(k);
    let g_span = GradedSubspace::span_polys(ring, k, Family::Dual, std::slice::from_ref(g))?;
    if !perp_graded(ring, &jk)?.contains(g_span.basis().row(0))? {
        return Err(Error::Precondition("G is not in the perp of J_F in its degree".into()));
    }
    let h = perp_graded(ring, &g_span)?;
    let unknowns = ring.basis(m);
    let bk = ring.basis(k);
    let top = ring.basis(t);
    let rows = h
        .basis()
        .row_iter()
        .map(|b| {
            unknowns
                .monomials()
                .iter()
                .map(|a| {
                    let mut acc = field.zero();
                    for (i, c) in b.iter().enumerate() {
                        if field.is_zero(c) {
                            continue;
                        }
                        let idx = top.index_of(&a.mul(bk.get(i))).expect("degree T");
                        acc = field.add(&acc, &field.mul(c, &lambda.lambda[idx]));
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let system = Matrix::from_rows(rows, unknowns.len());
    let solutions = kernel(field, &system);
    let jm = alg.jacobian_piece(m);
    let excess = solutions.rows() as i64 - jm.dim() as i64;
    if excess != 1 {
        return Err(Error::UnexpectedDimension {
            what: format!("annihilator of G^perp modulo J_F in degree {m}"),
            expected: jm.dim() + 1,
            found: solutions.rows(),
        });
    }
    let residual = solutions
        .row_iter()
        .map(|s| jm.reduce(s))
        .find(|r| r.iter().any(|x| !field.is_zero(x)))
        .ok_or_else(|| Error::Invariant("annihilator lies in J_F".into()))?;
    let q = ring.from_coordinates(&residual, m, Family::Primal);
    Ok(ring.normalize(&q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::singular::special_q;
    use num_rational::BigRational;

    type Q = BigRational;

    fn ring() -> PolyRing<Rationals> {
        PolyRing::new(Rationals, 5)
    }

    fn fermat(r: &PolyRing<Rationals>, fam: Family) -> Polynomial<Q> {
        let f = r
            .parse("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", Family::Primal, Some(3))
            .unwrap();
        f.with_family(fam)
    }

    #[test]
    fn perp_of_zero_and_of_one_monomial() {
        let r = ring();
        let z = GradedSubspace::zero(&Rationals, 5, 3, Family::Primal);
        assert!(perp_graded(&r, &z).unwrap().is_full());
        let x03 = r.parse("x0^3", Family::Primal, Some(3)).unwrap();
        let e = GradedSubspace::span_polys(&r, 3, Family::Primal, &[x03]).unwrap();
        let p = perp_graded(&r, &e).unwrap();
        assert_eq!(p.dim(), 34);
        assert_eq!(p.family(), Family::Dual);
        let y03 = r.parse("y0^3", Family::Dual, Some(3)).unwrap();
        assert!(!p.contains_poly(&r, &y03).unwrap());
    }

    #[test]
    fn perp_of_special_jacobian_contains_fermat() {
        let r = ring();
        let alg = MilnorAlgebra::new(&r, &special_q(&r, 3).unwrap()).unwrap();
        let p = perp_graded(&r, &alg.jacobian_piece(3)).unwrap();
        assert_eq!(p.dim(), 10);
        assert!(p.contains_poly(&r, &fermat(&r, Family::Dual)).unwrap());
    }

    #[test]
    fn perp_needs_large_characteristic() {
        let r = PolyRing::new(PrimeField::new(3).unwrap(), 5);
        let z = GradedSubspace::zero(r.field(), 5, 3, Family::Primal);
        assert!(matches!(perp_graded(&r, &z), Err(Error::CharacteristicTooSmall { .. })));
    }

    #[test]
    fn fermat_socle() {
        let r = ring();
        let alg = MilnorAlgebra::new(&r, &fermat(&r, Family::Primal)).unwrap();
        let s = socle_functional(&alg).unwrap();
        assert_eq!(s.degree, 5);
        let top = r.basis(5);
        // J_{F,5} is spanned by monomials with some exponent >= 2.
        for (i, m) in top.monomials().iter().enumerate() {
            let squarefree = m.exponents().iter().all(|&e| e <= 1);
            assert_eq!(Rationals.is_zero(&s.lambda[i]), !squarefree);
        }
        let scaled = r.scale(&Rationals.from_i64(-7), alg.form());
        let alg2 = MilnorAlgebra::new(&r, &scaled).unwrap();
        assert_eq!(socle_functional(&alg2).unwrap(), s);
    }

    #[test]
    fn socle_rejects_singular() {
        let r = ring();
        let alg = MilnorAlgebra::new(&r, &special_q(&r, 3).unwrap()).unwrap();
        assert!(matches!(socle_functional(&alg), Err(Error::NotSmooth(_))));
    }

    #[test]
    fn fermat_pairing_ranks() {
        let r = ring();
        let alg = MilnorAlgebra::new(&r, &fermat(&r, Family::Primal)).unwrap();
        let s = socle_functional(&alg).unwrap();
        for (j, expect) in [(0, 1), (1, 5), (2, 10), (5, 1)] {
            let m = macaulay_pairing_matrix(&alg, &s, j).unwrap();
            assert_eq!((m.rows(), m.cols()), (expect, expect));
            assert_eq!(Rationals.rank(&m), expect);
        }
        assert!(macaulay_pairing_matrix(&alg, &s, 6).is_err());
    }

    #[test]
    fn colon_of_jacobian_element_is_everything() {
        let r = ring();
        let alg = MilnorAlgebra::new(&r, &fermat(&r, Family::Primal)).unwrap();
        let q = r.parse("3*x0^2 - x4^2", Family::Primal, Some(2)).unwrap();
        assert!(colon_graded(&alg, &q, 1).unwrap().is_full());
        assert!(colon_graded(&alg, &q, 3).unwrap().is_full());
        assert!(matches!(
            extract_c(&alg, &q),
            Err(Error::UnexpectedDimension { found: 0, .. })
        ));
    }

    #[test]
    fn annihilator_round_trip_on_fermat() {
        // Every y^a with a squarefree of degree 3 pairs to zero with J_{F,3}.
        let r = ring();
        let alg = MilnorAlgebra::new(&r, &fermat(&r, Family::Primal)).unwrap();
        let s = socle_functional(&alg).unwrap();
        let g = r
            .parse("y0*y1*y2 + y1*y2*y3 + 2*y2*y3*y4 - y0*y3*y4", Family::Dual, Some(3))
            .unwrap();
        let q1 = annihilator_quadric(&alg, &s, &g).unwrap();
        assert_eq!(q1.homogeneous_degree(), Some(2));
        let c = extract_c(&alg, &q1).unwrap();
        assert_eq!(c, r.normalize(&g));
        let g5 = r.scale(&Rationals.from_i64(5), &g);
        assert_eq!(annihilator_quadric(&alg, &s, &g5).unwrap(), q1);
        let colon = colon_graded(&alg, &q1, 3).unwrap();
        let h = perp_graded(&r, &GradedSubspace::span_polys(&r, 3, Family::Dual, &[g]).unwrap())
            .unwrap();
        assert_eq!(colon, h);
        let bad = r.parse("y0^3", Family::Dual, Some(3)).unwrap();
        assert!(matches!(annihilator_quadric(&alg, &s, &bad), Err(Error::Precondition(_))));
    }
}
