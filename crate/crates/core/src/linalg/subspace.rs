use super::{kernel, Echelon, Matrix};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{graded_dim, Family, PolyRing, Polynomial};

/// A subspace of one graded piece `S_k` (or its dual), stored as the
/// canonical RREF basis in monomial coordinates. Two subspaces are equal iff
/// their canonical bases are equal.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedSubspace<K: Field> {
    field: K,
    nvars: usize,
    degree: u32,
    family: Family,
    echelon: Echelon<K::Elem>,
}

impl<K: Field> GradedSubspace<K> {
    /// Row span of `rows`, whose columns are monomial coordinates of `S_k`.
    pub fn span(
        field: &K,
        nvars: usize,
        degree: u32,
        family: Family,
        rows: &Matrix<K::Elem>,
    ) -> Result<Self> {
        let ambient = graded_dim(nvars, degree);
        if rows.cols() != ambient {
            return Err(Error::LengthMismatch {
                expected: ambient,
                found: rows.cols(),
            });
        }
        Ok(GradedSubspace {
            field: field.clone(),
            nvars,
            degree,
            family,
            echelon: field.rref(rows),
        })
    }

    /// Span of homogeneous degree-`k` polynomials.
    pub fn span_polys(
        ring: &PolyRing<K>,
        degree: u32,
        family: Family,
        polys: &[Polynomial<K::Elem>],
    ) -> Result<Self> {
        let rows = polys
            .iter()
            .map(|p| {
                if p.family() != family {
                    return Err(Error::AmbientMismatch(format!(
                        "expected '{}' polynomials",
                        family.letter()
                    )));
                }
                ring.coordinates(p, degree)
            })
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_rows(rows, ring.graded_dim(degree));
        Self::span(ring.field(), ring.nvars(), degree, family, &m)
    }

    pub fn zero(field: &K, nvars: usize, degree: u32, family: Family) -> Self {
        let m = Matrix::from_rows(Vec::new(), graded_dim(nvars, degree));
        Self::span(field, nvars, degree, family, &m).expect("shape matches")
    }

    pub fn full(field: &K, nvars: usize, degree: u32, family: Family) -> Self {
        let n = graded_dim(nvars, degree);
        GradedSubspace {
            field: field.clone(),
            nvars,
            degree,
            family,
            echelon: Echelon::from_parts(Matrix::identity(field, n), (0..n).collect()),
        }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn ambient_dim(&self) -> usize {
        self.echelon.cols()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim() - self.dim()
    }

    pub fn is_full(&self) -> bool {
        self.codim() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix<K::Elem> {
        self.echelon.basis()
    }

    pub fn echelon(&self) -> &Echelon<K::Elem> {
        &self.echelon
    }

    pub fn pivots(&self) -> &[usize] {
        self.echelon.pivots()
    }

    /// Monomial indices not used as pivots; their classes form the canonical
    /// basis of the quotient `S_k / self`.
    pub fn complement(&self) -> Vec<usize> {
        self.echelon.free_columns()
    }

    pub fn basis_polys(&self, ring: &PolyRing<K>) -> Vec<Polynomial<K::Elem>> {
        self.basis()
            .row_iter()
            .map(|r| ring.from_coordinates(r, self.degree, self.family))
            .collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree || self.family != other.family
        {
            return Err(Error::AmbientMismatch(format!(
                "({} vars, degree {}, '{}') vs ({} vars, degree {}, '{}')",
                self.nvars,
                self.degree,
                self.family.letter(),
                other.nvars,
                other.degree,
                other.family.letter()
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let stacked = self.basis().vstack(other.basis());
        Self::span(&self.field, self.nvars, self.degree, self.family, &stacked)
    }

    /// Intersection via `A ∩ B = (A^o + B^o)^o`, where `^o` is the
    /// annihilator under the standard dot product.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let a_ann = kernel(&self.field, self.basis());
        let b_ann = kernel(&self.field, other.basis());
        let both = a_ann.vstack(&b_ann);
        let m = kernel(&self.field, &both);
        Self::span(&self.field, self.nvars, self.degree, self.family, &m)
    }

    /// Exact membership of a coordinate vector.
    pub fn contains(&self, v: &[K::Elem]) -> Result<bool> {
        if v.len() != self.ambient_dim() {
            return Err(Error::LengthMismatch {
                expected: self.ambient_dim(),
                found: v.len(),
            });
        }
        Ok(self
            .echelon
            .reduce(&self.field, v)
            .iter()
            .all(|x| self.field.is_zero(x)))
    }

    pub fn contains_poly(&self, ring: &PolyRing<K>, p: &Polynomial<K::Elem>) -> Result<bool> {
        if p.family() != self.family {
            return Err(Error::AmbientMismatch("variable family differs".into()));
        }
        self.contains(&ring.coordinates(p, self.degree)?)
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        for r in self.basis().row_iter() {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Residual of `v` after clearing pivot coordinates; zero iff `v` is in
    /// the subspace. Entries at pivot positions are always zero.
    pub fn reduce(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        self.echelon.reduce(&self.field, v)
    }

    /// Coordinates of the class of `v` in the quotient, on the complement
    /// monomials.
    pub fn quotient_coordinates(&self, v: &[K::Elem]) -> Vec<K::Elem> {
        let r = self.reduce(v);
        self.complement().into_iter().map(|c| r[c].clone()).collect()
    }
}
