//! Subspaces of GF(p)^n with canonical representatives.
//!
//! A subspace is stored as the reduced row-echelon basis of its row
//! space, so equality of subspaces is literal equality of
//! representations. All lattice operations (sum, intersection,
//! quotient dimensions, relative bases) stay exact.
//!
//! Quotient spaces are never materialized as new ambients: every
//! quotient statement reduces to dim([A]_W) = dim(A) − dim(A ∩ W) or to
//! a relative basis, with [`QuotientMap`] available when explicit image
//! coordinates are required.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    /// Pivot column of each basis row, strictly increasing.
    pivots: Vec<usize>,
}

impl Subspace {
    /// Smallest subspace containing every row of `m`.
    pub fn row_space(m: &Matrix) -> Subspace {
        let r = m.rref();
        Subspace { basis: r.r, pivots: r.pivots }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vector]) -> Result<Subspace> {
        let m = Matrix::from_rows(field, ambient, vectors)?;
        Ok(Subspace::row_space(&m))
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::zero(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.basis.ncols()
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vector> {
        self.basis.rows().collect()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.field().p(),
                right: other.field().p(),
            });
        }
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch { left: self.ambient(), right: other.ambient() });
        }
        Ok(())
    }

    fn check_vector(&self, v: &Vector) -> Result<()> {
        if self.field() != v.field() {
            return Err(Error::FieldMismatch { left: self.field().p(), right: v.field().p() });
        }
        if self.ambient() != v.len() {
            return Err(Error::AmbientMismatch { left: self.ambient(), right: v.len() });
        }
        Ok(())
    }

    /// Normal form of `v` modulo this subspace: subtracts basis rows to
    /// clear the pivot coordinates. Zero exactly when v is a member.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut out = v.clone();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = out.get(p);
            if c != 0 {
                out = out.sub(&self.basis.row(i).scale(c));
            }
        }
        out
    }

    pub fn contains(&self, v: &Vector) -> Result<bool> {
        self.check_vector(v)?;
        Ok(self.reduce(v).is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for row in other.basis.rows() {
            if !self.reduce(&row).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coefficients of `v` with respect to the basis rows, when v is a
    /// member. In RREF the coefficient of row i is just v at pivot i.
    pub fn coordinates(&self, v: &Vector) -> Result<Option<Vector>> {
        self.check_vector(v)?;
        let coeffs: Vec<u8> = self.pivots.iter().map(|&p| v.get(p)).collect();
        let x = Vector::new(self.field(), coeffs);
        if x.mul_matrix(&self.basis) == *v {
            Ok(Some(x))
        } else {
            Ok(None)
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)?))
    }

    /// Set-theoretic intersection. Coefficient pairs (x, y) with
    /// x·R_a = y·R_b are the left kernel of the stacked [R_a; −R_b];
    /// the intersection is spanned by the resulting x·R_a.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field(), self.ambient()));
        }
        let stack = self.basis.vstack(&other.basis.neg())?;
        let left_kernel = stack.transpose().kernel();
        let a = self.dim();
        let gens: Vec<Vector> = left_kernel
            .rows()
            .map(|x| {
                let xa = Vector::new(self.field(), x.coords()[..a].to_vec());
                xa.mul_matrix(&self.basis)
            })
            .collect();
        Subspace::span(self.field(), self.ambient(), &gens)
    }

    /// Dimension of the image of this subspace in the quotient by `w`;
    /// w need not be comparable to self.
    pub fn quotient_dim(&self, w: &Subspace) -> Result<usize> {
        Ok(self.dim() - self.intersect(w)?.dim())
    }

    /// dim(self) − dim(w) vectors of self whose images modulo `w` are
    /// independent: appended to any basis of w they give a basis of
    /// self. Picks RREF basis rows in row order, keeping each row whose
    /// image stays independent of everything kept so far.
    pub fn relative_basis(&self, w: &Subspace) -> Result<Vec<Vector>> {
        self.check_compatible(w)?;
        if !self.contains_subspace(w)? {
            return Err(Error::contract(
                "relative basis requires the second subspace to lie inside the first",
            ));
        }
        let mut acc = w.clone();
        let mut out = Vec::with_capacity(self.dim() - w.dim());
        for row in self.basis.rows() {
            if !acc.reduce(&row).is_zero() {
                out.push(row.clone());
                acc = acc.sum(&Subspace::span(self.field(), self.ambient(), &[row])?)?;
            }
        }
        debug_assert_eq!(out.len(), self.dim() - w.dim());
        Ok(out)
    }

    /// True iff Σᵢ dim(self ∩ Uᵢ) == dim(self).
    pub fn factors_through(&self, d: &Decomposition) -> Result<bool> {
        let mut total = 0;
        for part in d.parts().iter() {
            total += self.intersect(part)?.dim();
        }
        Ok(total == self.dim())
    }

    /// All p^dim members, coefficient order; the zero vector comes first.
    pub fn iter_elements(&self) -> impl Iterator<Item = Vector> + '_ {
        assignments(self.field().p(), self.dim())
            .map(move |coeffs| Vector::new(self.field(), coeffs).mul_matrix(&self.basis))
    }

    /// Image of this subspace under v ↦ v·t.
    pub fn apply(&self, t: &Matrix) -> Result<Subspace> {
        let mapped: Vec<Vector> = self.basis.rows().map(|r| r.mul_matrix(t)).collect();
        Subspace::span(self.field(), t.ncols(), &mapped)
    }
}

impl std::fmt::Display for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "<zero in GF({})^{}>", self.field().p(), self.ambient());
        }
        let rows: Vec<String> = self.basis.rows().map(|r| r.to_string()).collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

/// Every coefficient vector of the given length over GF(p), odometer
/// order (last digit fastest). Exactly one empty assignment at length 0.
pub(crate) fn assignments(p: u8, len: usize) -> Box<dyn Iterator<Item = Vec<u8>>> {
    if len == 0 {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new((0..len).map(|_| 0..p).multi_cartesian_product())
    }
}

/// All subspaces of GF(p)^ambient of the given dimension, by direct
/// enumeration of RREF shapes: choose pivot columns, then fill every
/// free position (right of the row's pivot, not a pivot column). Each
/// shape is produced exactly once, already canonical.
pub fn subspaces_of_dim(
    field: Field,
    ambient: usize,
    dim: usize,
) -> impl Iterator<Item = Subspace> {
    (0..ambient).combinations(dim).flat_map(move |pivots| {
        let mut is_pivot = vec![false; ambient];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let is_pivot = &is_pivot;
                (p + 1..ambient).filter(|&j| !is_pivot[j]).map(move |j| (i, j))
            })
            .collect();
        assignments(field.p(), free.len()).map(move |values| {
            let mut rows: Vec<Vec<u8>> = vec![vec![0; ambient]; pivots.len()];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            for (&(i, j), &v) in free.iter().zip(&values) {
                rows[i][j] = v;
            }
            let rows: Vec<Vector> = rows.into_iter().map(|r| Vector::new(field, r)).collect();
            let basis = Matrix::from_rows(field, ambient, &rows).unwrap();
            Subspace { basis, pivots: pivots.clone() }
        })
    })
}

/// Every subspace of GF(p)^ambient, dimension-ascending.
pub fn all_subspaces(field: Field, ambient: usize) -> Vec<Subspace> {
    (0..=ambient)
        .flat_map(|k| subspaces_of_dim(field, ambient, k))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceFamily {
    members: Vec<Subspace>,
}

impl SubspaceFamily {
    pub fn new(members: Vec<Subspace>) -> Result<SubspaceFamily> {
        let Some(first) = members.first() else {
            return Err(Error::contract("a subspace family must have at least one member"));
        };
        let (field, ambient) = (first.field(), first.ambient());
        for m in &members {
            if m.field() != field {
                return Err(Error::FieldMismatch { left: field.p(), right: m.field().p() });
            }
            if m.ambient() != ambient {
                return Err(Error::AmbientMismatch { left: ambient, right: m.ambient() });
            }
        }
        Ok(SubspaceFamily { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn field(&self) -> Field {
        self.members[0].field()
    }

    pub fn ambient(&self) -> usize {
        self.members[0].ambient()
    }

    pub fn member(&self, i: usize) -> &Subspace {
        &self.members[i]
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = &Subspace> {
        self.members.iter()
    }

    pub fn sum_all(&self) -> Subspace {
        let mut acc = self.members[0].clone();
        for m in &self.members[1..] {
            acc = acc.sum(m).expect("family members share an ambient");
        }
        acc
    }

    /// True iff Σ dim(Aᵢ) == dim(ΣAᵢ); equivalent to every member tuple
    /// summing to zero in exactly one way.
    pub fn independent(&self) -> bool {
        let total: usize = self.members.iter().map(|m| m.dim()).sum();
        total == self.sum_all().dim()
    }
}

/// Independent subspaces U₁,…,U_r treated as a direct-sum decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    parts: SubspaceFamily,
}

impl Decomposition {
    pub fn new(parts: SubspaceFamily) -> Result<Decomposition> {
        if !parts.independent() {
            return Err(Error::contract("decomposition parts must be independent subspaces"));
        }
        Ok(Decomposition { parts })
    }

    pub fn parts(&self) -> &SubspaceFamily {
        &self.parts
    }

    pub fn span(&self) -> Subspace {
        self.parts.sum_all()
    }
}

/// Explicit coordinates for the quotient of the full ambient space by a
/// fixed denominator subspace. The basis lists a relative basis of the
/// ambient over the denominator first, then the denominator's basis, so
/// the image of a vector is its first `codomain_dim` coefficients.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    basis: Matrix,
    codomain_dim: usize,
}

impl QuotientMap {
    pub fn new(denominator: &Subspace) -> QuotientMap {
        let full = Subspace::full(denominator.field(), denominator.ambient());
        let rel = full
            .relative_basis(denominator)
            .expect("the full space contains every subspace");
        let codomain_dim = rel.len();
        let mut rows = rel;
        rows.extend(denominator.basis_rows());
        let basis = Matrix::from_rows(denominator.field(), denominator.ambient(), &rows)
            .expect("relative basis rows live in the same ambient");
        QuotientMap { basis, codomain_dim }
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain_dim
    }

    /// Image of `v` in the quotient, as a coordinate vector of length
    /// `codomain_dim`.
    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        let x = self
            .basis
            .solve(v)?
            .expect("the quotient basis spans the whole ambient space");
        Ok(Vector::new(v.field(), x.coords()[..self.codomain_dim].to_vec()))
    }

    /// Image of a whole subspace, as a subspace of the codomain.
    pub fn image(&self, s: &Subspace) -> Result<Subspace> {
        let rows: Vec<Vector> =
            s.basis_rows().iter().map(|r| self.apply(r)).collect::<Result<_>>()?;
        Subspace::span(s.field(), self.codomain_dim, &rows)
    }
}
