//! Subspaces of `C^n` held as orthonormal bases, and affine cosets over them.

use num_complex::Complex64;

use crate::error::{check_dim, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::tolerance::Tolerance;

/// A linear subspace of `C^n`, stored as an `n x k` matrix with orthonormal
/// columns. The zero subspace has `k = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: CMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            basis: CMatrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            basis: CMatrix::identity(ambient, ambient),
        }
    }

    /// Span of the columns of `m`.
    pub fn from_columns(m: &CMatrix, tol: &Tolerance) -> Self {
        Self {
            basis: linalg::orthonormal_range(m, tol),
        }
    }

    /// Span of a list of vectors living in `C^ambient`.
    pub fn span(ambient: usize, vectors: &[CVector], tol: &Tolerance) -> Result<Self> {
        let mut m = CMatrix::zeros(ambient, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            check_dim("span vector", ambient, v.len())?;
            m.set_column(j, v);
        }
        Ok(Self::from_columns(&m, tol))
    }

    /// Span of the coordinate vectors `e_i` for the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let mut m = CMatrix::zeros(ambient, indices.len());
        for (j, &i) in indices.iter().enumerate() {
            m[(i, j)] = linalg::ONE;
        }
        Self { basis: m }
    }

    pub(crate) fn from_orthonormal(basis: CMatrix) -> Self {
        Self { basis }
    }

    pub fn ambient(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<CVector> {
        self.basis.column_iter().map(|c| c.into_owned()).collect()
    }

    /// Orthogonal projector `B B^H`.
    pub fn projector(&self) -> CMatrix {
        &self.basis * self.basis.adjoint()
    }

    pub fn project(&self, v: &CVector) -> Result<CVector> {
        check_dim("project", self.ambient(), v.len())?;
        Ok(&self.basis * (self.basis.adjoint() * v))
    }

    pub fn complement(&self, tol: &Tolerance) -> Self {
        let n = self.ambient();
        if self.is_zero() {
            return Self::full(n);
        }
        if self.is_full() {
            return Self::zero(n);
        }
        let residual = CMatrix::identity(n, n) - self.projector();
        Self::from_columns(&residual, tol)
    }

    pub fn sum(&self, other: &Self, tol: &Tolerance) -> Result<Self> {
        check_dim("subspace sum", self.ambient(), other.ambient())?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        Ok(Self::from_columns(
            &linalg::hstack(&[&self.basis, &other.basis]),
            tol,
        ))
    }

    /// `S1 ∩ S2 = (S1^⊥ + S2^⊥)^⊥`.
    pub fn intersect(&self, other: &Self, tol: &Tolerance) -> Result<Self> {
        check_dim("subspace intersection", self.ambient(), other.ambient())?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient()));
        }
        if self.is_full() {
            return Ok(other.clone());
        }
        if other.is_full() {
            return Ok(self.clone());
        }
        let joint = self.complement(tol).sum(&other.complement(tol), tol)?;
        Ok(joint.complement(tol))
    }

    /// Largest column residual `‖(I - P_self) b_j‖` over the basis of `other`.
    pub fn containment_residual(&self, other: &Self) -> Result<f64> {
        check_dim("subspace comparison", self.ambient(), other.ambient())?;
        if other.is_zero() {
            return Ok(0.0);
        }
        let resid = other.basis() - &self.basis * (self.basis.adjoint() * other.basis());
        Ok(resid.column_iter().map(|c| c.norm()).fold(0.0, f64::max))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self, tol: &Tolerance) -> Result<bool> {
        Ok(self.containment_residual(other)? <= tol.cmp_eps)
    }

    pub fn equals(&self, other: &Self, tol: &Tolerance) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.contains(other, tol)? && other.contains(self, tol)?)
    }

    /// Membership of a vector, judged relative to its length.
    pub fn contains_vector(&self, v: &CVector, tol: &Tolerance) -> Result<bool> {
        let p = self.project(v)?;
        Ok((v - p).norm() <= tol.cmp_eps * v.norm().max(1.0))
    }

    /// `A(S) = {A s : s ∈ S}`.
    pub fn image(&self, a: &CMatrix, tol: &Tolerance) -> Result<Self> {
        check_dim("subspace image", self.ambient(), a.ncols())?;
        Ok(Self::from_columns(&(a * &self.basis), tol))
    }

    /// `A^{-1}(S) = {x : A x ∈ S}` for a matrix `A` mapping into the ambient space of `S`.
    pub fn preimage(&self, a: &CMatrix, tol: &Tolerance) -> Result<Self> {
        check_dim("subspace preimage", self.ambient(), a.nrows())?;
        let off = a - &self.basis * (self.basis.adjoint() * a);
        Ok(null_space(&off, tol))
    }

    /// Cartesian product `self × other ⊆ C^{n+m}`.
    pub fn product(&self, other: &Self) -> Self {
        let (n, m) = (self.ambient(), other.ambient());
        let mut basis = CMatrix::zeros(n + m, self.dim() + other.dim());
        basis
            .view_mut((0, 0), (n, self.dim()))
            .copy_from(&self.basis);
        basis
            .view_mut((n, self.dim()), (m, other.dim()))
            .copy_from(&other.basis);
        Self { basis }
    }

    /// Largest entry of `P_self - P_other`.
    pub fn projector_distance(&self, other: &Self) -> Result<f64> {
        check_dim("projector distance", self.ambient(), other.ambient())?;
        Ok(linalg::max_abs(&(self.projector() - other.projector())))
    }
}

/// Null space of an arbitrary matrix, as a subspace of its domain.
pub fn null_space(a: &CMatrix, tol: &Tolerance) -> Subspace {
    let cols = a.ncols();
    if a.nrows() == 0 {
        return Subspace::full(cols);
    }
    Subspace::from_columns(&a.adjoint(), tol).complement(tol)
}

/// An affine set `point + direction`, or the empty set.
#[derive(Debug, Clone, PartialEq)]
pub enum Coset {
    Empty { ambient: usize },
    Affine { point: CVector, direction: Subspace },
}

impl Coset {
    pub fn empty(ambient: usize) -> Self {
        Coset::Empty { ambient }
    }

    /// Builds `point + direction` with the point replaced by its component
    /// orthogonal to the direction, so equal cosets share a representative.
    pub fn new(point: CVector, direction: Subspace) -> Result<Self> {
        check_dim("coset point", direction.ambient(), point.len())?;
        let along = direction.project(&point)?;
        Ok(Coset::Affine {
            point: point - along,
            direction,
        })
    }

    pub fn point_only(point: CVector) -> Self {
        let n = point.len();
        Coset::Affine {
            point,
            direction: Subspace::zero(n),
        }
    }

    pub fn ambient(&self) -> usize {
        match self {
            Coset::Empty { ambient } => *ambient,
            Coset::Affine { direction, .. } => direction.ambient(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Coset::Empty { .. })
    }

    /// Minimum-norm member, `None` when empty.
    pub fn point(&self) -> Option<&CVector> {
        match self {
            Coset::Empty { .. } => None,
            Coset::Affine { point, .. } => Some(point),
        }
    }

    pub fn direction(&self) -> Option<&Subspace> {
        match self {
            Coset::Empty { .. } => None,
            Coset::Affine { direction, .. } => Some(direction),
        }
    }

    pub fn contains(&self, v: &CVector, tol: &Tolerance) -> Result<bool> {
        match self {
            Coset::Empty { .. } => Ok(false),
            Coset::Affine { point, direction } => {
                check_dim("coset membership", direction.ambient(), v.len())?;
                let diff = v - point;
                let resid = &diff - direction.project(&diff)?;
                Ok(resid.norm() <= tol.cmp_eps * v.norm().max(point.norm()).max(1.0))
            }
        }
    }

    pub fn equals(&self, other: &Self, tol: &Tolerance) -> Result<bool> {
        check_dim("coset comparison", self.ambient(), other.ambient())?;
        match (self, other) {
            (Coset::Empty { .. }, Coset::Empty { .. }) => Ok(true),
            (Coset::Affine { point, direction }, Coset::Affine { .. }) => Ok(direction
                .equals(other.direction().unwrap(), tol)?
                && other.contains(point, tol)?),
            _ => Ok(false),
        }
    }

    /// `self + v`.
    pub fn translate(&self, v: &CVector) -> Result<Self> {
        check_dim("coset translation", self.ambient(), v.len())?;
        match self {
            Coset::Empty { .. } => Ok(self.clone()),
            Coset::Affine { point, direction } => Coset::new(point + v, direction.clone()),
        }
    }

    /// A second member distinct from the minimum-norm point whenever the
    /// direction is nontrivial; used to check invariance over representatives.
    pub fn alternate_point(&self) -> Option<CVector> {
        match self {
            Coset::Empty { .. } => None,
            Coset::Affine { point, direction } => {
                let shift = direction
                    .basis()
                    .column_iter()
                    .fold(CVector::zeros(point.len()), |acc, c| acc + c);
                Some(point + shift * Complex64::new(0.75, 0.0))
            }
        }
    }
}
