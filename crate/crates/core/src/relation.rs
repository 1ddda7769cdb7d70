//! Linear relations between `C^n` and `C^m`, stored as graph subspaces of
//! `C^{n+m}` with vectors stacked as `(x; y)`.

use num_complex::Complex64;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::subspace::{null_space, Coset, Subspace};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearRelation {
    dim_in: usize,
    dim_out: usize,
    graph: Subspace,
}

/// Domain, range, kernel and multivalued part of a relation.
#[derive(Debug, Clone, PartialEq)]
pub struct Parts {
    pub dom: Subspace,
    pub ran: Subspace,
    pub ker: Subspace,
    pub mul: Subspace,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Restriction {
    /// `T|_M = T ∩ (M × C^m)`.
    pub restricted: LinearRelation,
    /// `T(M)`.
    pub image: Subspace,
}

impl LinearRelation {
    pub fn from_graph(dim_in: usize, dim_out: usize, graph: Subspace) -> Result<Self> {
        check_dim("relation graph", dim_in + dim_out, graph.ambient())?;
        Ok(Self {
            dim_in,
            dim_out,
            graph,
        })
    }

    /// Relation spanned by the columns of a `(n+m) x k` matrix of stacked pairs.
    pub fn from_graph_basis(
        dim_in: usize,
        dim_out: usize,
        basis: &CMatrix,
        tol: &Tolerance,
    ) -> Result<Self> {
        check_dim("relation graph basis", dim_in + dim_out, basis.nrows())?;
        Self::from_graph(dim_in, dim_out, Subspace::from_columns(basis, tol))
    }

    /// Relation spanned by explicit pairs `(x_i, y_i)`.
    pub fn from_pairs(
        dim_in: usize,
        dim_out: usize,
        pairs: &[(CVector, CVector)],
        tol: &Tolerance,
    ) -> Result<Self> {
        let mut basis = CMatrix::zeros(dim_in + dim_out, pairs.len());
        for (j, (x, y)) in pairs.iter().enumerate() {
            check_dim("pair input", dim_in, x.len())?;
            check_dim("pair output", dim_out, y.len())?;
            basis.view_mut((0, j), (dim_in, 1)).copy_from(x);
            basis.view_mut((dim_in, j), (dim_out, 1)).copy_from(y);
        }
        Self::from_graph_basis(dim_in, dim_out, &basis, tol)
    }

    /// `{(x, A x)}`.
    pub fn graph_of_matrix(a: &CMatrix, tol: &Tolerance) -> Self {
        let (m, n) = a.shape();
        let stacked = linalg::vstack(&[&CMatrix::identity(n, n), a]);
        Self {
            dim_in: n,
            dim_out: m,
            graph: Subspace::from_columns(&stacked, tol),
        }
    }

    /// `I_M = {(u, u) : u ∈ M}`.
    pub fn identity_on(m: &Subspace, tol: &Tolerance) -> Self {
        let b = m.basis();
        let n = m.ambient();
        Self {
            dim_in: n,
            dim_out: n,
            graph: Subspace::from_columns(&linalg::vstack(&[b, b]), tol),
        }
    }

    /// `0_M = M × {0}` inside `C^n × C^n`.
    pub fn zero_on(m: &Subspace) -> Self {
        let n = m.ambient();
        Self::product_of_subspaces(m, &Subspace::zero(n))
    }

    /// `M × N`.
    pub fn product_of_subspaces(m: &Subspace, n: &Subspace) -> Self {
        Self {
            dim_in: m.ambient(),
            dim_out: n.ambient(),
            graph: m.product(n),
        }
    }

    /// `{0} × mul`, a purely multivalued relation.
    pub fn multivalued(dim_in: usize, mul: &Subspace) -> Self {
        Self::product_of_subspaces(&Subspace::zero(dim_in), mul)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn is_square(&self) -> bool {
        self.dim_in == self.dim_out
    }

    fn top(&self) -> CMatrix {
        self.graph.basis().rows(0, self.dim_in).into_owned()
    }

    fn bottom(&self) -> CMatrix {
        self.graph
            .basis()
            .rows(self.dim_in, self.dim_out)
            .into_owned()
    }

    pub fn dom(&self, tol: &Tolerance) -> Subspace {
        Subspace::from_columns(&self.top(), tol)
    }

    pub fn ran(&self, tol: &Tolerance) -> Subspace {
        Subspace::from_columns(&self.bottom(), tol)
    }

    /// `{x : (x, 0) ∈ T}`, read off `graph ∩ (C^n × {0})`.
    pub fn ker(&self, tol: &Tolerance) -> Subspace {
        let axis = Subspace::full(self.dim_in).product(&Subspace::zero(self.dim_out));
        let cut = self
            .graph
            .intersect(&axis, tol)
            .expect("axis shares the graph ambient");
        Subspace::from_columns(&cut.basis().rows(0, self.dim_in).into_owned(), tol)
    }

    /// `{y : (0, y) ∈ T}`, read off `graph ∩ ({0} × C^m)`.
    pub fn mul(&self, tol: &Tolerance) -> Subspace {
        let axis = Subspace::zero(self.dim_in).product(&Subspace::full(self.dim_out));
        let cut = self
            .graph
            .intersect(&axis, tol)
            .expect("axis shares the graph ambient");
        Subspace::from_columns(
            &cut.basis().rows(self.dim_in, self.dim_out).into_owned(),
            tol,
        )
    }

    pub fn parts(&self, tol: &Tolerance) -> Parts {
        Parts {
            dom: self.dom(tol),
            ran: self.ran(tol),
            ker: self.ker(tol),
            mul: self.mul(tol),
        }
    }

    /// Finite-dimensional relations are closed; the closure is the relation itself.
    pub fn closure(&self) -> Self {
        self.clone()
    }

    /// `T^{-1} = {(y, x) : (x, y) ∈ T}`.
    pub fn invert(&self) -> Self {
        let swapped = linalg::vstack(&[&self.bottom(), &self.top()]);
        Self {
            dim_in: self.dim_out,
            dim_out: self.dim_in,
            graph: Subspace::from_orthonormal(swapped),
        }
    }

    /// `T^* = {(x, y) : <g, x> = <f, y> for all (f, g) ∈ T}`.
    pub fn adjoint(&self, tol: &Tolerance) -> Self {
        let constraint = linalg::hstack(&[&self.bottom().adjoint(), &(-self.top().adjoint())]);
        Self {
            dim_in: self.dim_out,
            dim_out: self.dim_in,
            graph: null_space(&constraint, tol),
        }
    }

    /// `{(x, λ y) : (x, y) ∈ T}`.
    pub fn scale(&self, factor: Complex64, tol: &Tolerance) -> Self {
        let stacked = linalg::vstack(&[&self.top(), &(self.bottom() * factor)]);
        Self {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            graph: Subspace::from_columns(&stacked, tol),
        }
    }

    pub fn negate(&self) -> Self {
        let stacked = linalg::vstack(&[&self.top(), &(-self.bottom())]);
        Self {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            graph: Subspace::from_orthonormal(stacked),
        }
    }

    /// Product `self · inner = {(x, y) : (x, z) ∈ inner, (z, y) ∈ self}`.
    ///
    /// The middle component is eliminated by matching coefficients: pairs of
    /// graph coefficients `(a, b)` with `G_inner a = F_self b`.
    pub fn compose(&self, inner: &Self, tol: &Tolerance) -> Result<Self> {
        check_dim("relation product", self.dim_in, inner.dim_out)?;
        let (f_in, g_in) = (inner.top(), inner.bottom());
        let (f_out, g_out) = (self.top(), self.bottom());
        let p = f_in.ncols();
        let matching = linalg::hstack(&[&g_in, &(-&f_out)]);
        let coeffs = null_space(&matching, tol);
        let c = coeffs.basis();
        let xs = &f_in * c.rows(0, p);
        let ys = &g_out * c.rows(p, c.nrows() - p);
        Self::from_graph_basis(
            inner.dim_in,
            self.dim_out,
            &linalg::vstack(&[&xs, &ys]),
            tol,
        )
    }

    /// Operator-like sum `T + S = {(x, y + z) : (x, y) ∈ T, (x, z) ∈ S}`.
    pub fn op_sum(&self, other: &Self, tol: &Tolerance) -> Result<Self> {
        check_dim("relation sum (input)", self.dim_in, other.dim_in)?;
        check_dim("relation sum (output)", self.dim_out, other.dim_out)?;
        let p = self.graph.dim();
        let matching = linalg::hstack(&[&self.top(), &(-other.top())]);
        let coeffs = null_space(&matching, tol);
        let c = coeffs.basis();
        let (a, b) = (c.rows(0, p), c.rows(p, c.nrows() - p));
        let xs = self.top() * a;
        let ys = self.bottom() * a + other.bottom() * b;
        Self::from_graph_basis(self.dim_in, self.dim_out, &linalg::vstack(&[&xs, &ys]), tol)
    }

    /// Componentwise sum `T +̂ S`: the subspace sum of the graphs.
    pub fn cw_sum(&self, other: &Self, tol: &Tolerance) -> Result<Self> {
        check_dim("componentwise sum (input)", self.dim_in, other.dim_in)?;
        check_dim("componentwise sum (output)", self.dim_out, other.dim_out)?;
        Ok(Self {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            graph: self.graph.sum(&other.graph, tol)?,
        })
    }

    /// Graph intersection `T ∩ S`.
    pub fn intersect(&self, other: &Self, tol: &Tolerance) -> Result<Self> {
        check_dim("relation intersection (input)", self.dim_in, other.dim_in)?;
        check_dim(
            "relation intersection (output)",
            self.dim_out,
            other.dim_out,
        )?;
        Ok(Self {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            graph: self.graph.intersect(&other.graph, tol)?,
        })
    }

    pub fn restrict(&self, m: &Subspace, tol: &Tolerance) -> Result<Restriction> {
        let restricted = self.restrict_to(m, tol)?;
        let image = restricted.ran(tol);
        Ok(Restriction { restricted, image })
    }

    /// `T|_M`.
    pub fn restrict_to(&self, m: &Subspace, tol: &Tolerance) -> Result<Self> {
        check_dim("restriction", self.dim_in, m.ambient())?;
        let slab = m.product(&Subspace::full(self.dim_out));
        Ok(Self {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            graph: self.graph.intersect(&slab, tol)?,
        })
    }

    /// `T(M)`.
    pub fn image_of(&self, m: &Subspace, tol: &Tolerance) -> Result<Subspace> {
        Ok(self.restrict_to(m, tol)?.ran(tol))
    }

    /// `T x = y + mul T` for any `(x, y) ∈ T`; empty when `x ∉ dom T`.
    pub fn apply(&self, x: &CVector, tol: &Tolerance) -> Result<Coset> {
        check_dim("relation argument", self.dim_in, x.len())?;
        self.apply_coset(&Coset::point_only(x.clone()), tol)
    }

    /// Image of an affine set: `T(p + L)`.
    pub fn apply_coset(&self, arg: &Coset, tol: &Tolerance) -> Result<Coset> {
        check_dim("relation argument", self.dim_in, arg.ambient())?;
        let (point, direction) = match arg {
            Coset::Empty { .. } => return Ok(Coset::empty(self.dim_out)),
            Coset::Affine { point, direction } => (point, direction),
        };
        let off = CMatrix::identity(self.dim_in, self.dim_in) - direction.projector();
        let system = &off * self.top();
        let rhs = &off * point;
        let coeffs = linalg::pseudo_inverse(&system, tol) * &rhs;
        let residual = (&system * &coeffs - &rhs).norm();
        if residual > tol.cmp_eps * point.norm().max(1.0) {
            return Ok(Coset::empty(self.dim_out));
        }
        let y = self.bottom() * coeffs;
        let spread = self.image_of(direction, tol)?;
        Coset::new(y, spread)
    }

    /// Graph containment `other ⊆ self`.
    pub fn contains(&self, other: &Self, tol: &Tolerance) -> Result<bool> {
        check_dim("relation comparison (input)", self.dim_in, other.dim_in)?;
        check_dim("relation comparison (output)", self.dim_out, other.dim_out)?;
        self.graph.contains(&other.graph, tol)
    }

    pub fn equals(&self, other: &Self, tol: &Tolerance) -> Result<bool> {
        check_dim("relation comparison (input)", self.dim_in, other.dim_in)?;
        check_dim("relation comparison (output)", self.dim_out, other.dim_out)?;
        self.graph.equals(&other.graph, tol)
    }

    pub fn contains_pair(&self, x: &CVector, y: &CVector, tol: &Tolerance) -> Result<bool> {
        check_dim("pair input", self.dim_in, x.len())?;
        check_dim("pair output", self.dim_out, y.len())?;
        let mut v = CVector::zeros(self.dim_in + self.dim_out);
        v.rows_mut(0, self.dim_in).copy_from(x);
        v.rows_mut(self.dim_in, self.dim_out).copy_from(y);
        self.graph.contains_vector(&v, tol)
    }

    pub fn is_operator(&self, tol: &Tolerance) -> bool {
        self.mul(tol).is_zero()
    }

    /// Matrix of an everywhere defined single-valued relation.
    pub fn to_matrix(&self, tol: &Tolerance) -> Result<CMatrix> {
        if !self.dom(tol).is_full() || !self.is_operator(tol) {
            return Err(Error::NotAnOperator);
        }
        Ok(self.bottom() * linalg::pseudo_inverse(&self.top(), tol))
    }
}
