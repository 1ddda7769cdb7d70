//! Brute-force reference computations. They work directly with spanning
//! matrices, least-squares solves and pseudo-inverses, never with the
//! subspace lattice, so they can check the relation-based routes.

use num_complex::Complex64;

use crate::linalg::{self, CMatrix, CVector};
use crate::subspace::{Coset, Subspace};
use crate::tolerance::Tolerance;

/// `point + span(directions)`, with `directions` any spanning matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSet {
    pub point: CVector,
    pub directions: CMatrix,
}

impl AffineSet {
    /// Largest discrepancy between this set and a coset: membership of the
    /// oracle point plus the distance between the direction spaces.
    pub fn distance_to(&self, coset: &Coset, tol: &Tolerance) -> f64 {
        let (point, direction) = match coset {
            Coset::Empty { .. } => return f64::INFINITY,
            Coset::Affine { point, direction } => (point, direction),
        };
        let diff = &self.point - point;
        let off = (&diff - direction.projector() * &diff).norm();
        let span = Subspace::from_columns(&self.directions, tol);
        let angle = linalg::max_abs(&(span.projector() - direction.projector()));
        off.max(angle)
    }
}

fn kernel_projector(m: &CMatrix, tol: &Tolerance) -> CMatrix {
    let n = m.ncols();
    linalg::identity(n) - linalg::pseudo_inverse(m, tol) * m
}

/// Weighted least squares over the graph `span(F; G)` of a relation: the
/// minimum of `‖W^{1/2}(G c - b)‖` over coefficients `c`, and the set of
/// inputs `F c` attaining it.
pub fn wlss(
    f: &CMatrix,
    g: &CMatrix,
    w: &CMatrix,
    b: &CVector,
    tol: &Tolerance,
) -> (f64, AffineSet) {
    let root = linalg::psd_sqrt(w);
    let h = &root * g;
    let rb = &root * b;
    let c0 = linalg::pseudo_inverse(&h, tol) * &rb;
    let value = (&h * &c0 - &rb).norm();
    let free = kernel_projector(&h, tol);
    (
        value,
        AffineSet {
            point: f * c0,
            directions: f * free,
        },
    )
}

/// Minimizers of `‖x‖_{W2}` over an affine set.
pub fn minimize_seminorm(set: &AffineSet, w2: &CMatrix, tol: &Tolerance) -> AffineSet {
    let root = linalg::psd_sqrt(w2);
    let h = &root * &set.directions;
    let s = -(linalg::pseudo_inverse(&h, tol) * (&root * &set.point));
    AffineSet {
        point: &set.point + &set.directions * s,
        directions: &set.directions * kernel_projector(&h, tol),
    }
}

/// Two-stage reference for the `W1 W2` problem.
pub fn w1w2(
    f: &CMatrix,
    g: &CMatrix,
    w1: &CMatrix,
    w2: &CMatrix,
    b: &CVector,
    tol: &Tolerance,
) -> AffineSet {
    let (_, first) = wlss(f, g, w1, b, tol);
    minimize_seminorm(&first, w2, tol)
}

/// `min ‖Tx‖ s.t. Vx = b` through the KKT system
/// `(T^*T, V^*; V, 0)(x; λ) = (0; b)`.
pub fn spline_kkt(t: &CMatrix, v: &CMatrix, b: &CVector, tol: &Tolerance) -> (f64, AffineSet) {
    let n = t.ncols();
    let k = v.nrows();
    let top = linalg::hstack(&[&(t.adjoint() * t), &v.adjoint()]);
    let bottom = linalg::hstack(&[v, &CMatrix::zeros(k, k)]);
    let kkt = linalg::vstack(&[&top, &bottom]);
    let mut rhs = CVector::zeros(n + k);
    rhs.rows_mut(n, k).copy_from(b);
    let z = linalg::pseudo_inverse(&kkt, tol) * rhs;
    let x = z.rows(0, n).into_owned();
    let stacked = linalg::vstack(&[t, v]);
    (
        (t * &x).norm(),
        AffineSet {
            point: x,
            directions: kernel_projector(&stacked, tol),
        },
    )
}

/// Smoothing minimizer from `(T^*T + ρ V^*V) x = ρ V^* b`.
pub fn smoothing_normal(
    t: &CMatrix,
    v: &CMatrix,
    b: &CVector,
    rho: f64,
    tol: &Tolerance,
) -> (f64, CVector) {
    let r = Complex64::new(rho, 0.0);
    let gram = t.adjoint() * t + v.adjoint() * v * r;
    let x = linalg::pseudo_inverse(&gram, tol) * (v.adjoint() * b * r);
    let value = ((t * &x).norm_squared() + rho * (v * &x - b).norm_squared()).sqrt();
    (value, x)
}

/// Dimensions `[dom, ran, ker, mul]` of the relation spanned by `(F; G)`,
/// from rank counts alone.
pub fn parts_dims(f: &CMatrix, g: &CMatrix, tol: &Tolerance) -> [usize; 4] {
    let dom = linalg::rank(f, tol);
    let ran = linalg::rank(g, tol);
    let ker = linalg::rank(&(f * kernel_projector(g, tol)), tol);
    let mul = linalg::rank(&(g * kernel_projector(f, tol)), tol);
    [dom, ran, ker, mul]
}

/// `dim(S + (WS)^⊥)` from a spanning matrix `B` of `S`.
pub fn companion_sum_dim(b: &CMatrix, w: &CMatrix, tol: &Tolerance) -> usize {
    let wb = w * b;
    let n = w.nrows();
    let companion = linalg::identity(n) - &wb * linalg::pseudo_inverse(&wb, tol);
    linalg::rank(&linalg::hstack(&[b, &companion]), tol)
}

/// `dim(S ∩ S^{[⊥]}) = dim S - rank(B^* W B)` for an orthonormal basis `B`.
pub fn isotropic_dim(b: &CMatrix, w: &CMatrix, tol: &Tolerance) -> usize {
    b.ncols() - linalg::rank(&(b.adjoint() * w * b), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{real_diagonal, real_matrix, real_vector};

    #[test]
    fn wlss_classical() {
        let t = Tolerance::default();
        let f = linalg::identity(2);
        let g = real_diagonal(&[1.0, 0.0]);
        let (value, set) = wlss(&f, &g, &linalg::identity(2), &real_vector(&[1.0, 1.0]), &t);
        assert!((value - 1.0).abs() < 1e-12);
        assert!((set.point[0].re - 1.0).abs() < 1e-12);
        assert_eq!(linalg::rank(&set.directions, &t), 1);
    }

    #[test]
    fn parts_of_shift() {
        let t = Tolerance::default();
        let f = real_matrix(2, 1, &[1.0, 0.0]);
        let g = real_matrix(2, 1, &[0.0, 1.0]);
        assert_eq!(parts_dims(&f, &g, &t), [1, 1, 0, 0]);
    }
}
