//! Abstract splines `min ‖Tx‖ s.t. Vx = b` and the Tikhonov smoothing
//! problem `min ‖Tx‖² + ρ‖Vx - b‖²`.

use num_complex::Complex64;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::relation::LinearRelation;
use crate::subspace::{null_space, Coset, Subspace};
use crate::tolerance::Tolerance;
use crate::weighted::{make_pws, Weight};

#[derive(Debug, Clone, PartialEq)]
pub struct SplineProblem {
    pub t: CMatrix,
    pub v: CMatrix,
    pub b: CVector,
}

impl SplineProblem {
    pub fn new(t: CMatrix, v: CMatrix, b: CVector) -> Result<Self> {
        check_dim("spline operators (shared domain)", t.ncols(), v.ncols())?;
        check_dim("spline data", v.nrows(), b.len())?;
        Ok(Self { t, v, b })
    }

    pub fn dim(&self) -> usize {
        self.t.ncols()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplineSolution {
    pub exists: bool,
    pub spline_set: Coset,
    /// `‖T s‖` over the spline set, absent when it is empty.
    pub min_value: Option<f64>,
}

/// `sp(T, V, b) = (I - P_{T^*T, ker V}) x̃` for any `x̃` with `V x̃ = b`.
pub fn spline_solve(p: &SplineProblem, tol: &Tolerance) -> Result<SplineSolution> {
    let rows = p.v.nrows();
    let rank = linalg::rank(&p.v, tol);
    if rank < rows {
        return Err(Error::NotSurjective { rank, rows });
    }
    let feasible = linalg::pseudo_inverse(&p.v, tol) * &p.b;
    let kernel = null_space(&p.v, tol);
    let gram = Weight::psd(p.t.adjoint() * &p.t, tol)?;
    let reducer = spline_reducer(&gram, &kernel, tol)?;
    let exists = reducer.dom(tol).contains_vector(&feasible, tol)?;
    if !exists {
        return Ok(SplineSolution {
            exists,
            spline_set: Coset::empty(p.dim()),
            min_value: None,
        });
    }
    let spline_set = reducer.apply(&feasible, tol)?;
    let s = spline_set
        .point()
        .expect("feasible point lies in the domain");
    let min_value = (&p.t * s).norm();
    let scale = min_value.max(1.0);

    if let Some(other) = spline_set.alternate_point() {
        let delta = ((&p.t * other).norm() - min_value).abs();
        if delta > 10.0 * tol.cmp_eps * scale {
            return Err(Error::CrossCheck {
                what: "spline objective differs across the spline set".into(),
                delta,
            });
        }
    }
    let interpolation = linalg::vector_max_abs(&(&p.v * s - &p.b));
    let direction = spline_set.direction().expect("nonempty");
    if interpolation > 10.0 * tol.cmp_eps * p.b.norm().max(1.0)
        || !kernel.contains(direction, tol)?
    {
        return Err(Error::CrossCheck {
            what: "spline set violates V s = b".into(),
            delta: interpolation,
        });
    }
    let shifted = feasible
        + kernel
            .basis()
            .column_iter()
            .fold(CVector::zeros(p.dim()), |acc, c| acc + c);
    let again = reducer.apply(&shifted, tol)?;
    if !again.equals(&spline_set, tol)? {
        return Err(Error::CrossCheck {
            what: "spline set depends on the feasible starting point".into(),
            delta: 1.0,
        });
    }
    Ok(SplineSolution {
        exists,
        spline_set,
        min_value: Some(min_value),
    })
}

/// `I - P_{T^*T, ker V}`.
fn spline_reducer(gram: &Weight, kernel: &Subspace, tol: &Tolerance) -> Result<LinearRelation> {
    let n = gram.dim();
    let id = LinearRelation::graph_of_matrix(&linalg::identity(n), tol);
    id.op_sum(&make_pws(gram, kernel, tol)?.negate(), tol)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothingProblem {
    pub base: SplineProblem,
    pub rho: f64,
}

impl SmoothingProblem {
    pub fn new(base: SplineProblem, rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::Precondition(format!(
                "rho must be positive, got {rho}"
            )));
        }
        Ok(Self { base, rho })
    }

    /// `(‖T x‖² + ρ ‖V x - b‖²)^{1/2}`.
    pub fn objective(&self, x: &CVector) -> f64 {
        let p = &self.base;
        let fit = (&p.t * x).norm_squared();
        let miss = (&p.v * x - &p.b).norm_squared();
        (fit + self.rho * miss).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothingSolution {
    /// `x* + (ker T ∩ ker V)`, with `x*` of minimal norm.
    pub argmin_set: Coset,
    pub min_value: f64,
}

/// Projects `(0, b)` onto `L(T, V) = {(Tx, Vx)}` in the `ρ`-inner product
/// `<(y, z), (y', z')>_ρ = <y, y'> + ρ <z, z'>`, realized by scaling the
/// second component by `√ρ`.
pub fn smooth_solve(p: &SmoothingProblem, tol: &Tolerance) -> Result<SmoothingSolution> {
    let base = &p.base;
    let root = Complex64::new(p.rho.sqrt(), 0.0);
    let stacked = linalg::vstack(&[&base.t, &(&base.v * root)]);
    let target = {
        let mut v = CVector::zeros(stacked.nrows());
        v.rows_mut(base.t.nrows(), base.v.nrows())
            .copy_from(&(&base.b * root));
        v
    };
    let range = Subspace::from_columns(&stacked, tol);
    let nearest = range.project(&target)?;
    let min_value = (&target - &nearest).norm();
    let x_star = linalg::pseudo_inverse(&stacked, tol) * &nearest;
    let direction = null_space(&base.t, tol).intersect(&null_space(&base.v, tol), tol)?;
    let argmin_set = Coset::new(x_star, direction)?;
    let x = argmin_set.point().expect("affine");

    let consistent = (p.objective(x) - min_value).abs();
    if consistent > 10.0 * tol.cmp_eps * min_value.max(1.0) {
        return Err(Error::CrossCheck {
            what: "smoothing minimum vs objective at the minimizer".into(),
            delta: consistent,
        });
    }
    let gram = base.t.adjoint() * &base.t + base.v.adjoint() * &base.v * Complex64::new(p.rho, 0.0);
    let rhs = base.v.adjoint() * &base.b * Complex64::new(p.rho, 0.0);
    let normal = (&gram * x - &rhs).norm();
    let scale = (linalg::max_abs(&gram) * x.norm() + rhs.norm()).max(1.0);
    if normal > 10.0 * tol.cmp_eps * scale {
        return Err(Error::CrossCheck {
            what: "smoothing minimizer vs normal equations".into(),
            delta: normal,
        });
    }
    Ok(SmoothingSolution {
        argmin_set,
        min_value,
    })
}

/// The four blocks of the orthogonal projector onto `L(T, V)` in the plain
/// (`ρ = 1`) inner product, `G = T^*T + V^*V`:
/// `(T G^† T^*, T G^† V^*; V G^† T^*, V G^† V^*)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionM {
    pub tt: CMatrix,
    pub tv: CMatrix,
    pub vt: CMatrix,
    pub vv: CMatrix,
}

impl ProjectionM {
    pub fn assemble(&self) -> CMatrix {
        let top = linalg::hstack(&[&self.tt, &self.tv]);
        let bottom = linalg::hstack(&[&self.vt, &self.vv]);
        linalg::vstack(&[&top, &bottom])
    }

    /// `‖(I - P)(0, b)‖`.
    pub fn residual_norm(&self, b: &CVector) -> Result<f64> {
        let e = self.tt.nrows();
        check_dim("projection data", self.vv.nrows(), b.len())?;
        let mut target = CVector::zeros(e + b.len());
        target.rows_mut(e, b.len()).copy_from(b);
        Ok((&target - self.assemble() * &target).norm())
    }
}

pub fn projection_m(t: &CMatrix, v: &CMatrix, tol: &Tolerance) -> Result<ProjectionM> {
    check_dim("projection operators (shared domain)", t.ncols(), v.ncols())?;
    let g = t.adjoint() * t + v.adjoint() * v;
    let g_plus = linalg::pseudo_inverse(&g, tol);
    Ok(ProjectionM {
        tt: t * &g_plus * t.adjoint(),
        tv: t * &g_plus * v.adjoint(),
        vt: v * &g_plus * t.adjoint(),
        vv: v * &g_plus * v.adjoint(),
    })
}

/// `L(T, V) = V T^{-1} = {(Tx, Vx)}`, built as a relation product.
pub fn range_relation(t: &CMatrix, v: &CMatrix, tol: &Tolerance) -> Result<LinearRelation> {
    check_dim("range relation (shared domain)", t.ncols(), v.ncols())?;
    let t_graph = LinearRelation::graph_of_matrix(t, tol);
    LinearRelation::graph_of_matrix(v, tol).compose(&t_graph.invert(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{real_matrix, real_vector};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn minimal_norm_interpolant() {
        let t = tol();
        let p = SplineProblem::new(
            linalg::identity(2),
            real_matrix(1, 2, &[1.0, 0.0]),
            real_vector(&[1.0]),
        )
        .unwrap();
        let s = spline_solve(&p, &t).unwrap();
        assert!(s.exists);
        assert!(s
            .spline_set
            .equals(&Coset::point_only(real_vector(&[1.0, 0.0])), &t)
            .unwrap());
        assert!((s.min_value.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn objective_constant_on_feasible_set() {
        let t = tol();
        let v = real_matrix(1, 3, &[1.0, 2.0, 0.0]);
        let p = SplineProblem::new(v.clone(), v.clone(), real_vector(&[2.0])).unwrap();
        let s = spline_solve(&p, &t).unwrap();
        assert_eq!(s.spline_set.direction().unwrap().dim(), 2);
        assert!((s.min_value.unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_rank_deficient_constraints() {
        let t = tol();
        let p = SplineProblem::new(
            linalg::identity(2),
            real_matrix(2, 2, &[1.0, 1.0, 1.0, 1.0]),
            real_vector(&[1.0, 1.0]),
        )
        .unwrap();
        assert_eq!(
            spline_solve(&p, &t),
            Err(Error::NotSurjective { rank: 1, rows: 2 })
        );
    }

    #[test]
    fn smoothing_example() {
        let t = tol();
        let base = SplineProblem::new(
            linalg::identity(2),
            real_matrix(1, 2, &[1.0, 0.0]),
            real_vector(&[1.0]),
        )
        .unwrap();
        let s = smooth_solve(&SmoothingProblem::new(base.clone(), 1.0).unwrap(), &t).unwrap();
        let x = s.argmin_set.point().unwrap();
        assert!((x - real_vector(&[0.5, 0.0])).norm() < 1e-12);
        assert!((s.min_value - 0.5f64.sqrt()).abs() < 1e-12);

        let zero = SplineProblem::new(base.t.clone(), base.v.clone(), real_vector(&[0.0])).unwrap();
        let s = smooth_solve(&SmoothingProblem::new(zero, 3.0).unwrap(), &t).unwrap();
        assert!(s.min_value < 1e-14);
        assert!(SmoothingProblem::new(base, 0.0).is_err());
    }

    #[test]
    fn smoothing_minimum_rises_to_spline_minimum() {
        let t = tol();
        let tm = real_matrix(2, 4, &[1.0, -2.0, 1.0, 0.0, 0.0, 1.0, -2.0, 1.0]);
        let vm = real_matrix(
            3,
            4,
            &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        );
        let base = SplineProblem::new(tm, vm, real_vector(&[0.0, 2.0, 3.0])).unwrap();
        let limit = spline_solve(&base, &t).unwrap().min_value.unwrap();
        let mut last = 0.0;
        for rho in [1.0, 10.0, 100.0, 1e6] {
            let m = smooth_solve(&SmoothingProblem::new(base.clone(), rho).unwrap(), &t)
                .unwrap()
                .min_value;
            assert!(m >= last - 1e-12 && m <= limit + 1e-12);
            last = m;
        }
        assert!((limit - last).abs() < 1e-4);
    }

    #[test]
    fn projection_blocks() {
        let t = tol();
        let m = projection_m(&linalg::identity(2), &CMatrix::zeros(1, 2), &t).unwrap();
        assert!(linalg::max_abs(&(&m.tt - linalg::identity(2))) < 1e-12);
        assert!(linalg::max_abs(&m.vv) < 1e-12);

        let v = real_matrix(1, 2, &[1.0, 0.0]);
        let m = projection_m(&linalg::identity(2), &v, &t).unwrap();
        let expected = real_matrix(2, 2, &[0.5, 0.0, 0.0, 1.0]);
        assert!(linalg::max_abs(&(&m.tt - expected)) < 1e-12);
        let p = m.assemble();
        assert!(linalg::max_abs(&(&p * &p - &p)) < 1e-12);
        assert!(linalg::max_abs(&(&p - p.adjoint())) < 1e-12);
        let r = m.residual_norm(&real_vector(&[1.0])).unwrap();
        assert!((r - 0.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn range_relation_matches_stacked_columns() {
        let t = tol();
        let tm = real_matrix(2, 3, &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        let vm = real_matrix(1, 3, &[0.0, 1.0, 1.0]);
        let rel = range_relation(&tm, &vm, &t).unwrap();
        let stacked = Subspace::from_columns(&linalg::vstack(&[&tm, &vm]), &t);
        assert!(rel.graph().equals(&stacked, &t).unwrap());
    }
}
