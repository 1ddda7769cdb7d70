//! Weighted least-squares solutions of inclusions `b ∈ A x` for a linear
//! relation `A` and a positive semidefinite weight `W`.

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, CVector};
use crate::relation::LinearRelation;
use crate::subspace::{Coset, Subspace};
use crate::tolerance::Tolerance;
use crate::weighted::{make_pws, w_companion, Weight, WeightKind};

#[derive(Debug, Clone, PartialEq)]
pub struct LssProblem {
    pub a: LinearRelation,
    pub w: Weight,
    pub b: CVector,
}

impl LssProblem {
    pub fn new(a: LinearRelation, w: Weight, b: CVector) -> Result<Self> {
        check_dim("LSS relation (square)", a.dim_in(), a.dim_out())?;
        check_dim("LSS weight", a.dim_out(), w.dim())?;
        check_dim("LSS right-hand side", a.dim_out(), b.len())?;
        if w.kind() != WeightKind::Psd {
            return Err(Error::NotPositiveSemidefinite(w.min_eigenvalue()));
        }
        Ok(Self { a, w, b })
    }

    fn w_kernel(&self, tol: &Tolerance) -> Subspace {
        crate::subspace::null_space(self.w.matrix(), tol)
    }

    /// `‖y - b‖_W = ‖W^{1/2} (y - b)‖`.
    pub fn residual(&self, y: &CVector) -> f64 {
        (self.w.sqrt() * (y - &self.b)).norm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LssSolution {
    pub exists: bool,
    /// `min_{y ∈ ran A} ‖y - b‖_W`, absent when no minimizer exists.
    pub min_value: Option<f64>,
    /// Minimum-norm point of the solution set.
    pub witness: Option<CVector>,
    /// All `x` with some `z ∈ A x` attaining the minimum.
    pub solution_set: Coset,
    /// `P_{W, ran A} b`, the attaining outputs.
    pub minimizing_outputs: Coset,
}

pub fn solve(p: &LssProblem, tol: &Tolerance) -> Result<LssSolution> {
    let n = p.a.dim_in();
    let range = p.a.ran(tol);
    let pws = make_pws(&p.w, &range, tol)?;
    let exists = pws.dom(tol).contains_vector(&p.b, tol)?;
    if !exists {
        return Ok(LssSolution {
            exists,
            min_value: None,
            witness: None,
            solution_set: Coset::empty(n),
            minimizing_outputs: Coset::empty(p.a.dim_out()),
        });
    }
    let outputs = pws.apply(&p.b, tol)?;
    let y = outputs.point().expect("b lies in dom P_{W, ran A}");
    let min_value = p.residual(y);
    if let Some(other) = outputs.alternate_point() {
        let delta = (p.residual(&other) - min_value).abs();
        if delta > 10.0 * tol.cmp_eps * min_value.max(1.0) {
            return Err(Error::CrossCheck {
                what: "LSS minimum differs between output representatives".into(),
                delta,
            });
        }
    }

    let inverse = p.a.invert();
    let solution_set = inverse.apply_coset(&outputs, tol)?;
    let witness = solution_set
        .point()
        .cloned()
        .ok_or_else(|| Error::CrossCheck {
            what: "LSS solution set empty although minimizing outputs exist".into(),
            delta: 1.0,
        })?;
    let kernel_part = inverse.image_of(&p.w_kernel(tol), tol)?;
    let expected = Coset::new(witness.clone(), kernel_part)?;
    if !expected.equals(&solution_set, tol)? {
        return Err(Error::CrossCheck {
            what: "LSS solution set vs x0 + A^{-1} ker W".into(),
            delta: 1.0,
        });
    }
    Ok(LssSolution {
        exists,
        min_value: Some(min_value),
        witness: Some(witness),
        solution_set,
        minimizing_outputs: outputs,
    })
}

impl LssProblem {
    /// `b ∈ ran A + (W ran A)^⊥`, the existence condition read directly off
    /// the subspace sum.
    pub fn solvable_by_sum(&self, tol: &Tolerance) -> Result<bool> {
        let range = self.a.ran(tol);
        let companion = w_companion(&range, &self.w, tol)?;
        range.sum(&companion, tol)?.contains_vector(&self.b, tol)
    }
}

/// Normal-equation test `0 ∈ A^* W (A x0 - b)`, together with the coset
/// identity `A^* W (A x0 - b) = A^* W (mul A)` which must agree with it.
pub fn check_normal(p: &LssProblem, x0: &CVector, tol: &Tolerance) -> Result<bool> {
    check_dim("normal equation point", p.a.dim_in(), x0.len())?;
    if !p.a.dom(tol).contains_vector(x0, tol)? {
        return Err(Error::Precondition("x0 must lie in dom A".into()));
    }
    let outer = p.a.adjoint(tol).compose(&p.w.graph(tol), tol)?;
    let residual = p.a.apply(x0, tol)?.translate(&(-&p.b))?;
    let pushed = outer.apply_coset(&residual, tol)?;
    let zero = CVector::zeros(p.a.dim_in());
    let normal = pushed.contains(&zero, tol)?;

    let mul_coset = Coset::new(CVector::zeros(p.a.dim_out()), p.a.mul(tol))?;
    let reference = outer.apply_coset(&mul_coset, tol)?;
    let coset_identity = reference.equals(&pushed, tol)?;
    if normal != coset_identity {
        return Err(Error::CrossCheck {
            what: "normal equation vs coset identity A^*W(Ax0 - b) = A^*W(mul A)".into(),
            delta: pushed.point().map_or(1.0, linalg::vector_max_abs),
        });
    }
    Ok(normal)
}

/// Points of the `W1`-least-squares solution set of minimal `W2`-seminorm:
/// `(I - P_{W2, A^{-1} ker W1}) A^{-1} P_{W1, ran A} b`.
pub fn w1w2_solve(
    a: &LinearRelation,
    w1: &Weight,
    w2: &Weight,
    b: &CVector,
    tol: &Tolerance,
) -> Result<Coset> {
    let p = LssProblem::new(a.clone(), w1.clone(), b.clone())?;
    check_dim("second weight", a.dim_in(), w2.dim())?;
    if w2.kind() != WeightKind::Psd {
        return Err(Error::NotPositiveSemidefinite(w2.min_eigenvalue()));
    }
    let n = a.dim_in();
    let pws = make_pws(w1, &a.ran(tol), tol)?;
    let outputs = pws.apply(b, tol)?;
    if outputs.is_empty() {
        return Err(Error::NoSolution("b is not in dom P_{W1, ran A}".into()));
    }
    let inverse = a.invert();
    let first_stage = inverse.apply_coset(&outputs, tol)?;
    let kernel_part = inverse.image_of(&p.w_kernel(tol), tol)?;
    let id = LinearRelation::graph_of_matrix(&linalg::identity(n), tol);
    let reducer = id.op_sum(&make_pws(w2, &kernel_part, tol)?.negate(), tol)?;
    let result = reducer.apply_coset(&first_stage, tol)?;
    if result.is_empty() {
        return Err(Error::NoSolution(
            "W1-solution set is not in the domain of the W2 reduction".into(),
        ));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{real_diagonal, real_vector};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn problem(a: LinearRelation, w: &[f64], b: &[f64]) -> LssProblem {
        let t = tol();
        LssProblem::new(
            a,
            Weight::psd(real_diagonal(w), &t).unwrap(),
            real_vector(b),
        )
        .unwrap()
    }

    #[test]
    fn classical_projection() {
        let t = tol();
        let a = LinearRelation::graph_of_matrix(&real_diagonal(&[1.0, 0.0]), &t);
        let p = problem(a, &[1.0, 1.0], &[1.0, 1.0]);
        let s = solve(&p, &t).unwrap();
        assert!(s.exists);
        assert!((s.min_value.unwrap() - 1.0).abs() < 1e-12);
        let expected = Coset::new(real_vector(&[1.0, 0.0]), Subspace::coordinate(2, &[1])).unwrap();
        assert!(s.solution_set.equals(&expected, &t).unwrap());
        assert!(check_normal(&p, s.witness.as_ref().unwrap(), &t).unwrap());
        assert!(!check_normal(&p, &real_vector(&[2.0, 0.0]), &t).unwrap());
    }

    #[test]
    fn everything_relation() {
        let t = tol();
        let full = Subspace::full(2);
        let a = LinearRelation::product_of_subspaces(&full, &full);
        let p = problem(a, &[1.0, 1.0], &[3.0, -1.0]);
        let s = solve(&p, &t).unwrap();
        assert!(s.min_value.unwrap() < 1e-12);
        assert!(s.solution_set.direction().unwrap().is_full());
    }

    #[test]
    fn seminorm_ignores_first_coordinate() {
        let t = tol();
        let a = LinearRelation::graph_of_matrix(&real_diagonal(&[1.0, 0.0]), &t);
        let p = problem(a.clone(), &[0.0, 1.0], &[1.0, 1.0]);
        let s = solve(&p, &t).unwrap();
        assert!((s.min_value.unwrap() - 1.0).abs() < 1e-12);
        assert!(s.solution_set.direction().unwrap().is_full());
        assert!(p.solvable_by_sum(&t).unwrap());

        let w2 = Weight::psd(linalg::identity(2), &t).unwrap();
        let best = w1w2_solve(&a, &p.w, &w2, &p.b, &t).unwrap();
        assert!(best
            .equals(&Coset::point_only(real_vector(&[0.0, 0.0])), &t)
            .unwrap());
    }

    #[test]
    fn normal_equation_requires_domain() {
        let t = tol();
        let e1 = Subspace::coordinate(2, &[0]);
        let a = LinearRelation::identity_on(&e1, &t);
        let p = problem(a, &[1.0, 1.0], &[1.0, 1.0]);
        assert!(matches!(
            check_normal(&p, &real_vector(&[0.0, 1.0]), &t),
            Err(Error::Precondition(_))
        ));
    }
}
