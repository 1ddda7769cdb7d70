//! Weighted geometry: W-orthogonal companions, the projection `P_{W,S}`,
//! complementability, shorted operators and Krein-space subspace types.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, CMatrix};
use crate::mvproj::{make_pmn, BlockRep};
use crate::relation::LinearRelation;
use crate::subspace::Subspace;
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    Selfadjoint,
    Psd,
    Symmetry,
}

/// A selfadjoint weight, validated against its declared kind on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    matrix: CMatrix,
    kind: WeightKind,
    min_eigenvalue: f64,
}

impl Weight {
    pub fn new(matrix: CMatrix, kind: WeightKind, tol: &Tolerance) -> Result<Self> {
        check_dim("weight (square)", matrix.nrows(), matrix.ncols())?;
        let scale = linalg::max_abs(&matrix).max(1.0);
        let asym = linalg::max_abs(&(&matrix - matrix.adjoint()));
        if asym > tol.cmp_eps * scale {
            return Err(Error::NotSelfadjoint(asym));
        }
        let min_eigenvalue = linalg::min_eigenvalue(&matrix);
        match kind {
            WeightKind::Selfadjoint => {}
            WeightKind::Psd => {
                if min_eigenvalue < -tol.cmp_eps * scale {
                    return Err(Error::NotPositiveSemidefinite(min_eigenvalue));
                }
            }
            WeightKind::Symmetry => {
                let n = matrix.nrows();
                let defect = linalg::max_abs(&(&matrix * &matrix - linalg::identity(n)));
                if defect > tol.cmp_eps * scale {
                    return Err(Error::NotSymmetry(defect));
                }
            }
        }
        Ok(Self {
            matrix: linalg::hermitian_part(&matrix),
            kind,
            min_eigenvalue,
        })
    }

    pub fn selfadjoint(matrix: CMatrix, tol: &Tolerance) -> Result<Self> {
        Self::new(matrix, WeightKind::Selfadjoint, tol)
    }

    pub fn psd(matrix: CMatrix, tol: &Tolerance) -> Result<Self> {
        Self::new(matrix, WeightKind::Psd, tol)
    }

    pub fn symmetry(matrix: CMatrix, tol: &Tolerance) -> Result<Self> {
        Self::new(matrix, WeightKind::Symmetry, tol)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    /// A psd weight accepted although its smallest computed eigenvalue is
    /// slightly negative.
    pub fn is_borderline(&self) -> bool {
        self.kind == WeightKind::Psd && self.min_eigenvalue < 0.0
    }

    /// `W^{1/2}`; only meaningful for psd weights.
    pub fn sqrt(&self) -> CMatrix {
        linalg::psd_sqrt(&self.matrix)
    }

    pub fn graph(&self, tol: &Tolerance) -> LinearRelation {
        LinearRelation::graph_of_matrix(&self.matrix, tol)
    }

    fn require(&self, kind: WeightKind) -> Result<()> {
        match (kind, self.kind) {
            (WeightKind::Selfadjoint, _) => Ok(()),
            (WeightKind::Psd, WeightKind::Psd) => Ok(()),
            (WeightKind::Symmetry, WeightKind::Symmetry) => Ok(()),
            (WeightKind::Psd, _) => Err(Error::NotPositiveSemidefinite(self.min_eigenvalue)),
            (WeightKind::Symmetry, _) => {
                let n = self.dim();
                let defect = linalg::max_abs(&(&self.matrix * &self.matrix - linalg::identity(n)));
                Err(Error::NotSymmetry(defect))
            }
        }
    }
}

/// `S^{⊥_W} = (WS)^⊥`, checked against `W^{-1}(S^⊥)`.
pub fn w_companion(s: &Subspace, w: &Weight, tol: &Tolerance) -> Result<Subspace> {
    check_dim("W-companion", w.dim(), s.ambient())?;
    let by_image = s.image(w.matrix(), tol)?.complement(tol);
    let by_preimage = s.complement(tol).preimage(w.matrix(), tol)?;
    if !by_image.equals(&by_preimage, tol)? {
        return Err(Error::CrossCheck {
            what: "W-companion (WS)^⊥ vs W^{-1}(S^⊥)".into(),
            delta: by_image.projector_distance(&by_preimage)?,
        });
    }
    Ok(by_image)
}

/// `P_{W,S} = P_{S, S^{⊥_W}}`.
pub fn make_pws(w: &Weight, s: &Subspace, tol: &Tolerance) -> Result<LinearRelation> {
    make_pmn(s, &w_companion(s, w, tol)?, tol)
}

/// Blocks `a = P_S W|_S` and `b = P_S W|_{S⊥}` of `W` with respect to `S ⊕ S⊥`.
pub fn weight_blocks(
    w: &Weight,
    s: &Subspace,
    tol: &Tolerance,
) -> Result<(LinearRelation, LinearRelation)> {
    check_dim("weight blocks", w.dim(), s.ambient())?;
    let onto_s = LinearRelation::graph_of_matrix(&s.projector(), tol);
    let graph = w.graph(tol);
    let a = onto_s.compose(&graph.restrict_to(s, tol)?, tol)?;
    let b = onto_s.compose(&graph.restrict_to(&s.complement(tol), tol)?, tol)?;
    Ok((a, b))
}

/// Whether `S + (WS)^⊥` is the whole space. In finite dimensions this is the
/// same as quasicomplementability, so only one notion is reported.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplementabilityReport {
    pub is_complementable: bool,
    /// `dom P_{W,S} = S + (WS)^⊥`.
    pub domain: Subspace,
    /// `mul P_{W,S} = S ∩ (WS)^⊥`.
    pub mul: Subspace,
    /// `ran b ⊆ ran a`.
    pub criterion_ab: bool,
    /// `(I, a^{-1} b; 0, 0)` with respect to `S`, when complementable.
    pub pws_blocks: Option<BlockRep>,
}

pub fn complementability(
    w: &Weight,
    s: &Subspace,
    tol: &Tolerance,
) -> Result<ComplementabilityReport> {
    let pws = make_pws(w, s, tol)?;
    let domain = pws.dom(tol);
    let mul = pws.mul(tol);
    let (a, b) = weight_blocks(w, s, tol)?;
    let criterion_ab = a.ran(tol).contains(&b.ran(tol), tol)?;
    let is_complementable = domain.is_full();
    if is_complementable != criterion_ab {
        return Err(Error::CrossCheck {
            what: "complementability: dom P_{W,S} = H vs ran b ⊆ ran a".into(),
            delta: a.ran(tol).containment_residual(&b.ran(tol))?,
        });
    }
    let pws_blocks = if is_complementable {
        let perp = s.complement(tol);
        let blocks = BlockRep {
            a: LinearRelation::identity_on(s, tol),
            b: a.invert().compose(&b, tol)?,
            c: LinearRelation::zero_on(s),
            d: LinearRelation::zero_on(&perp),
            splitting: s.clone(),
        };
        let generated = blocks.generate(tol)?;
        if !generated.equals(&pws, tol)? {
            return Err(Error::CrossCheck {
                what: "block form (I, a^{-1}b; 0, 0) of P_{W,S}".into(),
                delta: generated.graph().projector_distance(pws.graph())?,
            });
        }
        let adjoint_mul = pws.adjoint(tol).mul(tol);
        if !adjoint_mul.is_zero() {
            return Err(Error::CrossCheck {
                what: "mul P_{W,S}^* = {0} for complementable S".into(),
                delta: adjoint_mul.dim() as f64,
            });
        }
        Some(blocks)
    } else {
        None
    };
    Ok(ComplementabilityReport {
        is_complementable,
        domain,
        mul,
        criterion_ab,
        pws_blocks,
    })
}

/// Shorted operator `Σ_S(W)` of a psd weight, from the Schur complement
/// `(a - b c^† b^H) ⊕ 0` in the splitting `S ⊕ S⊥`. The result is compared
/// with `W (I - P_{W,S⊥})`.
pub fn shorted(w: &Weight, s: &Subspace, tol: &Tolerance) -> Result<CMatrix> {
    w.require(WeightKind::Psd)?;
    let schur = shorted_schur(w, s, tol)?;
    let other = shorted_via_projection(w, s, tol)?;
    let delta = linalg::max_abs(&(&schur - &other));
    if delta > 10.0 * tol.cmp_eps * linalg::max_abs(w.matrix()).max(1.0) {
        return Err(Error::CrossCheck {
            what: "shorted operator: Schur complement vs W(I - P_{W,S⊥})".into(),
            delta,
        });
    }
    Ok(schur)
}

pub fn shorted_schur(w: &Weight, s: &Subspace, tol: &Tolerance) -> Result<CMatrix> {
    check_dim("shorted operator", w.dim(), s.ambient())?;
    w.require(WeightKind::Psd)?;
    let bs = s.basis();
    let bp = s.complement(tol).basis().clone();
    let a = bs.adjoint() * w.matrix() * bs;
    let b = bs.adjoint() * w.matrix() * &bp;
    let c = bp.adjoint() * w.matrix() * &bp;
    let reduced = &a - &b * linalg::pseudo_inverse(&c, tol) * b.adjoint();
    Ok(linalg::hermitian_part(&(bs * reduced * bs.adjoint())))
}

/// `W (I - P_{W,S⊥})` realized as an operator.
pub fn shorted_via_projection(w: &Weight, s: &Subspace, tol: &Tolerance) -> Result<CMatrix> {
    check_dim("shorted operator", w.dim(), s.ambient())?;
    w.require(WeightKind::Psd)?;
    let n = w.dim();
    let pws = make_pws(w, &s.complement(tol), tol)?;
    let id = LinearRelation::graph_of_matrix(&linalg::identity(n), tol);
    let product = w.graph(tol).compose(&id.op_sum(&pws.negate(), tol)?, tol)?;
    Ok(linalg::hermitian_part(&product.to_matrix(tol)?))
}

/// Classification of a subspace of a Krein space `(C^n, [x, y] = <Wx, y>)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KreinReport {
    /// `S ∩ S^{[⊥]}`.
    pub isotropic: Subspace,
    pub nondegenerate: bool,
    /// Always true in finite dimensions, where every subspace sum is closed.
    pub pseudo_regular: bool,
    pub regular: bool,
}

pub fn krein_classify(s: &Subspace, w: &Weight, tol: &Tolerance) -> Result<KreinReport> {
    w.require(WeightKind::Symmetry)?;
    let companion = w_companion(s, w, tol)?;
    let isotropic = s.intersect(&companion, tol)?;
    let nondegenerate = isotropic.is_zero();
    let regular = nondegenerate && s.sum(&companion, tol)?.is_full();
    let pws = make_pws(w, s, tol)?;
    let bounded = pws.dom(tol).is_full() && pws.is_operator(tol);
    if bounded != regular {
        return Err(Error::CrossCheck {
            what: "regularity vs P_{W,S} everywhere defined operator".into(),
            delta: 1.0,
        });
    }
    Ok(KreinReport {
        isotropic,
        nondegenerate,
        pseudo_regular: true,
        regular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{real_diagonal, real_matrix, real_vector};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn span(vs: &[&[f64]]) -> Subspace {
        let n = vs[0].len();
        let vecs: Vec<_> = vs.iter().map(|v| real_vector(v)).collect();
        Subspace::span(n, &vecs, &tol()).unwrap()
    }

    #[test]
    fn companion_examples() {
        let t = tol();
        let e1 = span(&[&[1.0, 0.0]]);
        let e2 = span(&[&[0.0, 1.0]]);
        let id = Weight::psd(linalg::identity(2), &t).unwrap();
        assert!(w_companion(&e1, &id, &t).unwrap().equals(&e2, &t).unwrap());
        let d = Weight::psd(real_diagonal(&[1.0, 0.0]), &t).unwrap();
        assert!(w_companion(&e2, &d, &t).unwrap().is_full());
        let ones = Weight::psd(real_matrix(2, 2, &[1.0, 1.0, 1.0, 1.0]), &t).unwrap();
        let expected = span(&[&[1.0, -1.0]]);
        assert!(w_companion(&e1, &ones, &t)
            .unwrap()
            .equals(&expected, &t)
            .unwrap());
    }

    #[test]
    fn pws_parts_for_singular_weight() {
        let t = tol();
        let e2 = span(&[&[0.0, 1.0]]);
        let d = Weight::psd(real_diagonal(&[1.0, 0.0]), &t).unwrap();
        let p = make_pws(&d, &e2, &t).unwrap();
        assert!(p.dom(&t).is_full());
        assert!(p.mul(&t).equals(&e2, &t).unwrap());
    }

    #[test]
    fn indefinite_weight_not_complementable() {
        let t = tol();
        let w = Weight::symmetry(real_diagonal(&[1.0, -1.0]), &t).unwrap();
        let s = span(&[&[1.0, 1.0]]);
        let report = complementability(&w, &s, &t).unwrap();
        assert!(!report.is_complementable);
        assert!(!report.criterion_ab);
        assert!(report.domain.equals(&s, &t).unwrap());
        assert!(report.pws_blocks.is_none());
    }

    #[test]
    fn identity_weight_blocks() {
        let t = tol();
        let w = Weight::psd(linalg::identity(2), &t).unwrap();
        let s = span(&[&[1.0, 0.0]]);
        let report = complementability(&w, &s, &t).unwrap();
        let blocks = report.pws_blocks.unwrap();
        let zero = LinearRelation::zero_on(&s.complement(&t));
        assert!(blocks.b.equals(&zero, &t).unwrap());
    }

    #[test]
    fn shorted_examples() {
        let t = tol();
        let w = Weight::psd(real_matrix(2, 2, &[2.0, 1.0, 1.0, 1.0]), &t).unwrap();
        let e1 = span(&[&[1.0, 0.0]]);
        let e2 = span(&[&[0.0, 1.0]]);
        let s1 = shorted(&w, &e1, &t).unwrap();
        assert!(linalg::max_abs(&(s1 - real_diagonal(&[1.0, 0.0]))) < 1e-12);
        let s2 = shorted(&w, &e2, &t).unwrap();
        assert!(linalg::max_abs(&(&s2 - real_diagonal(&[0.0, 0.5]))) < 1e-12);
        let n = 2;
        let pws = make_pws(&w, &e1, &t).unwrap();
        let id = LinearRelation::graph_of_matrix(&linalg::identity(n), &t);
        let route = w
            .graph(&t)
            .compose(&id.op_sum(&pws.negate(), &t).unwrap(), &t)
            .unwrap()
            .to_matrix(&t)
            .unwrap();
        assert!(linalg::max_abs(&(s2 - route)) < 1e-12);
        let id_w = Weight::psd(linalg::identity(2), &t).unwrap();
        let p = shorted(&id_w, &e1, &t).unwrap();
        assert!(linalg::max_abs(&(p - e1.projector())) < 1e-12);
    }

    #[test]
    fn krein_examples() {
        let t = tol();
        let j = Weight::symmetry(real_diagonal(&[1.0, -1.0]), &t).unwrap();
        let e1 = span(&[&[1.0, 0.0]]);
        let r = krein_classify(&e1, &j, &t).unwrap();
        assert!(r.nondegenerate && r.regular && r.pseudo_regular);
        let s = span(&[&[1.0, 1.0]]);
        let r = krein_classify(&s, &j, &t).unwrap();
        assert!(r.isotropic.equals(&s, &t).unwrap());
        assert!(!r.nondegenerate && !r.regular);
        let id = Weight::symmetry(linalg::identity(2), &t).unwrap();
        assert!(krein_classify(&s, &id, &t).unwrap().regular);
    }

    #[test]
    fn weight_validation() {
        let t = tol();
        let skew = real_matrix(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        assert!(matches!(
            Weight::selfadjoint(skew, &t),
            Err(Error::NotSelfadjoint(_))
        ));
        let indefinite = real_diagonal(&[1.0, -1.0]);
        assert!(matches!(
            Weight::psd(indefinite.clone(), &t),
            Err(Error::NotPositiveSemidefinite(_))
        ));
        assert!(matches!(
            Weight::symmetry(real_diagonal(&[2.0, 1.0]), &t),
            Err(Error::NotSymmetry(_))
        ));
        let w = Weight::selfadjoint(indefinite, &t).unwrap();
        assert!(shorted(&w, &Subspace::full(2), &t).is_err());
    }
}
