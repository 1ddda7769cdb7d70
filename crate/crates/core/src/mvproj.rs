//! Multivalued projections `P_{M,N}`, their 2x2 block representations with
//! respect to a splitting subspace, and super-idempotent relations.
//!
//! Every subspace of `C^n` is closed, so statements about the closure of the
//! range of a projection are carried out with the range itself.

use crate::error::{check_dim, Error, Result};
use crate::linalg;
use crate::relation::LinearRelation;
use crate::subspace::Subspace;
use crate::tolerance::Tolerance;

/// `P_{M,N} = I_M +̂ (N × {0})`.
pub fn make_pmn(m: &Subspace, n: &Subspace, tol: &Tolerance) -> Result<LinearRelation> {
    check_dim("multivalued projection", m.ambient(), n.ambient())?;
    LinearRelation::identity_on(m, tol).cw_sum(&LinearRelation::zero_on(n), tol)
}

/// `P_{M,N} +̂ ({0} × S)`, the general super-idempotent.
pub fn make_super(
    m: &Subspace,
    n: &Subspace,
    s: &Subspace,
    tol: &Tolerance,
) -> Result<LinearRelation> {
    check_dim("super-idempotent", m.ambient(), s.ambient())?;
    make_pmn(m, n, tol)?.cw_sum(&LinearRelation::multivalued(m.ambient(), s), tol)
}

/// Canonical triple of a super-idempotent `E`: `M = ker(I - E)`, `N = ker E`,
/// `S = mul E`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperCanonical {
    pub fixed: Subspace,
    pub kernel: Subspace,
    pub mul: Subspace,
}

impl SuperCanonical {
    pub fn rebuild(&self, tol: &Tolerance) -> Result<LinearRelation> {
        make_super(&self.fixed, &self.kernel, &self.mul, tol)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub is_sub: bool,
    pub is_super: bool,
    pub is_idempotent: bool,
    pub is_mvproj: bool,
    pub canonical: Option<SuperCanonical>,
}

/// `ker(I - E)`, the fixed points of `E`.
pub fn fixed_points(e: &LinearRelation, tol: &Tolerance) -> Result<Subspace> {
    let n = e.dim_in();
    let id = LinearRelation::graph_of_matrix(&linalg::identity(n), tol);
    Ok(id.op_sum(&e.negate(), tol)?.ker(tol))
}

/// Sorts a square relation into sub-/super-idempotent, idempotent and
/// multivalued projection, comparing the graphs of `E` and `E^2`.
pub fn classify(e: &LinearRelation, tol: &Tolerance) -> Result<Classification> {
    check_dim("classify (square relation)", e.dim_in(), e.dim_out())?;
    let square = e.compose(e, tol)?;
    let is_sub = e.contains(&square, tol)?;
    let is_super = square.contains(e, tol)?;
    let is_idempotent = is_sub && is_super;
    let is_mvproj = is_idempotent && e.dom(tol).contains(&e.ran(tol), tol)?;
    let canonical = if is_super {
        let triple = SuperCanonical {
            fixed: fixed_points(e, tol)?,
            kernel: e.ker(tol),
            mul: e.mul(tol),
        };
        let rebuilt = triple.rebuild(tol)?;
        if !rebuilt.equals(e, tol)? {
            return Err(Error::CrossCheck {
                what: "canonical form of a super-idempotent".into(),
                delta: rebuilt.graph().projector_distance(e.graph())?,
            });
        }
        Some(triple)
    } else {
        None
    };
    Ok(Classification {
        is_sub,
        is_super,
        is_idempotent,
        is_mvproj,
        canonical,
    })
}

/// `P_{M,N} = P_{M ⊖ (M∩N) // N} ⊕̂ ({0} × M∩N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub operator_part: LinearRelation,
    pub mul_part: Subspace,
}

pub fn decompose(p: &LinearRelation, tol: &Tolerance) -> Result<Decomposition> {
    if !p.is_square() || !classify(p, tol)?.is_mvproj {
        return Err(Error::NotMultivaluedProjection);
    }
    let m = p.ran(tol);
    let n = p.ker(tol);
    let overlap = m.intersect(&n, tol)?;
    let reduced = m.intersect(&overlap.complement(tol), tol)?;
    let operator_part = make_pmn(&reduced, &n, tol)?;
    let rebuilt = operator_part.cw_sum(&LinearRelation::multivalued(p.dim_in(), &overlap), tol)?;
    if !rebuilt.equals(p, tol)? {
        return Err(Error::CrossCheck {
            what: "operator part decomposition".into(),
            delta: rebuilt.graph().projector_distance(p.graph())?,
        });
    }
    Ok(Decomposition {
        operator_part,
        mul_part: overlap,
    })
}

/// A relation admits a block representation with respect to `S` iff
/// `P_S(dom T) ⊆ dom T` and `P_S(mul T) ⊆ mul T`.
pub fn representable(t: &LinearRelation, s: &Subspace, tol: &Tolerance) -> Result<bool> {
    check_dim("representable (square relation)", t.dim_in(), t.dim_out())?;
    check_dim(
        "representable (splitting subspace)",
        t.dim_in(),
        s.ambient(),
    )?;
    let p = s.projector();
    let dom = t.dom(tol);
    let mul = t.mul(tol);
    Ok(dom.contains(&dom.image(&p, tol)?, tol)? && mul.contains(&mul.image(&p, tol)?, tol)?)
}

/// Blocks `a ∈ lr(S)`, `b ∈ lr(S⊥, S)`, `c ∈ lr(S, S⊥)`, `d ∈ lr(S⊥)`, kept in
/// ambient coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockRep {
    pub splitting: Subspace,
    pub a: LinearRelation,
    pub b: LinearRelation,
    pub c: LinearRelation,
    pub d: LinearRelation,
}

impl BlockRep {
    /// The relation generated by the blocks:
    /// `{(x1 + x2, (w1 + z1) + (w2 + z2)) : (x1,w1) ∈ a, (x2,z1) ∈ b, (x1,w2) ∈ c, (x2,z2) ∈ d}`,
    /// i.e. the componentwise sum of the columns `(a; c)` and `(b; d)`.
    pub fn generate(&self, tol: &Tolerance) -> Result<LinearRelation> {
        let left = self.a.op_sum(&self.c, tol)?;
        let right = self.b.op_sum(&self.d, tol)?;
        left.cw_sum(&right, tol)
    }
}

/// `a = P_S T|_S`, `b = P_S T|_{S⊥}`, `c = P_{S⊥} T|_S`, `d = P_{S⊥} T|_{S⊥}`.
pub fn canonical_blocks(t: &LinearRelation, s: &Subspace, tol: &Tolerance) -> Result<BlockRep> {
    if !representable(t, s, tol)? {
        return Err(Error::NotRepresentable);
    }
    let perp = s.complement(tol);
    let onto_s = LinearRelation::graph_of_matrix(&s.projector(), tol);
    let onto_perp = LinearRelation::graph_of_matrix(&perp.projector(), tol);
    let on_s = t.restrict_to(s, tol)?;
    let on_perp = t.restrict_to(&perp, tol)?;
    Ok(BlockRep {
        a: onto_s.compose(&on_s, tol)?,
        b: onto_s.compose(&on_perp, tol)?,
        c: onto_perp.compose(&on_s, tol)?,
        d: onto_perp.compose(&on_perp, tol)?,
        splitting: s.clone(),
    })
}

/// The (1,2) coefficient `x = {(P_{M⊥} n, -P_M n) : n ∈ N}` of `P_{M,N}`,
/// checked against the composed form `-P_M ((I - P_M)|_N)^{-1}`.
pub fn coefficient_x(m: &Subspace, n: &Subspace, tol: &Tolerance) -> Result<LinearRelation> {
    check_dim("coefficient x", m.ambient(), n.ambient())?;
    let dim = m.ambient();
    let pm = m.projector();
    let perp = linalg::identity(dim) - &pm;
    let map = linalg::vstack(&[&perp, &(-&pm)]);
    let set_form = LinearRelation::from_graph_basis(dim, dim, &(map * n.basis()), tol)?;
    let composed = coefficient_x_ando(m, n, tol)?;
    if !set_form.equals(&composed, tol)? {
        return Err(Error::CrossCheck {
            what: "coefficient x (set form vs composed form)".into(),
            delta: set_form.graph().projector_distance(composed.graph())?,
        });
    }
    Ok(set_form)
}

/// `-P_M ((I - P_M)|_N)^{-1}`.
pub fn coefficient_x_ando(m: &Subspace, n: &Subspace, tol: &Tolerance) -> Result<LinearRelation> {
    check_dim("coefficient x", m.ambient(), n.ambient())?;
    let dim = m.ambient();
    let pm = m.projector();
    let off = LinearRelation::graph_of_matrix(&(linalg::identity(dim) - &pm), tol);
    let inverse = off.restrict_to(n, tol)?.invert();
    LinearRelation::graph_of_matrix(&(-pm), tol).compose(&inverse, tol)
}

/// `P_{M,N} = (I x; 0 0)` with respect to `M`.
pub fn assemble_representation(m: &Subspace, n: &Subspace, tol: &Tolerance) -> Result<BlockRep> {
    let x = coefficient_x(m, n, tol)?;
    let perp = m.complement(tol);
    Ok(BlockRep {
        a: LinearRelation::identity_on(m, tol),
        b: x,
        c: LinearRelation::zero_on(m),
        d: LinearRelation::zero_on(&perp),
        splitting: m.clone(),
    })
}

/// A super-idempotent generated by
/// `(I_M, x +̂ ({0}×S1); 0 +̂ ({0}×S2), 0)` with respect to `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperIdempotent {
    pub relation: LinearRelation,
    pub blocks: BlockRep,
    pub canonical: SuperCanonical,
    pub is_idempotent: bool,
}

/// `{u - v : (u, v) ∈ x}`.
pub fn difference_set(x: &LinearRelation, tol: &Tolerance) -> Result<Subspace> {
    check_dim("difference set (square relation)", x.dim_in(), x.dim_out())?;
    let n = x.dim_in();
    let fold = linalg::hstack(&[&linalg::identity(n), &(-linalg::identity(n))]);
    x.graph().image(&fold, tol)
}

pub fn build_super(
    m: &Subspace,
    s1: &Subspace,
    s2: &Subspace,
    x: &LinearRelation,
    tol: &Tolerance,
) -> Result<SuperIdempotent> {
    let n = m.ambient();
    check_dim("build_super S1", n, s1.ambient())?;
    check_dim("build_super S2", n, s2.ambient())?;
    check_dim("build_super x (input)", n, x.dim_in())?;
    check_dim("build_super x (output)", n, x.dim_out())?;
    let perp = m.complement(tol);
    if !m.contains(s1, tol)? {
        return Err(Error::Precondition("S1 must lie in M".into()));
    }
    if !perp.contains(s2, tol)? {
        return Err(Error::Precondition(
            "S2 must lie in the orthogonal complement of M".into(),
        ));
    }
    let dom_x = x.dom(tol);
    let mul_x = x.mul(tol);
    if !perp.contains(&dom_x, tol)? {
        return Err(Error::Precondition(
            "dom x must lie in the orthogonal complement of M".into(),
        ));
    }
    if !m.contains(&x.ran(tol), tol)? {
        return Err(Error::Precondition("ran x must lie in M".into()));
    }

    let blocks = BlockRep {
        a: LinearRelation::identity_on(m, tol),
        b: x.cw_sum(&LinearRelation::multivalued(n, s1), tol)?,
        c: LinearRelation::zero_on(m).cw_sum(&LinearRelation::multivalued(n, s2), tol)?,
        d: LinearRelation::zero_on(&perp),
        splitting: m.clone(),
    };
    let relation = blocks.generate(tol)?;

    // Fixed points are M ⊕ (S2 ∩ x^{-1}(S1)); this reduces to M ⊕ (S2 ∩ dom x)
    // exactly when E is idempotent.
    let reaches_s1 = x.invert().image_of(s1, tol)?;
    let canonical = SuperCanonical {
        fixed: m.sum(&s2.intersect(&reaches_s1, tol)?, tol)?,
        kernel: difference_set(x, tol)?.sum(&s1.intersect(m, tol)?, tol)?,
        mul: s1.sum(&mul_x, tol)?.sum(s2, tol)?,
    };
    let direct = fixed_points(&relation, tol)?;
    if !direct.equals(&canonical.fixed, tol)? {
        return Err(Error::CrossCheck {
            what: "fixed points of the generated super-idempotent".into(),
            delta: direct.projector_distance(&canonical.fixed)?,
        });
    }
    let rebuilt = canonical.rebuild(tol)?;
    if !rebuilt.equals(&relation, tol)? {
        return Err(Error::CrossCheck {
            what: "canonical representation of the generated super-idempotent".into(),
            delta: rebuilt.graph().projector_distance(relation.graph())?,
        });
    }

    let criterion = s1.sum(&mul_x, tol)?.contains(&x.image_of(s2, tol)?, tol)?;
    let squared = relation.compose(&relation, tol)?;
    let by_squaring = squared.equals(&relation, tol)?;
    if criterion != by_squaring {
        return Err(Error::CrossCheck {
            what: "idempotency criterion vs graph squaring".into(),
            delta: squared.graph().projector_distance(relation.graph())?,
        });
    }

    Ok(SuperIdempotent {
        relation,
        blocks,
        canonical,
        is_idempotent: criterion,
    })
}

/// Matrix of the orthogonal projector onto `S`, as a relation.
pub fn orthogonal_projection(s: &Subspace, tol: &Tolerance) -> LinearRelation {
    LinearRelation::graph_of_matrix(&s.projector(), tol)
}
