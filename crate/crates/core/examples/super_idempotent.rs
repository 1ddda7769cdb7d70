//! Super-idempotents built from (M, S1, S2, x), with the containment test
//! for idempotency checked against squaring.

use relcalc::linalg::real_vector;
use relcalc::mvproj::build_super;
use relcalc::{LinearRelation, Subspace, Tolerance};

fn main() -> relcalc::Result<()> {
    let tol = Tolerance::default();
    let m = Subspace::coordinate(3, &[0]);
    let s2 = Subspace::coordinate(3, &[1]);
    let shift = LinearRelation::from_pairs(
        3,
        3,
        &[(real_vector(&[0.0, 1.0, 0.0]), real_vector(&[1.0, 0.0, 0.0]))],
        &tol,
    )?;

    for (label, s1) in [("S1 = {0}", Subspace::zero(3)), ("S1 = M", m.clone())] {
        let e = build_super(&m, &s1, &s2, &shift, &tol)?;
        let square = e.relation.compose(&e.relation, &tol)?;
        println!(
            "{label}: idempotent by criterion {}, by squaring {}, fixed space dim {}",
            e.is_idempotent,
            square.equals(&e.relation, &tol)?,
            e.canonical.fixed.dim()
        );
    }
    Ok(())
}
