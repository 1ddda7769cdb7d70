//! The multivalued projection P_{M,N} for overlapping M and N, and its
//! split into an operator part and a purely multivalued part.

use relcalc::linalg::real_vector;
use relcalc::mvproj::{classify, decompose, make_pmn};
use relcalc::{Subspace, Tolerance};

fn main() -> relcalc::Result<()> {
    let tol = Tolerance::default();
    let m = Subspace::coordinate(3, &[0, 1]);
    let n = Subspace::coordinate(3, &[1, 2]);
    let p = make_pmn(&m, &n, &tol)?;

    let class = classify(&p, &tol)?;
    println!(
        "idempotent: {}, multivalued projection: {}",
        class.is_idempotent, class.is_mvproj
    );
    println!("mul P = M ∩ N has dimension {}", p.mul(&tol).dim());

    let parts = decompose(&p, &tol)?;
    println!(
        "operator part is single valued: {}, multivalued part dim {}",
        parts.operator_part.is_operator(&tol),
        parts.mul_part.dim()
    );

    let image = p.apply(&real_vector(&[1.0, 2.0, 3.0]), &tol)?;
    println!(
        "P(1, 2, 3) = {:?} + span of {} direction(s)",
        image
            .point()
            .unwrap()
            .iter()
            .map(|z| z.re)
            .collect::<Vec<_>>(),
        image.direction().unwrap().dim()
    );

    let adjoint = make_pmn(&n.complement(&tol), &m.complement(&tol), &tol)?;
    println!(
        "P* = P_(N⊥, M⊥): {}",
        p.adjoint(&tol).equals(&adjoint, &tol)?
    );
    Ok(())
}
