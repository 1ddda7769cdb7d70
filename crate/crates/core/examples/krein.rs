//! Classifying subspaces of the Krein space (C^2, [x, y] = <Jx, y>).

use relcalc::linalg::real_matrix;
use relcalc::weighted::{krein_classify, Weight};
use relcalc::{Subspace, Tolerance};

fn main() -> relcalc::Result<()> {
    let tol = Tolerance::default();
    let j = Weight::symmetry(real_matrix(2, 2, &[1.0, 0.0, 0.0, -1.0]), &tol)?;
    for (label, v) in [
        ("span (1, 1)", [1.0, 1.0]),
        ("span (1, 0)", [1.0, 0.0]),
        ("span (2, 1)", [2.0, 1.0]),
    ] {
        let s = Subspace::from_columns(&real_matrix(2, 1, &v), &tol);
        let r = krein_classify(&s, &j, &tol)?;
        println!(
            "{label}: nondegenerate {}, regular {}, isotropic dim {}",
            r.nondegenerate,
            r.regular,
            r.isotropic.dim()
        );
    }
    Ok(())
}
