//! The shorted operator of a positive semidefinite weight to a subspace.

use relcalc::linalg::{self, real_matrix};
use relcalc::weighted::{shorted, shorted_via_projection, Weight};
use relcalc::{Subspace, Tolerance};

fn main() -> relcalc::Result<()> {
    let tol = Tolerance::default();
    let w = Weight::psd(
        real_matrix(3, 3, &[4.0, 1.0, 0.0, 1.0, 2.0, 1.0, 0.0, 1.0, 3.0]),
        &tol,
    )?;
    let s = Subspace::coordinate(3, &[0, 1]);
    let sigma = shorted(&w, &s, &tol)?;
    println!("shorted operator: {:.4}", sigma.map(|z| z.re));
    let route = shorted_via_projection(&w, &s, &tol)?;
    println!(
        "Schur and projection routes differ by {:.1e}",
        linalg::max_abs(&(&sigma - route))
    );
    println!(
        "W - shorted is psd: {}",
        linalg::min_eigenvalue(&(w.matrix() - &sigma)) > -1e-12
    );
    Ok(())
}
