//! Smoothing: minimize ‖T x‖² + ρ ‖V x - b‖² for a range of ρ.

use relcalc::linalg::{real_matrix, real_vector};
use relcalc::spline::{projection_m, smooth_solve, spline_solve, SmoothingProblem, SplineProblem};
use relcalc::Tolerance;

fn main() -> relcalc::Result<()> {
    let tol = Tolerance::default();
    let t = real_matrix(2, 4, &[1.0, -2.0, 1.0, 0.0, 0.0, 1.0, -2.0, 1.0]);
    let v = real_matrix(
        3,
        4,
        &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
    );
    let b = real_vector(&[0.0, 2.0, 3.0]);
    let base = SplineProblem::new(t.clone(), v.clone(), b.clone())?;

    // the minimum grows with rho toward the interpolating spline's roughness
    for rho in [0.1, 1.0, 10.0, 100.0] {
        let sol = smooth_solve(&SmoothingProblem::new(base.clone(), rho)?, &tol)?;
        println!("rho = {rho:>5}: minimum {:.6}", sol.min_value);
    }
    let exact = spline_solve(&base, &tol)?;
    println!(
        "interpolating spline: roughness {:.6}",
        exact.min_value.unwrap()
    );

    let p = projection_m(&t, &v, &tol)?;
    println!("(I - P)(0, b) has norm {:.6}", p.residual_norm(&b)?);
    Ok(())
}
