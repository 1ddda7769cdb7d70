//! Interpolating spline: minimize ‖T x‖ subject to V x = b.

use relcalc::linalg::{real_matrix, real_vector};
use relcalc::spline::{spline_solve, SplineProblem};
use relcalc::Tolerance;

fn main() -> relcalc::Result<()> {
    let tol = Tolerance::default();
    // second differences on four nodes, values fixed at both ends
    let t = real_matrix(2, 4, &[1.0, -2.0, 1.0, 0.0, 0.0, 1.0, -2.0, 1.0]);
    let v = real_matrix(2, 4, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    let p = SplineProblem::new(t, v, real_vector(&[0.0, 3.0]))?;
    let sol = spline_solve(&p, &tol)?;
    let values: Vec<String> = sol
        .spline_set
        .point()
        .unwrap()
        .iter()
        .map(|z| format!("{:.4}", z.re))
        .collect();
    println!(
        "spline [{}], roughness {:.1e}",
        values.join(", "),
        sol.min_value.unwrap()
    );
    Ok(())
}
