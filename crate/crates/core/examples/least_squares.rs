//! Weighted least squares for b ∈ A x with a singular weight.

use relcalc::linalg::{real_diagonal, real_vector};
use relcalc::lss::{check_normal, solve, LssProblem};
use relcalc::weighted::Weight;
use relcalc::{LinearRelation, Tolerance};

fn main() -> relcalc::Result<()> {
    let tol = Tolerance::default();
    let a = LinearRelation::graph_of_matrix(&real_diagonal(&[1.0, 0.0]), &tol);
    let b = real_vector(&[1.0, 1.0]);

    for (label, w) in [("W = I", [1.0, 1.0]), ("W = diag(0, 1)", [0.0, 1.0])] {
        let p = LssProblem::new(a.clone(), Weight::psd(real_diagonal(&w), &tol)?, b.clone())?;
        let sol = solve(&p, &tol)?;
        let witness = sol.witness.clone().unwrap();
        println!(
            "{label}: min {:.3}, witness {:?}, solution set dim {}, normal equation holds {}",
            sol.min_value.unwrap(),
            witness.iter().map(|z| z.re).collect::<Vec<_>>(),
            sol.solution_set.direction().unwrap().dim(),
            check_normal(&p, &witness, &tol)?
        );
    }
    Ok(())
}
