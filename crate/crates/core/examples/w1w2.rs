//! Among the W1-least-squares solutions, those of least W2-seminorm.

use relcalc::linalg::{identity, real_diagonal, real_vector};
use relcalc::lss::w1w2_solve;
use relcalc::weighted::Weight;
use relcalc::{LinearRelation, Tolerance};

fn main() -> relcalc::Result<()> {
    let tol = Tolerance::default();
    let a = LinearRelation::graph_of_matrix(&real_diagonal(&[1.0, 0.0]), &tol);
    let w1 = Weight::psd(real_diagonal(&[0.0, 1.0]), &tol)?;
    let w2 = Weight::psd(identity(2), &tol)?;
    let set = w1w2_solve(&a, &w1, &w2, &real_vector(&[1.0, 1.0]), &tol)?;
    println!(
        "W1W2 solutions: {:?} + span of {} direction(s)",
        set.point()
            .unwrap()
            .iter()
            .map(|z| z.re)
            .collect::<Vec<_>>(),
        set.direction().unwrap().dim()
    );
    Ok(())
}
