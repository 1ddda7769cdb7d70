//! Weighted projections P_{W,S} and complementability for an indefinite and
//! a semidefinite weight.

use relcalc::linalg::real_matrix;
use relcalc::weighted::{complementability, make_pws, Weight};
use relcalc::{Subspace, Tolerance};

fn main() -> relcalc::Result<()> {
    let tol = Tolerance::default();
    let s = Subspace::coordinate(2, &[0]);

    let flip = Weight::selfadjoint(real_matrix(2, 2, &[0.0, 1.0, 1.0, 0.0]), &tol)?;
    let report = complementability(&flip, &s, &tol)?;
    println!(
        "W = [[0,1],[1,0]]: complementable {}, ran b ⊆ ran a {}, dom P has dim {}",
        report.is_complementable,
        report.criterion_ab,
        report.domain.dim()
    );

    let psd = Weight::psd(real_matrix(2, 2, &[2.0, 1.0, 1.0, 1.0]), &tol)?;
    let report = complementability(&psd, &s, &tol)?;
    println!(
        "W = [[2,1],[1,1]]: complementable {}",
        report.is_complementable
    );
    let p = make_pws(&psd, &s, &tol)?;
    println!(
        "P_(W,S) as a matrix: {:.3}",
        p.to_matrix(&tol)?.map(|z| z.re)
    );
    Ok(())
}
