//! 2x2 block representation of a relation with respect to a subspace.

use relcalc::linalg::real_matrix;
use relcalc::mvproj::{assemble_representation, canonical_blocks, coefficient_x, representable};
use relcalc::{LinearRelation, Subspace, Tolerance};

fn main() -> relcalc::Result<()> {
    let tol = Tolerance::default();
    let s = Subspace::coordinate(2, &[0]);
    let t = LinearRelation::graph_of_matrix(&real_matrix(2, 2, &[1.0, 2.0, 3.0, 4.0]), &tol);

    println!("representable: {}", representable(&t, &s, &tol)?);
    let blocks = canonical_blocks(&t, &s, &tol)?;
    println!(
        "blocks regenerate T: {}",
        blocks.generate(&tol)?.equals(&t, &tol)?
    );

    // P_{M,N} = (I x; 0 0) with respect to M
    let m = Subspace::coordinate(2, &[0]);
    let n = Subspace::from_columns(&real_matrix(2, 1, &[1.0, 1.0]), &tol);
    let x = coefficient_x(&m, &n, &tol)?;
    let image = x.apply(&relcalc::linalg::real_vector(&[0.0, 1.0]), &tol)?;
    let point: Vec<f64> = image.point().unwrap().iter().map(|z| z.re).collect();
    println!(
        "dom x has dimension {}; x(0, 1) = {point:?}",
        x.dom(&tol).dim()
    );
    let rep = assemble_representation(&m, &n, &tol)?;
    let p = relcalc::mvproj::make_pmn(&m, &n, &tol)?;
    println!(
        "(I x; 0 0) = P_(M,N): {}",
        rep.generate(&tol)?.equals(&p, &tol)?
    );
    Ok(())
}
