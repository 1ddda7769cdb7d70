//! A multivalued linear relation: its four subspaces, adjoint and products.

use relcalc::linalg::{real_matrix, real_vector};
use relcalc::{LinearRelation, Tolerance};

fn main() -> relcalc::Result<()> {
    let tol = Tolerance::default();
    // T = span{(e1, e2), (0, e1)}: defined on span e1, with mul T = span e1.
    let t = LinearRelation::from_pairs(
        2,
        2,
        &[
            (real_vector(&[1.0, 0.0]), real_vector(&[0.0, 1.0])),
            (real_vector(&[0.0, 0.0]), real_vector(&[1.0, 0.0])),
        ],
        &tol,
    )?;
    let parts = t.parts(&tol);
    println!(
        "dim dom = {}, ran = {}, ker = {}, mul = {}",
        parts.dom.dim(),
        parts.ran.dim(),
        parts.ker.dim(),
        parts.mul.dim()
    );
    println!("T is an operator: {}", t.is_operator(&tol));

    let adj = t.adjoint(&tol);
    println!(
        "mul T* = (dom T)^⊥: {}",
        adj.mul(&tol).equals(&parts.dom.complement(&tol), &tol)?
    );
    println!("T** = T: {}", adj.adjoint(&tol).equals(&t, &tol)?);

    let image = t.apply(&real_vector(&[2.0, 0.0]), &tol)?;
    let point: Vec<f64> = image.point().unwrap().iter().map(|z| z.re).collect();
    println!("T(2, 0) = {point:?} + mul T");
    println!(
        "T(0, 1) is empty: {}",
        t.apply(&real_vector(&[0.0, 1.0]), &tol)?.is_empty()
    );

    let r = LinearRelation::graph_of_matrix(&real_matrix(2, 2, &[0.0, 1.0, 1.0, 0.0]), &tol);
    let rt = r.compose(&t, &tol)?;
    println!(
        "ran(RT) = R(ran T): {}",
        rt.ran(&tol).equals(&r.image_of(&parts.ran, &tol)?, &tol)?
    );
    Ok(())
}
