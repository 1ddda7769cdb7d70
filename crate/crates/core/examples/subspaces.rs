//! Sums, intersections and complements of subspaces of C^3.

use relcalc::linalg::real_matrix;
use relcalc::{Subspace, Tolerance};

fn main() -> relcalc::Result<()> {
    let tol = Tolerance::default();
    let plane = Subspace::from_columns(&real_matrix(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]), &tol);
    let tilted = Subspace::from_columns(&real_matrix(3, 2, &[0.0, 1.0, 1.0, 0.0, 0.0, 1.0]), &tol);

    let sum = plane.sum(&tilted, &tol)?;
    let meet = plane.intersect(&tilted, &tol)?;
    println!("dim M = {}, dim N = {}", plane.dim(), tilted.dim());
    println!("dim (M + N) = {}, dim (M ∩ N) = {}", sum.dim(), meet.dim());
    let v: Vec<f64> = meet.basis_vectors()[0].iter().map(|z| z.re).collect();
    println!("M ∩ N is spanned by {v:?}");

    let perp = plane.complement(&tol);
    println!("M^⊥ has dimension {}", perp.dim());
    println!(
        "(M^⊥)^⊥ = M: {}",
        perp.complement(&tol).equals(&plane, &tol)?
    );
    Ok(())
}
