#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use relcalc::linalg::{self, CMatrix, CVector};
use relcalc::{LinearRelation, Subspace, Tolerance};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tol() -> Tolerance {
    Tolerance::default()
}

pub fn scalar(rng: &mut TestRng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn matrix(rng: &mut TestRng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| scalar(rng))
}

pub fn vector(rng: &mut TestRng, n: usize) -> CVector {
    CVector::from_fn(n, |_, _| scalar(rng))
}

pub fn subspace(rng: &mut TestRng, n: usize, k: usize) -> Subspace {
    Subspace::from_columns(&matrix(rng, n, k), &tol())
}

pub fn any_subspace(rng: &mut TestRng, n: usize) -> Subspace {
    let k = rng.gen_range(0..=n);
    subspace(rng, n, k)
}

/// Random subspace of `inside`, of dimension at most `inside.dim()`.
pub fn subspace_of(rng: &mut TestRng, inside: &Subspace) -> Subspace {
    let k = rng.gen_range(0..=inside.dim());
    let coeffs = matrix(rng, inside.dim(), k);
    Subspace::from_columns(&(inside.basis() * coeffs), &tol())
}

/// Two subspaces sharing a random common part with probability one half.
pub fn subspace_pair(rng: &mut TestRng, n: usize) -> (Subspace, Subspace) {
    let t = tol();
    if rng.gen_bool(0.5) {
        let common = rng.gen_range(1..=n.min(2));
        let shared = matrix(rng, n, common);
        let extra_m = rng.gen_range(0..=n - common);
        let extra_n = rng.gen_range(0..=n - common);
        let m = linalg::hstack(&[&shared, &matrix(rng, n, extra_m)]);
        let nn = linalg::hstack(&[&shared, &matrix(rng, n, extra_n)]);
        (
            Subspace::from_columns(&m, &t),
            Subspace::from_columns(&nn, &t),
        )
    } else {
        (any_subspace(rng, n), any_subspace(rng, n))
    }
}

pub fn dims(rng: &mut TestRng, lo: usize, hi: usize) -> usize {
    rng.gen_range(lo..=hi)
}

/// A spanning matrix `(F; G)` for a relation `C^n -> C^m` with a random
/// domain, a rank-deficient operator part (so the kernel is nontrivial) and a
/// random multivalued part.
pub fn relation_span(rng: &mut TestRng, n: usize, m: usize) -> (CMatrix, CMatrix) {
    let d = rng.gen_range(0..=n);
    let r = rng.gen_range(0..=m.min(d));
    let mul = rng.gen_range(0..=m);
    let dom = matrix(rng, n, d);
    let op = matrix(rng, m, r) * matrix(rng, r, d);
    let extra = rng.gen_range(0..=2);
    let f = linalg::hstack(&[&dom, &CMatrix::zeros(n, mul), &CMatrix::zeros(n, extra)]);
    let g = linalg::hstack(&[&op, &matrix(rng, m, mul), &CMatrix::zeros(m, extra)]);
    // mix columns so the spanning set carries no visible structure
    let mix = matrix(rng, f.ncols(), f.ncols());
    (f * &mix, g * mix)
}

pub fn relation_from_span(f: &CMatrix, g: &CMatrix) -> LinearRelation {
    LinearRelation::from_graph_basis(f.nrows(), g.nrows(), &linalg::vstack(&[f, g]), &tol())
        .unwrap()
}

pub fn relation(rng: &mut TestRng, n: usize, m: usize) -> LinearRelation {
    let (f, g) = relation_span(rng, n, m);
    relation_from_span(&f, &g)
}

pub fn psd(rng: &mut TestRng, n: usize) -> CMatrix {
    let r = rng.gen_range(0..=n);
    let g = matrix(rng, n, r);
    linalg::hermitian_part(&(&g * g.adjoint()))
}

pub fn hermitian(rng: &mut TestRng, n: usize) -> CMatrix {
    linalg::hermitian_part(&matrix(rng, n, n))
}

/// Random unitary from the orthonormal range of a square matrix.
pub fn unitary(rng: &mut TestRng, n: usize) -> CMatrix {
    loop {
        let q = Subspace::from_columns(&matrix(rng, n, n), &tol());
        if q.dim() == n {
            return q.basis().clone();
        }
    }
}

/// Selfadjoint weight together with a subspace. Half of the draws put a
/// singular compression `a = P_S W|_S` next to a generic off-diagonal block,
/// which makes `S` non-complementable.
pub fn selfadjoint_with_subspace(rng: &mut TestRng, n: usize) -> (CMatrix, Subspace) {
    let t = tol();
    let k = rng.gen_range(1..n);
    let s = subspace(rng, n, k);
    if rng.gen_bool(0.5) {
        return (hermitian(rng, n), s);
    }
    let perp = s.complement(&t);
    let basis = linalg::hstack(&[s.basis(), perp.basis()]);
    let r = rng.gen_range(0..k);
    let g = matrix(rng, k, r);
    let signs: Vec<f64> = (0..r)
        .map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
        .collect();
    let a = &g * linalg::real_diagonal(&signs) * g.adjoint();
    let b = matrix(rng, k, n - k);
    let c = hermitian(rng, n - k);
    let top = linalg::hstack(&[&a, &b]);
    let bottom = linalg::hstack(&[&b.adjoint(), &c]);
    let w = &basis * linalg::vstack(&[&top, &bottom]) * basis.adjoint();
    (linalg::hermitian_part(&w), s)
}

/// `U diag(±1) U^*`.
pub fn symmetry(rng: &mut TestRng, n: usize) -> CMatrix {
    let u = unitary(rng, n);
    let signs: Vec<f64> = (0..n)
        .map(|_| if rng.gen_bool(0.5) { 1.0 } else { -1.0 })
        .collect();
    linalg::hermitian_part(&(&u * linalg::real_diagonal(&signs) * u.adjoint()))
}

/// A subspace of the Krein space `(C^n, W)` that contains a neutral vector
/// half of the time.
pub fn krein_subspace(rng: &mut TestRng, w: &CMatrix) -> Subspace {
    let n = w.nrows();
    let (values, vectors) = linalg::hermitian_eigen(w);
    let plus = values.iter().position(|&l| l > 0.0);
    let minus = values.iter().position(|&l| l < 0.0);
    let k = rng.gen_range(1..n);
    if let (true, Some(p), Some(m)) = (rng.gen_bool(0.5), plus, minus) {
        let neutral = CMatrix::from_columns(&[vectors.column(p) + vectors.column(m)]);
        let rest = matrix(rng, n, k - 1);
        let cols = linalg::hstack(&[&neutral, &rest]);
        Subspace::from_columns(&cols, &tol())
    } else {
        subspace(rng, n, k)
    }
}

pub fn is_psd(m: &CMatrix, slack: f64) -> bool {
    linalg::min_eigenvalue(m) >= -slack
}
