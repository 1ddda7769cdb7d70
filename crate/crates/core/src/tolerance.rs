use serde::{Deserialize, Serialize};

/// Numerical thresholds shared by every rank decision and subspace comparison.
///
/// A singular value `s` of an `r x c` matrix counts toward the rank when
/// `s >= abs_eps + rel_eps * max(r, c) * s_max`. Containment of subspaces and
/// membership of vectors are decided against `cmp_eps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
    pub cmp_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_eps: 1e-10,
            rel_eps: 1e-12,
            cmp_eps: 1e-9,
        }
    }
}

impl Tolerance {
    /// Default thresholds with a different absolute rank cutoff.
    pub fn with_abs(abs_eps: f64) -> Self {
        let mut tol = Self::default();
        tol.set_abs(abs_eps);
        tol
    }

    /// Overrides the absolute cutoff; the comparison threshold never drops below it.
    pub fn set_abs(&mut self, abs_eps: f64) {
        self.abs_eps = abs_eps.abs();
        self.cmp_eps = self.cmp_eps.max(10.0 * self.abs_eps);
    }

    pub fn rank_cutoff(&self, rows: usize, cols: usize, sigma_max: f64) -> f64 {
        self.abs_eps + self.rel_eps * rows.max(cols) as f64 * sigma_max
    }

    pub fn is_valid(&self) -> bool {
        self.abs_eps >= 0.0 && self.rel_eps >= 0.0 && self.cmp_eps >= 0.0
    }
}
