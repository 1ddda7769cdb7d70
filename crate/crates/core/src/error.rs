use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error(
        "relation does not admit a 2x2 block representation with respect to the given subspace"
    )]
    NotRepresentable,

    #[error("relation is not a multivalued projection")]
    NotMultivaluedProjection,

    #[error("weight is not selfadjoint (asymmetry {0:.3e})")]
    NotSelfadjoint(f64),

    #[error("weight is not positive semidefinite (smallest eigenvalue {0:.3e})")]
    NotPositiveSemidefinite(f64),

    #[error("weight is not a symmetry (|W^2 - I| = {0:.3e})")]
    NotSymmetry(f64),

    #[error("constraint matrix is not surjective (rank {rank} < {rows})")]
    NotSurjective { rank: usize, rows: usize },

    #[error("relation is not an everywhere defined operator")]
    NotAnOperator,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no solution exists: {0}")]
    NoSolution(String),

    #[error("internal cross-check failed for {what} (discrepancy {delta:.3e})")]
    CrossCheck { what: String, delta: f64 },
}

pub(crate) fn check_dim(context: &str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context: context.to_string(),
            expected,
            found,
        })
    }
}
