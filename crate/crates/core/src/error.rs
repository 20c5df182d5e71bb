use thiserror::Error;

use crate::expr::ExprError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("{path}: {source}")]
    Field { path: String, source: ExprError },
    #[error("tetrad is singular or ill-conditioned at {point:?} (condition number {cond:e})")]
    SingularTetrad { point: [f64; 4], cond: f64 },
    #[error("field has jet order {have}, operator needs at least {need}")]
    InsufficientJetOrder { have: usize, need: usize },
    #[error("missing field: {0}")]
    MissingField(String),
    #[error("invalid region: {0}")]
    Region(String),
    #[error("quadrature did not converge: estimated error {estimate:e} above tolerance {tolerance:e}")]
    NonConvergence { estimate: f64, tolerance: f64 },
    #[error("integrand depends on {coordinate} at {point:?}")]
    NonStatic { coordinate: String, point: [f64; 4] },
}

pub type Result<T> = std::result::Result<T, Error>;
