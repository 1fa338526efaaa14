use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("projection did not converge after {iterations} iterations (last step {last_step:e})")]
    NonConvergence { iterations: usize, last_step: f64 },
    #[error("polyhedron is empty (constraint violation {violation:e})")]
    InfeasibleSet { violation: f64 },
    #[error("point is not in the set (distance {distance:e} > {tol:e})")]
    PointNotInSet { distance: f64, tol: f64 },
    #[error("no exact Hausdorff distance formula for this pair: {0}")]
    UnsupportedPair(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("horizon mismatch: {0} vs {1}")]
    HorizonMismatch(f64, f64),
    #[error("time {t} outside [0, {horizon}]")]
    OutOfDomain { t: f64, horizon: f64 },
    #[error("range of time map [{lo}, {hi}] not contained in [0, {horizon}]")]
    RangeMismatch { lo: f64, hi: f64, horizon: f64 },
    #[error("initial state is {distance:e} away from the characteristic set")]
    InvalidInitialState { distance: f64 },
    #[error("paths live on different grids")]
    GridMismatch,
    #[error("time reparametrization has a jump at t = {0}")]
    JumpyReparametrization(f64),
    #[error("input has a jump at t = {0}; a continuous input is required")]
    NotContinuousInput(f64),
    #[error("test function leaves Z at t = {t} (distance {distance:e})")]
    TestFunctionOutsideZ { t: f64, distance: f64 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
