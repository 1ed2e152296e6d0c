use alloc::string::String;

use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("payoffs are not a snowdrift game: {0} does not hold")]
    NotSnowdrift(&'static str),
    #[error("the game must be repeated at least twice, got m = {0}")]
    TooFewRounds(u32),
    #[error("cannot parse {0:?} as a rational number")]
    ParseRational(String),
    #[error("point is not in the simplex: {0}")]
    OutsideSimplex(&'static str),
    #[error("strategy index {0} is out of range (expected 0..4)")]
    BadIndex(usize),
    #[error("edge endpoints must differ")]
    DegenerateEdge,
    #[error("ratio x{numerator}/x{denominator} is undefined: x{denominator} = 0")]
    ZeroDenominator { numerator: usize, denominator: usize },
    #[error("this regime has no interior equilibrium")]
    NoInteriorEquilibrium,
    #[error("x23 is not an equilibrium in the simplex for this regime")]
    NoX23,
    #[error("X12 contains no Nash state for this regime")]
    EmptyNashSegment,
    #[error("separatrix seeds coincide")]
    DegenerateSegment,
    #[error("invalid integrator setting: {0}")]
    BadConfig(&'static str),
    #[error("integration left the simplex at t = {0}; reduce dt")]
    IntegrationFailed(f64),
    #[error("both separatrix seeds converge to {0}")]
    SameAttractor(String),
    #[error("separatrix seed converged to {0}, expected x14 or x23")]
    UnexpectedAttractor(String),
}
