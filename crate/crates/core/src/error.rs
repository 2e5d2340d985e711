//! Crate-wide error umbrella with a coarse classification used by callers to
//! pick exit codes: domain errors (bad input, unrealizable data), numerical
//! failures (root finding, tracking), and budget overflows.

use thiserror::Error;

use crate::completion::CompletionError;
use crate::dims::DimsError;
use crate::monodromy::MonodromyError;
use crate::orbits::OrbitError;
use crate::perm::PermError;
use crate::poly::PolyError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Completion(#[from] CompletionError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
    #[error(transparent)]
    Dims(#[from] DimsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Numerical,
    Budget,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Orbit(OrbitError::BudgetExceeded { .. }) => ErrorKind::Budget,
            Error::Poly(PolyError::NonConvergence { .. }) => ErrorKind::Numerical,
            Error::Monodromy(
                MonodromyError::Poly(PolyError::NonConvergence { .. })
                | MonodromyError::Tracking { .. }
                | MonodromyError::FiberMatching(_)
                | MonodromyError::Labeling(_)
                | MonodromyError::Inconsistent(_),
            ) => ErrorKind::Numerical,
            _ => ErrorKind::Domain,
        }
    }
}
