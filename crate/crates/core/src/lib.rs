//! Replicator dynamics of the repeated snowdrift game played with the four
//! reactive strategies ALLC, TFT, STFT and ALLD.
//!
//! The crate builds the repeated-game payoff matrix exactly, classifies the
//! payoff regime, enumerates every equilibrium point and continuum, integrates
//! the replicator flow on the simplex and checks trajectories against the
//! limit sets the regime admits.
//!
//! Strategy order is fixed as `(ALLC, TFT, STFT, ALLD)`; index `i` in every
//! array refers to that order (0-based in code).
//!
//! Everything that decides a regime (matrix entries, thresholds, equilibrium
//! coordinates) is computed in exact rational arithmetic. Floating point is
//! only used by the integrator and the quantities derived from trajectories.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod convergence;
pub mod dynamics;
pub mod equilibria;
mod error;
pub mod game;
pub mod metrics;
pub mod rational;
pub mod simplex;
pub mod stability;

pub use error::Error;
pub use game::{BasePayoffs, PayoffMatrix, RepeatedGame, ReducedMatrix, Strategy};
pub use rational::Rational;
pub use simplex::SimplexPoint;
