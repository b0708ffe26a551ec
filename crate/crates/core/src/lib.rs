//! Entanglement of a qubit–qutrit state shared between an inertial and a
//! uniformly accelerated observer, under amplitude-damping, depolarizing and
//! phase-damping noise.
//!
//! The pipeline is [`state::initial_state`] → [`evolve::evolve_scenario`] →
//! [`entanglement::negativity`]. [`analytic`] holds published closed-form
//! spectra, and [`audit`] compares the two routes point by point.

pub mod analytic;
pub mod audit;
pub mod channels;
pub mod claims;
pub mod cli;
pub mod entanglement;
pub mod error;
pub mod evolve;
pub mod linalg;
pub mod state;

pub use error::{Error, Result};
