//! Stochastic simulation of single-photon absorption by one, two, and three
//! atoms, modeled as amplitude diffusion on the unit interval with absorbing
//! boundaries.
//!
//! The entangled "stuck" state reached when a photon interacts with several
//! atoms is parameterized by its squared amplitude moduli. Disentanglement is
//! simulated as zero-drift Brownian motion of those coordinates with diffusion
//! coefficient `D(x) = x(1-x)`, so the motion slows near the eigenstates and
//! the endpoint hit decides which atom keeps the photon. Three independent
//! routes to the hitting probabilities are implemented and cross-checked:
//!
//! * [`diffusion`] — Euler–Maruyama integration of the diffusion itself,
//! * [`doubling`] — the exact coin-flip/doubling-map argument (gambler's ruin),
//! * [`diffusion::bvp_hitting_probability`] — a finite-difference solution of
//!   the exit problem.
//!
//! [`multi_particle`] extends the picture to two merging particles (three
//! atoms), [`hydrogen`] evaluates the rotating 1s/2p₊₁ superposition density
//! that motivates the fluctuation coupling, [`kick`] implements the discrete
//! energy-conserving fluctuation interaction, and [`experiments`] orchestrates
//! reproducible Monte Carlo campaigns over all scenarios.

pub mod amplitude;
pub mod diffusion;
pub mod doubling;
pub mod error;
pub mod experiments;
pub mod hydrogen;
pub mod kick;
pub mod multi_particle;
pub mod quadrature;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};

// Re-exported so downstream crates build states against the same version.
pub use num_complex;
