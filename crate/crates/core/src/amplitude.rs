//! Quantum-state data model and the map between complex amplitudes and
//! diffusion coordinates on the unit interval.
//!
//! A one-excitation state over `n` atoms, `C_1|1,0,..⟩ + C_2|0,1,..⟩ + ...`,
//! is represented by its normalized amplitude vector. The diffusion picture
//! uses only the squared moduli: for `n = 2` a single coordinate `x = |C_1|²`,
//! for `n = 3` the cumulative pair `x_1 = |C_1|²`, `x_2 = |C_1|² + |C_2|²`.
//! Phases are deliberately discarded; the collapse dynamics is defined purely
//! on the moduli.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `Σ|C_i|² = 1`.
pub const NORM_TOL: f64 = 1e-12;

/// Normalized complex amplitudes over the one-excitation outcome basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntangledAmplitudes {
    amplitudes: Vec<Complex64>,
    basis_labels: Vec<String>,
}

impl EntangledAmplitudes {
    /// Builds a state, checking normalization and label arity.
    pub fn new<L: Into<String>>(amplitudes: Vec<Complex64>, labels: Vec<L>) -> Result<Self> {
        if amplitudes.len() < 2 {
            return Err(Error::UnsupportedDimension {
                n: amplitudes.len(),
            });
        }
        if labels.len() != amplitudes.len() {
            return Err(Error::LabelMismatch {
                labels: labels.len(),
                amplitudes: amplitudes.len(),
            });
        }
        let norm: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                norm,
                tol: NORM_TOL,
            });
        }
        Ok(Self {
            amplitudes,
            basis_labels: labels.into_iter().map(Into::into).collect(),
        })
    }

    /// Convenience constructor for real nonnegative amplitudes.
    pub fn from_real<L: Into<String>>(amplitudes: &[f64], labels: Vec<L>) -> Result<Self> {
        Self::new(
            amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
            labels,
        )
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    /// Squared modulus of the i-th amplitude.
    pub fn probability(&self, i: usize) -> f64 {
        self.amplitudes[i].norm_sqr()
    }
}

/// Cumulative squared-amplitude coordinates `x_1 ≤ x_2 ≤ … ≤ x_{n−1}` in [0,1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiffusionCoordinates {
    positions: Vec<f64>,
}

impl DiffusionCoordinates {
    /// Builds coordinates, checking range and ordering.
    pub fn new(positions: Vec<f64>) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::UnsupportedDimension { n: 1 });
        }
        let mut prev = 0.0;
        for &x in &positions {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::OutOfRange {
                    name: "position",
                    value: x,
                    range: "[0, 1]",
                });
            }
            if x < prev {
                return Err(Error::OutOfRange {
                    name: "position",
                    value: x,
                    range: "nondecreasing sequence",
                });
            }
            prev = x;
        }
        Ok(Self { positions })
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    /// Number of amplitudes this coordinate set encodes (`positions + 1`).
    pub fn dim(&self) -> usize {
        self.positions.len() + 1
    }

    /// Interval lengths `(x_1, x_2 − x_1, …, 1 − x_{n−1})`, i.e. the `|C_i|²`.
    pub fn interval_lengths(&self) -> Vec<f64> {
        let mut lengths = Vec::with_capacity(self.dim());
        let mut prev = 0.0;
        for &x in &self.positions {
            lengths.push(x - prev);
            prev = x;
        }
        lengths.push(1.0 - prev);
        lengths
    }
}

/// Terminal record of a single absorption trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbsorptionOutcome {
    /// One of the basis labels of the originating state.
    pub label: String,
    /// Simulation time at absorption.
    pub absorption_time: f64,
    /// Integrator steps taken.
    pub steps: u64,
}

/// Maps a normalized state to its diffusion coordinates, discarding phases.
///
/// `n = 2` gives `[x]` with `x = |C_1|²`; `n = 3` gives `[x_1, x_2]` with
/// `x_1 = |C_1|²` and `x_2 = x_1 + |C_2|²`.
pub fn to_diffusion(state: &EntangledAmplitudes) -> Result<DiffusionCoordinates> {
    let n = state.dim();
    if n > 3 {
        return Err(Error::UnsupportedDimension { n });
    }
    let mut positions = Vec::with_capacity(n - 1);
    let mut running = 0.0;
    for i in 0..n - 1 {
        running += state.probability(i);
        positions.push(running.clamp(0.0, 1.0));
    }
    DiffusionCoordinates::new(positions)
}

/// Inverse of [`to_diffusion`] under the real-nonnegative phase convention:
/// amplitudes are the square roots of the interval lengths.
pub fn from_diffusion<L: Into<String>>(
    coords: &DiffusionCoordinates,
    labels: Vec<L>,
) -> Result<EntangledAmplitudes> {
    let amplitudes: Vec<f64> = coords
        .interval_lengths()
        .iter()
        .map(|&len| len.max(0.0).sqrt())
        .collect();
    EntangledAmplitudes::from_real(&amplitudes, labels)
}

/// First `n_digits` binary digits of `x ∈ [0, 1]`.
///
/// The partial sums `Σ c_k 2^{−k}` approach `x` from below with error under
/// `2^{−n_digits}`. The boundary `x = 1` returns the all-ones string so the
/// doubling chain stays well defined there.
pub fn binary_expansion(x: f64, n_digits: usize) -> Result<Vec<u8>> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange {
            name: "x",
            value: x,
            range: "[0, 1]",
        });
    }
    if n_digits == 0 {
        return Err(Error::OutOfRange {
            name: "n_digits",
            value: 0.0,
            range: "[1, ∞)",
        });
    }
    if x == 1.0 {
        return Ok(vec![1; n_digits]);
    }
    let mut digits = Vec::with_capacity(n_digits);
    let mut frac = x;
    for _ in 0..n_digits {
        frac *= 2.0; // exact: power-of-two scaling
        if frac >= 1.0 {
            digits.push(1);
            frac -= 1.0; // exact by Sterbenz since frac ∈ [1, 2)
        } else {
            digits.push(0);
        }
    }
    Ok(digits)
}
