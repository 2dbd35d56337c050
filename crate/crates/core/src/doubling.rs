//! Discrete doubling-map chain: the gambler's-ruin argument that a particle
//! started at `x` reaches endpoint 1 with probability exactly `x`.
//!
//! At each step a particle at `ξ < 1/2` either absorbs at 0 or jumps to `2ξ`,
//! with equal probability; at `ξ > 1/2` it either absorbs at 1 or jumps to
//! `2ξ − 1`. Surviving steps shift the binary expansion of the position left
//! by one digit, so the absorbed-at-1 mass over the whole tree is
//! `Σ c_k 2^{−k}` — the position itself.

use rand::Rng;

use crate::error::{Error, Result};

/// Where a doubling chain currently stands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainStatus {
    Running,
    AbsorbedAtZero,
    AbsorbedAtOne,
}

/// Value state of a doubling chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoublingChainState {
    pub position: f64,
    pub step_count: u32,
    pub status: ChainStatus,
}

impl DoublingChainState {
    /// New running chain at `x0 ∈ [0, 1]`.
    pub fn new(x0: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x0) {
            return Err(Error::OutOfRange {
                name: "x0",
                value: x0,
                range: "[0, 1]",
            });
        }
        Ok(Self {
            position: x0,
            step_count: 0,
            status: ChainStatus::Running,
        })
    }

    pub fn is_absorbed(&self) -> bool {
        self.status != ChainStatus::Running
    }
}

/// Advances a running chain by one fair coin flip.
///
/// The positions 0 and 1 absorb immediately regardless of the coin, and the
/// tie `ξ = 1/2` absorbs directly at the endpoint the coin selects (both
/// branch rules agree there, since `2ξ = 1` and `2ξ − 1 = 0`).
pub fn doubling_step(state: DoublingChainState, coin: bool) -> Result<DoublingChainState> {
    if state.is_absorbed() {
        return Err(Error::ChainAlreadyAbsorbed);
    }
    let xi = state.position;
    let step_count = state.step_count + 1;
    let next = if xi == 0.0 {
        DoublingChainState {
            position: 0.0,
            step_count,
            status: ChainStatus::AbsorbedAtZero,
        }
    } else if xi == 1.0 {
        DoublingChainState {
            position: 1.0,
            step_count,
            status: ChainStatus::AbsorbedAtOne,
        }
    } else if xi == 0.5 {
        if coin {
            DoublingChainState {
                position: 1.0,
                step_count,
                status: ChainStatus::AbsorbedAtOne,
            }
        } else {
            DoublingChainState {
                position: 0.0,
                step_count,
                status: ChainStatus::AbsorbedAtZero,
            }
        }
    } else if xi < 0.5 {
        if coin {
            DoublingChainState {
                position: 2.0 * xi,
                step_count,
                status: ChainStatus::Running,
            }
        } else {
            DoublingChainState {
                position: 0.0,
                step_count,
                status: ChainStatus::AbsorbedAtZero,
            }
        }
    } else if coin {
        DoublingChainState {
            position: 1.0,
            step_count,
            status: ChainStatus::AbsorbedAtOne,
        }
    } else {
        DoublingChainState {
            position: 2.0 * xi - 1.0,
            step_count,
            status: ChainStatus::Running,
        }
    };
    Ok(next)
}

/// Runs a chain from `x0` to absorption and returns the endpoint (0 or 1).
///
/// If `max_steps` is exhausted the trial is resolved by a single
/// `Bernoulli(position)` draw; the induced bias on the hit probability is
/// bounded by `2^{−max_steps}`.
pub fn run_doubling_chain<R: Rng + ?Sized>(x0: f64, rng: &mut R, max_steps: u32) -> Result<u8> {
    let mut state = DoublingChainState::new(x0)?;
    if max_steps == 0 {
        return Err(Error::OutOfRange {
            name: "max_steps",
            value: 0.0,
            range: "[1, ∞)",
        });
    }
    while state.step_count < max_steps {
        state = doubling_step(state, rng.random_bool(0.5))?;
        match state.status {
            ChainStatus::AbsorbedAtZero => return Ok(0),
            ChainStatus::AbsorbedAtOne => return Ok(1),
            ChainStatus::Running => {}
        }
    }
    Ok(u8::from(rng.random_bool(state.position)))
}

/// Default step cap: beyond the digit content of an `f64`, so the truncation
/// branch is never taken for representable starting points.
pub const DEFAULT_MAX_STEPS: u32 = 64;

/// Probability of hitting endpoint 1, computed by summing the absorption
/// branches of the chain over the binary expansion of `x0` — not by returning
/// the input. The sum reconstructs `x0` exactly for every representable `x0`.
pub fn exact_hit_probability(x0: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x0) {
        return Err(Error::OutOfRange {
            name: "x0",
            value: x0,
            range: "[0, 1]",
        });
    }
    let mut position = x0;
    let mut hit_one_mass = 0.0;
    let mut alive_mass = 1.0_f64;
    // Doubling an f64 and subtracting 1 within [1, 2) are both exact, so the
    // walk terminates once the significand is exhausted; alive_mass underflow
    // is a final backstop.
    while alive_mass > 0.0 {
        if position == 0.0 {
            break;
        }
        if position == 1.0 {
            hit_one_mass += alive_mass;
            break;
        }
        alive_mass *= 0.5;
        if position >= 0.5 {
            hit_one_mass += alive_mass;
            position = 2.0 * position - 1.0;
        } else {
            position *= 2.0;
        }
    }
    Ok(hit_one_mass)
}
