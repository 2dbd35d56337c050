//! Two merging particles on the unit interval: the three-atom
//! disentanglement picture.
//!
//! The three-amplitude state maps to ordered coordinates `x1 ≤ x2`. Both
//! particles diffuse independently with the single-particle dynamics; when a
//! step makes them cross or touch they merge at the midpoint and continue as
//! one particle. Terminal configurations decide which atom absorbed the
//! photon: both at 1 → atom A, both at 0 → atom C, one at each end → atom B,
//! with probabilities `x1`, `1 − x2`, and `x2 − x1` respectively.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::diffusion::{em_update, DiffusionParams};
use crate::error::{Error, Result};
use crate::experiments::harness;
use crate::experiments::report::{assemble_report, ExperimentReport, ReportMeta, TrialResult};
use crate::rng::trial_rng;

/// Which atom ends up excited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThreeAtomLabel {
    AExcited,
    BExcited,
    CExcited,
}

impl ThreeAtomLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ThreeAtomLabel::AExcited => "A_excited",
            ThreeAtomLabel::BExcited => "B_excited",
            ThreeAtomLabel::CExcited => "C_excited",
        }
    }

    pub fn index(self) -> usize {
        match self {
            ThreeAtomLabel::AExcited => 0,
            ThreeAtomLabel::BExcited => 1,
            ThreeAtomLabel::CExcited => 2,
        }
    }
}

/// Report labels in index order.
pub const THREE_ATOM_LABELS: [&str; 3] = ["A_excited", "B_excited", "C_excited"];

/// Terminal record of one three-atom trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeAtomOutcome {
    pub label: ThreeAtomLabel,
    pub absorption_time: f64,
}

/// Positions of the particle pair. Absorbed particles sit exactly on their
/// endpoint, so `x ∈ {0, 1}` encodes absorption; after merging `x1 == x2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairState {
    pub x1: f64,
    pub x2: f64,
    pub merged: bool,
    pub t: f64,
}

fn snap(x: f64, epsilon: f64) -> f64 {
    if x < epsilon {
        0.0
    } else if x > 1.0 - epsilon {
        1.0
    } else {
        x
    }
}

fn at_endpoint(x: f64) -> bool {
    x == 0.0 || x == 1.0
}

impl PairState {
    /// Validated initial state: positions inside the absorption layer snap to
    /// their endpoint, and coinciding live positions start merged.
    pub fn initial(x1: f64, x2: f64, params: &DiffusionParams) -> Result<Self> {
        if !(0.0..=1.0).contains(&x1) || !(0.0..=1.0).contains(&x2) {
            return Err(Error::OutOfRange {
                name: "pair position",
                value: if (0.0..=1.0).contains(&x1) { x2 } else { x1 },
                range: "[0, 1]",
            });
        }
        if x1 > x2 {
            return Err(Error::OutOfRange {
                name: "x1",
                value: x1,
                range: "[0, x2]",
            });
        }
        let s1 = snap(x1, params.epsilon);
        let s2 = snap(x2, params.epsilon);
        Ok(Self {
            x1: s1,
            x2: s2,
            merged: s1 == s2,
            t: 0.0,
        })
    }

    pub fn both_absorbed(&self) -> bool {
        at_endpoint(self.x1) && at_endpoint(self.x2)
    }
}

/// Pure pair update given the normal draws for each particle. Draws for
/// absorbed particles are ignored; a merged pair consumes only `g1`.
pub fn pair_update(state: &PairState, params: &DiffusionParams, g1: f64, g2: f64) -> PairState {
    if state.both_absorbed() {
        return *state;
    }
    let t = state.t + params.dt;
    if state.merged {
        let x = snap(em_update(state.x1, params, g1), params.epsilon);
        return PairState {
            x1: x,
            x2: x,
            merged: true,
            t,
        };
    }
    let live1 = !at_endpoint(state.x1);
    let live2 = !at_endpoint(state.x2);
    let x1 = if live1 {
        em_update(state.x1, params, g1)
    } else {
        state.x1
    };
    let x2 = if live2 {
        em_update(state.x2, params, g2)
    } else {
        state.x2
    };
    if live1 && live2 && x1 >= x2 {
        let mid = snap(0.5 * (x1 + x2), params.epsilon);
        return PairState {
            x1: mid,
            x2: mid,
            merged: true,
            t,
        };
    }
    let x1 = snap(x1, params.epsilon);
    let x2 = snap(x2, params.epsilon);
    debug_assert!(x1 <= x2, "ordering lost: {x1} > {x2}");
    PairState {
        x1,
        x2,
        merged: false,
        t,
    }
}

/// Advances the pair by one time step, drawing noise only for live particles
/// (so a pair with one absorbed particle consumes exactly the single-particle
/// draw sequence).
pub fn pair_step<R: Rng + ?Sized>(
    state: &PairState,
    params: &DiffusionParams,
    rng: &mut R,
) -> PairState {
    let need1 = if state.merged {
        !state.both_absorbed()
    } else {
        !at_endpoint(state.x1)
    };
    let need2 = !state.merged && !at_endpoint(state.x2);
    let g1 = if need1 { rng.sample(StandardNormal) } else { 0.0 };
    let g2 = if need2 { rng.sample(StandardNormal) } else { 0.0 };
    pair_update(state, params, g1, g2)
}

fn classify(state: &PairState) -> ThreeAtomLabel {
    match (state.x1 == 1.0, state.x2 == 1.0) {
        (true, true) => ThreeAtomLabel::AExcited,
        (false, false) => ThreeAtomLabel::CExcited,
        _ => ThreeAtomLabel::BExcited,
    }
}

/// Runs the pair from `(x1, x2)` to full absorption.
///
/// Returns `None` when `max_time` elapses first (a reportable status, not a
/// failure).
pub fn run_three_atom<R: Rng + ?Sized>(
    x1: f64,
    x2: f64,
    params: &DiffusionParams,
    rng: &mut R,
) -> Result<Option<ThreeAtomOutcome>> {
    let mut state = PairState::initial(x1, x2, params)?;
    loop {
        if state.both_absorbed() {
            return Ok(Some(ThreeAtomOutcome {
                label: classify(&state),
                absorption_time: state.t,
            }));
        }
        if state.t >= params.max_time {
            return Ok(None);
        }
        state = pair_step(&state, params, rng);
    }
}

/// Monte Carlo outcome distribution over `n_trials` independent pair runs.
pub fn outcome_distribution_mc(
    x1: f64,
    x2: f64,
    n_trials: u64,
    params: &DiffusionParams,
    master_seed: u64,
) -> Result<ExperimentReport> {
    if n_trials == 0 {
        return Err(Error::OutOfRange {
            name: "n_trials",
            value: 0.0,
            range: "[1, ∞)",
        });
    }
    // Validate once up front so per-trial runs cannot fail.
    PairState::initial(x1, x2, params)?;
    let params = *params;
    let results = harness::run_trials(n_trials, |trial| {
        let mut rng = trial_rng(master_seed, 0, trial);
        let outcome = run_three_atom(x1, x2, &params, &mut rng).expect("coordinates validated");
        match outcome {
            Some(o) => TrialResult {
                label_index: Some(o.label.index()),
                time: o.absorption_time,
            },
            None => TrialResult {
                label_index: None,
                time: params.max_time,
            },
        }
    });
    assemble_report(
        ReportMeta {
            scenario: "three_atom".to_string(),
            initial_coordinates: vec![x1, x2],
            params,
            pump_rate: None,
            master_seed,
        },
        &THREE_ATOM_LABELS,
        &results,
    )
}
