//! Scenario orchestration: one-, two-, and three-atom absorption campaigns,
//! the Casimir-style intensity sweep, and the kick-chain demonstration, all
//! with deterministic per-trial random streams.

pub mod config;
pub mod report;

pub use config::{load_scenario_config, parse_scenario_config, Scenario, ScenarioConfig};
pub use report::{ExperimentReport, LabelStat};

use rand::Rng;
use rand_distr::{Distribution, StandardNormal, Uniform, UnitSphere};
use serde::{Deserialize, Serialize};

use crate::amplitude::to_diffusion;
use crate::diffusion::{self, exit_time_closed_form, DiffusionParams, Endpoint};
use crate::error::{Error, Result};
use crate::kick;
use crate::multi_particle;
use crate::rng::trial_rng;
use report::{assemble_report, ReportMeta, TrialResult};

/// Environment variable capping the worker thread count (0 or unset = auto).
pub const THREADS_ENV: &str = "COLLAPSIM_THREADS";

/// Trial-level parallelism with deterministic results.
///
/// Trials map to ordered results, so the outcome set is identical however
/// many workers run them.
pub(crate) mod harness {
    use super::THREADS_ENV;
    use rayon::prelude::*;
    use std::sync::OnceLock;

    fn configured_pool() -> &'static Option<rayon::ThreadPool> {
        static POOL: OnceLock<Option<rayon::ThreadPool>> = OnceLock::new();
        POOL.get_or_init(|| {
            let threads: usize = std::env::var(THREADS_ENV).ok()?.trim().parse().ok()?;
            if threads == 0 {
                return None; // auto: rayon's global pool
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .ok()
        })
    }

    pub fn run_trials<T, F>(n_trials: u64, trial_fn: F) -> Vec<T>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        let work = || (0..n_trials).into_par_iter().map(&trial_fn).collect();
        match configured_pool() {
            Some(pool) => pool.install(work),
            None => work(),
        }
    }
}

/// Photon leaving the system in a random direction (one-atom scenario).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EscapeEvent {
    /// Unit vector on the sphere.
    pub direction: [f64; 3],
    pub time: f64,
}

/// Uniform direction on the unit sphere.
pub fn sample_unit_sphere<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    UnitSphere.sample(rng)
}

/// Runs the configured scenario.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ExperimentReport> {
    config.validate()?;
    match config.scenario {
        Scenario::OneAtom => run_one_atom(config),
        Scenario::TwoAtom => run_two_atom(config),
        Scenario::ThreeAtom => run_three_atom(config),
    }
}

/// Two-atom disentanglement: the state maps to `x = |C_1|²` and each trial is
/// one absorbing trajectory. Endpoint 1 reports the first basis label (atom A
/// excited), endpoint 0 the second.
pub fn run_two_atom(config: &ScenarioConfig) -> Result<ExperimentReport> {
    config.validate()?;
    if config.scenario != Scenario::TwoAtom {
        return Err(Error::ScenarioDimensionMismatch {
            scenario: "two_atom",
            expected: 2,
            actual: config.initial_amplitudes.dim(),
        });
    }
    let coords = to_diffusion(&config.initial_amplitudes)?;
    let x0 = coords.positions()[0];
    let params = config.params;
    let seed = config.master_seed;
    let results = harness::run_trials(config.n_trials, |trial| {
        let mut rng = trial_rng(seed, 0, trial);
        let rec = diffusion::run_to_absorption(x0, &params, &mut rng).expect("validated x0");
        TrialResult {
            label_index: rec.endpoint.map(|e| match e {
                Endpoint::One => 0,
                Endpoint::Zero => 1,
            }),
            time: rec.absorption_time,
        }
    });
    let labels: Vec<&str> = config
        .initial_amplitudes
        .basis_labels()
        .iter()
        .map(String::as_str)
        .collect();
    assemble_report(
        ReportMeta {
            scenario: "two_atom".to_string(),
            initial_coordinates: coords.positions().to_vec(),
            params,
            pump_rate: None,
            master_seed: seed,
        },
        &labels,
        &results,
    )
}

/// Report labels of the one-atom scenario, in index order.
pub const ONE_ATOM_LABELS: [&str; 2] = ["absorbed", "escaped"];

fn one_atom_step<R: Rng + ?Sized>(
    x: f64,
    params: &DiffusionParams,
    pump_rate: f64,
    rng: &mut R,
) -> f64 {
    let d = x * (1.0 - x);
    let drift = pump_rate * d * params.dt;
    let noise = (2.0 * params.intensity * d * params.dt).sqrt();
    let g: f64 = rng.sample(StandardNormal);
    (x + drift + noise * g).clamp(0.0, 1.0)
}

/// One atom and one photon: the excited-state weight `x = |C_2|²` diffuses
/// under the fluctuation noise plus a deterministic pump drift
/// `λ·x(1−x)·dt` standing in for the coherent transfer into the excited
/// state. Endpoint 1 means the photon was absorbed; endpoint 0 means it
/// escaped in a uniformly random direction.
pub fn run_one_atom(config: &ScenarioConfig) -> Result<ExperimentReport> {
    config.validate()?;
    if config.scenario != Scenario::OneAtom {
        return Err(Error::ScenarioDimensionMismatch {
            scenario: "one_atom",
            expected: 2,
            actual: config.initial_amplitudes.dim(),
        });
    }
    // x is the excited-state weight, the second amplitude.
    let x0 = config.initial_amplitudes.probability(1);
    let params = config.params;
    let pump = config.pump_rate;
    let seed = config.master_seed;
    let outcomes = harness::run_trials(config.n_trials, |trial| {
        let mut rng = trial_rng(seed, 0, trial);
        let mut x = x0;
        let mut steps: u64 = 0;
        loop {
            let t = steps as f64 * params.dt;
            if x > 1.0 - params.epsilon {
                return (TrialResult { label_index: Some(0), time: t }, None);
            }
            if x < params.epsilon {
                let direction = sample_unit_sphere(&mut rng);
                return (
                    TrialResult { label_index: Some(1), time: t },
                    Some(EscapeEvent { direction, time: t }),
                );
            }
            if t >= params.max_time {
                return (TrialResult { label_index: None, time: params.max_time }, None);
            }
            x = one_atom_step(x, &params, pump, &mut rng);
            steps += 1;
        }
    });
    let results: Vec<TrialResult> = outcomes.iter().map(|(r, _)| *r).collect();
    let escapes: Vec<EscapeEvent> = outcomes.iter().filter_map(|(_, e)| *e).collect();
    let mut report = assemble_report(
        ReportMeta {
            scenario: "one_atom".to_string(),
            initial_coordinates: vec![x0],
            params,
            pump_rate: Some(pump),
            master_seed: seed,
        },
        &ONE_ATOM_LABELS,
        &results,
    )?;
    if !escapes.is_empty() {
        let n = escapes.len() as f64;
        let mut mean = [0.0; 3];
        for e in &escapes {
            for (m, d) in mean.iter_mut().zip(e.direction) {
                *m += d / n;
            }
        }
        report.mean_escape_direction = Some(mean);
    }
    Ok(report)
}

/// Three-atom disentanglement via the merging particle pair.
pub fn run_three_atom(config: &ScenarioConfig) -> Result<ExperimentReport> {
    config.validate()?;
    if config.scenario != Scenario::ThreeAtom {
        return Err(Error::ScenarioDimensionMismatch {
            scenario: "three_atom",
            expected: 3,
            actual: config.initial_amplitudes.dim(),
        });
    }
    let coords = to_diffusion(&config.initial_amplitudes)?;
    multi_particle::outcome_distribution_mc(
        coords.positions()[0],
        coords.positions()[1],
        config.n_trials,
        &config.params,
        config.master_seed,
    )
}

/// One intensity point of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntensityPoint {
    pub intensity: f64,
    /// Mean absorption time predicted by the exit-time closed form.
    pub predicted_mean_time: f64,
    pub report: ExperimentReport,
}

/// Sweep over fluctuation intensities, the simulation analogue of moving
/// Casimir plates: weaker fluctuations (smaller `I`) stretch the
/// entanglement window while leaving the outcome statistics alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CasimirSweep {
    pub points: Vec<IntensityPoint>,
    /// Mean absorption time strictly decreases with intensity.
    pub mean_time_monotone_decreasing: bool,
    /// Largest relative deviation of `mean_time · I` from the closed-form
    /// prediction, over all points.
    pub max_scaling_deviation: f64,
}

/// Runs the two-atom scenario of `base` at each intensity.
///
/// `max_time` is rescaled per point so slow (low-intensity) runs still
/// absorb; each point draws from its own random stream block.
pub fn run_casimir_sweep(base: &ScenarioConfig, intensities: &[f64]) -> Result<CasimirSweep> {
    base.validate()?;
    if intensities.is_empty() {
        return Err(Error::InvalidStatistics {
            detail: "intensity sweep needs at least one intensity".to_string(),
        });
    }
    for &i in intensities {
        if !(i > 0.0) {
            return Err(Error::OutOfRange {
                name: "intensity",
                value: i,
                range: "(0, ∞)",
            });
        }
    }
    let coords = to_diffusion(&base.initial_amplitudes)?;
    let x0 = coords.positions()[0];
    let time_scale = base.params.max_time * base.params.intensity;
    let mut points = Vec::with_capacity(intensities.len());
    for (block, &intensity) in intensities.iter().enumerate() {
        let params = DiffusionParams::new(
            intensity,
            base.params.dt,
            base.params.epsilon,
            time_scale / intensity,
        )?;
        let seed = base.master_seed;
        let n_trials = base.n_trials;
        let block = block as u64;
        let results = harness::run_trials(n_trials, |trial| {
            let mut rng = trial_rng(seed, block, trial);
            let rec = diffusion::run_to_absorption(x0, &params, &mut rng).expect("validated x0");
            TrialResult {
                label_index: rec.endpoint.map(|e| match e {
                    Endpoint::One => 0,
                    Endpoint::Zero => 1,
                }),
                time: rec.absorption_time,
            }
        });
        let labels: Vec<&str> = base
            .initial_amplitudes
            .basis_labels()
            .iter()
            .map(String::as_str)
            .collect();
        let report = assemble_report(
            ReportMeta {
                scenario: "two_atom".to_string(),
                initial_coordinates: vec![x0],
                params,
                pump_rate: None,
                master_seed: seed,
            },
            &labels,
            &results,
        )?;
        points.push(IntensityPoint {
            intensity,
            predicted_mean_time: exit_time_closed_form(x0, intensity),
            report,
        });
    }

    let mut by_intensity: Vec<&IntensityPoint> = points.iter().collect();
    by_intensity.sort_by(|a, b| a.intensity.partial_cmp(&b.intensity).expect("finite"));
    let mean_time_monotone_decreasing = by_intensity
        .windows(2)
        .all(|w| w[0].report.mean_absorption_time() > w[1].report.mean_absorption_time());
    let reference = exit_time_closed_form(x0, 1.0);
    let max_scaling_deviation = points
        .iter()
        .map(|p| (p.report.mean_absorption_time() * p.intensity / reference - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(CasimirSweep {
        points,
        mean_time_monotone_decreasing,
        max_scaling_deviation,
    })
}

/// Parameters of the kick-chain demonstration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KickChainConfig {
    /// Number of fluctuation kicks to compose.
    pub n_kicks: u64,
    /// Kick angles are drawn uniformly from `π/4 ± half_width`.
    pub half_width: f64,
    pub master_seed: u64,
}

/// Summary of a kick chain: i.i.d. single-kick displacements of the
/// symmetric stuck state, composed into a random walk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KickChainReport {
    pub config: KickChainConfig,
    pub mean_displacement: f64,
    pub displacement_stderr: f64,
    /// `mean / stderr`; near zero for symmetric kick-angle distributions.
    pub zero_mean_zscore: f64,
    /// Largest deviation of the post-kick total energy from `E0 + E1`.
    pub max_energy_drift: f64,
    /// Cumulative walk `x_k` started at 1/2, clamped to [0, 1].
    pub path: Vec<f64>,
}

/// Composes independent fluctuation kicks of the symmetric stuck state.
///
/// Each kick moves `x = |amp_10|²` from 1/2 to `sin²(arctan cot²φ)`; the
/// displacements are summed into a walk. This is the conceptual bridge from
/// single kicks to the continuous diffusion — the quantitative relation
/// between the kick-angle spread and the diffusion intensity is deliberately
/// left open.
pub fn run_kick_chain(config: &KickChainConfig) -> Result<KickChainReport> {
    if config.n_kicks == 0 {
        return Err(Error::OutOfRange {
            name: "n_kicks",
            value: 0.0,
            range: "[1, ∞)",
        });
    }
    if !(config.half_width > 0.0 && config.half_width < std::f64::consts::FRAC_PI_4) {
        return Err(Error::OutOfRange {
            name: "half_width",
            value: config.half_width,
            range: "(0, π/4)",
        });
    }
    let lo = std::f64::consts::FRAC_PI_4 - config.half_width;
    let hi = std::f64::consts::FRAC_PI_4 + config.half_width;
    let angle_dist = Uniform::new(lo, hi).expect("valid angle interval");
    let mut rng = trial_rng(config.master_seed, 0, 0);

    let e0 = kick::HYDROGEN_GROUND_ENERGY;
    let e1 = kick::HYDROGEN_EXCITED_ENERGY;
    let mut displacements = Vec::with_capacity(config.n_kicks as usize);
    let mut path = Vec::with_capacity(config.n_kicks as usize + 1);
    let mut x = 0.5;
    path.push(x);
    let mut max_energy_drift = 0.0f64;
    for _ in 0..config.n_kicks {
        let phi = kick::KickAngle::new(angle_dist.sample(&mut rng))?;
        let joint = kick::joint_state_after_kick(phi, e0, e1);
        let drift = (kick::total_energy(&joint) - (e0 + e1)).abs();
        max_energy_drift = max_energy_drift.max(drift);
        let displacement = joint.excited_a_weight() - 0.5;
        displacements.push(displacement);
        x = (x + displacement).clamp(0.0, 1.0);
        path.push(x);
    }
    let n = displacements.len() as f64;
    let mean = displacements.iter().sum::<f64>() / n;
    let variance = displacements.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n;
    let stderr = (variance / n).sqrt();
    let zero_mean_zscore = if stderr > 0.0 { mean / stderr } else { 0.0 };
    Ok(KickChainReport {
        config: *config,
        mean_displacement: mean,
        displacement_stderr: stderr,
        zero_mean_zscore,
        max_energy_drift,
        path,
    })
}

/// Re-exports of the statistical harness surface.
pub use crate::stats::{chi_square_test, wilson_interval};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amplitude::EntangledAmplitudes;
    use approx::assert_abs_diff_eq;

    fn two_atom_config(amps: &[f64], n_trials: u64, seed: u64) -> ScenarioConfig {
        ScenarioConfig {
            scenario: Scenario::TwoAtom,
            initial_amplitudes: EntangledAmplitudes::from_real(
                amps,
                vec!["A_excited", "B_excited"],
            )
            .unwrap(),
            params: DiffusionParams::default(),
            pump_rate: 0.0,
            n_trials,
            master_seed: seed,
        }
    }

    fn one_atom_config(x0: f64, pump: f64, n_trials: u64, seed: u64) -> ScenarioConfig {
        ScenarioConfig {
            scenario: Scenario::OneAtom,
            initial_amplitudes: EntangledAmplitudes::from_real(
                &[(1.0 - x0).sqrt(), x0.sqrt()],
                vec!["photon_free_ground", "excited"],
            )
            .unwrap(),
            params: DiffusionParams::default(),
            pump_rate: pump,
            n_trials,
            master_seed: seed,
        }
    }

    #[test]
    fn eigenstate_absorbs_at_time_zero() {
        let report = run_two_atom(&two_atom_config(&[1.0, 0.0], 100, 1)).unwrap();
        assert_eq!(report.count_for("A_excited"), 100);
        assert_eq!(report.count_for("B_excited"), 0);
        assert_eq!(report.timing.unwrap().mean, 0.0);
    }

    #[test]
    fn symmetric_state_splits_evenly() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let n = 10_000u64;
        let report = run_two_atom(&two_atom_config(&[s, s], n, 2)).unwrap();
        let freq = report.frequency_for("A_excited");
        let se = (0.25f64 / n as f64).sqrt();
        assert!((freq - 0.5).abs() < 4.0 * se, "freq {freq}");
    }

    #[test]
    fn reports_are_reproducible() {
        let config = two_atom_config(&[0.6, 0.8], 2_000, 33);
        let a = run_scenario(&config).unwrap();
        let b = run_scenario(&config).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn scenario_dimension_is_enforced() {
        let mut config = two_atom_config(&[0.6, 0.8], 10, 1);
        config.scenario = Scenario::ThreeAtom;
        assert!(matches!(
            run_scenario(&config),
            Err(Error::ScenarioDimensionMismatch { .. })
        ));
    }

    #[test]
    fn one_atom_eigenstate_absorbs_immediately() {
        let report = run_one_atom(&one_atom_config(1.0, 0.0, 50, 3)).unwrap();
        assert_eq!(report.count_for("absorbed"), 50);
        assert_eq!(report.timing.unwrap().mean, 0.0);
    }

    #[test]
    fn one_atom_without_pump_obeys_born_rule() {
        let n = 10_000u64;
        let report = run_one_atom(&one_atom_config(0.4, 0.0, n, 4)).unwrap();
        let freq = report.frequency_for("absorbed");
        let se = (0.4f64 * 0.6 / n as f64).sqrt();
        assert!((freq - 0.4).abs() < 4.0 * se, "freq {freq}");
        assert!(report.mean_escape_direction.is_some());
    }

    #[test]
    fn pump_biases_toward_absorption_monotonically() {
        // Scale function oracle for dx = λD dt + sqrt(2ID) dW:
        // P(absorb) = (1 − exp(−λx/I)) / (1 − exp(−λ/I)).
        let n = 10_000u64;
        let x0 = 0.1;
        let mut freqs = Vec::new();
        for (i, &pump) in [0.0, 0.5, 1.0].iter().enumerate() {
            let report = run_one_atom(&one_atom_config(x0, pump, n, 40 + i as u64)).unwrap();
            let freq = report.frequency_for("absorbed");
            let expected = if pump == 0.0 {
                x0
            } else {
                (1.0 - (-pump * x0).exp()) / (1.0 - (-pump).exp())
            };
            let se = (expected * (1.0 - expected) / n as f64).sqrt();
            assert!(
                (freq - expected).abs() < 4.0 * se,
                "pump {pump}: {freq} vs {expected}"
            );
            freqs.push(freq);
        }
        assert!(freqs[1] > freqs[0] && freqs[2] > freqs[1], "{freqs:?}");
    }

    #[test]
    fn escape_directions_average_out() {
        let mut rng = trial_rng(5, 0, 0);
        let n = 100_000;
        let mut sum = [0.0f64; 3];
        for _ in 0..n {
            let v = sample_unit_sphere(&mut rng);
            assert_abs_diff_eq!(
                v.iter().map(|c| c * c).sum::<f64>().sqrt(),
                1.0,
                epsilon = 1e-12
            );
            for (s, c) in sum.iter_mut().zip(v) {
                *s += c;
            }
        }
        let norm = sum.iter().map(|s| (s / n as f64).powi(2)).sum::<f64>().sqrt();
        let bound = 4.0 / (3.0 * n as f64).sqrt();
        assert!(norm < bound, "resultant {norm} vs {bound}");
    }

    #[test]
    fn sweep_scales_times_not_frequencies() {
        // Small-scale version of the full acceptance check.
        let base = two_atom_config(&[0.5f64.sqrt(), 0.5f64.sqrt()], 4_000, 6);
        let sweep = run_casimir_sweep(&base, &[0.5, 1.0, 2.0]).unwrap();
        assert!(sweep.mean_time_monotone_decreasing);
        assert!(
            sweep.max_scaling_deviation < 0.1,
            "deviation {}",
            sweep.max_scaling_deviation
        );
        assert!(run_casimir_sweep(&base, &[]).is_err());
        assert!(run_casimir_sweep(&base, &[-1.0]).is_err());
    }

    #[test]
    fn kick_chain_displacements_are_zero_mean() {
        let report = run_kick_chain(&KickChainConfig {
            n_kicks: 50_000,
            half_width: 0.2,
            master_seed: 7,
        })
        .unwrap();
        assert!(report.max_energy_drift < 1e-12);
        assert!(
            report.zero_mean_zscore.abs() < 4.0,
            "z = {}",
            report.zero_mean_zscore
        );
        assert_eq!(report.path.len(), 50_001);
        assert!(report.path.iter().all(|x| (0.0..=1.0).contains(x)));
    }

    #[test]
    fn kick_chain_validates_inputs() {
        assert!(run_kick_chain(&KickChainConfig {
            n_kicks: 0,
            half_width: 0.1,
            master_seed: 1
        })
        .is_err());
        assert!(run_kick_chain(&KickChainConfig {
            n_kicks: 10,
            half_width: 1.0,
            master_seed: 1
        })
        .is_err());
    }
}
