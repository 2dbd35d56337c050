//! Continuous-time single-particle dynamics on `[0, 1]`: zero-drift diffusion
//! with coefficient `D(x) = x(1−x)` scaled by a fluctuation intensity, plus
//! independent finite-difference oracles for the exit probability and the
//! mean absorption time.
//!
//! The update is explicit Euler–Maruyama, `X' = X + sqrt(2·I·D(X)·dt)·g` with
//! `g ~ N(0,1)`, clamped to the interval. Because `D` vanishes at the
//! endpoints a trajectory never lands on them exactly; absorption is declared
//! once the position comes within `epsilon` of an endpoint. Any step that
//! would leave the interval is already inside the absorption layer, so the
//! clamp never touches a surviving trajectory and the interior update stays
//! an exact martingale.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_DT: f64 = 1e-4;
pub const DEFAULT_EPSILON: f64 = 1e-6;
/// Default `max_time` is this factor divided by the intensity.
pub const DEFAULT_MAX_TIME_FACTOR: f64 = 100.0;

/// Integrator parameters shared by every diffusion scenario.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffusionParams {
    /// Fluctuation intensity `I` (1/time); scales the diffusion rate.
    pub intensity: f64,
    /// Integrator time step.
    pub dt: f64,
    /// Absorption threshold: positions within `epsilon` of an endpoint stop.
    pub epsilon: f64,
    /// Trajectories still alive at this time are reported unabsorbed.
    pub max_time: f64,
}

impl DiffusionParams {
    pub fn new(intensity: f64, dt: f64, epsilon: f64, max_time: f64) -> Result<Self> {
        if !(intensity > 0.0) {
            return Err(Error::OutOfRange {
                name: "intensity",
                value: intensity,
                range: "(0, ∞)",
            });
        }
        if !(dt > 0.0) {
            return Err(Error::OutOfRange {
                name: "dt",
                value: dt,
                range: "(0, ∞)",
            });
        }
        if !(epsilon > 0.0 && epsilon < 0.01) {
            return Err(Error::OutOfRange {
                name: "epsilon",
                value: epsilon,
                range: "(0, 0.01)",
            });
        }
        if !(max_time > 0.0) {
            return Err(Error::OutOfRange {
                name: "max_time",
                value: max_time,
                range: "(0, ∞)",
            });
        }
        Ok(Self {
            intensity,
            dt,
            epsilon,
            max_time,
        })
    }

    /// Default steps and threshold at the given intensity, with `max_time`
    /// scaled as `100/I` so the unabsorbed fraction stays negligible.
    pub fn with_intensity(intensity: f64) -> Result<Self> {
        Self::new(
            intensity,
            DEFAULT_DT,
            DEFAULT_EPSILON,
            DEFAULT_MAX_TIME_FACTOR / intensity,
        )
    }

    /// Conservative step bound `dt ≤ ε²/(2I)` under which a single step never
    /// jumps across the absorption layer.
    pub fn stability_bound(&self) -> f64 {
        self.epsilon * self.epsilon / (2.0 * self.intensity)
    }

    /// Advisory note when `dt` exceeds [`Self::stability_bound`]. Exit
    /// probabilities are unaffected (the overshoot is absorbed the same
    /// step), so this is informational, not an error.
    pub fn stability_warning(&self) -> Option<String> {
        (self.dt > self.stability_bound()).then(|| {
            format!(
                "dt = {} exceeds the conservative absorption-layer bound {:.3e}; \
                 absorption times near the boundary are resolved to one step",
                self.dt,
                self.stability_bound()
            )
        })
    }
}

impl Default for DiffusionParams {
    fn default() -> Self {
        Self::with_intensity(1.0).expect("default parameters are valid")
    }
}

/// Which endpoint a trajectory reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Endpoint {
    Zero,
    One,
}

impl Endpoint {
    pub fn as_f64(self) -> f64 {
        match self {
            Endpoint::Zero => 0.0,
            Endpoint::One => 1.0,
        }
    }
}

/// One simulated trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub x0: f64,
    /// `None` when the trajectory was still alive at `max_time`.
    pub endpoint: Option<Endpoint>,
    /// Absorption time, or `max_time` for unabsorbed trajectories.
    pub absorption_time: f64,
    pub steps: u64,
    /// Decimated `(t, x)` samples when path recording was requested.
    pub path_samples: Option<Vec<(f64, f64)>>,
}

impl TrajectoryRecord {
    pub fn is_absorbed(&self) -> bool {
        self.endpoint.is_some()
    }
}

/// Diffusion coefficient `D(x) = x(1−x)`.
pub fn diffusion_coefficient(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange {
            name: "x",
            value: x,
            range: "[0, 1]",
        });
    }
    Ok(x * (1.0 - x))
}

/// Deterministic part of the Euler–Maruyama update given the normal draw `g`.
pub fn em_update(x: f64, params: &DiffusionParams, g: f64) -> f64 {
    let variance = 2.0 * params.intensity * x * (1.0 - x) * params.dt;
    (x + variance.sqrt() * g).clamp(0.0, 1.0)
}

/// One Euler–Maruyama step with a fresh standard normal draw.
pub fn em_step<R: Rng + ?Sized>(x: f64, params: &DiffusionParams, rng: &mut R) -> f64 {
    em_update(x, params, rng.sample(StandardNormal))
}

fn absorbed_at(x: f64, epsilon: f64) -> Option<Endpoint> {
    if x < epsilon {
        Some(Endpoint::Zero)
    } else if x > 1.0 - epsilon {
        Some(Endpoint::One)
    } else {
        None
    }
}

/// Integrates a trajectory from `x0` until absorption or `max_time`,
/// optionally recording every `path_every`-th position.
pub fn run_trajectory<R: Rng + ?Sized>(
    x0: f64,
    params: &DiffusionParams,
    rng: &mut R,
    path_every: Option<u64>,
) -> Result<TrajectoryRecord> {
    if !(0.0..=1.0).contains(&x0) {
        return Err(Error::OutOfRange {
            name: "x0",
            value: x0,
            range: "[0, 1]",
        });
    }
    let mut path = path_every.map(|_| vec![(0.0, x0)]);
    let mut x = x0;
    let mut steps: u64 = 0;
    loop {
        let t = steps as f64 * params.dt;
        if let Some(endpoint) = absorbed_at(x, params.epsilon) {
            return Ok(TrajectoryRecord {
                x0,
                endpoint: Some(endpoint),
                absorption_time: t,
                steps,
                path_samples: path,
            });
        }
        if t >= params.max_time {
            return Ok(TrajectoryRecord {
                x0,
                endpoint: None,
                absorption_time: params.max_time,
                steps,
                path_samples: path,
            });
        }
        x = em_step(x, params, rng);
        steps += 1;
        if let (Some(path), Some(every)) = (path.as_mut(), path_every) {
            if steps % every == 0 {
                path.push((steps as f64 * params.dt, x));
            }
        }
    }
}

/// [`run_trajectory`] without path recording.
pub fn run_to_absorption<R: Rng + ?Sized>(
    x0: f64,
    params: &DiffusionParams,
    rng: &mut R,
) -> Result<TrajectoryRecord> {
    run_trajectory(x0, params, rng, None)
}

/// Closed-form mean absorption time `−(x ln x + (1−x) ln(1−x))/I`, the
/// solution of `I·x(1−x)·t″(x) = −1` with `t(0) = t(1) = 0`.
pub fn exit_time_closed_form(x: f64, intensity: f64) -> f64 {
    let entropy = |p: f64| if p > 0.0 { p * p.ln() } else { 0.0 };
    -(entropy(x) + entropy(1.0 - x)) / intensity
}

/// Thomas algorithm for a tridiagonal system with constant band layout.
fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - sub[i] * c[i - 1];
        c[i] = if i + 1 < n { sup[i] / m } else { 0.0 };
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Finite-difference solution of the exit problem `D(x)·p″(x) = 0`,
/// `p(0) = 0`, `p(1) = 1`, on `grid_size` interior nodes.
///
/// Independent oracle for the hitting probability; the analytic solution is
/// `p(x) = x`.
pub fn bvp_hitting_probability(grid_size: usize) -> Result<Vec<(f64, f64)>> {
    if grid_size < 3 {
        return Err(Error::DegenerateGrid {
            detail: "hitting-probability grid needs at least 3 interior nodes",
        });
    }
    let n = grid_size;
    let h = 1.0 / (n as f64 + 1.0);
    let sub = vec![1.0; n];
    let diag = vec![-2.0; n];
    let sup = vec![1.0; n];
    let mut rhs = vec![0.0; n];
    rhs[n - 1] = -1.0; // boundary value p(1) = 1 moved to the right-hand side
    let p = solve_tridiagonal(&sub, &diag, &sup, &rhs);
    Ok((1..=n).map(|i| (i as f64 * h, p[i - 1])).collect())
}

/// Finite-difference solution of `I·x(1−x)·t″(x) = −1`, `t(0) = t(1) = 0`.
///
/// Matches [`exit_time_closed_form`] with a global error of order `h` (grid
/// spacing): the local truncation is `O(h²)` away from the endpoints, but the
/// exit time behaves like `−x ln x` at the boundaries, where its unbounded
/// higher derivatives cost one order globally.
pub fn bvp_mean_absorption_time(grid_size: usize, intensity: f64) -> Result<Vec<(f64, f64)>> {
    if grid_size < 3 {
        return Err(Error::DegenerateGrid {
            detail: "exit-time grid needs at least 3 interior nodes",
        });
    }
    if !(intensity > 0.0) {
        return Err(Error::OutOfRange {
            name: "intensity",
            value: intensity,
            range: "(0, ∞)",
        });
    }
    let n = grid_size;
    let h = 1.0 / (n as f64 + 1.0);
    let sub = vec![1.0; n];
    let diag = vec![-2.0; n];
    let sup = vec![1.0; n];
    let rhs: Vec<f64> = (1..=n)
        .map(|i| {
            let x = i as f64 * h;
            -h * h / (intensity * x * (1.0 - x))
        })
        .collect();
    let t = solve_tridiagonal(&sub, &diag, &sup, &rhs);
    Ok((1..=n).map(|i| (i as f64 * h, t[i - 1])).collect())
}
