//! `collapsim` command line: every scenario and oracle behind reproducible
//! seeds, with JSON/CSV/text emission.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use collapsim::amplitude::{from_diffusion, DiffusionCoordinates, EntangledAmplitudes};
use collapsim::diffusion::{DiffusionParams, DEFAULT_MAX_TIME_FACTOR};
use collapsim::doubling;
use collapsim::experiments::{self, Scenario, ScenarioConfig};
use collapsim::hydrogen::{self, SuperpositionState};
use collapsim::num_complex::Complex64;
use collapsim::rng::trial_rng;
use collapsim::stats;

use output::{write_output, BornExactReport, Format, HydrogenGrid, Payload};

#[derive(Parser)]
#[command(
    name = "collapsim",
    version,
    about = "Stochastic simulator of single-photon absorption by 1-3 atoms",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact doubling-map hitting probability plus a Monte Carlo cross-check
    BornExact(BornExactArgs),
    /// Two-atom disentanglement: amplitude diffusion to absorption
    Diffuse(DiffuseArgs),
    /// Three-atom disentanglement via the merging particle pair
    ThreeAtom(ThreeAtomArgs),
    /// One atom with a photon escape channel and optional pump drift
    OneAtom(OneAtomArgs),
    /// Rotating hydrogen 1s/2p superposition density on a coordinate grid
    HydrogenDensity(HydrogenDensityArgs),
    /// Two-atom runs across a range of fluctuation intensities
    CasimirSweep(CasimirSweepArgs),
    /// Random-walk composition of discrete fluctuation kicks
    KickDemo(KickDemoArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Number of Monte Carlo trials
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    /// Master seed; together with the flags it fixes all output bits
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Integrator time step
    #[arg(long, default_value_t = 1e-4)]
    dt: f64,
    /// Absorption threshold distance from the endpoints
    #[arg(long, default_value_t = 1e-6)]
    epsilon: f64,
    /// Fluctuation intensity scaling the diffusion rate
    #[arg(long, default_value_t = 1.0)]
    intensity: f64,
    /// Time cap per trajectory [default: 100/intensity]
    #[arg(long)]
    max_time: Option<f64>,
    /// Write results to this path instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output encoding
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct BornExactArgs {
    /// Starting position in [0, 1]
    #[arg(long)]
    x0: f64,
    /// Coin flips before the chain is truncated
    #[arg(long, default_value_t = doubling::DEFAULT_MAX_STEPS)]
    max_steps: u32,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct DiffuseArgs {
    /// Starting coordinate x = |C1|^2 in [0, 1]
    #[arg(long, conflicts_with = "config")]
    x0: Option<f64>,
    /// Experiment configuration file (scenario = two_atom)
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ThreeAtomArgs {
    /// Lower coordinate x1 = |C1|^2
    #[arg(long, conflicts_with = "config")]
    x1: Option<f64>,
    /// Upper coordinate x2 = |C1|^2 + |C2|^2, with x1 <= x2
    #[arg(long, conflicts_with = "config")]
    x2: Option<f64>,
    /// Experiment configuration file (scenario = three_atom)
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct OneAtomArgs {
    /// Starting excited-state weight |C2|^2 in [0, 1]
    #[arg(long, conflicts_with = "config")]
    x0: Option<f64>,
    /// Deterministic pump drift rate (>= 0)
    #[arg(long, default_value_t = 0.0, conflicts_with = "config")]
    pump_rate: f64,
    /// Experiment configuration file (scenario = one_atom)
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct HydrogenDensityArgs {
    /// Radial cutoff of the grid (Bohr radii)
    #[arg(long, default_value_t = 10.0)]
    r_max: f64,
    /// Radial grid points
    #[arg(long, default_value_t = 21)]
    n_r: usize,
    /// Polar grid points over [0, pi]
    #[arg(long, default_value_t = 17)]
    n_theta: usize,
    /// Azimuthal grid points over [0, 2pi)
    #[arg(long, default_value_t = 24)]
    n_phi: usize,
    /// Comma-separated evaluation times (atomic units)
    #[arg(long, default_value = "0")]
    times: String,
    /// Real mixing weight of the 1s state (normalized with weight1)
    #[arg(long, default_value_t = 1.0)]
    weight0: f64,
    /// Real mixing weight of the 2p state (normalized with weight0)
    #[arg(long, default_value_t = 1.0)]
    weight1: f64,
    /// Write results to this path instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output encoding
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct CasimirSweepArgs {
    /// Starting coordinate of the two-atom state
    #[arg(long, default_value_t = 0.5)]
    x0: f64,
    /// Comma-separated fluctuation intensities
    #[arg(long, default_value = "0.25,0.5,1,2,4")]
    intensities: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct KickDemoArgs {
    /// Number of fluctuation kicks to compose
    #[arg(long, default_value_t = 10_000)]
    kicks: u64,
    /// Kick angles are uniform on pi/4 +- half_width (0 < half_width < pi/4)
    #[arg(long, default_value_t = 0.2)]
    half_width: f64,
    /// Master seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write results to this path instead of standard output
    #[arg(long)]
    output: Option<PathBuf>,
    /// Output encoding
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

enum AppError {
    /// Bad flag values or unusable configuration: exit 2.
    Usage(String),
    /// Failures after validation (I/O and the like): exit 1.
    Runtime(String),
}

fn usage(e: impl std::fmt::Display) -> AppError {
    AppError::Usage(e.to_string())
}

type AppResult<T> = Result<T, AppError>;

fn require_unit_interval(name: &str, value: f64) -> AppResult<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(AppError::Usage(format!(
            "{name} = {value} is outside [0, 1]"
        )))
    }
}

fn require_trials(trials: u64) -> AppResult<u64> {
    if trials == 0 {
        Err(AppError::Usage("--trials must be at least 1".into()))
    } else {
        Ok(trials)
    }
}

fn params_from(common: &CommonArgs) -> AppResult<DiffusionParams> {
    let max_time = common
        .max_time
        .unwrap_or(DEFAULT_MAX_TIME_FACTOR / common.intensity);
    let params =
        DiffusionParams::new(common.intensity, common.dt, common.epsilon, max_time).map_err(usage)?;
    if let Some(warning) = params.stability_warning() {
        eprintln!("warning: {warning}");
    }
    Ok(params)
}

fn emit(payload: &Payload, format: Format, path: Option<&PathBuf>) -> AppResult<()> {
    write_output(payload, format, path.map(PathBuf::as_path)).map_err(|e| {
        AppError::Runtime(match path {
            Some(p) => format!("cannot write {}: {e}", p.display()),
            None => format!("cannot write to standard output: {e}"),
        })
    })
}

/// Loads a config file and checks it matches the invoking subcommand.
fn load_config(path: &PathBuf, expected: Scenario) -> AppResult<ScenarioConfig> {
    let config = experiments::load_scenario_config(path).map_err(usage)?;
    if config.scenario != expected {
        return Err(AppError::Usage(format!(
            "config scenario `{}` does not match this subcommand (`{}`)",
            config.scenario.name(),
            expected.name()
        )));
    }
    Ok(config)
}

fn run_born_exact(args: BornExactArgs) -> AppResult<()> {
    let x0 = require_unit_interval("--x0", args.x0)?;
    let trials = require_trials(args.common.trials)?;
    if args.max_steps == 0 {
        return Err(AppError::Usage("--max-steps must be at least 1".into()));
    }
    let exact = doubling::exact_hit_probability(x0).map_err(usage)?;
    let seed = args.common.seed;
    let mut hits = 0u64;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, 0, trial);
        hits += u64::from(
            doubling::run_doubling_chain(x0, &mut rng, args.max_steps).map_err(usage)?,
        );
    }
    let empirical = hits as f64 / trials as f64;
    let (wilson_low, wilson_high) = stats::wilson_interval(hits, trials, 0.95).map_err(usage)?;
    let payload = Payload::BornExact(BornExactReport {
        x0,
        exact,
        trials,
        hits,
        empirical,
        wilson_low,
        wilson_high,
        max_steps: args.max_steps,
        master_seed: seed,
    });
    emit(&payload, args.common.format, args.common.output.as_ref())
}

fn two_atom_config_from_x0(x0: f64, common: &CommonArgs) -> AppResult<ScenarioConfig> {
    let coords = DiffusionCoordinates::new(vec![x0]).map_err(usage)?;
    let initial_amplitudes =
        from_diffusion(&coords, Scenario::TwoAtom.default_labels()).map_err(usage)?;
    Ok(ScenarioConfig {
        scenario: Scenario::TwoAtom,
        initial_amplitudes,
        params: params_from(common)?,
        pump_rate: 0.0,
        n_trials: require_trials(common.trials)?,
        master_seed: common.seed,
    })
}

fn run_diffuse(args: DiffuseArgs) -> AppResult<()> {
    let config = match (&args.config, args.x0) {
        (Some(path), None) => load_config(path, Scenario::TwoAtom)?,
        (None, Some(x0)) => {
            two_atom_config_from_x0(require_unit_interval("--x0", x0)?, &args.common)?
        }
        (None, None) => {
            return Err(AppError::Usage(
                "diffuse needs either --x0 or --config".into(),
            ))
        }
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    let report = experiments::run_two_atom(&config).map_err(usage)?;
    emit(
        &Payload::Report(Box::new(report)),
        args.common.format,
        args.common.output.as_ref(),
    )
}

fn run_three_atom(args: ThreeAtomArgs) -> AppResult<()> {
    let config = match (&args.config, args.x1, args.x2) {
        (Some(path), None, None) => load_config(path, Scenario::ThreeAtom)?,
        (None, Some(x1), Some(x2)) => {
            let x1 = require_unit_interval("--x1", x1)?;
            let x2 = require_unit_interval("--x2", x2)?;
            let coords = DiffusionCoordinates::new(vec![x1, x2])
                .map_err(|_| AppError::Usage(format!("need x1 <= x2, got {x1} > {x2}")))?;
            let initial_amplitudes =
                from_diffusion(&coords, Scenario::ThreeAtom.default_labels()).map_err(usage)?;
            ScenarioConfig {
                scenario: Scenario::ThreeAtom,
                initial_amplitudes,
                params: params_from(&args.common)?,
                pump_rate: 0.0,
                n_trials: require_trials(args.common.trials)?,
                master_seed: args.common.seed,
            }
        }
        _ => {
            return Err(AppError::Usage(
                "three-atom needs both --x1 and --x2, or --config".into(),
            ))
        }
    };
    let report = experiments::run_three_atom(&config).map_err(usage)?;
    emit(
        &Payload::Report(Box::new(report)),
        args.common.format,
        args.common.output.as_ref(),
    )
}

fn run_one_atom(args: OneAtomArgs) -> AppResult<()> {
    let config = match (&args.config, args.x0) {
        (Some(path), None) => load_config(path, Scenario::OneAtom)?,
        (None, Some(x0)) => {
            let x0 = require_unit_interval("--x0", x0)?;
            if !(args.pump_rate >= 0.0) {
                return Err(AppError::Usage(format!(
                    "--pump-rate = {} must be >= 0",
                    args.pump_rate
                )));
            }
            let initial_amplitudes = EntangledAmplitudes::from_real(
                &[(1.0 - x0).sqrt(), x0.sqrt()],
                Scenario::OneAtom.default_labels(),
            )
            .map_err(usage)?;
            ScenarioConfig {
                scenario: Scenario::OneAtom,
                initial_amplitudes,
                params: params_from(&args.common)?,
                pump_rate: args.pump_rate,
                n_trials: require_trials(args.common.trials)?,
                master_seed: args.common.seed,
            }
        }
        _ => {
            return Err(AppError::Usage(
                "one-atom needs either --x0 or --config".into(),
            ))
        }
    };
    let report = experiments::run_one_atom(&config).map_err(usage)?;
    emit(
        &Payload::Report(Box::new(report)),
        args.common.format,
        args.common.output.as_ref(),
    )
}

fn run_hydrogen_density(args: HydrogenDensityArgs) -> AppResult<()> {
    if !(args.r_max > 0.0) {
        return Err(AppError::Usage(format!(
            "--r-max = {} must be positive",
            args.r_max
        )));
    }
    if args.n_r == 0 || args.n_theta == 0 || args.n_phi == 0 {
        return Err(AppError::Usage(
            "--n-r, --n-theta, and --n-phi must all be at least 1".into(),
        ));
    }
    let times: Vec<f64> = args
        .times
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| AppError::Usage(format!("invalid --times list `{}`", args.times)))?;
    if times.is_empty() {
        return Err(AppError::Usage("--times must name at least one time".into()));
    }
    let norm = (args.weight0 * args.weight0 + args.weight1 * args.weight1).sqrt();
    if !(norm > 0.0) {
        return Err(AppError::Usage(
            "--weight0 and --weight1 must not both be zero".into(),
        ));
    }
    let sp = SuperpositionState::new(
        Complex64::new(args.weight0 / norm, 0.0),
        Complex64::new(args.weight1 / norm, 0.0),
    )
    .map_err(usage)?;

    let linspace = |n: usize, max: f64| -> Vec<f64> {
        if n == 1 {
            return vec![0.0];
        }
        (0..n).map(|i| max * i as f64 / (n as f64 - 1.0)).collect()
    };
    let rs = linspace(args.n_r, args.r_max);
    let thetas = linspace(args.n_theta, std::f64::consts::PI);
    let phis: Vec<f64> = (0..args.n_phi)
        .map(|i| 2.0 * std::f64::consts::PI * i as f64 / args.n_phi as f64)
        .collect();

    let mut rows = Vec::with_capacity(rs.len() * thetas.len() * phis.len() * times.len());
    for &t in &times {
        for &r in &rs {
            for &theta in &thetas {
                for &phi in &phis {
                    let density =
                        hydrogen::superposition_density(&sp, r, theta, phi, t).map_err(usage)?;
                    rows.push([r, theta, phi, t, density]);
                }
            }
        }
    }
    let payload = Payload::Hydrogen(HydrogenGrid {
        columns: ["r", "theta", "phi", "t", "density"],
        rows,
    });
    emit(&payload, args.format, args.output.as_ref())
}

fn run_casimir_sweep(args: CasimirSweepArgs) -> AppResult<()> {
    let x0 = require_unit_interval("--x0", args.x0)?;
    let intensities: Vec<f64> = args
        .intensities
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            AppError::Usage(format!("invalid --intensities list `{}`", args.intensities))
        })?;
    let base = two_atom_config_from_x0(x0, &args.common)?;
    let sweep = experiments::run_casimir_sweep(&base, &intensities).map_err(usage)?;
    emit(
        &Payload::Sweep(Box::new(sweep)),
        args.common.format,
        args.common.output.as_ref(),
    )
}

fn run_kick_demo(args: KickDemoArgs) -> AppResult<()> {
    let report = experiments::run_kick_chain(&experiments::KickChainConfig {
        n_kicks: args.kicks,
        half_width: args.half_width,
        master_seed: args.seed,
    })
    .map_err(usage)?;
    emit(
        &Payload::KickChain(Box::new(report)),
        args.format,
        args.output.as_ref(),
    )
}

fn dispatch(cli: Cli) -> AppResult<()> {
    match cli.command {
        Command::BornExact(args) => run_born_exact(args),
        Command::Diffuse(args) => run_diffuse(args),
        Command::ThreeAtom(args) => run_three_atom(args),
        Command::OneAtom(args) => run_one_atom(args),
        Command::HydrogenDensity(args) => run_hydrogen_density(args),
        Command::CasimirSweep(args) => run_casimir_sweep(args),
        Command::KickDemo(args) => run_kick_demo(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(AppError::Runtime(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
