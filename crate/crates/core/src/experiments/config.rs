//! Scenario configuration and the flat key-value experiment file format.
//!
//! A configuration file is plain text, one `key = value` pair per line, with
//! `#` comments. Keys mirror the [`ScenarioConfig`] fields:
//!
//! ```text
//! # photon shared by two atoms, symmetric stuck state
//! scenario           = two_atom
//! initial_amplitudes = 0.7071067811865476, 0.7071067811865476
//! basis_labels       = A_excited, B_excited   # optional
//! intensity          = 1.0                    # optional, default 1.0
//! dt                 = 1e-4                   # optional
//! epsilon            = 1e-6                   # optional
//! max_time           = 100                    # optional, default 100/intensity
//! pump_rate          = 0.0                    # one-atom only
//! n_trials           = 100000
//! master_seed        = 42
//! ```
//!
//! Amplitudes may be complex, written `a`, `bi`, or `a+bi` / `a-bi`
//! (exponent forms like `1e-3+2.5e-4i` work); only the squared moduli enter
//! the dynamics.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::amplitude::EntangledAmplitudes;
use crate::diffusion::{DiffusionParams, DEFAULT_DT, DEFAULT_EPSILON, DEFAULT_MAX_TIME_FACTOR};
use crate::error::{Error, Result};

/// Which absorption scenario to simulate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    OneAtom,
    TwoAtom,
    ThreeAtom,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::OneAtom => "one_atom",
            Scenario::TwoAtom => "two_atom",
            Scenario::ThreeAtom => "three_atom",
        }
    }

    /// Amplitude dimension the scenario requires.
    pub fn dimension(self) -> usize {
        match self {
            Scenario::OneAtom | Scenario::TwoAtom => 2,
            Scenario::ThreeAtom => 3,
        }
    }

    /// Default basis labels.
    pub fn default_labels(self) -> Vec<&'static str> {
        match self {
            Scenario::OneAtom => vec!["photon_free_ground", "excited"],
            Scenario::TwoAtom => vec!["A_excited", "B_excited"],
            Scenario::ThreeAtom => vec!["A_excited", "B_excited", "C_excited"],
        }
    }
}

/// Complete description of one Monte Carlo experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub initial_amplitudes: EntangledAmplitudes,
    pub params: DiffusionParams,
    /// Deterministic pump drift rate λ (one-atom scenario only).
    pub pump_rate: f64,
    pub n_trials: u64,
    pub master_seed: u64,
}

impl ScenarioConfig {
    /// Checks dimension, trial count, and pump-rate constraints.
    pub fn validate(&self) -> Result<()> {
        let expected = self.scenario.dimension();
        let actual = self.initial_amplitudes.dim();
        if actual != expected {
            return Err(Error::ScenarioDimensionMismatch {
                scenario: self.scenario.name(),
                expected,
                actual,
            });
        }
        if self.n_trials == 0 {
            return Err(Error::OutOfRange {
                name: "n_trials",
                value: 0.0,
                range: "[1, ∞)",
            });
        }
        if !(self.pump_rate >= 0.0) {
            return Err(Error::OutOfRange {
                name: "pump_rate",
                value: self.pump_rate,
                range: "[0, ∞)",
            });
        }
        Ok(())
    }
}

/// Parses a complex number in `a`, `bi`, or `a±bi` form.
pub fn parse_complex(text: &str) -> Option<Complex64> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    let Some(body) = t.strip_suffix('i') else {
        return t.parse().ok().map(|re| Complex64::new(re, 0.0));
    };
    // Split at the last +/- that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let mut split = None;
    for (idx, &b) in bytes.iter().enumerate().skip(1) {
        if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
        }
    }
    let (re_part, im_part) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("0", body),
    };
    let re: f64 = re_part.trim().parse().ok()?;
    let im: f64 = match im_part.trim() {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse().ok()?,
    };
    Some(Complex64::new(re, im))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::ConfigParse {
        line,
        message: message.into(),
    }
}

/// Parses the flat key-value experiment format.
pub fn parse_scenario_config(text: &str) -> Result<ScenarioConfig> {
    let mut scenario: Option<Scenario> = None;
    let mut amplitudes: Option<Vec<Complex64>> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut intensity: Option<f64> = None;
    let mut dt: Option<f64> = None;
    let mut epsilon: Option<f64> = None;
    let mut max_time: Option<f64> = None;
    let mut pump_rate = 0.0;
    let mut n_trials: Option<u64> = None;
    let mut master_seed: Option<u64> = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(parse_err(line_no, format!("expected `key = value`, got `{line}`")));
        };
        let key = key.trim();
        let value = value.trim();
        let float = |name: &str| -> Result<f64> {
            value
                .parse()
                .map_err(|_| parse_err(line_no, format!("invalid number for {name}: `{value}`")))
        };
        match key {
            "scenario" => {
                scenario = Some(match value {
                    "one_atom" => Scenario::OneAtom,
                    "two_atom" => Scenario::TwoAtom,
                    "three_atom" => Scenario::ThreeAtom,
                    other => {
                        return Err(parse_err(
                            line_no,
                            format!("unknown scenario `{other}` (one_atom | two_atom | three_atom)"),
                        ))
                    }
                });
            }
            "initial_amplitudes" => {
                let parsed: Option<Vec<Complex64>> =
                    value.split(',').map(parse_complex).collect();
                amplitudes = Some(parsed.ok_or_else(|| {
                    parse_err(line_no, format!("invalid amplitude list `{value}`"))
                })?);
            }
            "basis_labels" => {
                labels = Some(value.split(',').map(|s| s.trim().to_string()).collect());
            }
            "intensity" => intensity = Some(float("intensity")?),
            "dt" => dt = Some(float("dt")?),
            "epsilon" => epsilon = Some(float("epsilon")?),
            "max_time" => max_time = Some(float("max_time")?),
            "pump_rate" => pump_rate = float("pump_rate")?,
            "n_trials" => {
                n_trials = Some(value.parse().map_err(|_| {
                    parse_err(line_no, format!("invalid integer for n_trials: `{value}`"))
                })?);
            }
            "master_seed" => {
                master_seed = Some(value.parse().map_err(|_| {
                    parse_err(line_no, format!("invalid integer for master_seed: `{value}`"))
                })?);
            }
            other => {
                return Err(parse_err(line_no, format!("unknown key `{other}`")));
            }
        }
    }

    let scenario = scenario.ok_or_else(|| parse_err(0, "missing required key `scenario`"))?;
    let amplitudes =
        amplitudes.ok_or_else(|| parse_err(0, "missing required key `initial_amplitudes`"))?;
    let n_trials = n_trials.ok_or_else(|| parse_err(0, "missing required key `n_trials`"))?;
    let master_seed =
        master_seed.ok_or_else(|| parse_err(0, "missing required key `master_seed`"))?;

    if amplitudes.len() != scenario.dimension() {
        return Err(Error::ScenarioDimensionMismatch {
            scenario: scenario.name(),
            expected: scenario.dimension(),
            actual: amplitudes.len(),
        });
    }
    let labels = labels.unwrap_or_else(|| {
        scenario
            .default_labels()
            .into_iter()
            .map(String::from)
            .collect()
    });
    let initial_amplitudes = EntangledAmplitudes::new(amplitudes, labels)?;

    let intensity = intensity.unwrap_or(1.0);
    let params = DiffusionParams::new(
        intensity,
        dt.unwrap_or(DEFAULT_DT),
        epsilon.unwrap_or(DEFAULT_EPSILON),
        max_time.unwrap_or(DEFAULT_MAX_TIME_FACTOR / intensity),
    )?;

    let config = ScenarioConfig {
        scenario,
        initial_amplitudes,
        params,
        pump_rate,
        n_trials,
        master_seed,
    };
    config.validate()?;
    Ok(config)
}

/// Reads and parses a configuration file.
pub fn load_scenario_config(path: &std::path::Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::ConfigParse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_scenario_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn parses_complete_file() {
        let text = "\
# two atoms, symmetric stuck state
scenario           = two_atom
initial_amplitudes = 0.7071067811865476, 0.7071067811865476
intensity          = 2.0
dt                 = 2e-4
epsilon            = 1e-5
max_time           = 25
n_trials           = 1000
master_seed        = 7
";
        let config = parse_scenario_config(text).unwrap();
        assert_eq!(config.scenario, Scenario::TwoAtom);
        assert_eq!(config.params.intensity, 2.0);
        assert_eq!(config.params.dt, 2e-4);
        assert_eq!(config.params.epsilon, 1e-5);
        assert_eq!(config.params.max_time, 25.0);
        assert_eq!(config.n_trials, 1000);
        assert_eq!(config.master_seed, 7);
        assert_eq!(config.initial_amplitudes.basis_labels()[0], "A_excited");
    }

    #[test]
    fn defaults_fill_optional_keys() {
        let text = "\
scenario = three_atom
initial_amplitudes = 0.4472135954999579, 0.7071067811865476, 0.5477225575051661
n_trials = 10
master_seed = 1
";
        let config = parse_scenario_config(text).unwrap();
        assert_eq!(config.params.dt, DEFAULT_DT);
        assert_eq!(config.params.max_time, 100.0);
        assert_eq!(config.pump_rate, 0.0);
        assert_eq!(config.initial_amplitudes.dim(), 3);
    }

    #[test]
    fn rejects_unknown_key_with_line_number() {
        let text = "scenario = two_atom\nobviously_wrong = 1\n";
        match parse_scenario_config(text) {
            Err(Error::ConfigParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let text = "\
scenario = three_atom
initial_amplitudes = 0.7071067811865476, 0.7071067811865476
n_trials = 10
master_seed = 1
";
        assert!(matches!(
            parse_scenario_config(text),
            Err(Error::ScenarioDimensionMismatch { .. })
        ));
    }

    #[test]
    fn complex_amplitude_forms() {
        let c = parse_complex("0.5+0.5i").unwrap();
        assert_eq!((c.re, c.im), (0.5, 0.5));
        let c = parse_complex("-0.25-0.75i").unwrap();
        assert_eq!((c.re, c.im), (-0.25, -0.75));
        let c = parse_complex("1e-3+2.5e-4i").unwrap();
        assert_abs_diff_eq!(c.re, 1e-3, epsilon = 1e-18);
        assert_abs_diff_eq!(c.im, 2.5e-4, epsilon = 1e-18);
        let c = parse_complex("0.5i").unwrap();
        assert_eq!((c.re, c.im), (0.0, 0.5));
        let c = parse_complex("-i").unwrap();
        assert_eq!((c.re, c.im), (0.0, -1.0));
        let c = parse_complex("0.25").unwrap();
        assert_eq!((c.re, c.im), (0.25, 0.0));
        assert!(parse_complex("nonsense").is_none());
    }

    #[test]
    fn complex_amplitudes_enter_via_moduli() {
        let text = "\
scenario = two_atom
initial_amplitudes = 0.5+0.5i, 0.7071067811865476
n_trials = 10
master_seed = 1
";
        let config = parse_scenario_config(text).unwrap();
        assert_abs_diff_eq!(config.initial_amplitudes.probability(0), 0.5, epsilon = 1e-12);
    }
}
