//! Monte Carlo experiment reports: per-label counts, Wilson intervals, and
//! absorption-time summaries, assembled from ordered trial results so that a
//! report is bit-identical for a given configuration and seed.

use serde::{Deserialize, Serialize};

use crate::diffusion::DiffusionParams;
use crate::error::Result;
use crate::stats::{self, SampleSummary};

/// Default confidence level for the per-label Wilson intervals.
pub const REPORT_CONFIDENCE: f64 = 0.95;

/// Outcome statistics for one label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelStat {
    pub label: String,
    pub count: u64,
    pub frequency: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
}

/// Full record of one Monte Carlo experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub scenario: String,
    /// Diffusion coordinates the trials started from.
    pub initial_coordinates: Vec<f64>,
    pub params: DiffusionParams,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pump_rate: Option<f64>,
    pub n_trials: u64,
    pub master_seed: u64,
    /// Confidence level of the Wilson intervals below.
    pub confidence: f64,
    pub outcomes: Vec<LabelStat>,
    pub unabsorbed: u64,
    /// Absorption-time summary over absorbed trials; absent if none absorbed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<SampleSummary>,
    /// Mean escape direction (one-atom scenario only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean_escape_direction: Option<[f64; 3]>,
}

impl ExperimentReport {
    /// Count recorded for a label, zero if the label is absent.
    pub fn count_for(&self, label: &str) -> u64 {
        self.outcomes
            .iter()
            .find(|s| s.label == label)
            .map_or(0, |s| s.count)
    }

    /// Frequency recorded for a label.
    pub fn frequency_for(&self, label: &str) -> f64 {
        self.outcomes
            .iter()
            .find(|s| s.label == label)
            .map_or(0.0, |s| s.frequency)
    }

    /// Mean absorption time over absorbed trials (NaN when none absorbed).
    pub fn mean_absorption_time(&self) -> f64 {
        self.timing.map_or(f64::NAN, |t| t.mean)
    }
}

/// Raw result of one trial, fed to [`assemble_report`] in trial order.
#[derive(Debug, Clone, Copy)]
pub struct TrialResult {
    /// Index into the label list, `None` when unabsorbed at `max_time`.
    pub label_index: Option<usize>,
    pub time: f64,
}

/// Experiment identity recorded alongside the statistics.
#[derive(Debug, Clone)]
pub struct ReportMeta {
    pub scenario: String,
    pub initial_coordinates: Vec<f64>,
    pub params: DiffusionParams,
    pub pump_rate: Option<f64>,
    pub master_seed: u64,
}

/// Reduces ordered trial results into a report.
pub fn assemble_report(
    meta: ReportMeta,
    labels: &[&str],
    results: &[TrialResult],
) -> Result<ExperimentReport> {
    let n_trials = results.len() as u64;
    let mut counts = vec![0u64; labels.len()];
    let mut unabsorbed = 0u64;
    let mut times = Vec::new();
    for r in results {
        match r.label_index {
            Some(i) => {
                counts[i] += 1;
                times.push(r.time);
            }
            None => unabsorbed += 1,
        }
    }
    let mut outcomes = Vec::with_capacity(labels.len());
    for (label, &count) in labels.iter().zip(&counts) {
        let (wilson_low, wilson_high) = stats::wilson_interval(count, n_trials, REPORT_CONFIDENCE)?;
        outcomes.push(LabelStat {
            label: (*label).to_string(),
            count,
            frequency: count as f64 / n_trials as f64,
            wilson_low,
            wilson_high,
        });
    }
    debug_assert_eq!(counts.iter().sum::<u64>() + unabsorbed, n_trials);
    Ok(ExperimentReport {
        scenario: meta.scenario,
        initial_coordinates: meta.initial_coordinates,
        params: meta.params,
        pump_rate: meta.pump_rate,
        n_trials,
        master_seed: meta.master_seed,
        confidence: REPORT_CONFIDENCE,
        outcomes,
        unabsorbed,
        timing: stats::summarize(&times),
        mean_escape_direction: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta() -> ReportMeta {
        ReportMeta {
            scenario: "two_atom".to_string(),
            initial_coordinates: vec![0.5],
            params: DiffusionParams::default(),
            pump_rate: None,
            master_seed: 1,
        }
    }

    #[test]
    fn counts_and_unabsorbed_partition_trials() {
        let results = vec![
            TrialResult { label_index: Some(0), time: 1.0 },
            TrialResult { label_index: Some(1), time: 2.0 },
            TrialResult { label_index: None, time: 100.0 },
            TrialResult { label_index: Some(0), time: 3.0 },
        ];
        let report = assemble_report(meta(), &["a", "b"], &results).unwrap();
        assert_eq!(report.n_trials, 4);
        assert_eq!(report.count_for("a"), 2);
        assert_eq!(report.count_for("b"), 1);
        assert_eq!(report.unabsorbed, 1);
        let total: u64 = report.outcomes.iter().map(|s| s.count).sum();
        assert_eq!(total + report.unabsorbed, report.n_trials);
        assert_eq!(report.timing.unwrap().count, 3);
        assert_eq!(report.timing.unwrap().median, 2.0);
    }

    #[test]
    fn intervals_contain_frequencies() {
        let results: Vec<TrialResult> = (0..100)
            .map(|i| TrialResult {
                label_index: Some(usize::from(i % 3 == 0)),
                time: 1.0,
            })
            .collect();
        let report = assemble_report(meta(), &["a", "b"], &results).unwrap();
        for stat in &report.outcomes {
            assert!(stat.wilson_low <= stat.frequency && stat.frequency <= stat.wilson_high);
        }
    }

    #[test]
    fn json_round_trips() {
        let results = vec![TrialResult { label_index: Some(0), time: 0.25 }];
        let report = assemble_report(meta(), &["a", "b"], &results).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: ExperimentReport = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
    }
}
