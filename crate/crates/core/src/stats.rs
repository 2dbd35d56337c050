//! Statistical harness: chi-square goodness of fit, Wilson score intervals,
//! and basic timing summaries for Monte Carlo reports.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Result of a Pearson chi-square goodness-of-fit test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquareFit {
    pub statistic: f64,
    pub p_value: f64,
    pub degrees_of_freedom: usize,
    /// Set when some expected count fell below 5; the asymptotic p-value is
    /// then unreliable.
    pub low_expected_counts: bool,
}

/// Pearson chi-square test of `observed` counts against `expected`
/// probabilities, with `k − 1` degrees of freedom.
pub fn chi_square_test(observed: &[u64], expected: &[f64]) -> Result<ChiSquareFit> {
    if observed.len() < 2 || observed.len() != expected.len() {
        return Err(Error::InvalidStatistics {
            detail: format!(
                "need matching category counts with at least 2 categories, got {} observed / {} expected",
                observed.len(),
                expected.len()
            ),
        });
    }
    let prob_sum: f64 = expected.iter().sum();
    if expected.iter().any(|&p| p <= 0.0) || (prob_sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidStatistics {
            detail: format!("expected probabilities must be positive and sum to 1 (sum = {prob_sum})"),
        });
    }
    let n: u64 = observed.iter().sum();
    if n == 0 {
        return Err(Error::InvalidStatistics {
            detail: "no observations".to_string(),
        });
    }
    let nf = n as f64;
    let mut statistic = 0.0;
    let mut low_expected_counts = false;
    for (&obs, &p) in observed.iter().zip(expected) {
        let expect = nf * p;
        if expect < 5.0 {
            low_expected_counts = true;
        }
        let diff = obs as f64 - expect;
        statistic += diff * diff / expect;
    }
    let degrees_of_freedom = observed.len() - 1;
    let dist = ChiSquared::new(degrees_of_freedom as f64).expect("dof >= 1");
    let p_value = 1.0 - dist.cdf(statistic);
    Ok(ChiSquareFit {
        statistic,
        p_value,
        degrees_of_freedom,
        low_expected_counts,
    })
}

/// Two-sided normal quantile for a given confidence level, e.g. 0.95 → 1.96.
pub fn normal_quantile_two_sided(confidence: f64) -> Result<f64> {
    if !(0.0 < confidence && confidence < 1.0) {
        return Err(Error::OutOfRange {
            name: "confidence",
            value: confidence,
            range: "(0, 1)",
        });
    }
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    Ok(normal.inverse_cdf(0.5 + confidence / 2.0))
}

/// Wilson score interval for a binomial proportion.
pub fn wilson_interval(successes: u64, trials: u64, confidence: f64) -> Result<(f64, f64)> {
    if trials == 0 || successes > trials {
        return Err(Error::InvalidStatistics {
            detail: format!("wilson interval needs 0 <= successes <= trials >= 1, got {successes}/{trials}"),
        });
    }
    let z = normal_quantile_two_sided(confidence)?;
    let n = trials as f64;
    let p_hat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p_hat + z2 / (2.0 * n)) / denom;
    let half = z * ((p_hat * (1.0 - p_hat) + z2 / (4.0 * n)) / n).sqrt() / denom;
    Ok(((center - half).max(0.0), (center + half).min(1.0)))
}

/// Mean / median / standard error of a sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub mean: f64,
    pub median: f64,
    pub stderr: f64,
    pub count: u64,
}

/// Summarizes a non-empty sample; returns `None` for an empty one.
pub fn summarize(values: &[f64]) -> Option<SampleSummary> {
    if values.is_empty() {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let variance = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let stderr = (variance / n).sqrt();
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("times are finite"));
    let mid = sorted.len() / 2;
    let median = if sorted.len() % 2 == 0 {
        0.5 * (sorted[mid - 1] + sorted[mid])
    } else {
        sorted[mid]
    };
    Some(SampleSummary {
        mean,
        median,
        stderr,
        count: values.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn chi_square_exact_fit() {
        let fit = chi_square_test(&[25, 25, 50], &[0.25, 0.25, 0.5]).unwrap();
        assert_eq!(fit.statistic, 0.0);
        assert_abs_diff_eq!(fit.p_value, 1.0, epsilon = 1e-12);
        assert_eq!(fit.degrees_of_freedom, 2);
    }

    #[test]
    fn chi_square_hand_computed() {
        // (30-50)²/50 + (70-50)²/50 = 16
        let fit = chi_square_test(&[30, 70], &[0.5, 0.5]).unwrap();
        assert_abs_diff_eq!(fit.statistic, 16.0, epsilon = 1e-12);
        assert!(fit.p_value < 1e-3);
        assert!(!fit.low_expected_counts);
    }

    #[test]
    fn chi_square_flags_small_expected_counts() {
        let fit = chi_square_test(&[1, 9], &[0.1, 0.9]).unwrap();
        assert!(fit.low_expected_counts);
    }

    #[test]
    fn chi_square_rejects_bad_input() {
        assert!(chi_square_test(&[10], &[1.0]).is_err());
        assert!(chi_square_test(&[10, 10], &[0.5, 0.6]).is_err());
        assert!(chi_square_test(&[0, 0], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn wilson_boundaries() {
        let (low, _) = wilson_interval(0, 50, 0.95).unwrap();
        assert_eq!(low, 0.0);
        let (_, high) = wilson_interval(50, 50, 0.95).unwrap();
        assert_eq!(high, 1.0);
    }

    #[test]
    fn wilson_half_at_n_100() {
        let (low, high) = wilson_interval(50, 100, 0.95).unwrap();
        assert_abs_diff_eq!(low, 0.404, epsilon = 5e-4);
        assert_abs_diff_eq!(high, 0.596, epsilon = 5e-4);
    }

    #[test]
    fn wilson_contains_point_estimate() {
        for &(s, n) in &[(1u64, 10u64), (3, 17), (999, 1000), (123, 456)] {
            let (low, high) = wilson_interval(s, n, 0.95).unwrap();
            let p = s as f64 / n as f64;
            assert!(low <= p && p <= high, "({s},{n}): [{low},{high}] vs {p}");
        }
    }

    #[test]
    fn wilson_rejects_bad_input() {
        assert!(wilson_interval(5, 0, 0.95).is_err());
        assert!(wilson_interval(5, 3, 0.95).is_err());
        assert!(wilson_interval(5, 10, 1.0).is_err());
    }

    #[test]
    fn quantile_values() {
        assert_abs_diff_eq!(normal_quantile_two_sided(0.95).unwrap(), 1.959964, epsilon = 1e-5);
        assert_abs_diff_eq!(normal_quantile_two_sided(0.997).unwrap(), 2.967738, epsilon = 1e-5);
    }

    #[test]
    fn summary_handles_parity() {
        let s = summarize(&[3.0, 1.0, 2.0]).unwrap();
        assert_eq!(s.median, 2.0);
        assert_abs_diff_eq!(s.mean, 2.0, epsilon = 1e-15);
        let s = summarize(&[4.0, 1.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.median, 2.5);
        assert!(summarize(&[]).is_none());
    }
}
