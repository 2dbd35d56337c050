//! Output emission: JSON, CSV, and aligned-column text.
//!
//! CSV numbers carry 17 significant digits so every value parses back to the
//! identical bits; rows end with a single newline.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;

use collapsim::experiments::{CasimirSweep, ExperimentReport, KickChainReport};

/// Requested output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Round-trip-exact float rendering (17 significant digits).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// One CSV table: a header and rows of already-rendered cells.
pub struct CsvTable {
    pub header: &'static str,
    pub rows: Vec<String>,
}

impl CsvTable {
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(self.header.len() + 1 + 32 * self.rows.len());
        out.push_str(self.header);
        out.push('\n');
        for row in &self.rows {
            out.push_str(row);
            out.push('\n');
        }
        out
    }
}

/// Exact doubling-map check emitted by `born-exact`.
#[derive(Debug, Clone, Serialize)]
pub struct BornExactReport {
    pub x0: f64,
    /// Branch-sum hitting probability (mathematically equal to `x0`).
    pub exact: f64,
    pub trials: u64,
    pub hits: u64,
    pub empirical: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub max_steps: u32,
    pub master_seed: u64,
}

/// Density grid emitted by `hydrogen-density`.
#[derive(Debug, Clone, Serialize)]
pub struct HydrogenGrid {
    pub columns: [&'static str; 5],
    /// Rows of `(r, theta, phi, t, density)`.
    pub rows: Vec<[f64; 5]>,
}

/// Anything the CLI can print.
pub enum Payload {
    Report(Box<ExperimentReport>),
    BornExact(BornExactReport),
    Sweep(Box<CasimirSweep>),
    Hydrogen(HydrogenGrid),
    KickChain(Box<KickChainReport>),
}

impl Payload {
    fn to_json(&self) -> String {
        let mut body = match self {
            Payload::Report(r) => serde_json::to_string_pretty(r),
            Payload::BornExact(r) => serde_json::to_string_pretty(r),
            Payload::Sweep(r) => serde_json::to_string_pretty(r),
            Payload::Hydrogen(r) => serde_json::to_string_pretty(r),
            Payload::KickChain(r) => serde_json::to_string_pretty(r),
        }
        .expect("reports serialize");
        body.push('\n');
        body
    }

    fn to_csv(&self) -> String {
        match self {
            Payload::Report(r) => report_csv(r).render(),
            Payload::BornExact(r) => CsvTable {
                header: "x0,exact,trials,hits,empirical,ci_low,ci_high",
                rows: vec![format!(
                    "{},{},{},{},{},{},{}",
                    fmt_f64(r.x0),
                    fmt_f64(r.exact),
                    r.trials,
                    r.hits,
                    fmt_f64(r.empirical),
                    fmt_f64(r.wilson_low),
                    fmt_f64(r.wilson_high)
                )],
            }
            .render(),
            Payload::Sweep(s) => sweep_csv(s).render(),
            Payload::Hydrogen(grid) => CsvTable {
                header: "r,theta,phi,t,density",
                rows: grid
                    .rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|&v| fmt_f64(v))
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect(),
            }
            .render(),
            Payload::KickChain(r) => CsvTable {
                header: "step,x",
                rows: r
                    .path
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| format!("{i},{}", fmt_f64(x)))
                    .collect(),
            }
            .render(),
        }
    }

    fn to_text(&self) -> String {
        match self {
            Payload::Report(r) => report_text(r),
            Payload::BornExact(r) => {
                let mut s = String::new();
                let _ = writeln!(s, "x0         {:>12.6}", r.x0);
                let _ = writeln!(s, "exact      {:>12.6}", r.exact);
                let _ = writeln!(s, "trials     {:>12}", r.trials);
                let _ = writeln!(
                    s,
                    "empirical  {:>12.6}  [{:.6}, {:.6}]",
                    r.empirical, r.wilson_low, r.wilson_high
                );
                s
            }
            Payload::Sweep(sweep) => {
                let mut s = String::new();
                let _ = writeln!(
                    s,
                    "{:>10} {:>12} {:>12} {:>10} {:>20}",
                    "intensity", "mean_time", "predicted", "hit1_freq", "95% interval"
                );
                for p in &sweep.points {
                    let hit1 = &p.report.outcomes[0];
                    let _ = writeln!(
                        s,
                        "{:>10.4} {:>12.6} {:>12.6} {:>10.5} [{:.5}, {:.5}]",
                        p.intensity,
                        p.report.mean_absorption_time(),
                        p.predicted_mean_time,
                        hit1.frequency,
                        hit1.wilson_low,
                        hit1.wilson_high
                    );
                }
                let _ = writeln!(
                    s,
                    "mean time monotone decreasing: {}",
                    sweep.mean_time_monotone_decreasing
                );
                let _ = writeln!(
                    s,
                    "max 1/I-scaling deviation:     {:.4}",
                    sweep.max_scaling_deviation
                );
                s
            }
            Payload::Hydrogen(grid) => {
                let mut s = format!(
                    "{:>10} {:>10} {:>10} {:>10} {:>14}\n",
                    "r", "theta", "phi", "t", "density"
                );
                for row in &grid.rows {
                    let _ = writeln!(
                        s,
                        "{:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>14.6e}",
                        row[0], row[1], row[2], row[3], row[4]
                    );
                }
                s
            }
            Payload::KickChain(r) => {
                let mut s = String::new();
                let _ = writeln!(s, "kicks              {:>12}", r.config.n_kicks);
                let _ = writeln!(s, "half width         {:>12.6}", r.config.half_width);
                let _ = writeln!(s, "mean displacement  {:>12.3e}", r.mean_displacement);
                let _ = writeln!(s, "stderr             {:>12.3e}", r.displacement_stderr);
                let _ = writeln!(s, "zero-mean z-score  {:>12.3}", r.zero_mean_zscore);
                let _ = writeln!(s, "max energy drift   {:>12.3e}", r.max_energy_drift);
                let _ = writeln!(s, "final x            {:>12.6}", r.path.last().unwrap());
                s
            }
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }
}

fn report_csv(r: &ExperimentReport) -> CsvTable {
    CsvTable {
        header: "label,count,frequency,ci_low,ci_high",
        rows: r
            .outcomes
            .iter()
            .map(|s| {
                format!(
                    "{},{},{},{},{}",
                    s.label,
                    s.count,
                    fmt_f64(s.frequency),
                    fmt_f64(s.wilson_low),
                    fmt_f64(s.wilson_high)
                )
            })
            .collect(),
    }
}

/// Sweep schema: `intensity,mean_time,stderr,hit1_freq,ci_low,ci_high`.
fn sweep_csv(sweep: &CasimirSweep) -> CsvTable {
    CsvTable {
        header: "intensity,mean_time,stderr,hit1_freq,ci_low,ci_high",
        rows: sweep
            .points
            .iter()
            .map(|p| {
                let timing = p.report.timing.expect("sweep trials absorb");
                let hit1 = &p.report.outcomes[0];
                format!(
                    "{},{},{},{},{},{}",
                    fmt_f64(p.intensity),
                    fmt_f64(timing.mean),
                    fmt_f64(timing.stderr),
                    fmt_f64(hit1.frequency),
                    fmt_f64(hit1.wilson_low),
                    fmt_f64(hit1.wilson_high)
                )
            })
            .collect(),
    }
}

fn report_text(r: &ExperimentReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "scenario     {}", r.scenario);
    let coords = r
        .initial_coordinates
        .iter()
        .map(|x| format!("{x:.6}"))
        .collect::<Vec<_>>()
        .join(", ");
    let _ = writeln!(s, "coordinates  {coords}");
    if let Some(pump) = r.pump_rate {
        let _ = writeln!(s, "pump rate    {pump:.6}");
    }
    let _ = writeln!(s, "trials       {}", r.n_trials);
    let _ = writeln!(s, "seed         {}", r.master_seed);
    let _ = writeln!(
        s,
        "{:<22} {:>10} {:>10} {:>22}",
        "label",
        "count",
        "freq",
        format!("{:.0}% interval", r.confidence * 100.0)
    );
    for stat in &r.outcomes {
        let _ = writeln!(
            s,
            "{:<22} {:>10} {:>10.5} [{:.5}, {:.5}]",
            stat.label, stat.count, stat.frequency, stat.wilson_low, stat.wilson_high
        );
    }
    let _ = writeln!(s, "unabsorbed   {}", r.unabsorbed);
    if let Some(t) = r.timing {
        let _ = writeln!(
            s,
            "absorption time: mean {:.6} ± {:.6}, median {:.6}",
            t.mean, t.stderr, t.median
        );
    }
    if let Some(dir) = r.mean_escape_direction {
        let _ = writeln!(
            s,
            "mean escape direction: ({:.4e}, {:.4e}, {:.4e})",
            dir[0], dir[1], dir[2]
        );
    }
    s
}

/// Writes to the path, or to stdout when no path is given.
pub fn write_output(payload: &Payload, format: Format, output: Option<&Path>) -> std::io::Result<()> {
    let rendered = payload.render(format);
    match output {
        Some(path) => std::fs::write(path, rendered),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(rendered.as_bytes())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_through_csv() {
        for v in [
            0.1,
            1.0 / 3.0,
            std::f64::consts::LN_2,
            6.626_070_15e-34,
            1.0,
            0.0,
        ] {
            let rendered = fmt_f64(v);
            let back: f64 = rendered.parse().unwrap();
            assert_eq!(v.to_bits(), back.to_bits(), "{v} -> {rendered} -> {back}");
        }
    }

    #[test]
    fn empty_table_is_header_only() {
        let table = CsvTable {
            header: "a,b,c",
            rows: vec![],
        };
        assert_eq!(table.render(), "a,b,c\n");
    }

    #[test]
    fn csv_rows_end_with_single_newline() {
        let table = CsvTable {
            header: "h",
            rows: vec!["1".to_string(), "2".to_string()],
        };
        assert_eq!(table.render(), "h\n1\n2\n");
    }
}
