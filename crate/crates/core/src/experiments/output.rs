//! CSV, JSON and plot-series renderings of an [`ExperimentResult`].
//!
//! Undefined values are empty CSV fields and `null` in JSON. Flags are joined
//! with `;`.

use std::io::Write;

use serde::Serialize;

use super::{ExperimentKind, ExperimentResult, ESTIMATORS};
use crate::error::Result;

/// Header of the per-replicate CSV (sweep and histogram).
pub const ESTIMATE_HEADER: [&str; 23] = [
    "n",
    "replicate",
    "m",
    "p",
    "n0",
    "graph_seed",
    "sample_seed",
    "lambda_hat",
    "mu1_hat",
    "mu2_hat",
    "transitivity",
    "n_k2",
    "n_s2",
    "n_k3",
    "a1",
    "a2",
    "d_max",
    "triangle_work",
    "flags",
    "lambda_theory",
    "mu1_theory",
    "mu2_theory",
    "error",
];

/// Header of the density-check CSV.
pub const DENSITY_HEADER: [&str; 11] = [
    "motif",
    "m",
    "p",
    "reps",
    "seed",
    "hits",
    "frequency",
    "std_error",
    "theory",
    "relative_error",
    "flags",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(String::new, |x| x.to_string())
}

/// Writes one row per `(n, replicate)`, or one row per motif for a density
/// check.
pub fn write_csv<W: Write>(res: &ExperimentResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if res.config.kind == ExperimentKind::DensityCheck {
        w.write_record(DENSITY_HEADER)?;
        for d in &res.density {
            w.write_record([
                d.motif.to_string(),
                d.m.to_string(),
                d.p.to_string(),
                d.reps.to_string(),
                d.seed.to_string(),
                d.hits.to_string(),
                d.frequency.to_string(),
                d.std_error.to_string(),
                d.theory.to_string(),
                opt(d.relative_error),
                d.flags.join(";"),
            ])?;
        }
    } else {
        w.write_record(ESTIMATE_HEADER)?;
        for row in &res.rows {
            let r = row.report.as_ref();
            let flags = r.map_or_else(String::new, |r| {
                r.flags.iter().map(|f| f.as_str()).collect::<Vec<_>>().join(";")
            });
            w.write_record([
                row.n.to_string(),
                row.replicate.to_string(),
                row.m.to_string(),
                row.p.to_string(),
                row.n0.to_string(),
                row.graph_seed.to_string(),
                row.sample_seed.to_string(),
                opt(r.map(|r| r.lambda_hat)),
                opt(r.and_then(|r| r.mu1_hat)),
                opt(r.and_then(|r| r.mu2_hat)),
                opt(r.and_then(|r| r.transitivity)),
                opt(r.map(|r| r.counts.n_k2)),
                opt(r.map(|r| r.counts.n_s2)),
                opt(r.and_then(|r| r.counts.n_k3)),
                opt(r.map(|r| r.moments.a1)),
                opt(r.map(|r| r.moments.a2)),
                opt(r.map(|r| r.moments.d_max)),
                opt(r.map(|r| r.triangle_work)),
                flags,
                opt(row.theory.lambda),
                opt(row.theory.mu1),
                opt(row.theory.mu2),
                opt(row.error.as_ref()),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes `n, estimator, rows, removed, count, mean, sd, q0, q10, ..., q100`.
pub fn write_summary_csv<W: Write>(res: &ExperimentResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> =
        ["n", "estimator", "rows", "removed", "count", "mean", "sd"].map(String::from).to_vec();
    header.extend((0..=10).map(|k| format!("q{}", 10 * k)));
    w.write_record(&header)?;
    for s in &res.summary {
        let mut rec = vec![s.n.to_string(), s.estimator.to_string(), s.rows.to_string(), s.removed.to_string()];
        match &s.summary {
            Some(sum) => {
                rec.extend([sum.count.to_string(), sum.mean.to_string(), opt(sum.sd)]);
                rec.extend(sum.deciles.iter().map(f64::to_string));
            }
            None => {
                rec.push("0".into());
                rec.extend(std::iter::repeat_n(String::new(), 13));
            }
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Pretty-printed JSON of the whole result.
pub fn write_json<W: Write>(res: &ExperimentResult, out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, res)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotSeries {
    pub name: String,
    /// `estimate` (one point per replicate) or `theory` (one point per x).
    pub kind: &'static str,
    pub points: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotData {
    pub x: &'static str,
    /// Category names for a categorical x axis (density checks).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub x_labels: Vec<String>,
    pub series: Vec<PlotSeries>,
}

/// Estimator scatter `(n, value)` plus theoretical curves; for a density
/// check, empirical and theoretical probability per motif.
pub fn plot_data(res: &ExperimentResult) -> PlotData {
    if res.config.kind == ExperimentKind::DensityCheck {
        let series = |name: &str, kind, f: &dyn Fn(&super::DensityRow) -> f64| PlotSeries {
            name: name.into(),
            kind,
            points: res.density.iter().enumerate().map(|(i, d)| [i as f64, f(d)]).collect(),
        };
        return PlotData {
            x: "motif",
            x_labels: res.density.iter().map(|d| d.motif.to_string()).collect(),
            series: vec![
                series("frequency", "estimate", &|d| d.frequency),
                series("theory", "theory", &|d| d.theory),
            ],
        };
    }

    let mut series: Vec<PlotSeries> = ESTIMATORS
        .iter()
        .map(|&name| PlotSeries {
            name: name.into(),
            kind: "estimate",
            points: res
                .rows
                .iter()
                .filter_map(|r| r.estimator(name).map(|v| [r.n as f64, v]))
                .collect(),
        })
        .collect();
    let reps = res.config.replicates.max(1);
    type Getter = fn(&super::TheoryValues) -> Option<f64>;
    let theory: [(&str, Getter); 3] = [
        ("lambda_theory", |t| t.lambda),
        ("mu1_theory", |t| t.mu1),
        ("mu2_theory", |t| t.mu2),
    ];
    for (name, get) in theory {
        series.push(PlotSeries {
            name: name.into(),
            kind: "theory",
            points: res
                .rows
                .iter()
                .step_by(reps)
                .filter_map(|r| get(&r.theory).map(|v| [r.n as f64, v]))
                .collect(),
        });
    }
    PlotData { x: "n", x_labels: Vec::new(), series }
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    fn sweep_result() -> ExperimentResult {
        let mut cfg = ExperimentConfig::estimation(ExperimentKind::Sweep, 9.0, 3.0, vec![50, 70, 90], 2, 4);
        cfg.fast_only = true;
        run(&cfg, Execution::default()).unwrap()
    }

    fn csv_lines(res: &ExperimentResult) -> Vec<String> {
        let mut buf = Vec::new();
        write_csv(res, &mut buf).unwrap();
        String::from_utf8(buf).unwrap().lines().map(String::from).collect()
    }

    #[test]
    fn estimate_csv_shape() {
        let res = sweep_result();
        let lines = csv_lines(&res);
        assert_eq!(lines.len(), 1 + 6);
        assert_eq!(lines[0], ESTIMATE_HEADER.join(","));
        let text = lines.join("\n");
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        for (rec, row) in rd.records().zip(&res.rows) {
            let rec = rec.unwrap();
            assert_eq!(rec.len(), ESTIMATE_HEADER.len());
            assert_eq!(rec[0].parse::<usize>().unwrap(), row.n);
            let lambda: f64 = rec[7].parse().unwrap();
            assert_eq!(lambda, row.report.as_ref().unwrap().lambda_hat);
            assert_eq!(&rec[8], "");
            assert!(rec[18].contains("fast-only"));
        }
    }

    #[test]
    fn summary_csv_shape() {
        let res = sweep_result();
        let mut buf = Vec::new();
        write_summary_csv(&res, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + 3 * ESTIMATORS.len());
        assert!(lines[0].ends_with("q90,q100"));
        let widths: Vec<usize> = lines.iter().map(|l| l.split(',').count()).collect();
        assert!(widths.iter().all(|&w| w == 18), "{widths:?}");
    }

    #[test]
    fn json_round_trips_through_serde_value() {
        let res = sweep_result();
        let mut buf = Vec::new();
        write_json(&res, &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 6);
        assert_eq!(v["config"]["kind"], "sweep");
        assert!(v["rows"][0]["report"]["mu1_hat"].is_null());
        assert!(v["provenance"]["config"].as_str().unwrap().contains("root_seed = 4"));
    }

    #[test]
    fn plot_series() {
        let res = sweep_result();
        let plot = plot_data(&res);
        let names: Vec<&str> = plot.series.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(
            names,
            ["lambda_hat", "mu1_hat", "mu2_hat", "transitivity", "lambda_theory", "mu1_theory", "mu2_theory"]
        );
        assert_eq!(plot.series[0].points.len(), 6);
        assert!(plot.series[1].points.is_empty());
        let xs: Vec<f64> = plot.series[4].points.iter().map(|p| p[0]).collect();
        assert_eq!(xs, [50.0, 70.0, 90.0]);
    }

    #[test]
    fn density_outputs() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::DensityCheck);
        cfg.motifs = vec![MotifId::OneStar, MotifId::ThreeCycle];
        cfg.mc_reps = Some(5000);
        cfg.m = Some(100);
        cfg.p = Some(0.05);
        let res = run(&cfg, Execution::default()).unwrap();
        let lines = csv_lines(&res);
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], DENSITY_HEADER.join(","));
        assert!(lines[1].starts_with("1-star,100,0.05,5000,"));
        let plot = plot_data(&res);
        assert_eq!(plot.x_labels, ["1-star", "3-cycle"]);
        assert_eq!(plot.series.len(), 2);
    }
}
