//! Seeded Monte Carlo experiments: estimator sweeps over `n`, replicate
//! histograms at fixed `n`, and fixed-vertex density checks.
//!
//! Every replicate of a sweep or histogram is an independent work item with
//! seeds derived from `(root_seed, n, replicate)`, so results are identical
//! for any thread count and adding grid points leaves existing rows alone.

mod config;
mod output;
mod summary;

use serde::Serialize;

pub use config::{parse_grid, ExperimentConfig, ExperimentKind, N0Rule};
pub use output::{
    plot_data, write_csv, write_json, write_summary_csv, PlotData, PlotSeries, DENSITY_HEADER,
    ESTIMATE_HEADER,
};
pub use summary::{summarize, Summary};

use crate::covering::{containment_frequency, density_polynomial, expected_counts, MotifId};
use crate::error::{invalid, Result};
use crate::estimators::{estimate_all, EstimateOptions, EstimateReport};
use crate::graph::{generate_with, induced_subgraph, sample_nodes, GenerateOptions};
use crate::model::{ModelParams, SPARSE_WARN_MP2};
use crate::par::{self, Execution};
use crate::rng::derive_seed;

const GRAPH_TAG: u64 = 0;
const SAMPLE_TAG: u64 = 1;
const DENSITY_TAG: u64 = 2;

/// Estimator values obtained by plugging the expected counts into the
/// estimator formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Default)]
pub struct TheoryValues {
    pub lambda: Option<f64>,
    pub mu1: Option<f64>,
    pub mu2: Option<f64>,
}

impl TheoryValues {
    pub fn at(params: &ModelParams, n0: usize) -> TheoryValues {
        let Ok(e) = expected_counts(params, n0) else {
            return TheoryValues::default();
        };
        let (n, n0) = (params.n as f64, n0 as f64);
        let finite = |x: f64| x.is_finite().then_some(x);
        let mu2_denom = n0 * e.e_s2 / (2.0 * e.e_k2 * e.e_k2) - 1.0;
        TheoryValues {
            lambda: Some(n / (n0 * n0) * 2.0 * e.e_k2),
            mu1: finite(e.e_s2 / (3.0 * e.e_k3) - 1.0),
            mu2: (mu2_denom > 0.0).then(|| 1.0 / mu2_denom).and_then(finite),
        }
    }
}

/// One `(n, replicate)` record. A failed replicate keeps its row, with
/// `report = None` and the reason in `error`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateRow {
    pub n: usize,
    pub replicate: usize,
    pub m: usize,
    pub p: f64,
    pub n0: usize,
    pub graph_seed: u64,
    pub sample_seed: u64,
    pub report: Option<EstimateReport>,
    pub error: Option<String>,
    pub theory: TheoryValues,
}

/// The estimators summarized per grid point.
pub const ESTIMATORS: [&str; 4] = ["lambda_hat", "mu1_hat", "mu2_hat", "transitivity"];

impl EstimateRow {
    pub fn estimator(&self, name: &str) -> Option<f64> {
        let r = self.report.as_ref()?;
        match name {
            "lambda_hat" => Some(r.lambda_hat),
            "mu1_hat" => r.mu1_hat,
            "mu2_hat" => r.mu2_hat,
            "transitivity" => r.transitivity,
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub n: usize,
    pub estimator: &'static str,
    pub rows: usize,
    /// Rows where the estimator was undefined or the replicate failed.
    pub removed: usize,
    pub summary: Option<Summary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityRow {
    pub motif: MotifId,
    pub m: u64,
    pub p: f64,
    pub reps: u64,
    pub seed: u64,
    pub hits: u64,
    pub frequency: f64,
    pub std_error: f64,
    pub theory: f64,
    /// `frequency / theory - 1`; `None` when the theory value is 0.
    pub relative_error: Option<f64>,
    pub flags: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub tool: &'static str,
    pub version: &'static str,
    pub kind: ExperimentKind,
    pub root_seed: u64,
    pub config: String,
    pub seeding: &'static str,
    pub theory: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub rows: Vec<EstimateRow>,
    pub summary: Vec<SummaryRow>,
    pub density: Vec<DensityRow>,
    pub provenance: Provenance,
}

const SEEDING_NOTE: &str = "graph seed = derive_seed(root_seed, [n, replicate, 0]); \
sample seed = derive_seed(root_seed, [n, replicate, 1]); \
density-check seed = derive_seed(root_seed, [2, motif index]); derive_seed is SplitMix64 folding";

const THEORY_NOTE: &str = "theory columns substitute expected counts into the estimator formulas: \
e_k2 = C(n0,2) (1-(1-p^2)^m) (exact edge probability), \
e_s2 = 3 C(n0,3) (m p^3 + m^2 p^4), e_k3 = C(n0,3) (m p^3 + m^3 p^6) (leading-order covering densities); \
density-check theory is the full covering-density polynomial";

fn provenance(cfg: &ExperimentConfig) -> Provenance {
    Provenance {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        kind: cfg.kind,
        root_seed: cfg.root_seed,
        config: cfg.to_text(),
        seeding: SEEDING_NOTE,
        theory: THEORY_NOTE,
    }
}

/// Runs the experiment described by `cfg`.
pub fn run(cfg: &ExperimentConfig, exec: Execution) -> Result<ExperimentResult> {
    match cfg.kind {
        ExperimentKind::Sweep => run_sweep(cfg, exec),
        ExperimentKind::Histogram => run_histogram(cfg, exec),
        ExperimentKind::DensityCheck => run_density_check(cfg, exec),
    }
}

pub fn run_sweep(cfg: &ExperimentConfig, exec: Execution) -> Result<ExperimentResult> {
    expect_kind(cfg, ExperimentKind::Sweep)?;
    run_estimation(cfg, exec)
}

pub fn run_histogram(cfg: &ExperimentConfig, exec: Execution) -> Result<ExperimentResult> {
    expect_kind(cfg, ExperimentKind::Histogram)?;
    if cfg.n_grid.len() != 1 {
        return Err(invalid("a histogram runs at a single n"));
    }
    run_estimation(cfg, exec)
}

fn expect_kind(cfg: &ExperimentConfig, kind: ExperimentKind) -> Result<()> {
    if cfg.kind != kind {
        return Err(invalid(format!(
            "expected a {} config, got {}",
            kind.as_str(),
            cfg.kind.as_str()
        )));
    }
    Ok(())
}

fn run_estimation(cfg: &ExperimentConfig, exec: Execution) -> Result<ExperimentResult> {
    if cfg.replicates == 0 || cfg.n_grid.is_empty() {
        return Err(invalid("need at least one grid point and one replicate"));
    }
    let models: Vec<ModelParams> = cfg.n_grid.iter().map(|&n| cfg.model_at(n)).collect::<Result<_>>()?;
    let reps = cfg.replicates;
    let rows = par::map_indexed(exec, models.len() * reps, |i| {
        replicate_row(cfg, &models[i / reps], i % reps)
    });

    let mut summary = Vec::new();
    for (chunk, &n) in rows.chunks(reps).zip(&cfg.n_grid) {
        for name in ESTIMATORS {
            let values: Vec<Option<f64>> = chunk.iter().map(|r| r.estimator(name)).collect();
            let s = summarize(&values).ok();
            let removed = s.as_ref().map_or(values.len(), |s| s.removed);
            summary.push(SummaryRow { n, estimator: name, rows: values.len(), removed, summary: s });
        }
    }

    Ok(ExperimentResult {
        config: cfg.clone(),
        rows,
        summary,
        density: Vec::new(),
        provenance: provenance(cfg),
    })
}

fn replicate_row(cfg: &ExperimentConfig, params: &ModelParams, replicate: usize) -> EstimateRow {
    let n = params.n;
    let graph_seed = derive_seed(cfg.root_seed, &[n as u64, replicate as u64, GRAPH_TAG]);
    let sample_seed = derive_seed(cfg.root_seed, &[n as u64, replicate as u64, SAMPLE_TAG]);
    let n0 = cfg.n0_rule.resolve(n);
    let mut row = EstimateRow {
        n,
        replicate,
        m: params.m,
        p: params.p,
        n0: *n0.as_ref().unwrap_or(&0),
        graph_seed,
        sample_seed,
        report: None,
        error: None,
        theory: n0.as_ref().map_or_else(|_| TheoryValues::default(), |&k| TheoryValues::at(params, k)),
    };
    let outcome = n0.and_then(|n0| {
        let opts = GenerateOptions { edge_budget: cfg.edge_budget, exec: Execution::Sequential };
        let (_, g) = generate_with(params, graph_seed, &opts)?;
        let est = EstimateOptions { fast_only: cfg.fast_only, exec: Execution::Sequential };
        if n0 == n {
            estimate_all(&g, n, &est)
        } else {
            let (sub, _) = induced_subgraph(&g, &sample_nodes(n, n0, sample_seed)?)?;
            estimate_all(&sub, n, &est)
        }
    });
    match outcome {
        Ok(report) => row.report = Some(report),
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

pub fn run_density_check(cfg: &ExperimentConfig, exec: Execution) -> Result<ExperimentResult> {
    expect_kind(cfg, ExperimentKind::DensityCheck)?;
    let (m, p) = cfg.density_params()?;
    let reps = cfg.mc_reps.ok_or_else(|| invalid("mc_reps is required"))?;
    let mp2 = m as f64 * p * p;
    let mut density = Vec::with_capacity(cfg.motifs.len());
    for &motif in &cfg.motifs {
        let index = MotifId::ALL.iter().position(|&x| x == motif).unwrap_or(0) as u64;
        let seed = derive_seed(cfg.root_seed, &[DENSITY_TAG, index]);
        let est = containment_frequency(motif, m, p, reps, seed, exec)?;
        let theory = density_polynomial(motif).eval(m as f64, p);
        let mut flags = Vec::new();
        if mp2 > SPARSE_WARN_MP2 {
            flags.push("mp2-not-small");
        }
        density.push(DensityRow {
            motif,
            m,
            p,
            reps,
            seed,
            hits: est.hits,
            frequency: est.frequency,
            std_error: est.std_error,
            theory,
            relative_error: (theory > 0.0).then(|| est.frequency / theory - 1.0),
            flags,
        });
    }
    Ok(ExperimentResult {
        config: cfg.clone(),
        rows: Vec::new(),
        summary: Vec::new(),
        density,
        provenance: provenance(cfg),
    })
}
