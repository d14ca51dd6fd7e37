//! Moment estimators for the mean degree `lambda` and the attribute
//! intensity `mu` from one observed induced subgraph.
//!
//! * `lambda_hat = (n / n0^2) Σ deg(i)`
//! * `mu1_hat = N_S2 / (3 N_K3) - 1`
//! * `mu2_hat = ((a2 - a1) / a1^2 - 1)^(-1) = (n0 N_S2 / (2 N_K2^2) - 1)^(-1)`
//!
//! `lambda_hat` and `mu2_hat` need degrees only (`O(n0 d_max)` from an
//! adjacency structure); `mu1_hat` needs triangles.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::motifs::{
    count_pairs_and_stars, count_triangles_with, degree_moments, transitivity_from_counts,
    DegreeMoments, MotifCounts,
};
use crate::par::Execution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    /// No triangles observed; `mu1_hat` undefined.
    NoTriangles,
    /// `a1 = 0` or `(a2 - a1)/a1^2 - 1 <= 0`; `mu2_hat` undefined.
    Mu2DenominatorNonpositive,
    /// No 2-stars observed; transitivity undefined.
    NoTwoStars,
    /// Triangle counting skipped on request.
    FastOnly,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::NoTriangles => "no-triangles",
            Flag::Mu2DenominatorNonpositive => "mu2-denominator-nonpositive",
            Flag::NoTwoStars => "no-two-stars",
            Flag::FastOnly => "fast-only",
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct EstimateOptions {
    /// Skip triangle counting; `mu1_hat` and transitivity become undefined.
    pub fast_only: bool,
    pub exec: Execution,
}

/// Everything estimated from one observed subgraph. Serializes to a flat
/// JSON object; undefined values are `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub n: usize,
    pub n0: usize,
    pub lambda_hat: f64,
    pub mu1_hat: Option<f64>,
    pub mu2_hat: Option<f64>,
    pub transitivity: Option<f64>,
    #[serde(flatten)]
    pub counts: MotifCounts,
    #[serde(flatten)]
    pub moments: DegreeMomentsFields,
    /// Merge steps spent counting triangles (0 in fast-only mode).
    pub triangle_work: u64,
    pub flags: Vec<Flag>,
}

/// Degree moment fields as they appear in the flat report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeMomentsFields {
    pub a1: f64,
    pub a2: f64,
    pub d_max: usize,
}

impl From<&DegreeMoments> for DegreeMomentsFields {
    fn from(m: &DegreeMoments) -> Self {
        DegreeMomentsFields { a1: m.a1, a2: m.a2, d_max: m.d_max }
    }
}

fn check_sizes(n: usize, n0: usize) -> Result<()> {
    if n0 == 0 {
        return Err(invalid("observed graph has no nodes"));
    }
    if n < n0 {
        return Err(invalid(format!("ambient n = {n} is smaller than observed n0 = {n0}")));
    }
    Ok(())
}

/// `(n / n0^2) Σ deg(i)`.
pub fn lambda_hat(g_obs: &Graph, n: usize) -> Result<f64> {
    let n0 = g_obs.node_count();
    check_sizes(n, n0)?;
    let deg_sum: u64 = g_obs.degrees().map(|d| d as u64).sum();
    Ok(lambda_hat_from_degree_sum(n, n0, deg_sum))
}

fn lambda_hat_from_degree_sum(n: usize, n0: usize, deg_sum: u64) -> f64 {
    n as f64 / (n0 as f64 * n0 as f64) * deg_sum as f64
}

/// `N_S2 / (3 N_K3) - 1`, undefined without triangles.
pub fn mu1_hat(c: &MotifCounts) -> Option<f64> {
    match c.n_k3 {
        Some(k3) if k3 > 0 => Some(c.n_s2 as f64 / (3.0 * k3 as f64) - 1.0),
        _ => None,
    }
}

/// `((a2 - a1) / a1^2 - 1)^(-1)`, undefined when `a1 = 0` or the bracket is
/// not positive.
pub fn mu2_hat(_n0: usize, moments: &DegreeMoments) -> Option<f64> {
    let (a1, a2) = (moments.a1, moments.a2);
    if a1 <= 0.0 {
        return None;
    }
    let denom = (a2 - a1) / (a1 * a1) - 1.0;
    (denom > 0.0).then(|| 1.0 / denom)
}

/// Count form `(n0 N_S2 / (2 N_K2^2) - 1)^(-1)`; algebraically identical to
/// [`mu2_hat`].
pub fn mu2_hat_from_counts(n0: usize, c: &MotifCounts) -> Option<f64> {
    if c.n_k2 == 0 {
        return None;
    }
    let k2 = c.n_k2 as f64;
    let denom = n0 as f64 * c.n_s2 as f64 / (2.0 * k2 * k2) - 1.0;
    (denom > 0.0).then(|| 1.0 / denom)
}

/// Runs every estimator on `g_obs`, an induced subgraph of a graph with `n`
/// nodes.
pub fn estimate_all(g_obs: &Graph, n: usize, opts: &EstimateOptions) -> Result<EstimateReport> {
    let n0 = g_obs.node_count();
    check_sizes(n, n0)?;

    let moments = degree_moments(g_obs);
    let mut counts = count_pairs_and_stars(g_obs);
    let mut flags = Vec::new();
    let mut triangle_work = 0;

    if opts.fast_only {
        flags.push(Flag::FastOnly);
    } else {
        let t = count_triangles_with(g_obs, opts.exec);
        counts.n_k3 = Some(t.triangles);
        triangle_work = t.work;
    }

    let mu1 = mu1_hat(&counts);
    if counts.n_k3 == Some(0) {
        flags.push(Flag::NoTriangles);
    }
    let mu2 = mu2_hat(n0, &moments);
    if mu2.is_none() {
        flags.push(Flag::Mu2DenominatorNonpositive);
    }
    if cfg!(debug_assertions) {
        let alt = mu2_hat_from_counts(n0, &counts);
        match (mu2, alt) {
            (Some(a), Some(b)) => debug_assert!(
                (a - b).abs() <= 1e-9 * a.abs().max(1.0),
                "mu2 forms disagree: {a} vs {b}"
            ),
            // Both brackets are the same rational number; only a bracket
            // that rounds across zero can split them.
            (a, b) => debug_assert!(a.is_some() == b.is_some() || near_zero_bracket(n0, &counts)),
        }
    }
    let transitivity = transitivity_from_counts(&counts);
    if counts.n_s2 == 0 {
        flags.push(Flag::NoTwoStars);
    }
    flags.sort();

    Ok(EstimateReport {
        n,
        n0,
        lambda_hat: lambda_hat_from_degree_sum(n, n0, moments.degree_sum),
        mu1_hat: mu1,
        mu2_hat: mu2,
        transitivity,
        counts,
        moments: DegreeMomentsFields::from(&moments),
        triangle_work,
        flags,
    })
}

fn near_zero_bracket(n0: usize, c: &MotifCounts) -> bool {
    let k2 = c.n_k2 as f64;
    (n0 as f64 * c.n_s2 as f64 / (2.0 * k2 * k2) - 1.0).abs() < 1e-9
}
