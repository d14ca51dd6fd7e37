use serde::Serialize;
use statrs::statistics::{Data, OrderStatistics, Statistics};

use crate::error::{Error, Result};

/// Mean, unbiased standard deviation and deciles of the defined values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub count: usize,
    /// Undefined entries dropped before summarizing.
    pub removed: usize,
    pub mean: f64,
    /// `None` for a single value.
    pub sd: Option<f64>,
    /// Quantiles at 0.0, 0.1, ..., 1.0 (statrs' median-unbiased rule).
    pub deciles: Vec<f64>,
}

pub fn summarize(values: &[Option<f64>]) -> Result<Summary> {
    let defined: Vec<f64> = values.iter().flatten().copied().collect();
    let removed = values.len() - defined.len();
    if defined.is_empty() {
        return Err(Error::EmptySummary { removed });
    }
    let mean = defined.iter().mean();
    let sd = (defined.len() > 1).then(|| defined.iter().std_dev());
    let mut data = Data::new(defined.clone());
    let deciles = (0..=10).map(|k| data.quantile(k as f64 / 10.0)).collect();
    Ok(Summary { count: defined.len(), removed, mean, sd, deciles })
}
