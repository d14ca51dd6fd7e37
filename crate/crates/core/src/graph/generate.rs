use rand::seq::index;
use rand_distr::{Binomial, Distribution};

use super::{build_graph_with, pair_slots, AttributeAssignment, Graph, NodeId};
use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::par::{self, Execution};
use crate::rng::{stream_rng, Rng};

/// Default cap on `sum_k |W_k| (|W_k| - 1) / 2`.
pub const DEFAULT_EDGE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy)]
pub struct GenerateOptions {
    pub edge_budget: u64,
    pub exec: Execution,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions {
            edge_budget: DEFAULT_EDGE_BUDGET,
            exec: Execution::default(),
        }
    }
}

/// Draws `G(n, m, p)` with the default options.
pub fn generate(params: &ModelParams, seed: u64) -> Result<(AttributeAssignment, Graph)> {
    generate_with(params, seed, &GenerateOptions::default())
}

/// Attribute-major generation. Attribute `k` uses ChaCha8 stream `k` of
/// `seed`: first `|W_k| ~ Binomial(n, p)`, then a uniform `|W_k|`-subset of
/// the nodes. The output depends only on `(params, seed)`.
pub fn generate_with(
    params: &ModelParams,
    seed: u64,
    opts: &GenerateOptions,
) -> Result<(AttributeAssignment, Graph)> {
    params.validate()?;
    let n = params.n;
    let binomial = Binomial::new(n as u64, params.p)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;

    let sizes = par::map_indexed(opts.exec, params.m, |k| {
        binomial.sample(&mut stream_rng(seed, k as u64)) as usize
    });
    let required: u64 = sizes.iter().map(|&s| pair_slots(s)).sum();
    if required > opts.edge_budget {
        return Err(Error::EdgeBudgetExceeded {
            required,
            budget: opts.edge_budget,
        });
    }

    let members = par::map_indexed(opts.exec, params.m, |k| {
        let mut rng = stream_rng(seed, k as u64);
        let size = binomial.sample(&mut rng) as usize;
        debug_assert_eq!(size, sizes[k]);
        draw_members(&mut rng, n, size)
    });
    let assignment = AttributeAssignment::from_sorted(n, members);
    let graph = build_graph_with(&assignment, opts.exec);
    Ok((assignment, graph))
}

fn draw_members(rng: &mut Rng, n: usize, size: usize) -> Vec<NodeId> {
    if size == n {
        return (0..n as NodeId).collect();
    }
    let mut w: Vec<NodeId> = index::sample(rng, n, size)
        .into_iter()
        .map(|i| i as NodeId)
        .collect();
    w.sort_unstable();
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_probability_gives_empty_graph() {
        let params = ModelParams::new(30, 20, 0.0).unwrap();
        for seed in 0..5 {
            let (a, g) = generate(&params, seed).unwrap();
            assert!(a.all_members().iter().all(|w| w.is_empty()));
            assert_eq!(g.edge_count(), 0);
            assert_eq!(g.node_count(), 30);
        }
    }

    #[test]
    fn certain_probability_gives_complete_graph() {
        let params = ModelParams::new(4, 2, 1.0).unwrap();
        let (a, g) = generate(&params, 99).unwrap();
        for k in 0..2 {
            assert_eq!(a.members(k), &[0, 1, 2, 3]);
        }
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn reproducible_and_strategy_independent() {
        let params = ModelParams::new(500, 400, 0.01).unwrap();
        let seq = GenerateOptions { exec: Execution::Sequential, ..Default::default() };
        let par = GenerateOptions { exec: Execution::Parallel, ..Default::default() };
        let a = generate_with(&params, 17, &seq).unwrap();
        let b = generate_with(&params, 17, &par).unwrap();
        let c = crate::par::with_threads(3, || generate_with(&params, 17, &par).unwrap());
        assert_eq!(a, b);
        assert_eq!(a, c);
        let d = generate_with(&params, 18, &seq).unwrap();
        assert_ne!(a.0, d.0);
    }

    #[test]
    fn budget_guard_trips_on_dense_input() {
        let params = ModelParams::new(2000, 10, 0.9).unwrap();
        let opts = GenerateOptions { edge_budget: 1000, ..Default::default() };
        match generate_with(&params, 1, &opts) {
            Err(Error::EdgeBudgetExceeded { required, budget }) => {
                assert!(required > budget);
                assert_eq!(budget, 1000);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn mean_degree_matches_edge_probability() {
        // 200 seeds at (n, m, p) = (1000, 1000, 0.003); the exact expected
        // degree is (n - 1)(1 - (1 - p^2)^m).
        let params = ModelParams::new(1000, 1000, 0.003).unwrap();
        let expected = 999.0 * params.edge_probability();
        assert!((expected - 8.95).abs() < 0.01);
        let means: Vec<f64> = (0..200)
            .map(|seed| {
                let (_, g) = generate(&params, seed).unwrap();
                2.0 * g.edge_count() as f64 / 1000.0
            })
            .collect();
        let mean = means.iter().sum::<f64>() / 200.0;
        let var = means.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 199.0;
        let se = (var / 200.0).sqrt();
        assert!((mean - expected).abs() <= 3.0 * se, "mean {mean} expected {expected} se {se}");
    }
}
