//! Sampling behaviour of the generator and estimators over many seeds.

use rig_core::covering::expected_counts;
use rig_core::graph::{generate_with, induced_subgraph, sample_nodes, GenerateOptions};
use rig_core::motifs::count_motifs;
use rig_core::{estimate_all, regime_to_model, EstimateOptions, Execution, ModelParams, RegimeParams};

const OPTS: EstimateOptions = EstimateOptions { fast_only: false, exec: Execution::Sequential };

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / k;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, (var / k).sqrt())
}

/// Probability that `m` independent attributes cover every edge of a motif
/// on three fixed nodes. `edges` are bitmasks over nodes 0..3; state is the
/// set of edges covered so far.
fn exact_three_node(edges: &[u32], m: usize, p: f64) -> f64 {
    let full = (1usize << edges.len()) - 1;
    let mut dist = vec![0.0; full + 1];
    dist[0] = 1.0;
    // per-attribute trace distribution over the 8 subsets of {0,1,2}
    let trace: Vec<(u32, f64)> = (0..8u32)
        .map(|s| (s, p.powi(s.count_ones() as i32) * (1.0 - p).powi(3 - s.count_ones() as i32)))
        .collect();
    for _ in 0..m {
        let mut next = vec![0.0; full + 1];
        for (state, &w) in dist.iter().enumerate() {
            for &(s, q) in &trace {
                let hit = edges.iter().enumerate().fold(0, |acc, (i, &e)| if s & e == e { acc | 1 << i } else { acc });
                next[state | hit] += w * q;
            }
        }
        dist = next;
    }
    dist[full]
}

fn triples(n: usize) -> f64 {
    let n = n as f64;
    n * (n - 1.0) * (n - 2.0) / 6.0
}

#[test]
fn counts_are_unbiased() {
    let params = ModelParams::new(300, 200, 0.02).unwrap();
    let (mut k2, mut s2, mut k3) = (vec![], vec![], vec![]);
    for seed in 0..200 {
        let (_, g) = generate_with(&params, seed, &GenerateOptions::default()).unwrap();
        let c = count_motifs(&g);
        k2.push(c.n_k2 as f64);
        s2.push(c.n_s2 as f64);
        k3.push(c.n_k3.unwrap() as f64);
    }
    let n = params.n as f64;
    let q = 1.0 - (1.0 - params.p * params.p).powi(params.m as i32);
    let star = exact_three_node(&[0b011, 0b101], params.m, params.p);
    let tri = exact_three_node(&[0b011, 0b101, 0b110], params.m, params.p);
    for (name, xs, want) in [
        ("edges", &k2, n * (n - 1.0) / 2.0 * q),
        ("2-stars", &s2, 3.0 * triples(params.n) * star),
        ("triangles", &k3, triples(params.n) * tri),
    ] {
        let (mean, se) = mean_se(xs);
        assert!((mean - want).abs() < 4.0 * se, "{name}: mean {mean} vs {want} (se {se})");
    }
}

#[test]
fn leading_order_counts_track_exact_ones_when_sparse() {
    // m p^2 = 0.025
    let params = ModelParams::new(500, 1000, 0.005).unwrap();
    let e = expected_counts(&params, 500).unwrap();
    let star = 3.0 * triples(500) * exact_three_node(&[0b011, 0b101], params.m, params.p);
    let tri = triples(500) * exact_three_node(&[0b011, 0b101, 0b110], params.m, params.p);
    assert!((e.e_s2 / star - 1.0).abs() < 0.05, "{} vs {star}", e.e_s2);
    assert!((e.e_k3 / tri - 1.0).abs() < 0.05, "{} vs {tri}", e.e_k3);
}

#[test]
fn lambda_hat_is_unbiased_under_subsampling() {
    let params = regime_to_model(&RegimeParams::new(9.0, 3.0, 2000).unwrap()).unwrap();
    let n0 = 500;
    let xs: Vec<f64> = (0..200)
        .map(|seed| {
            let (_, g) = generate_with(&params, seed, &GenerateOptions::default()).unwrap();
            let s = sample_nodes(params.n, n0, seed + 10_000).unwrap();
            let (sub, _) = induced_subgraph(&g, &s).unwrap();
            estimate_all(&sub, params.n, &OPTS).unwrap().lambda_hat
        })
        .collect();
    let q = params.edge_probability();
    let want = params.n as f64 * (n0 as f64 - 1.0) / n0 as f64 * q;
    let (mean, se) = mean_se(&xs);
    assert!((mean - want).abs() < 4.0 * se, "mean {mean} vs {want} (se {se})");
}

#[test]
fn mu_estimates_land_near_the_truth() {
    let params = regime_to_model(&RegimeParams::new(9.0, 3.0, 750).unwrap()).unwrap();
    let mut inside = 0;
    for seed in 0..200 {
        let (_, g) = generate_with(&params, seed, &GenerateOptions::default()).unwrap();
        let r = estimate_all(&g, params.n, &OPTS).unwrap();
        let ok = |x: Option<f64>| x.is_some_and(|v| (2.0..=4.0).contains(&v));
        inside += (ok(r.mu1_hat) && ok(r.mu2_hat)) as usize;
    }
    assert!(inside >= 180, "{inside}/200");
}

#[test]
fn mu_hat_tracks_small_mu() {
    let params = regime_to_model(&RegimeParams::new(2.0, 0.5, 2000).unwrap()).unwrap();
    let xs: Vec<f64> = (0..100)
        .filter_map(|seed| {
            let (_, g) = generate_with(&params, seed, &GenerateOptions::default()).unwrap();
            estimate_all(&g, params.n, &OPTS).unwrap().mu2_hat
        })
        .collect();
    assert!(xs.len() >= 95);
    let (mean, _) = mean_se(&xs);
    assert!((mean / 0.5 - 1.0).abs() < 0.2, "mean mu2_hat {mean}");
}

#[test]
fn mu1_error_shrinks_with_n() {
    let rmse: Vec<f64> = [250usize, 1000, 4000]
        .iter()
        .map(|&n| {
            let params = regime_to_model(&RegimeParams::new(9.0, 3.0, n).unwrap()).unwrap();
            let sq: Vec<f64> = (0..60)
                .map(|seed| {
                    let (_, g) = generate_with(&params, seed, &GenerateOptions::default()).unwrap();
                    let r = estimate_all(&g, n, &OPTS).unwrap();
                    (r.mu1_hat.unwrap() - 3.0).powi(2)
                })
                .collect();
            (sq.iter().sum::<f64>() / sq.len() as f64).sqrt()
        })
        .collect();
    assert!(rmse[0] > rmse[1] && rmse[1] > rmse[2], "{rmse:?}");
}
