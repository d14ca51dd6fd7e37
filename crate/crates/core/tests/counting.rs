//! Fast counts and estimator identities against exhaustive enumeration.

use proptest::prelude::*;
use rand::Rng;
use rig_core::estimators::{lambda_hat, mu2_hat, mu2_hat_from_counts};
use rig_core::graph::{generate_with, induced_subgraph, GenerateOptions};
use rig_core::motifs::{
    automorphism_count, brute_force_census, contains_on_fixed_vertices, count_motifs, count_triangles,
    degree_moments, transitivity,
};
use rig_core::rng::stream_rng;
use rig_core::{estimate_all, EstimateOptions, Execution, Graph, ModelParams, MotifId, NodeSample};

fn graph() -> impl Strategy<Value = Graph> {
    let uniform = (1usize..40, 0.0f64..0.6, any::<u64>()).prop_map(|(n, q, seed)| {
        let mut rng = stream_rng(seed, 0);
        let mut edges = Vec::new();
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                if rng.random_bool(q) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    });
    let rig = (1usize..40, 1usize..60, 0.0f64..0.3, any::<u64>()).prop_map(|(n, m, p, seed)| {
        let params = ModelParams::new(n, m, p).unwrap();
        generate_with(&params, seed, &GenerateOptions::default()).unwrap().1
    });
    prop_oneof![uniform, rig]
}

fn triples_brute(g: &Graph) -> (u64, u64) {
    let n = g.node_count() as u32;
    let (mut stars, mut triangles) = (0, 0);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let e = [g.has_edge(a, b), g.has_edge(a, c), g.has_edge(b, c)];
                let k = e.iter().filter(|&&x| x).count() as u64;
                if k == 3 {
                    triangles += 1;
                    stars += 3;
                } else if k == 2 {
                    stars += 1;
                }
            }
        }
    }
    (stars, triangles)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn fast_counts_match_enumeration(g in graph()) {
        let c = count_motifs(&g);
        let (stars, triangles) = triples_brute(&g);
        prop_assert_eq!(c.n_k2, g.edges().count() as u64);
        prop_assert_eq!(c.n_s2, stars);
        prop_assert_eq!(c.n_k3, Some(triangles));
        prop_assert_eq!(brute_force_census(&g, MotifId::TwoStar).unwrap(), stars);
        prop_assert_eq!(brute_force_census(&g, MotifId::ThreeCycle).unwrap(), triangles);
        prop_assert!(c.n_s2 >= 3 * triangles);
        if let Some(t) = transitivity(&g) {
            prop_assert!((0.0..=1.0).contains(&t));
        }
    }

    #[test]
    fn triangle_work_is_bounded(g in graph()) {
        let t = count_triangles(&g);
        let m = degree_moments(&g);
        prop_assert!(t.work <= m.degree_sum * m.d_max as u64);
    }

    /// (a2 - a1) / a1^2 = n0 N_S2 / (2 N_K2^2), checked in integers.
    #[test]
    fn mu2_identity(g in graph()) {
        let n0 = g.node_count() as u128;
        let k2: u128 = g.edges().count() as u128;
        prop_assume!(k2 > 0);
        let sum_sq: u128 = g.degrees().map(|d| (d * d) as u128).sum();
        let s2: u128 = g.degrees().map(|d| (d * d.saturating_sub(1) / 2) as u128).sum();
        // (a2 - a1)/a1^2 = n0 (Σd^2 - 2 K2) / (4 K2^2)
        prop_assert_eq!(n0 * (sum_sq - 2 * k2) * 2 * k2 * k2, n0 * s2 * 4 * k2 * k2);

        let m = degree_moments(&g);
        let c = count_motifs(&g);
        match (mu2_hat(g.node_count(), &m), mu2_hat_from_counts(g.node_count(), &c)) {
            (Some(a), Some(b)) => prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1.0)),
            (None, None) => {}
            (a, b) => {
                // Only a bracket that is zero up to rounding can split the two forms.
                let bracket = (n0 * s2) as f64 / (2 * k2 * k2) as f64 - 1.0;
                prop_assert!(bracket.abs() < 1e-12, "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn parallel_and_sequential_reports_agree(g in graph()) {
        let n = g.node_count() + 3;
        let seq = estimate_all(&g, n, &EstimateOptions { fast_only: false, exec: Execution::Sequential }).unwrap();
        let par = estimate_all(&g, n, &EstimateOptions { fast_only: false, exec: Execution::Parallel }).unwrap();
        prop_assert_eq!(seq, par);
    }
}

#[test]
fn fixed_vertex_maps_add_up_to_the_census() {
    // Σ over injective maps of [R ⊆ G on the map] = census × |Aut(R)|.
    let params = ModelParams::new(7, 6, 0.35).unwrap();
    for seed in 0..20 {
        let (_, g) = generate_with(&params, seed, &GenerateOptions::default()).unwrap();
        for motif in MotifId::ALL {
            let v = motif.vertex_count();
            let mut hits = 0u64;
            let mut map = Vec::with_capacity(v);
            fn rec(g: &Graph, motif: MotifId, v: usize, map: &mut Vec<u32>, hits: &mut u64) {
                if map.len() == v {
                    *hits += contains_on_fixed_vertices(g, motif, map).unwrap() as u64;
                    return;
                }
                for x in 0..g.node_count() as u32 {
                    if !map.contains(&x) {
                        map.push(x);
                        rec(g, motif, v, map, hits);
                        map.pop();
                    }
                }
            }
            rec(&g, motif, v, &mut map, &mut hits);
            let census = brute_force_census(&g, motif).unwrap();
            assert_eq!(hits, census * automorphism_count(motif), "{motif} seed {seed}");
        }
    }
}

#[test]
fn lambda_hat_on_complete_graph_subsets() {
    let n = 12;
    let edges: Vec<(u32, u32)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let k = Graph::from_edges(n as usize, &edges).unwrap();
    for subset in [vec![0u32, 1, 2, 3], vec![3, 5, 7, 11], vec![8, 9, 10, 11]] {
        let (sub, _) = induced_subgraph(&k, &NodeSample::from_nodes(n as usize, subset).unwrap()).unwrap();
        let expected = 12.0 / 16.0 * 4.0 * 3.0;
        assert!((lambda_hat(&sub, 12).unwrap() - expected).abs() < 1e-12);
    }
}
