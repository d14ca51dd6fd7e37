use rand::seq::index;
use serde::{Deserialize, Serialize};

use super::{Graph, NodeId};
use crate::error::{invalid, Result};
use crate::rng::stream_rng;

/// Sorted, duplicate-free set of observed node ids drawn from `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeSample {
    n: usize,
    nodes: Vec<NodeId>,
}

impl NodeSample {
    /// Explicit node list; sorted and deduplicated here.
    pub fn from_nodes(n: usize, mut nodes: Vec<NodeId>) -> Result<Self> {
        nodes.sort_unstable();
        nodes.dedup();
        if let Some(&bad) = nodes.iter().find(|&&v| v as usize >= n) {
            return Err(invalid(format!("node {bad} out of range for n = {n}")));
        }
        Ok(NodeSample { n, nodes })
    }

    pub fn all(n: usize) -> Self {
        NodeSample { n, nodes: (0..n as NodeId).collect() }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn n0(&self) -> usize {
        self.nodes.len()
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }
}

/// Uniform random `n0`-subset of `0..n`, deterministic given `seed`.
pub fn sample_nodes(n: usize, n0: usize, seed: u64) -> Result<NodeSample> {
    if n0 == 0 || n0 > n {
        return Err(invalid(format!("sample size n0 = {n0} must be in 1..={n}")));
    }
    if n0 == n {
        return Ok(NodeSample::all(n));
    }
    let mut rng = stream_rng(seed, 0);
    let mut nodes: Vec<NodeId> = index::sample(&mut rng, n, n0)
        .into_iter()
        .map(|i| i as NodeId)
        .collect();
    nodes.sort_unstable();
    Ok(NodeSample { n, nodes })
}

/// Subgraph induced by `sample`, relabeled `0..n0` in the order of the
/// original ids. Returns the graph and the map from new to original ids.
pub fn induced_subgraph(g: &Graph, sample: &NodeSample) -> Result<(Graph, Vec<NodeId>)> {
    let n = g.node_count();
    const UNSAMPLED: NodeId = NodeId::MAX;
    let mut position = vec![UNSAMPLED; n];
    for (new, &old) in sample.nodes().iter().enumerate() {
        if old as usize >= n {
            return Err(invalid(format!("sampled node {old} out of range for n = {n}")));
        }
        position[old as usize] = new as NodeId;
    }
    let mut pairs = Vec::new();
    for (new, &old) in sample.nodes().iter().enumerate() {
        for &u in g.neighbors(old) {
            let pu = position[u as usize];
            if pu != UNSAMPLED && pu > new as NodeId {
                pairs.push((new as NodeId, pu));
            }
        }
    }
    let sub = Graph::from_normalized_pairs(
        sample.n0(),
        pairs,
        crate::par::Execution::Sequential,
    );
    Ok((sub, sample.nodes().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn full_sample() {
        let s = sample_nodes(10, 10, 5).unwrap();
        assert_eq!(s.nodes(), &(0..10).collect::<Vec<_>>()[..]);
    }

    #[test]
    fn single_node_sample_is_deterministic() {
        let a = sample_nodes(10, 1, 42).unwrap();
        let b = sample_nodes(10, 1, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n0(), 1);
    }

    #[test]
    fn rejects_oversized_sample() {
        assert!(sample_nodes(10, 11, 0).is_err());
        assert!(sample_nodes(10, 0, 0).is_err());
        assert!(NodeSample::from_nodes(3, vec![0, 3]).is_err());
    }

    #[test]
    fn inclusion_frequencies_are_uniform() {
        // 10^4 seeds, n = 1000, n0 = 500: each node included w.p. 1/2.
        let reps = 10_000u64;
        let mut hits = vec![0u32; 1000];
        for seed in 0..reps {
            for &v in sample_nodes(1000, 500, seed).unwrap().nodes() {
                hits[v as usize] += 1;
            }
        }
        let se = (0.25 / reps as f64).sqrt();
        // Per-node 3 SE band; with 1000 nodes a handful of 3-SE excursions
        // are expected, so the check allows the binomial tail count.
        let outside = hits
            .iter()
            .filter(|&&h| (h as f64 / reps as f64 - 0.5).abs() > 3.0 * se)
            .count();
        assert!(outside <= 10, "{outside} nodes outside 3 SE");
        let worst = hits
            .iter()
            .map(|&h| (h as f64 / reps as f64 - 0.5).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 5.0 * se);
    }

    #[test]
    fn induced_identity() {
        let g = triangle();
        let (sub, map) = induced_subgraph(&g, &NodeSample::all(3)).unwrap();
        assert_eq!(sub, g);
        assert_eq!(map, vec![0, 1, 2]);
    }

    #[test]
    fn induced_edge_of_triangle() {
        let s = NodeSample::from_nodes(3, vec![0, 1]).unwrap();
        let (sub, _) = induced_subgraph(&triangle(), &s).unwrap();
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn induced_single_node() {
        let s = NodeSample::from_nodes(3, vec![2]).unwrap();
        let (sub, map) = induced_subgraph(&triangle(), &s).unwrap();
        assert_eq!(sub.node_count(), 1);
        assert_eq!(sub.edge_count(), 0);
        assert_eq!(map, vec![2]);
    }

    #[test]
    fn induced_relabels_in_order() {
        let g = Graph::from_edges(5, &[(1, 4), (3, 4), (0, 2)]).unwrap();
        let s = NodeSample::from_nodes(5, vec![4, 1, 3]).unwrap();
        let (sub, map) = induced_subgraph(&g, &s).unwrap();
        assert_eq!(map, vec![1, 3, 4]);
        assert_eq!(sub.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn induced_rejects_foreign_sample() {
        let s = NodeSample::from_nodes(10, vec![7]).unwrap();
        assert!(induced_subgraph(&triangle(), &s).is_err());
    }
}
