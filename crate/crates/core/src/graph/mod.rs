//! Graph representation, attribute assignments, generation and induced
//! subgraph sampling.
//!
//! Node and attribute ids are 0-based in memory. The text formats in
//! [`crate::io`] use 1-based ids.

mod generate;
mod sample;

pub use generate::{generate, generate_with, GenerateOptions, DEFAULT_EDGE_BUDGET};
pub use sample::{induced_subgraph, sample_nodes, NodeSample};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::par::{self, Execution};

pub type NodeId = u32;

/// Undirected simple graph in compressed sparse row form.
///
/// Neighbor lists are sorted and duplicate free, adjacency is symmetric and
/// there are no self-loops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
}

impl Graph {
    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            neighbors: Vec::new(),
        }
    }

    /// Builds a graph from an arbitrary list of node pairs. Pairs may come in
    /// either orientation and may repeat; self-loops and out-of-range ids are
    /// rejected.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return Err(invalid(format!("edge ({a}, {b}) out of range for n = {n}")));
            }
            if a == b {
                return Err(invalid(format!("self-loop at node {a}")));
            }
            pairs.push((a.min(b), a.max(b)));
        }
        Ok(Self::from_normalized_pairs(n, pairs, Execution::Sequential))
    }

    /// `pairs` must satisfy `a < b < n`; duplicates are removed here.
    pub(crate) fn from_normalized_pairs(
        n: usize,
        mut pairs: Vec<(NodeId, NodeId)>,
        exec: Execution,
    ) -> Self {
        par::sort_unstable(exec, &mut pairs);
        pairs.dedup();

        let mut degree = vec![0usize; n];
        for &(a, b) in &pairs {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0; offsets[n]];
        // Pairs are sorted by (a, b): every list receives its entries in
        // ascending order, so no per-list sort is needed.
        for &(a, b) in &pairs {
            neighbors[cursor[b as usize]] = a;
            cursor[b as usize] += 1;
        }
        for &(a, b) in &pairs {
            neighbors[cursor[a as usize]] = b;
            cursor[a as usize] += 1;
        }
        Graph { offsets, neighbors }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        if a as usize >= self.node_count() || b as usize >= self.node_count() {
            return false;
        }
        let (small, other) = if self.degree(a) <= self.degree(b) { (a, b) } else { (b, a) };
        self.neighbors(small).binary_search(&other).is_ok()
    }

    /// Edges `(i, j)` with `i < j` in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count() as NodeId).flat_map(move |i| {
            self.neighbors(i)
                .iter()
                .copied()
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    /// Checks the structural invariants. Used by tests and by the readers.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.node_count();
        for v in 0..n as NodeId {
            let adj = self.neighbors(v);
            if adj.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid(format!("neighbors of {v} not strictly increasing")));
            }
            for &u in adj {
                if u == v {
                    return Err(invalid(format!("self-loop at {v}")));
                }
                if u as usize >= n || self.neighbors(u).binary_search(&v).is_err() {
                    return Err(invalid(format!("asymmetric edge {v}-{u}")));
                }
            }
        }
        Ok(())
    }
}

/// Random attribute assignment: `members[k]` lists the nodes owning
/// attribute `k` in strictly increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributeAssignment {
    n: usize,
    members: Vec<Vec<NodeId>>,
}

impl AttributeAssignment {
    /// Validates and stores the attribute member lists. Lists are sorted and
    /// deduplicated; out-of-range ids are rejected.
    pub fn new(n: usize, members: Vec<Vec<NodeId>>) -> Result<Self> {
        let mut members = members;
        for (k, w) in members.iter_mut().enumerate() {
            if let Some(&bad) = w.iter().find(|&&i| i as usize >= n) {
                return Err(invalid(format!("attribute {k} lists node {bad} >= n = {n}")));
            }
            w.sort_unstable();
            w.dedup();
        }
        Ok(AttributeAssignment { n, members })
    }

    pub(crate) fn from_sorted(n: usize, members: Vec<Vec<NodeId>>) -> Self {
        debug_assert!(members
            .iter()
            .all(|w| w.windows(2).all(|x| x[0] < x[1]) && w.iter().all(|&i| (i as usize) < n)));
        AttributeAssignment { n, members }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn attribute_count(&self) -> usize {
        self.members.len()
    }

    /// Nodes owning attribute `k`.
    pub fn members(&self, k: usize) -> &[NodeId] {
        &self.members[k]
    }

    pub fn all_members(&self) -> &[Vec<NodeId>] {
        &self.members
    }

    /// Per-node attribute sets `V_i = { k : i in W_k }`, each sorted.
    pub fn node_attributes(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![Vec::new(); self.n];
        for (k, w) in self.members.iter().enumerate() {
            for &i in w {
                sets[i as usize].push(k);
            }
        }
        sets
    }

    /// Number of node pairs enumerated when building the graph,
    /// `sum_k |W_k| (|W_k| - 1) / 2`.
    pub fn pair_slots(&self) -> u64 {
        self.members.iter().map(|w| pair_slots(w.len())).sum()
    }
}

pub(crate) fn pair_slots(size: usize) -> u64 {
    let s = size as u64;
    s * s.saturating_sub(1) / 2
}

/// Intersection graph of an assignment: `i ~ j` iff they share an attribute.
pub fn build_graph(a: &AttributeAssignment) -> Graph {
    build_graph_with(a, Execution::default())
}

pub fn build_graph_with(a: &AttributeAssignment, exec: Execution) -> Graph {
    let mut pairs = Vec::with_capacity(a.pair_slots() as usize);
    for w in &a.members {
        for (x, &i) in w.iter().enumerate() {
            for &j in &w[x + 1..] {
                pairs.push((i, j));
            }
        }
    }
    Graph::from_normalized_pairs(a.n, pairs, exec)
}
