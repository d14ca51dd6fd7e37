//! Degree statistics, edge / 2-star / triangle counts and the transitivity
//! coefficient, plus an exhaustive census used as a test oracle.

mod census;
mod triangles;

pub use census::{
    automorphism_count, brute_force_census, brute_force_census_with_cap,
    contains_on_fixed_vertices, DEFAULT_CENSUS_CAP,
};
pub use triangles::{count_triangles, count_triangles_with, TriangleCount};

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Counts of edges, 2-stars and triangles. `n_k3` is `None` when triangles
/// were not counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotifCounts {
    pub n_k2: u64,
    pub n_s2: u64,
    pub n_k3: Option<u64>,
}

/// First and second empirical degree moments of an observed graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeMoments {
    pub n0: usize,
    pub a1: f64,
    pub a2: f64,
    pub d_max: usize,
    /// `sum_i deg(i)`
    pub degree_sum: u64,
    /// `sum_i deg(i)^2`
    pub degree_sq_sum: u64,
}

pub fn degree_moments(g: &Graph) -> DegreeMoments {
    let n0 = g.node_count();
    let (mut s1, mut s2, mut d_max) = (0u64, 0u64, 0usize);
    for d in g.degrees() {
        s1 += d as u64;
        s2 += (d as u64) * (d as u64);
        d_max = d_max.max(d);
    }
    let denom = n0.max(1) as f64;
    DegreeMoments {
        n0,
        a1: s1 as f64 / denom,
        a2: s2 as f64 / denom,
        d_max,
        degree_sum: s1,
        degree_sq_sum: s2,
    }
}

/// `N_K2 = sum deg / 2` and `N_S2 = sum C(deg, 2)`. Reads degrees only.
pub fn count_pairs_and_stars(g: &Graph) -> MotifCounts {
    let (mut twice_edges, mut stars) = (0u64, 0u64);
    for d in g.degrees() {
        let d = d as u64;
        twice_edges += d;
        stars += d * d.saturating_sub(1) / 2;
    }
    MotifCounts {
        n_k2: twice_edges / 2,
        n_s2: stars,
        n_k3: None,
    }
}

/// All three counts, triangles included.
pub fn count_motifs(g: &Graph) -> MotifCounts {
    let mut c = count_pairs_and_stars(g);
    c.n_k3 = Some(count_triangles(g).triangles);
    c
}

/// `3 N_K3 / N_S2`, or `None` when the graph has no 2-star (maximum degree
/// below two) or triangles were not counted.
pub fn transitivity_from_counts(c: &MotifCounts) -> Option<f64> {
    match c.n_k3 {
        Some(k3) if c.n_s2 > 0 => Some(3.0 * k3 as f64 / c.n_s2 as f64),
        _ => None,
    }
}

pub fn transitivity(g: &Graph) -> Option<f64> {
    transitivity_from_counts(&count_motifs(g))
}
