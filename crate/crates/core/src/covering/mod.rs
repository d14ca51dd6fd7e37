//! Covering families, covering-density polynomials and expected motif counts.
//!
//! A family of vertex sets *covers* an edge set when every edge lies inside
//! some member. For a motif `R`, the minimal covering families of `E(R)`
//! determine the leading-order probability that `R` appears on a fixed
//! vertex set of `G(n, m, p)` when `m p^2` is small:
//! `P(G ⊇ R) ≈ Σ_C m^|C| p^||C||`.
//!
//! Vertex sets are bitmasks over the motif's vertices (bit `i` = vertex
//! `i + 1` in the 1-based display notation, so `0b011` is `12`).

mod catalog;
mod containment;
mod expected;
mod polynomial;
mod stirling;

pub use catalog::MotifId;
pub use containment::{containment_frequency, ContainmentEstimate, REPS_PER_CHUNK};
pub use expected::{expected_counts, ExpectedCounts};
pub use polynomial::{
    balanced_form, density_polynomial, rstar_polynomial, simplify_sparse, BalancedForm,
    DensityPolynomial, Term,
};
pub use stirling::{bell, stirling2};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{invalid, Result};

pub type VertexSet = u32;

/// `true` iff every edge is a subset of some member of `family`.
pub fn covers(family: &[VertexSet], edges: &[VertexSet]) -> bool {
    edges.iter().all(|&e| family.iter().any(|&s| s & e == e))
}

/// Vertices of a set in ascending order, 1-based.
pub fn set_vertices(s: VertexSet) -> Vec<u8> {
    (0..32).filter(|&i| s >> i & 1 == 1).map(|i| i as u8 + 1).collect()
}

/// A collection of distinct vertex sets, each of size at least two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoveringFamily {
    sets: Vec<VertexSet>,
}

impl CoveringFamily {
    pub fn new(mut sets: Vec<VertexSet>) -> Result<Self> {
        if let Some(&s) = sets.iter().find(|s| s.count_ones() < 2) {
            return Err(invalid(format!("member {:?} has fewer than two vertices", set_vertices(s))));
        }
        sets.sort_by_key(|&s| set_vertices(s));
        if sets.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("covering family members must be distinct"));
        }
        Ok(CoveringFamily { sets })
    }

    /// Parses the compact digit notation, e.g. `"12,234"` for `{12, 234}`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut sets = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let mut mask = 0;
            for ch in part.chars() {
                let d = ch
                    .to_digit(10)
                    .filter(|&d| (1..=9).contains(&d))
                    .ok_or_else(|| invalid(format!("bad vertex '{ch}' in '{part}'")))?;
                mask |= 1 << (d - 1);
            }
            sets.push(mask);
        }
        Self::new(sets)
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    /// `|C|`
    pub fn size(&self) -> u32 {
        self.sets.len() as u32
    }

    /// `||C||`
    pub fn weight(&self) -> u32 {
        self.sets.iter().map(|s| s.count_ones()).sum()
    }

    /// Members as 1-based vertex lists.
    pub fn vertex_lists(&self) -> Vec<Vec<u8>> {
        self.sets.iter().map(|&s| set_vertices(s)).collect()
    }

    fn sort_key(&self) -> (u32, Vec<Vec<u8>>) {
        (self.size(), self.vertex_lists())
    }
}

impl fmt::Display for CoveringFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vertex_lists()
            .iter()
            .map(|vs| vs.iter().map(|v| v.to_string()).collect())
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for CoveringFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.vertex_lists().serialize(serializer)
    }
}

/// Checks covering plus both minimality conditions: no member can be
/// removed, and no member can be replaced by a strict subset of itself.
pub fn is_minimal_cover(family: &CoveringFamily, motif: MotifId) -> bool {
    let edges = motif.edge_masks();
    let sets = family.sets();
    if !covers(sets, &edges) {
        return false;
    }
    let mut trial = sets.to_vec();
    for i in 0..sets.len() {
        let b = sets[i];
        trial.remove(i);
        let removable = covers(&trial, &edges);
        trial.insert(i, b);
        if removable {
            return false;
        }
        // Every strict subset of b, the empty set included.
        let mut sub = b;
        loop {
            sub = sub.wrapping_sub(1) & b;
            trial[i] = sub;
            if covers(&trial, &edges) {
                trial[i] = b;
                return false;
            }
            if sub == 0 {
                break;
            }
        }
        trial[i] = b;
    }
    true
}

/// All minimal covering families of `E(motif)`, ordered by size and then
/// lexicographically by member vertex lists.
pub fn enumerate_mcf(motif: MotifId) -> Vec<CoveringFamily> {
    let edges = motif.edge_masks();
    let v = motif.vertex_count();
    // A member of a minimal family is the union of edges it alone covers,
    // so only sets spanned by their own internal edges can appear.
    let candidates: Vec<VertexSet> = (1..(1u32 << v))
        .filter(|&s| s.count_ones() >= 2)
        .filter(|&s| {
            let spanned = edges
                .iter()
                .filter(|&&e| s & e == e)
                .fold(0, |acc, &e| acc | e);
            spanned == s
        })
        .collect();

    let mut found = BTreeSet::new();
    let mut current = Vec::new();
    search(&edges, &candidates, &mut current, &mut found);

    let mut families: Vec<CoveringFamily> = found
        .into_iter()
        .map(|sets| CoveringFamily::new(sets).expect("candidates have size >= 2"))
        .filter(|f| is_minimal_cover(f, motif))
        .collect();
    families.sort_by_key(|f| f.sort_key());
    families
}

/// Edge-driven search: extend the family with a candidate containing the
/// first uncovered edge. Every minimal family is reached because each
/// partial family is a subset of it that leaves some edge uncovered.
fn search(
    edges: &[VertexSet],
    candidates: &[VertexSet],
    current: &mut Vec<VertexSet>,
    found: &mut BTreeSet<Vec<VertexSet>>,
) {
    let Some(&uncovered) = edges.iter().find(|&&e| !current.iter().any(|&s| s & e == e)) else {
        let mut sets = current.clone();
        sets.sort_unstable();
        found.insert(sets);
        return;
    };
    for &s in candidates {
        if s & uncovered != uncovered || current.contains(&s) {
            continue;
        }
        current.push(s);
        if every_member_has_private_edge(edges, current) {
            search(edges, candidates, current, found);
        }
        current.pop();
    }
}

fn every_member_has_private_edge(edges: &[VertexSet], family: &[VertexSet]) -> bool {
    family.iter().enumerate().all(|(i, &s)| {
        edges.iter().any(|&e| {
            s & e == e
                && family
                    .iter()
                    .enumerate()
                    .all(|(j, &t)| j == i || t & e != e)
        })
    })
}
