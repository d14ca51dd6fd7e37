//! Exhaustive subgraph census. Slow by construction; it exists to check the
//! fast counters.

use crate::covering::MotifId;
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, NodeId};

pub const DEFAULT_CENSUS_CAP: usize = 100;

/// Number of (not necessarily induced) subgraphs of `g` isomorphic to
/// `motif`: injective vertex maps preserving motif edges, divided by the
/// motif's automorphism count.
pub fn brute_force_census(g: &Graph, motif: MotifId) -> Result<u64> {
    brute_force_census_with_cap(g, motif, DEFAULT_CENSUS_CAP)
}

pub fn brute_force_census_with_cap(g: &Graph, motif: MotifId, cap: usize) -> Result<u64> {
    let n = g.node_count();
    if n > cap {
        return Err(Error::CensusCapExceeded { nodes: n, cap });
    }
    let mut adj = vec![false; n * n];
    for (i, j) in g.edges() {
        adj[i as usize * n + j as usize] = true;
        adj[j as usize * n + i as usize] = true;
    }
    let v = motif.vertex_count();
    let edges = motif.edges();
    let mut mapped = Vec::with_capacity(v);
    let mut used = vec![false; n];
    let labeled = extend(&adj, n, edges, v, &mut mapped, &mut used);
    let aut = automorphism_count(motif);
    debug_assert_eq!(labeled % aut, 0);
    Ok(labeled / aut)
}

fn extend(
    adj: &[bool],
    n: usize,
    edges: &[(u8, u8)],
    v: usize,
    mapped: &mut Vec<usize>,
    used: &mut [bool],
) -> u64 {
    let next = mapped.len();
    if next == v {
        return 1;
    }
    let mut total = 0;
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let fits = edges.iter().all(|&(a, b)| {
            let (a, b) = (a as usize, b as usize);
            if b == next && a < next {
                adj[mapped[a] * n + cand]
            } else if a == next && b < next {
                adj[mapped[b] * n + cand]
            } else {
                true
            }
        });
        if fits {
            used[cand] = true;
            mapped.push(cand);
            total += extend(adj, n, edges, v, mapped, used);
            mapped.pop();
            used[cand] = false;
        }
    }
    total
}

/// Number of vertex permutations of the motif that preserve its edge set.
pub fn automorphism_count(motif: MotifId) -> u64 {
    let v = motif.vertex_count();
    let masks = motif.edge_masks();
    let mut perm: Vec<usize> = (0..v).collect();
    let mut count = 0;
    permute(&mut perm, 0, &mut |p| {
        let image = |m: u32| (0..v).filter(|&i| m >> i & 1 == 1).map(|i| 1u32 << p[i]).sum::<u32>();
        if masks.iter().all(|&m| masks.contains(&image(m))) {
            count += 1;
        }
    });
    count
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Whether every motif edge maps to an edge of `g` under `vertex_map`
/// (`vertex_map[i]` is the image of motif vertex `i`).
pub fn contains_on_fixed_vertices(g: &Graph, motif: MotifId, vertex_map: &[NodeId]) -> Result<bool> {
    if vertex_map.len() != motif.vertex_count() {
        return Err(invalid(format!(
            "{} needs {} vertices, map has {}",
            motif,
            motif.vertex_count(),
            vertex_map.len()
        )));
    }
    for (i, &a) in vertex_map.iter().enumerate() {
        if a as usize >= g.node_count() {
            return Err(invalid(format!("vertex {a} out of range")));
        }
        if vertex_map[..i].contains(&a) {
            return Err(invalid(format!("vertex {a} repeated in map")));
        }
    }
    Ok(motif
        .edges()
        .iter()
        .all(|&(a, b)| g.has_edge(vertex_map[a as usize], vertex_map[b as usize])))
}
