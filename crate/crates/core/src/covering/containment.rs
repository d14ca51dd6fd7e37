//! Monte Carlo estimate of the probability that a motif appears on a fixed
//! vertex set of `G(n, m, p)`.
//!
//! Only the traces `V_j ∩ V(R)` of the attribute sets matter. Each of the
//! `m` attributes independently lands in trace `S ⊆ V(R)` with probability
//! `p^|S| (1-p)^(v-|S|)`, so the vector of trace counts is multinomial. A
//! replicate draws the counts of the traces with at least two vertices by
//! sequential binomial thinning (the rest are lumped together, they cannot
//! cover an edge) and checks whether the occupied traces cover `E(R)`.
//! Each replicate costs `O(2^v)` draws instead of `O(m v)`.

use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use super::{covers, MotifId, VertexSet};
use crate::error::{invalid, Result};
use crate::par::{self, Execution};
use crate::rng::stream_rng;

/// Replicates per RNG substream. Fixed, so results do not depend on the
/// number of threads.
pub const REPS_PER_CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContainmentEstimate {
    pub hits: u64,
    pub reps: u64,
    pub frequency: f64,
    /// Binomial standard error `sqrt(f (1 - f) / reps)`.
    pub std_error: f64,
}

pub fn containment_frequency(
    motif: MotifId,
    m: u64,
    p: f64,
    reps: u64,
    seed: u64,
    exec: Execution,
) -> Result<ContainmentEstimate> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("p = {p} is outside [0, 1]")));
    }
    if reps == 0 {
        return Err(invalid("reps must be positive"));
    }
    let v = motif.vertex_count() as i32;
    let edges = motif.edge_masks();
    let traces: Vec<(VertexSet, f64)> = (0..(1u32 << v))
        .filter(|s| s.count_ones() >= 2)
        .map(|s| {
            let k = s.count_ones() as i32;
            (s, p.powi(k) * (1.0 - p).powi(v - k))
        })
        .collect();

    let chunks = reps.div_ceil(REPS_PER_CHUNK) as usize;
    let hits = par::sum_indexed(exec, chunks, |c| {
        let mut rng = stream_rng(seed, c as u64);
        let start = c as u64 * REPS_PER_CHUNK;
        let count = REPS_PER_CHUNK.min(reps - start);
        let mut occupied = Vec::with_capacity(traces.len());
        let mut hits = 0;
        for _ in 0..count {
            occupied.clear();
            let mut remaining = m;
            let mut mass = 1.0f64;
            for &(s, q) in &traces {
                if remaining == 0 {
                    break;
                }
                let cond = if mass > 0.0 { (q / mass).clamp(0.0, 1.0) } else { 0.0 };
                let drawn = Binomial::new(remaining, cond)
                    .expect("probability clamped to [0, 1]")
                    .sample(&mut rng);
                if drawn > 0 {
                    occupied.push(s);
                    remaining -= drawn;
                }
                mass -= q;
            }
            if covers(&occupied, &edges) {
                hits += 1;
            }
        }
        hits
    });
    let frequency = hits as f64 / reps as f64;
    Ok(ContainmentEstimate {
        hits,
        reps,
        frequency,
        std_error: (frequency * (1.0 - frequency) / reps as f64).sqrt(),
    })
}
