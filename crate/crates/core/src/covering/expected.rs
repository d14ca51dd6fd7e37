use serde::Serialize;

use crate::error::{invalid, Result};
use crate::model::ModelParams;

/// Expected edge, 2-star and triangle counts in an observed `n0`-node
/// induced subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpectedCounts {
    pub e_k2: f64,
    pub e_s2: f64,
    pub e_k3: f64,
}

/// `e_k2` uses the exact edge probability; `e_s2` and `e_k3` use the
/// leading-order covering densities `m p^3 + m^2 p^4` and `m p^3 + m^3 p^6`
/// times the number of embeddings.
pub fn expected_counts(params: &ModelParams, n0: usize) -> Result<ExpectedCounts> {
    params.validate()?;
    if n0 < 3 {
        return Err(invalid(format!("n0 = {n0} must be at least 3")));
    }
    let n0 = n0 as f64;
    let pairs = n0 * (n0 - 1.0) / 2.0;
    let triples = pairs * (n0 - 2.0) / 3.0;
    let (m, p) = (params.m as f64, params.p);
    let mp3 = m * p.powi(3);
    Ok(ExpectedCounts {
        e_k2: pairs * params.edge_probability(),
        e_s2: 3.0 * triples * (mp3 + m * m * p.powi(4)),
        e_k3: triples * (mp3 + m.powi(3) * p.powi(6)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_probability() {
        let e = expected_counts(&ModelParams::new(10, 10, 0.0).unwrap(), 5).unwrap();
        assert_eq!((e.e_k2, e.e_s2, e.e_k3), (0.0, 0.0, 0.0));
    }

    #[test]
    fn single_attribute_three_nodes() {
        let p: f64 = 1e-3;
        let e = expected_counts(&ModelParams::new(3, 1, p).unwrap(), 3).unwrap();
        assert!((e.e_k3 - (p.powi(3) + p.powi(6))).abs() < 1e-20);
        assert!((e.e_k3 / p.powi(3) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn rejects_small_samples() {
        assert!(expected_counts(&ModelParams::new(10, 10, 0.1).unwrap(), 2).is_err());
    }
}
