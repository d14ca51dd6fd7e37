//! Parameter spaces of the binomial random intersection graph `G(n, m, p)`
//! and of its balanced sparse regime `(lambda, mu)`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Raw model parameters: `n` nodes, `m` attributes, each node-attribute pair
/// present independently with probability `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub m: usize,
    pub p: f64,
}

/// Balanced sparse regime: mean degree `lambda`, attribute intensity `mu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeParams {
    pub lambda: f64,
    pub mu: f64,
    pub n: usize,
}

/// Threshold on `m p^2` above which the sparse approximations are strained.
pub const SPARSE_WARN_MP2: f64 = 0.25;

impl ModelParams {
    pub fn new(n: usize, m: usize, p: f64) -> Result<Self> {
        let params = ModelParams { n, m, p };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(invalid("n must be at least 1"));
        }
        if self.m == 0 {
            return Err(invalid("m must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(invalid(format!("p = {} is outside [0, 1]", self.p)));
        }
        Ok(())
    }

    /// Exact probability that a fixed node pair is adjacent, `1 - (1 - p^2)^m`.
    pub fn edge_probability(&self) -> f64 {
        let q = self.p * self.p;
        if q >= 1.0 {
            return 1.0;
        }
        -f64::exp_m1(self.m as f64 * f64::ln_1p(-q))
    }

    /// `m p^2`, the expected number of attributes shared by a node pair.
    pub fn mp2(&self) -> f64 {
        self.m as f64 * self.p * self.p
    }

    /// Diagnostic tags for parameters outside the sparse regime.
    pub fn diagnostics(&self) -> Vec<&'static str> {
        let mut tags = Vec::new();
        if self.p >= 1.0 {
            tags.push("p-saturated");
        }
        if self.mp2() > SPARSE_WARN_MP2 {
            tags.push("mp2-not-small");
        }
        tags
    }
}

impl RegimeParams {
    pub fn new(lambda: f64, mu: f64, n: usize) -> Result<Self> {
        let r = RegimeParams { lambda, mu, n };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda.is_finite() && self.lambda > 0.0) {
            return Err(invalid(format!("lambda = {} must be positive", self.lambda)));
        }
        if !(self.mu.is_finite() && self.mu > 0.0) {
            return Err(invalid(format!("mu = {} must be positive", self.mu)));
        }
        if self.n == 0 {
            return Err(invalid("n must be at least 1"));
        }
        Ok(())
    }
}

/// Maps `(lambda, mu, n)` to `(n, m, p)` with `m = max(1, round_half_up(mu^2 n / lambda))`
/// and `p = min(1, lambda / (mu n))`.
pub fn regime_to_model(r: &RegimeParams) -> Result<ModelParams> {
    r.validate()?;
    let m_real = (r.mu * r.mu / r.lambda) * r.n as f64;
    let m = ((m_real + 0.5).floor() as usize).max(1);
    let p = (r.lambda / (r.mu * r.n as f64)).min(1.0);
    Ok(ModelParams { n: r.n, m, p })
}

/// Inverse map: `lambda = n m p^2`, `mu = m p`.
pub fn model_to_regime(params: &ModelParams) -> RegimeParams {
    let m = params.m as f64;
    RegimeParams {
        lambda: params.n as f64 * m * params.p * params.p,
        mu: m * params.p,
        n: params.n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn regime_to_model_examples() {
        let a = regime_to_model(&RegimeParams::new(9.0, 3.0, 1000).unwrap()).unwrap();
        assert_eq!((a.n, a.m), (1000, 1000));
        assert_relative_eq!(a.p, 0.003, max_relative = 1e-12);

        let b = regime_to_model(&RegimeParams::new(2.0, 0.5, 1000).unwrap()).unwrap();
        assert_eq!((b.n, b.m), (1000, 125));
        assert_relative_eq!(b.p, 0.004, max_relative = 1e-12);

        let c = regime_to_model(&RegimeParams::new(9.0, 3.0, 750).unwrap()).unwrap();
        assert_eq!((c.n, c.m), (750, 750));
        assert_relative_eq!(c.p, 0.004, max_relative = 1e-12);
    }

    #[test]
    fn model_to_regime_examples() {
        let r = model_to_regime(&ModelParams::new(1000, 1000, 0.003).unwrap());
        assert_relative_eq!(r.lambda, 9.0, max_relative = 1e-12);
        assert_relative_eq!(r.mu, 3.0, max_relative = 1e-12);
        assert_eq!(r.n, 1000);

        let r = model_to_regime(&ModelParams::new(1, 1, 1.0).unwrap());
        assert_eq!((r.lambda, r.mu, r.n), (1.0, 1.0, 1));

        let r = model_to_regime(&ModelParams::new(750, 750, 0.004).unwrap());
        assert_relative_eq!(r.lambda, 9.0, max_relative = 1e-12);
        assert_relative_eq!(r.mu, 3.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects_invalid() {
        assert!(RegimeParams::new(0.0, 1.0, 10).is_err());
        assert!(RegimeParams::new(1.0, -1.0, 10).is_err());
        assert!(RegimeParams::new(1.0, 1.0, 0).is_err());
        assert!(ModelParams::new(0, 1, 0.5).is_err());
        assert!(ModelParams::new(1, 0, 0.5).is_err());
        assert!(ModelParams::new(1, 1, 1.5).is_err());
        assert!(ModelParams::new(1, 1, f64::NAN).is_err());
    }

    #[test]
    fn clamps_and_flags() {
        let m = regime_to_model(&RegimeParams::new(50.0, 1.0, 10).unwrap()).unwrap();
        assert_eq!(m.p, 1.0);
        assert_eq!(m.m, 1);
        assert!(m.diagnostics().contains(&"p-saturated"));
        assert!(m.diagnostics().contains(&"mp2-not-small"));
        let ok = ModelParams::new(1000, 1000, 0.003).unwrap();
        assert!(ok.diagnostics().is_empty());
    }

    #[test]
    fn edge_probability_matches_direct_formula() {
        let p = ModelParams::new(10, 1000, 0.003).unwrap();
        let direct = 1.0 - (1.0 - 0.003f64 * 0.003).powi(1000);
        assert_relative_eq!(p.edge_probability(), direct, max_relative = 1e-10);
    }

    proptest! {
        #[test]
        fn round_trip_within_rounding(lambda in 0.1f64..20.0, mu in 0.1f64..5.0, n in 10usize..100_000) {
            let r = RegimeParams::new(lambda, mu, n).unwrap();
            let m_real = mu * mu / lambda * n as f64;
            prop_assume!(m_real >= 1.0 && lambda / (mu * n as f64) <= 1.0);
            let back = model_to_regime(&regime_to_model(&r).unwrap());
            let bound = 1.0 / m_real + 1e-12;
            prop_assert!(((back.mu - mu) / mu).abs() <= bound);
            prop_assert!(((back.lambda - lambda) / lambda).abs() <= bound);
        }

        #[test]
        fn monotone_in_n(lambda in 0.1f64..20.0, mu in 0.1f64..5.0, n in 1usize..50_000, dn in 1usize..1000) {
            let a = regime_to_model(&RegimeParams::new(lambda, mu, n).unwrap()).unwrap();
            let b = regime_to_model(&RegimeParams::new(lambda, mu, n + dn).unwrap()).unwrap();
            prop_assert!(b.m >= a.m);
            prop_assert!(b.p <= a.p);
        }
    }
}
