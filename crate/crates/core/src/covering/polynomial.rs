use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{enumerate_mcf, stirling2, MotifId};
use crate::error::{invalid, Result};

/// One term `coeff · m^m_pow · p^p_pow`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Term {
    pub m_pow: u32,
    pub p_pow: u32,
    pub coeff: u64,
}

/// `Σ coeff · m^a · p^b` with positive integer coefficients, terms sorted by
/// `(a, b)` and no repeated exponent pair.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DensityPolynomial {
    terms: Vec<Term>,
}

impl DensityPolynomial {
    /// Collects `(coeff, a, b)` triplets, merging equal exponent pairs and
    /// dropping zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (u64, u32, u32)>) -> Self {
        let mut acc: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for (c, a, b) in terms {
            *acc.entry((a, b)).or_default() += c;
        }
        DensityPolynomial {
            terms: acc
                .into_iter()
                .filter(|&(_, c)| c > 0)
                .map(|((m_pow, p_pow), coeff)| Term { m_pow, p_pow, coeff })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// `(coeff, a, b)` triplets in canonical order.
    pub fn triplets(&self) -> Vec<(u64, u32, u32)> {
        self.terms.iter().map(|t| (t.coeff, t.m_pow, t.p_pow)).collect()
    }

    pub fn eval(&self, m: f64, p: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff as f64 * m.powi(t.m_pow as i32) * p.powi(t.p_pow as i32))
            .sum()
    }
}

impl fmt::Display for DensityPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut s = String::new();
                if t.coeff != 1 {
                    s.push_str(&format!("{} ", t.coeff));
                }
                s.push_str(&power("m", t.m_pow));
                s.push(' ');
                s.push_str(&power("p", t.p_pow));
                s.trim().to_string()
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn power(base: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{e}"),
    }
}

impl Serialize for DensityPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.triplets().serialize(serializer)
    }
}

/// Leading-order probability that the motif appears on a fixed vertex set:
/// `Σ_{C ∈ MCF} m^|C| p^||C||`, with equal exponent pairs merged.
pub fn density_polynomial(motif: MotifId) -> DensityPolynomial {
    DensityPolynomial::from_terms(
        enumerate_mcf(motif)
            .iter()
            .map(|c| (1, c.size(), c.weight())),
    )
}

/// `Σ_k S(r, k) m^k p^(k + r)` for `1 <= r <= 10`.
pub fn rstar_polynomial(r: u32) -> Result<DensityPolynomial> {
    if !(1..=10).contains(&r) {
        return Err(invalid(format!("r = {r} outside 1..=10")));
    }
    let terms = (1..=r)
        .map(|k| Ok((stirling2(r, k)?, k, k + r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DensityPolynomial::from_terms(terms))
}

/// `m^c p^d` dominates `m^a p^b` when `c <= a` and `b - d >= 2 (a - c)`:
/// the ratio is `(m p^2)^(a-c) · p^((b-d) - 2(a-c))`, which vanishes when
/// `p << m^(-1/2)`.
fn dominates(big: &Term, small: &Term) -> bool {
    (big.m_pow, big.p_pow) != (small.m_pow, small.p_pow)
        && big.m_pow <= small.m_pow
        && small.p_pow as i64 - big.p_pow as i64 >= 2 * (small.m_pow as i64 - big.m_pow as i64)
}

/// Drops terms negligible in the sparse regime `p << m^(-1/2) << 1`,
/// repeating until no retained term dominates another.
pub fn simplify_sparse(poly: &DensityPolynomial) -> DensityPolynomial {
    let mut kept = poly.terms.clone();
    loop {
        let before = kept.len();
        let snapshot = kept.clone();
        kept.retain(|t| !snapshot.iter().any(|big| dominates(big, t)));
        if kept.len() == before {
            break;
        }
    }
    DensityPolynomial { terms: kept }
}

/// Leading behavior under `p = μ/m`: `(Σ_i coeffs[i] μ^i) · μ^mu_pow · m^m_pow`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalancedForm {
    /// Coefficients of the μ-polynomial, constant term first (nonzero).
    pub coeffs: Vec<u64>,
    pub mu_pow: u32,
    pub m_pow: i32,
}

impl BalancedForm {
    pub fn eval(&self, mu: f64, m: f64) -> f64 {
        let poly: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c as f64 * mu.powi(i as i32))
            .sum();
        poly * mu.powi(self.mu_pow as i32) * m.powi(self.m_pow)
    }
}

impl fmt::Display for BalancedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() > 1 {
            let parts: Vec<String> = self
                .coeffs
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c > 0)
                .map(|(i, &c)| match (i, c) {
                    (0, c) => c.to_string(),
                    (i, 1) => power("μ", i as u32),
                    (i, c) => format!("{c}{}", power("μ", i as u32)),
                })
                .collect();
            write!(f, "({})", parts.join("+"))?;
        } else if self.coeffs.first().copied().unwrap_or(0) != 1 {
            write!(f, "{}", self.coeffs.first().copied().unwrap_or(0))?;
        }
        write!(f, "{} m^{}", power("μ", self.mu_pow), self.m_pow)
    }
}

/// Substitutes `p = μ/m` and keeps the terms with the largest power of `m`.
pub fn balanced_form(poly: &DensityPolynomial) -> BalancedForm {
    let Some(top) = poly
        .terms
        .iter()
        .map(|t| t.m_pow as i32 - t.p_pow as i32)
        .max()
    else {
        return BalancedForm { coeffs: vec![0], mu_pow: 0, m_pow: 0 };
    };
    let leading: Vec<&Term> = poly
        .terms
        .iter()
        .filter(|t| t.m_pow as i32 - t.p_pow as i32 == top)
        .collect();
    let mu_pow = leading.iter().map(|t| t.p_pow).min().unwrap();
    let span = leading.iter().map(|t| t.p_pow).max().unwrap() - mu_pow;
    let mut coeffs = vec![0; span as usize + 1];
    for t in leading {
        coeffs[(t.p_pow - mu_pow) as usize] += t.coeff;
    }
    BalancedForm { coeffs, mu_pow, m_pow: top }
}
