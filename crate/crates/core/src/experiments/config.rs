//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # comment
//! kind = sweep              # sweep | histogram | density-check
//! lambda = 9
//! mu = 3
//! n_grid = 50:1000:20       # start:stop:step (inclusive), or a comma list
//! n0_rule = equal-n         # equal-n | fraction:<f> | fixed:<k>
//! replicates = 1
//! root_seed = 2024
//! fast_only = false
//! edge_budget = 100000000
//! motif = 2-star,triangle   # density-check only
//! mc_reps = 1000000         # density-check only
//! m = 10000                 # density-check: explicit (m, p) instead of the regime
//! p = 0.003
//! ```
//!
//! Keys may appear in any order, at most once. Whitespace around keys and
//! values is ignored; `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::covering::MotifId;
use crate::error::{invalid, Error, Result};
use crate::graph::DEFAULT_EDGE_BUDGET;
use crate::model::{regime_to_model, ModelParams, RegimeParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Sweep,
    Histogram,
    DensityCheck,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::Sweep => "sweep",
            ExperimentKind::Histogram => "histogram",
            ExperimentKind::DensityCheck => "density-check",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sweep" => Ok(ExperimentKind::Sweep),
            "histogram" => Ok(ExperimentKind::Histogram),
            "density-check" => Ok(ExperimentKind::DensityCheck),
            _ => Err(format!("unknown kind `{s}` (expected sweep, histogram or density-check)")),
        }
    }
}

/// How many nodes are observed out of `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum N0Rule {
    EqualN,
    /// `round(f n)`, clamped to `[1, n]`.
    Fraction(f64),
    Fixed(usize),
}

impl N0Rule {
    pub fn resolve(self, n: usize) -> Result<usize> {
        match self {
            N0Rule::EqualN => Ok(n),
            N0Rule::Fraction(f) => Ok(((f * n as f64).round() as usize).clamp(1, n)),
            N0Rule::Fixed(k) if k <= n => Ok(k),
            N0Rule::Fixed(k) => Err(invalid(format!("n0 = {k} exceeds n = {n}"))),
        }
    }
}

impl fmt::Display for N0Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            N0Rule::EqualN => f.write_str("equal-n"),
            N0Rule::Fraction(x) => write!(f, "fraction:{x}"),
            N0Rule::Fixed(k) => write!(f, "fixed:{k}"),
        }
    }
}

impl FromStr for N0Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "equal-n" {
            return Ok(N0Rule::EqualN);
        }
        if let Some(x) = s.strip_prefix("fraction:") {
            let f: f64 = x.trim().parse().map_err(|_| format!("bad fraction `{x}`"))?;
            if !(f > 0.0 && f <= 1.0) {
                return Err(format!("fraction {f} must lie in (0, 1]"));
            }
            return Ok(N0Rule::Fraction(f));
        }
        if let Some(x) = s.strip_prefix("fixed:") {
            let k: usize = x.trim().parse().map_err(|_| format!("bad node count `{x}`"))?;
            if k == 0 {
                return Err("fixed n0 must be positive".into());
            }
            return Ok(N0Rule::Fixed(k));
        }
        Err(format!("unknown n0_rule `{s}` (expected equal-n, fraction:<f> or fixed:<k>)"))
    }
}

impl Serialize for N0Rule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub lambda: Option<f64>,
    pub mu: Option<f64>,
    pub n_grid: Vec<usize>,
    pub n0_rule: N0Rule,
    pub replicates: usize,
    pub root_seed: u64,
    pub fast_only: bool,
    pub edge_budget: u64,
    pub motifs: Vec<MotifId>,
    pub mc_reps: Option<u64>,
    pub m: Option<u64>,
    pub p: Option<f64>,
}

impl ExperimentConfig {
    /// A config of the given kind with every optional field at its default.
    pub fn new(kind: ExperimentKind) -> Self {
        ExperimentConfig {
            kind,
            lambda: None,
            mu: None,
            n_grid: Vec::new(),
            n0_rule: N0Rule::EqualN,
            replicates: 1,
            root_seed: 0,
            fast_only: false,
            edge_budget: DEFAULT_EDGE_BUDGET,
            motifs: Vec::new(),
            mc_reps: None,
            m: None,
            p: None,
        }
    }

    /// Sweep or histogram over `n_grid` in the balanced regime `(lambda, mu)`.
    pub fn estimation(
        kind: ExperimentKind,
        lambda: f64,
        mu: f64,
        n_grid: Vec<usize>,
        replicates: usize,
        root_seed: u64,
    ) -> Self {
        ExperimentConfig {
            lambda: Some(lambda),
            mu: Some(mu),
            n_grid,
            replicates,
            root_seed,
            ..Self::new(kind)
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| parse_err(line, format!("expected `key = value`, found `{content}`")))?;
            let key = key.trim().to_string();
            if !KEYS.contains(&key.as_str()) {
                return Err(parse_err(line, format!("unknown key `{key}`")));
            }
            if let Some((first, _)) = entries.get(&key) {
                return Err(parse_err(line, format!("duplicate key `{key}` (first set on line {first})")));
            }
            entries.insert(key, (line, value.trim().to_string()));
        }

        let last_line = text.lines().count().max(1);
        let field = |key: &str| entries.get(key).map(|(l, v)| (*l, v.as_str()));
        fn value<T: FromStr>(entry: Option<(usize, &str)>, key: &str) -> Result<Option<T>>
        where
            T::Err: fmt::Display,
        {
            entry
                .map(|(line, v)| {
                    v.parse::<T>().map_err(|e| parse_err(line, format!("bad value for `{key}`: {e}")))
                })
                .transpose()
        }

        let kind: ExperimentKind = value(field("kind"), "kind")?
            .ok_or_else(|| parse_err(last_line, "missing required key `kind`"))?;
        let mut cfg = ExperimentConfig::new(kind);
        cfg.lambda = value(field("lambda"), "lambda")?;
        cfg.mu = value(field("mu"), "mu")?;
        if let Some((line, v)) = field("n_grid") {
            cfg.n_grid = parse_grid(v).map_err(|e| parse_err(line, e))?;
        }
        if let Some(rule) = value(field("n0_rule"), "n0_rule")? {
            cfg.n0_rule = rule;
        }
        if let Some(r) = value(field("replicates"), "replicates")? {
            cfg.replicates = r;
        }
        if let Some(s) = value(field("root_seed"), "root_seed")? {
            cfg.root_seed = s;
        }
        if let Some(b) = value(field("fast_only"), "fast_only")? {
            cfg.fast_only = b;
        }
        if let Some(b) = value(field("edge_budget"), "edge_budget")? {
            cfg.edge_budget = b;
        }
        if let Some((line, v)) = field("motif") {
            cfg.motifs = v
                .split(',')
                .map(|s| s.trim().parse::<MotifId>())
                .collect::<Result<_, _>>()
                .map_err(|e| parse_err(line, e.to_string()))?;
        }
        cfg.mc_reps = value(field("mc_reps"), "mc_reps")?;
        cfg.m = value(field("m"), "m")?;
        cfg.p = value(field("p"), "p")?;

        cfg.validate().map_err(|(key, message)| {
            let line = entries.get(key).map_or(last_line, |(l, _)| *l);
            parse_err(line, message)
        })?;
        Ok(cfg)
    }

    /// Checks cross-field constraints; on failure names the offending key.
    fn validate(&self) -> Result<(), (&'static str, String)> {
        if self.replicates == 0 {
            return Err(("replicates", "replicates must be at least 1".into()));
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(("n_grid", "n_grid must be strictly ascending".into()));
        }
        if self.n_grid.contains(&0) {
            return Err(("n_grid", "n_grid entries must be positive".into()));
        }
        let regime = |cfg: &Self| -> Result<(), (&'static str, String)> {
            for (key, v) in [("lambda", cfg.lambda), ("mu", cfg.mu)] {
                match v {
                    None => return Err((key, format!("missing required key `{key}`"))),
                    Some(x) if !(x.is_finite() && x > 0.0) => {
                        return Err((key, format!("{key} must be positive, got {x}")))
                    }
                    _ => {}
                }
            }
            if cfg.n_grid.is_empty() {
                return Err(("n_grid", "missing required key `n_grid`".into()));
            }
            Ok(())
        };
        match self.kind {
            ExperimentKind::Sweep => regime(self)?,
            ExperimentKind::Histogram => {
                regime(self)?;
                if self.n_grid.len() != 1 {
                    return Err(("n_grid", "histogram needs a single n".into()));
                }
            }
            ExperimentKind::DensityCheck => {
                if self.motifs.is_empty() {
                    return Err(("motif", "missing required key `motif`".into()));
                }
                match self.mc_reps {
                    None => return Err(("mc_reps", "missing required key `mc_reps`".into())),
                    Some(0) => return Err(("mc_reps", "mc_reps must be positive".into())),
                    _ => {}
                }
                match (self.m, self.p) {
                    (Some(m), Some(p)) => {
                        ModelParams::new(1, m as usize, p).map_err(|e| ("p", e.to_string()))?;
                    }
                    (None, None) => {
                        regime(self)?;
                        if self.n_grid.len() != 1 {
                            return Err(("n_grid", "density-check needs a single n".into()));
                        }
                    }
                    (Some(_), None) => return Err(("m", "`m` given without `p`".into())),
                    (None, Some(_)) => return Err(("p", "`p` given without `m`".into())),
                }
            }
        }
        Ok(())
    }

    /// Model parameters for the regime at `n`.
    pub fn model_at(&self, n: usize) -> Result<ModelParams> {
        let (lambda, mu) = self.lambda.zip(self.mu).ok_or_else(|| invalid("lambda and mu are required"))?;
        regime_to_model(&RegimeParams::new(lambda, mu, n)?)
    }

    /// `(m, p)` for a density check.
    pub fn density_params(&self) -> Result<(u64, f64)> {
        if let (Some(m), Some(p)) = (self.m, self.p) {
            return Ok((m, p));
        }
        let n = *self.n_grid.first().ok_or_else(|| invalid("n_grid is empty"))?;
        let params = self.model_at(n)?;
        Ok((params.m as u64, params.p))
    }

    /// Canonical text form; `parse(to_text())` gives back the same config.
    pub fn to_text(&self) -> String {
        let mut out = format!("kind = {}\n", self.kind.as_str());
        let mut put = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        if let Some(x) = self.lambda {
            put("lambda", x.to_string());
        }
        if let Some(x) = self.mu {
            put("mu", x.to_string());
        }
        if !self.n_grid.is_empty() {
            put("n_grid", join(&self.n_grid));
        }
        put("n0_rule", self.n0_rule.to_string());
        put("replicates", self.replicates.to_string());
        put("root_seed", self.root_seed.to_string());
        put("fast_only", self.fast_only.to_string());
        put("edge_budget", self.edge_budget.to_string());
        if !self.motifs.is_empty() {
            put("motif", join(&self.motifs));
        }
        if let Some(x) = self.mc_reps {
            put("mc_reps", x.to_string());
        }
        if let Some(x) = self.m {
            put("m", x.to_string());
        }
        if let Some(x) = self.p {
            put("p", x.to_string());
        }
        out
    }
}

const KEYS: &[&str] = &[
    "kind",
    "lambda",
    "mu",
    "n_grid",
    "n0_rule",
    "replicates",
    "root_seed",
    "fast_only",
    "edge_budget",
    "motif",
    "mc_reps",
    "m",
    "p",
];

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// `a:b:step` (inclusive of `b` when reached) or `a,b,c`.
pub fn parse_grid(s: &str) -> Result<Vec<usize>, String> {
    let num = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad grid value `{}`", x.trim()));
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, step] = parts[..] else {
            return Err(format!("range `{s}` must be start:stop:step"));
        };
        let (a, b, step) = (num(a)?, num(b)?, num(step)?);
        if step == 0 || a > b {
            return Err(format!("empty or ill-formed range `{s}`"));
        }
        return Ok((a..=b).step_by(step).collect());
    }
    s.split(',').map(num).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn grid_forms() {
        assert_eq!(parse_grid("50:1000:20").unwrap().len(), 48);
        assert_eq!(parse_grid("50:110:20").unwrap(), vec![50, 70, 90, 110]);
        assert_eq!(parse_grid("200, 800,3200").unwrap(), vec![200, 800, 3200]);
        assert_eq!(parse_grid("750").unwrap(), vec![750]);
        assert!(parse_grid("5:1:1").is_err());
        assert!(parse_grid("1:5").is_err());
        assert!(parse_grid("a,b").is_err());
    }

    #[test]
    fn n0_rules() {
        assert_eq!(N0Rule::EqualN.resolve(10).unwrap(), 10);
        assert_eq!("fraction:0.25".parse::<N0Rule>().unwrap().resolve(10).unwrap(), 3);
        assert_eq!(N0Rule::Fraction(0.01).resolve(10).unwrap(), 1);
        assert!(N0Rule::Fixed(11).resolve(10).is_err());
        assert!("fraction:1.5".parse::<N0Rule>().is_err());
        assert!("fixed:0".parse::<N0Rule>().is_err());
    }

    #[test]
    fn parses_sweep() {
        let cfg = ExperimentConfig::parse(
            "# first experiment\nkind = sweep\nlambda=9\nmu = 3 # intensity\n\nn_grid = 50:1000:20\nroot_seed = 7\n",
        )
        .unwrap();
        assert_eq!(cfg.kind, ExperimentKind::Sweep);
        assert_eq!((cfg.lambda, cfg.mu), (Some(9.0), Some(3.0)));
        assert_eq!((cfg.n_grid[0], *cfg.n_grid.last().unwrap()), (50, 990));
        assert_eq!((cfg.replicates, cfg.root_seed, cfg.n0_rule), (1, 7, N0Rule::EqualN));
    }

    #[test]
    fn parses_density_check() {
        let cfg = ExperimentConfig::parse(
            "kind = density-check\nmotif = 2-star, triangle, 3-path\nmc_reps = 1000\nm = 10000\np = 0.003\n",
        )
        .unwrap();
        assert_eq!(cfg.motifs, vec![MotifId::TwoStar, MotifId::ThreeCycle, MotifId::ThreePath]);
        assert_eq!(cfg.density_params().unwrap(), (10_000, 0.003));

        let cfg = ExperimentConfig::parse(
            "kind = density-check\nmotif = 1-star\nmc_reps = 10\nlambda = 9\nmu = 30\nn_grid = 100\n",
        )
        .unwrap();
        let (m, p) = cfg.density_params().unwrap();
        assert_eq!(m, 10_000);
        assert!((p - 0.003).abs() < 1e-15);
    }

    fn line_of(text: &str) -> usize {
        match ExperimentConfig::parse(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of("kind = sweep\nlambda = 9\nmu = x\n"), 3);
        assert_eq!(line_of("kind = sweep\nbogus = 1\n"), 2);
        assert_eq!(line_of("kind = sweep\n\nno equals sign\n"), 3);
        assert_eq!(line_of("kind = sweep\nmu = 1\nmu = 2\n"), 3);
        assert_eq!(line_of("kind = sweep\nlambda = 9\nmu = 3\nn_grid = 10,5\n"), 4);
        assert_eq!(line_of("kind = sweep\nlambda = 9\nmu = 3\nn_grid = 10\nreplicates = 0\n"), 5);
        assert_eq!(line_of("kind = histogram\nlambda = 9\nmu = 3\nn_grid = 10,20\n"), 4);
        assert_eq!(line_of("kind = histogram\nlambda = -1\nmu = 3\nn_grid = 10\n"), 2);
        // Missing keys point past the end of the file.
        assert_eq!(line_of("kind = sweep\nlambda = 9\n"), 2);
        assert_eq!(line_of("lambda = 9\n"), 1);
        assert_eq!(line_of("kind = density-check\nmotif = triangle\nmc_reps = 5\nm = 3\n"), 4);
        assert_eq!(line_of("kind = density-check\nmotif = hexagon\n"), 2);
    }

    proptest! {
        #[test]
        fn text_round_trip(
            kind in 0..3usize,
            lambda in 0.1f64..50.0,
            mu in 0.1f64..10.0,
            start in 3usize..100,
            steps in 1usize..5,
            replicates in 1usize..1000,
            seed in any::<u64>(),
            fast in any::<bool>(),
        ) {
            let kind = [ExperimentKind::Sweep, ExperimentKind::Histogram, ExperimentKind::DensityCheck][kind];
            let mut cfg = ExperimentConfig::estimation(kind, lambda, mu, vec![start], replicates, seed);
            cfg.fast_only = fast;
            if kind == ExperimentKind::Sweep {
                cfg.n_grid = (0..steps).map(|i| start + 10 * i).collect();
                cfg.n0_rule = N0Rule::Fraction(0.5);
            }
            if kind == ExperimentKind::DensityCheck {
                cfg.motifs = vec![MotifId::Butterfly, MotifId::OneStar];
                cfg.mc_reps = Some(99);
            }
            prop_assert_eq!(ExperimentConfig::parse(&cfg.to_text()).unwrap(), cfg);
        }
    }
}
