//! Binomial random intersection graphs `G(n, m, p)`: simulation, moment
//! estimation of the mean degree and attribute intensity from an observed
//! induced subgraph, and covering-density polynomials for small motifs.
//!
//! Data-parallel kernels (graph generation, triangle counting, Monte Carlo
//! replicates) run on rayon when the `parallel` feature is enabled and fall
//! back to plain iterators otherwise; see [`par::Execution`].

pub mod covering;
pub mod error;
pub mod estimators;
pub mod experiments;
pub mod graph;
pub mod io;
pub mod model;
pub mod motifs;
pub mod par;
pub mod rng;

pub use covering::MotifId;
pub use error::{Error, Result};
pub use estimators::{estimate_all, EstimateOptions, EstimateReport, Flag};
pub use graph::{AttributeAssignment, Graph, NodeSample};
pub use model::{model_to_regime, regime_to_model, ModelParams, RegimeParams};
pub use par::Execution;
