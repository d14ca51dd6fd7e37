//! `rig`: simulate binomial random intersection graphs, estimate their
//! parameters, and inspect covering densities.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rig_core::covering::{balanced_form, density_polynomial, enumerate_mcf, simplify_sparse};
use rig_core::experiments::{self, ExperimentConfig, ExperimentKind};
use rig_core::graph::{generate_with, induced_subgraph, sample_nodes, GenerateOptions, DEFAULT_EDGE_BUDGET};
use rig_core::model::SPARSE_WARN_MP2;
use rig_core::motifs::{brute_force_census_with_cap, count_pairs_and_stars, count_triangles, degree_moments};
use rig_core::motifs::{transitivity_from_counts, DEFAULT_CENSUS_CAP};
use rig_core::{io as rio, par};
use rig_core::{estimate_all, EstimateOptions, EstimateReport, Execution, Graph, ModelParams, MotifId};
use rig_core::{regime_to_model, NodeSample, RegimeParams};

#[derive(Parser)]
#[command(name = "rig", version, about = "Binomial random intersection graphs")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "RIG_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate G(n, m, p) and write it as an edge list.
    Generate(GenerateArgs),
    /// Write the subgraph induced by a node sample.
    Sample(SampleArgs),
    /// Count edges, 2-stars and triangles.
    Count(CountArgs),
    /// Estimate lambda and mu from an observed graph.
    Estimate(EstimateArgs),
    /// List the minimal covering families of a motif.
    Mcf(CoveringArgs),
    /// Print covering-density polynomials of a motif.
    Density(CoveringArgs),
    /// Run an experiment described by a config file.
    Experiment(ExperimentArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, conflicts_with_all = ["lambda", "mu"], requires = "p")]
    m: Option<usize>,
    #[arg(long, requires = "m")]
    p: Option<f64>,
    #[arg(long, requires = "mu")]
    lambda: Option<f64>,
    #[arg(long, requires = "lambda")]
    mu: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list output path.
    #[arg(long, short)]
    out: PathBuf,
    /// Optional attribute-list output path.
    #[arg(long)]
    attrs: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EDGE_BUDGET)]
    edge_budget: u64,
}

#[derive(Args)]
struct Selection {
    /// Observe a uniform random sample of this many nodes.
    #[arg(long, conflicts_with = "nodes_file")]
    n0: Option<usize>,
    /// Observe the nodes listed in this file (1-based ids).
    #[arg(long)]
    nodes_file: Option<PathBuf>,
    /// Seed for the uniform sample.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long = "in", short)]
    input: PathBuf,
    #[command(flatten)]
    select: Selection,
    /// Edge-list output path for the induced subgraph.
    #[arg(long, short)]
    out: PathBuf,
    /// Write the original id of each relabeled node here, one per line.
    #[arg(long)]
    map_out: Option<PathBuf>,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long = "in", short)]
    input: PathBuf,
    /// Skip triangle counting.
    #[arg(long)]
    fast_only: bool,
    /// Also count copies of these motifs by exhaustive search.
    #[arg(long, value_delimiter = ',')]
    census: Vec<MotifId>,
    #[arg(long, default_value_t = DEFAULT_CENSUS_CAP)]
    census_cap: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long = "in", short)]
    input: PathBuf,
    /// Node count of the unobserved full graph (defaults to the file's n).
    #[arg(long)]
    ambient_n: Option<usize>,
    #[command(flatten)]
    select: Selection,
    /// Skip triangle counting; mu1_hat and transitivity are reported undefined.
    #[arg(long)]
    fast_only: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Regime {
    Sparse,
    Balanced,
}

#[derive(Args)]
struct CoveringArgs {
    motif: MotifId,
    /// Print only this simplification.
    #[arg(long)]
    regime: Option<Regime>,
    /// Evaluate the balanced form's μ-factor at this μ.
    #[arg(long)]
    mu: Option<f64>,
    /// Evaluate the full polynomial at `m,p`.
    #[arg(long, value_name = "M,P", value_parser = parse_at)]
    at: Option<(f64, f64)>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    config: PathBuf,
    /// Output directory.
    #[arg(long, short)]
    out: PathBuf,
    /// Also write plot_data.json with (n, value) series.
    #[arg(long)]
    plot_data: bool,
}

fn parse_at(s: &str) -> Result<(f64, f64), String> {
    let (m, p) = s.split_once(',').ok_or("expected M,P")?;
    let m: f64 = m.trim().parse().map_err(|_| format!("bad m `{m}`"))?;
    let p: f64 = p.trim().parse().map_err(|_| format!("bad p `{p}`"))?;
    Ok((m, p))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    match par::with_threads(threads, move || run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let threads = cli.threads;
    match cli.command {
        Command::Generate(a) => cmd_generate(a, threads),
        Command::Sample(a) => cmd_sample(a, threads),
        Command::Count(a) => cmd_count(a, threads),
        Command::Estimate(a) => cmd_estimate(a, threads),
        Command::Mcf(a) => cmd_covering(a, true),
        Command::Density(a) => cmd_covering(a, false),
        Command::Experiment(a) => cmd_experiment(a, threads),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    let f = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    Ok(BufReader::new(f))
}

fn read_graph(path: &Path) -> Result<Graph> {
    rio::read_edge_list(open(path)?).with_context(|| format!("reading {}", path.display()))
}

/// Shortest text that survives a round trip, after rounding away float noise
/// in the 13th significant digit.
fn num(x: f64) -> String {
    if !x.is_finite() || x == 0.0 {
        return format!("{x:?}");
    }
    let rounded: f64 = format!("{x:.12e}").parse().unwrap_or(x);
    format!("{rounded:?}")
}

fn opt_num(x: Option<f64>) -> String {
    x.map_or_else(|| "undefined".into(), num)
}

fn cmd_generate(a: GenerateArgs, threads: usize) -> Result<()> {
    let params = match (a.m, a.p, a.lambda, a.mu) {
        (Some(m), Some(p), None, None) => ModelParams::new(a.n, m, p)?,
        (None, None, Some(lambda), Some(mu)) => regime_to_model(&RegimeParams::new(lambda, mu, a.n)?)?,
        _ => bail!("give either --m and --p, or --lambda and --mu"),
    };
    eprintln!(
        "rig generate: n={} m={} p={} seed={} edge_budget={} threads={threads}",
        params.n, params.m, params.p, a.seed, a.edge_budget
    );
    let opts = GenerateOptions { edge_budget: a.edge_budget, exec: Execution::default() };
    let (attrs, g) = generate_with(&params, a.seed, &opts)?;
    let mut out = create(&a.out)?;
    rio::write_edge_list(&g, &mut out)?;
    out.flush()?;
    if let Some(path) = &a.attrs {
        let mut out = create(path)?;
        rio::write_attribute_list(&attrs, &mut out)?;
        out.flush()?;
    }
    println!("n={} m={} p={} edges={}", params.n, params.m, params.p, g.edge_count());
    for d in params.diagnostics() {
        eprintln!("warning: {d}");
    }
    Ok(())
}

fn select_nodes(g: &Graph, s: &Selection) -> Result<Option<NodeSample>> {
    let n = g.node_count();
    if let Some(path) = &s.nodes_file {
        let nodes = rio::read_node_list(open(path)?, n).with_context(|| format!("reading {}", path.display()))?;
        return Ok(Some(NodeSample::from_nodes(n, nodes)?));
    }
    match s.n0 {
        Some(n0) if n0 != n => Ok(Some(sample_nodes(n, n0, s.seed)?)),
        Some(_) | None => Ok(None),
    }
}

fn cmd_sample(a: SampleArgs, threads: usize) -> Result<()> {
    eprintln!(
        "rig sample: in={} n0={:?} nodes_file={:?} seed={} threads={threads}",
        a.input.display(),
        a.select.n0,
        a.select.nodes_file,
        a.select.seed
    );
    let g = read_graph(&a.input)?;
    let sample = select_nodes(&g, &a.select)?.unwrap_or_else(|| NodeSample::all(g.node_count()));
    let (sub, map) = induced_subgraph(&g, &sample)?;
    let mut out = create(&a.out)?;
    rio::write_edge_list(&sub, &mut out)?;
    out.flush()?;
    if let Some(path) = &a.map_out {
        let mut out = create(path)?;
        for v in &map {
            writeln!(out, "{}", v + 1)?;
        }
        out.flush()?;
    }
    println!("n={} n0={} edges={}", g.node_count(), sub.node_count(), sub.edge_count());
    Ok(())
}

fn cmd_count(a: CountArgs, threads: usize) -> Result<()> {
    eprintln!(
        "rig count: in={} fast_only={} census={:?} threads={threads}",
        a.input.display(),
        a.fast_only,
        a.census.iter().map(|m| m.name()).collect::<Vec<_>>()
    );
    let g = read_graph(&a.input)?;
    let mut counts = count_pairs_and_stars(&g);
    let mut work = 0;
    if !a.fast_only {
        let t = count_triangles(&g);
        counts.n_k3 = Some(t.triangles);
        work = t.work;
    }
    let moments = degree_moments(&g);
    let t = transitivity_from_counts(&counts);
    let census: Vec<(MotifId, u64)> = a
        .census
        .iter()
        .map(|&m| Ok((m, brute_force_census_with_cap(&g, m, a.census_cap)?)))
        .collect::<Result<_>>()?;

    if a.json {
        let census: serde_json::Map<String, serde_json::Value> =
            census.iter().map(|(m, c)| (m.name().to_string(), json!(c))).collect();
        let v = json!({
            "n0": g.node_count(),
            "n_k2": counts.n_k2,
            "n_s2": counts.n_s2,
            "n_k3": counts.n_k3,
            "transitivity": t,
            "a1": moments.a1,
            "a2": moments.a2,
            "d_max": moments.d_max,
            "triangle_work": work,
            "census": census,
        });
        println!("{}", serde_json::to_string_pretty(&v)?);
        return Ok(());
    }
    let mut out = io::stdout().lock();
    writeln!(out, "n0            {}", g.node_count())?;
    writeln!(out, "n_k2          {}", counts.n_k2)?;
    writeln!(out, "n_s2          {}", counts.n_s2)?;
    writeln!(out, "n_k3          {}", counts.n_k3.map_or("skipped".into(), |c| c.to_string()))?;
    writeln!(out, "transitivity  {}", opt_num(t))?;
    writeln!(out, "a1            {}", num(moments.a1))?;
    writeln!(out, "a2            {}", num(moments.a2))?;
    writeln!(out, "d_max         {}", moments.d_max)?;
    writeln!(out, "triangle_work {work}")?;
    for (m, c) in census {
        writeln!(out, "census {:<10} {c}", m.name())?;
    }
    Ok(())
}

fn cmd_estimate(a: EstimateArgs, threads: usize) -> Result<()> {
    let g = read_graph(&a.input)?;
    let ambient = a.ambient_n.unwrap_or(g.node_count());
    eprintln!(
        "rig estimate: in={} ambient_n={ambient} n0={:?} nodes_file={:?} seed={} fast_only={} threads={threads}",
        a.input.display(),
        a.select.n0,
        a.select.nodes_file,
        a.select.seed,
        a.fast_only
    );
    if ambient < g.node_count() {
        bail!("--ambient-n {ambient} is smaller than the file's n = {}", g.node_count());
    }
    let observed = match select_nodes(&g, &a.select)? {
        Some(s) => induced_subgraph(&g, &s)?.0,
        None => g,
    };
    let opts = EstimateOptions { fast_only: a.fast_only, exec: Execution::default() };
    let report = estimate_all(&observed, ambient, &opts)?;
    if a.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        print_report(&report)?;
    }
    Ok(())
}

fn print_report(r: &EstimateReport) -> Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "n             {}", r.n)?;
    writeln!(out, "n0            {}", r.n0)?;
    writeln!(out, "lambda_hat    {}", num(r.lambda_hat))?;
    writeln!(out, "mu1_hat       {}", opt_num(r.mu1_hat))?;
    writeln!(out, "mu2_hat       {}", opt_num(r.mu2_hat))?;
    writeln!(out, "transitivity  {}", opt_num(r.transitivity))?;
    writeln!(out, "n_k2          {}", r.counts.n_k2)?;
    writeln!(out, "n_s2          {}", r.counts.n_s2)?;
    writeln!(out, "n_k3          {}", r.counts.n_k3.map_or("skipped".into(), |c| c.to_string()))?;
    writeln!(out, "a1            {}", num(r.moments.a1))?;
    writeln!(out, "a2            {}", num(r.moments.a2))?;
    writeln!(out, "d_max         {}", r.moments.d_max)?;
    writeln!(out, "triangle_work {}", r.triangle_work)?;
    let flags: Vec<&str> = r.flags.iter().map(|f| f.as_str()).collect();
    writeln!(out, "flags         {}", flags.join(","))?;
    Ok(())
}

fn cmd_covering(a: CoveringArgs, list_families: bool) -> Result<()> {
    eprintln!(
        "rig {}: motif={} regime={} mu={:?} at={:?}",
        if list_families { "mcf" } else { "density" },
        a.motif,
        match a.regime {
            None => "all",
            Some(Regime::Sparse) => "sparse",
            Some(Regime::Balanced) => "balanced",
        },
        a.mu,
        a.at
    );
    let full = density_polynomial(a.motif);
    let sparse = simplify_sparse(&full);
    let balanced = balanced_form(&full);
    let families = list_families.then(|| enumerate_mcf(a.motif));
    let value = a.at.map(|(m, p)| (m, p, full.eval(m, p), m * p * p > SPARSE_WARN_MP2));
    if let Some((_, _, _, true)) = value {
        eprintln!("warning: m p^2 > {SPARSE_WARN_MP2}; the sparse-regime approximation is strained");
    }

    if a.json {
        let mut v = json!({ "motif": a.motif.name() });
        if let Some(f) = &families {
            v["families"] = json!(f);
        }
        if !matches!(a.regime, Some(Regime::Balanced)) {
            v["density"] = json!(full);
            v["sparse"] = json!(sparse);
        }
        if !matches!(a.regime, Some(Regime::Sparse)) {
            v["balanced"] = json!({ "text": balanced.to_string(), "form": balanced });
            if let Some(mu) = a.mu {
                v["balanced_at_mu"] = json!({ "mu": mu, "coefficient": balanced.eval(mu, 1.0), "m_pow": balanced.m_pow });
            }
        }
        if let Some((m, p, x, warn)) = value {
            let flags: Vec<&str> = if warn { vec!["mp2-not-small"] } else { vec![] };
            v["value"] = json!({ "m": m, "p": p, "value": x, "flags": flags });
        }
        println!("{}", serde_json::to_string_pretty(&v)?);
        return Ok(());
    }

    let mut out = io::stdout().lock();
    if let Some(f) = &families {
        writeln!(out, "motif: {}", a.motif)?;
        writeln!(out, "families: {}", f.len())?;
        for c in f {
            writeln!(out, "  {c}")?;
        }
    }
    match a.regime {
        Some(Regime::Sparse) => writeln!(out, "{sparse}")?,
        Some(Regime::Balanced) => writeln!(out, "{balanced}")?,
        None => {
            writeln!(out, "density: {full}")?;
            writeln!(out, "sparse: {sparse}")?;
            writeln!(out, "balanced: {balanced}")?;
        }
    }
    if let (Some(mu), false) = (a.mu, matches!(a.regime, Some(Regime::Sparse))) {
        writeln!(out, "balanced at μ={}: {} m^{}", num(mu), num(balanced.eval(mu, 1.0)), balanced.m_pow)?;
    }
    if let Some((m, p, x, warn)) = value {
        writeln!(out, "value at m={}, p={}: {}", num(m), num(p), num(x))?;
        if warn {
            writeln!(out, "flags: mp2-not-small")?;
        }
    }
    Ok(())
}

fn cmd_experiment(a: ExperimentArgs, threads: usize) -> Result<()> {
    let text = std::fs::read_to_string(&a.config).with_context(|| format!("cannot read {}", a.config.display()))?;
    let cfg = ExperimentConfig::parse(&text).with_context(|| format!("in {}", a.config.display()))?;
    eprintln!("rig experiment: threads={threads} out={}", a.out.display());
    eprint!("{}", cfg.to_text());

    let res = experiments::run(&cfg, Execution::default())?;
    std::fs::create_dir_all(&a.out).with_context(|| format!("cannot create {}", a.out.display()))?;
    let dir = &a.out;
    let mut w = create(&dir.join("results.csv"))?;
    experiments::write_csv(&res, &mut w)?;
    w.flush()?;
    if cfg.kind != ExperimentKind::DensityCheck {
        let mut w = create(&dir.join("summary.csv"))?;
        experiments::write_summary_csv(&res, &mut w)?;
        w.flush()?;
    }
    let mut w = create(&dir.join("results.json"))?;
    experiments::write_json(&res, &mut w)?;
    writeln!(w)?;
    w.flush()?;
    let mut w = create(&dir.join("provenance.json"))?;
    serde_json::to_writer_pretty(&mut w, &res.provenance)?;
    writeln!(w)?;
    w.flush()?;
    if a.plot_data {
        let mut w = create(&dir.join("plot_data.json"))?;
        serde_json::to_writer_pretty(&mut w, &experiments::plot_data(&res))?;
        writeln!(w)?;
        w.flush()?;
    }

    let failed = res.rows.iter().filter(|r| r.error.is_some()).count();
    match cfg.kind {
        ExperimentKind::DensityCheck => {
            for d in &res.density {
                println!(
                    "{:<10} frequency={} se={} theory={} rel_err={}{}",
                    d.motif.name(),
                    num(d.frequency),
                    num(d.std_error),
                    num(d.theory),
                    opt_num(d.relative_error),
                    if d.flags.is_empty() { String::new() } else { format!(" flags={}", d.flags.join(",")) }
                );
            }
        }
        _ => println!("rows={} failed={failed} out={}", res.rows.len(), dir.display()),
    }
    Ok(())
}
