//! Experiment sweeps: configuration, validation, parallel execution over
//! (graph, seed) pairs, and persistence of traces, aggregates, bound
//! overlays and plots.
//!
//! Output layout of a sweep in `out/`:
//!
//! ```text
//! config.json                      fully resolved configuration (replayable)
//! manifest.json                    per-run hashes, scaling factors, completion flag
//! trace_<label>_seed<s>.csv        seed,t,R_A,R_S,cumRA,cumRS
//! queries_<label>_seed<s>.csv      seed,t,agent,x1,...,xd,y,f_noiseless
//! graph_<label>_seed<s>.json       {"m": int, "edges": [[i,j],...]}
//! bounds_<label>_seed<s>.csv       t,bound_avg,bound_simple,psi_method,xi_method (with --bounds)
//! aggregate_<label>.csv            mean and standard error over seeds
//! plot_R_A.svg, plot_cumRA.svg, plot_R_S.svg, plot_cumRS.svg
//! ```
//!
//! `<label>` is `p<prob>` for Erdős–Rényi graphs, otherwise `complete`,
//! `empty` or `file`.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use plotters::prelude::*;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bounds::{bound_overlay, bound_overlay_csv, InfoTables};
use crate::error::Error as SimError;
use crate::gp::{Kernel, KernelFamily};
use crate::graph::{erdos_renyi, CommGraph, GraphLoadError};
use crate::info::{estimate_xi_table, greedy_gain_curve, InfoMethod};
use crate::objectives::{Objective, ObjectiveKind, Scaling};
use crate::sim::{query_log_csv, run_experiment, stream_rng, Aggregate, RegretTrace, SearchSpace, GRAPH_STREAM};

pub const DEFAULT_AGENTS: usize = 20;
pub const DEFAULT_ROUNDS: usize = 50;
pub const DEFAULT_SEEDS: u64 = 10;
pub const DEFAULT_GRID: usize = 50;
pub const DEFAULT_NOISE_VAR: f64 = 0.01;
pub const DEFAULT_XI_TRIALS: usize = 200;

/// Command-line flags.
#[derive(Debug, Clone, Parser)]
#[command(name = "dts", about = "Distributed Thompson sampling experiment driver")]
pub struct CliArgs {
    /// Objective: rosenbrock or ackley.
    #[arg(long)]
    pub objective: Option<String>,
    /// Number of agents.
    #[arg(long)]
    pub agents: Option<usize>,
    /// Comma-separated Erdős–Rényi edge probabilities to sweep.
    #[arg(long = "edge-prob")]
    pub edge_prob: Option<String>,
    /// Explicit graph as JSON {"m": int, "edges": [[i,j],...]}.
    #[arg(long = "graph-file")]
    pub graph_file: Option<PathBuf>,
    /// Fixed graph: complete or empty.
    #[arg(long)]
    pub graph: Option<String>,
    /// Rounds per run.
    #[arg(long)]
    pub rounds: Option<usize>,
    /// Number of seeds; runs use seeds 0..N-1.
    #[arg(long)]
    pub seeds: Option<u64>,
    /// Kernel family: matern52, se or linear.
    #[arg(long)]
    pub kernel: Option<String>,
    #[arg(long)]
    pub lengthscale: Option<f64>,
    #[arg(long = "output-scale")]
    pub output_scale: Option<f64>,
    /// Observation noise variance, in rescaled objective units.
    #[arg(long = "noise-var")]
    pub noise_var: Option<f64>,
    /// Grid points per dimension.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Also write regret-bound overlays.
    #[arg(long)]
    pub bounds: bool,
    /// Random (D, A) pairs tried per ξ estimate.
    #[arg(long = "xi-trials")]
    pub xi_trials: Option<usize>,
    /// Concurrent runs.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Replay a config.json sidecar (other flags except --out and --jobs are ignored).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSpec {
    ErdosRenyi { edge_probs: Vec<f64> },
    File { path: PathBuf },
    Complete,
    Empty,
}

/// A fully resolved sweep configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub objective: ObjectiveKind,
    pub agents: usize,
    pub graph: GraphSpec,
    pub rounds: usize,
    pub kernel: Kernel,
    pub noise_var: f64,
    pub grid: usize,
    pub seeds: Vec<u64>,
    pub out: PathBuf,
    pub bounds: bool,
    pub xi_trials: usize,
    pub jobs: usize,
}

impl ExperimentConfig {
    /// A config with every default filled in.
    pub fn new(objective: ObjectiveKind, graph: GraphSpec, out: impl Into<PathBuf>) -> Self {
        Self {
            objective,
            agents: DEFAULT_AGENTS,
            graph,
            rounds: DEFAULT_ROUNDS,
            kernel: Kernel::default(),
            noise_var: DEFAULT_NOISE_VAR,
            grid: DEFAULT_GRID,
            seeds: (0..DEFAULT_SEEDS).collect(),
            out: out.into(),
            bounds: false,
            xi_trials: DEFAULT_XI_TRIALS,
            jobs: 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Graph variants of the sweep, as (label, edge probability or None).
    fn graph_labels(&self) -> Vec<(String, Option<f64>)> {
        match &self.graph {
            GraphSpec::ErdosRenyi { edge_probs } => {
                edge_probs.iter().map(|&p| (format!("p{p}"), Some(p))).collect()
            }
            GraphSpec::File { .. } => vec![("file".into(), None)],
            GraphSpec::Complete => vec![("complete".into(), None)],
            GraphSpec::Empty => vec![("empty".into(), None)],
        }
    }

    /// Short hash identifying one (graph, seed) run of this config.
    pub fn run_hash(&self, label: &str, seed: u64) -> String {
        let mut h = Sha256::new();
        h.update(serde_json::to_vec(self).expect("config serializes"));
        h.update(label.as_bytes());
        h.update(seed.to_le_bytes());
        hex::encode(&h.finalize()[..8])
    }

    /// Check every constraint of an already-built config, naming each
    /// violation.
    pub fn check(&self) -> Result<(), ConfigError> {
        let mut errs = Vec::new();
        if self.agents == 0 {
            errs.push("--agents: must be at least 1".to_string());
        }
        if self.rounds == 0 {
            errs.push("--rounds: must be at least 1".to_string());
        }
        if self.seeds.is_empty() {
            errs.push("--seeds: must be at least 1".to_string());
        }
        if self.grid < 2 {
            errs.push(format!("--grid: need at least 2 points per dimension, got {}", self.grid));
        }
        if !(self.noise_var > 0.0 && self.noise_var.is_finite()) {
            errs.push(format!("--noise-var: must be positive, got {}", self.noise_var));
        }
        if self.jobs == 0 {
            errs.push("--jobs: must be at least 1".to_string());
        }
        if self.bounds && self.xi_trials == 0 {
            errs.push("--xi-trials: must be at least 1".to_string());
        }
        if let Err(e) = Kernel::new(self.kernel.family, self.kernel.lengthscale, self.kernel.output_scale) {
            errs.push(format!("--kernel: {e}"));
        }
        match &self.graph {
            GraphSpec::ErdosRenyi { edge_probs } => {
                if edge_probs.is_empty() {
                    errs.push("--edge-prob: empty list".to_string());
                }
                for p in edge_probs {
                    if !(0.0..=1.0).contains(p) {
                        errs.push(format!("--edge-prob: {p} is outside the range [0, 1]"));
                    }
                }
            }
            GraphSpec::File { path } => match CommGraph::load(path) {
                Ok(g) if g.m() != self.agents => errs.push(format!(
                    "--graph-file: graph has {} agents but --agents is {}",
                    g.m(),
                    self.agents
                )),
                Ok(_) => {}
                Err(e) => errs.push(format!("--graph-file: {}: {e}", path.display())),
            },
            GraphSpec::Complete | GraphSpec::Empty => {}
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(ConfigError(errs))
        }
    }
}

/// One or more named configuration violations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid configuration:\n  {}", .0.join("\n  "))]
pub struct ConfigError(pub Vec<String>);

fn parse_list<T: std::str::FromStr>(raw: &str) -> Option<Vec<T>> {
    raw.split(',').map(|s| s.trim().parse().ok()).collect()
}

/// Resolve command-line flags into a config, materializing defaults
/// (50 rounds, 20 agents, 10 seeds, Matérn-5/2 with unit lengthscale,
/// noise variance 0.01, 50 grid points per dimension).
pub fn validate_config(args: &CliArgs) -> Result<ExperimentConfig, ConfigError> {
    let mut errs = Vec::new();
    let objective = match args.objective.as_deref() {
        None => {
            errs.push("--objective: required (rosenbrock or ackley)".to_string());
            None
        }
        Some(s) => match s.parse::<ObjectiveKind>() {
            Ok(k) => Some(k),
            Err(e) => {
                errs.push(format!("--objective: {e}"));
                None
            }
        },
    };
    let chosen = [args.edge_prob.is_some(), args.graph_file.is_some(), args.graph.is_some()];
    if chosen.iter().filter(|&&c| c).count() > 1 {
        errs.push("--edge-prob, --graph-file and --graph are mutually exclusive".to_string());
    }
    let graph = if let Some(raw) = &args.edge_prob {
        match parse_list::<f64>(raw) {
            Some(edge_probs) => Some(GraphSpec::ErdosRenyi { edge_probs }),
            None => {
                errs.push(format!("--edge-prob: cannot parse `{raw}` as a comma-separated list of numbers"));
                None
            }
        }
    } else if let Some(path) = &args.graph_file {
        Some(GraphSpec::File { path: path.clone() })
    } else {
        match args.graph.as_deref() {
            None | Some("complete") => Some(GraphSpec::Complete),
            Some("empty") => Some(GraphSpec::Empty),
            Some(other) => {
                errs.push(format!("--graph: expected complete or empty, got `{other}`"));
                None
            }
        }
    };
    let family = match args.kernel.as_deref() {
        None => Some(KernelFamily::Matern52),
        Some(s) => match s.parse::<KernelFamily>() {
            Ok(f) => Some(f),
            Err(e) => {
                errs.push(format!("--kernel: {e}"));
                None
            }
        },
    };
    let (Some(objective), Some(graph), Some(family)) = (objective, graph, family) else {
        return Err(ConfigError(errs));
    };
    let mut cfg = ExperimentConfig::new(objective, graph, args.out.clone().unwrap_or_else(|| "runs".into()));
    cfg.agents = args.agents.unwrap_or(DEFAULT_AGENTS);
    cfg.rounds = args.rounds.unwrap_or(DEFAULT_ROUNDS);
    cfg.seeds = (0..args.seeds.unwrap_or(DEFAULT_SEEDS)).collect();
    cfg.kernel = Kernel {
        family,
        lengthscale: args.lengthscale.unwrap_or(1.0),
        output_scale: args.output_scale.unwrap_or(1.0),
    };
    cfg.noise_var = args.noise_var.unwrap_or(DEFAULT_NOISE_VAR);
    cfg.grid = args.grid.unwrap_or(DEFAULT_GRID);
    cfg.bounds = args.bounds;
    cfg.xi_trials = args.xi_trials.unwrap_or(DEFAULT_XI_TRIALS);
    cfg.jobs = args.jobs.unwrap_or(1);
    match cfg.check() {
        Ok(()) if errs.is_empty() => Ok(cfg),
        Ok(()) => Err(ConfigError(errs)),
        Err(ConfigError(more)) => {
            errs.extend(more);
            Err(ConfigError(errs))
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot read config sidecar: {0}")]
    Sidecar(String),
    #[error(transparent)]
    Graph(#[from] GraphLoadError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("plotting failed: {0}")]
    Plot(String),
}

impl ExperimentError {
    /// 2 for configuration problems, 1 for failures during the run.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::Sidecar(_) | Self::Graph(_) => 2,
            _ => 1,
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), ExperimentError> {
    fs::write(path, contents).map_err(|source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Result of one (graph, seed) run.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub label: String,
    pub seed: u64,
    pub graph: CommGraph,
    pub trace: RegretTrace,
}

#[derive(Debug, Clone)]
pub struct SweepSummary {
    pub runs: Vec<RunSummary>,
    /// One aggregate per graph label, in sweep order.
    pub aggregates: Vec<(String, Aggregate)>,
    pub scaling: Scaling,
}

#[derive(Debug, Serialize)]
struct ManifestRun<'a> {
    label: &'a str,
    seed: u64,
    config_hash: &'a str,
    edges: usize,
    clique_cover: usize,
    max_clique: usize,
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    complete: bool,
    objective: String,
    /// Regret is reported in scaled units; multiply by `scaling.span` for
    /// the native objective scale.
    scaling: Scaling,
    grid_points: usize,
    prior_jitter: f64,
    runs: Vec<ManifestRun<'a>>,
}

const INCOMPLETE_MARKER: &str = "INCOMPLETE";

/// Graph for one run: Erdős–Rényi graphs are drawn from the run seed's
/// graph stream, so runs of different edge probabilities with the same seed
/// use coupled (nested) graphs.
pub fn run_graph(cfg: &ExperimentConfig, edge_prob: Option<f64>, seed: u64) -> Result<CommGraph, ExperimentError> {
    Ok(match (&cfg.graph, edge_prob) {
        (GraphSpec::ErdosRenyi { .. }, Some(p)) => erdos_renyi(cfg.agents, p, &mut stream_rng(seed, GRAPH_STREAM))?,
        (GraphSpec::File { path }, _) => CommGraph::load(path)?,
        (GraphSpec::Empty, _) => CommGraph::empty(cfg.agents),
        _ => CommGraph::complete(cfg.agents),
    })
}

/// The search space a config describes.
pub fn search_space(cfg: &ExperimentConfig) -> Result<SearchSpace, ExperimentError> {
    let objective = Objective::new(cfg.objective, cfg.noise_var)?;
    Ok(SearchSpace::new(objective, cfg.grid, cfg.kernel)?)
}

/// Greedy Ψ curve and sampled ξ table for the bound overlay.
pub fn info_tables(cfg: &ExperimentConfig, space: &SearchSpace) -> Result<InfoTables, ExperimentError> {
    let unit = space.prior().points();
    let t_max = (cfg.rounds * cfg.agents).min(unit.len());
    let psi = greedy_gain_curve(&cfg.kernel, cfg.noise_var, unit, t_max)?;
    let mut rng = stream_rng(cfg.seeds[0], u64::MAX);
    let xi = estimate_xi_table(
        &cfg.kernel,
        cfg.noise_var,
        unit,
        cfg.agents.min(unit.len()),
        cfg.agents,
        cfg.xi_trials,
        &mut rng,
    )?;
    Ok(InfoTables {
        psi,
        xi,
        psi_method: InfoMethod::GreedyLower,
        xi_method: InfoMethod::SampledLower,
    })
}

/// Run every (graph, seed) combination and write all outputs under
/// `cfg.out`. An `INCOMPLETE` marker stays in the directory, and the
/// manifest says `"complete": false`, unless the whole sweep succeeds.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<SweepSummary, ExperimentError> {
    cfg.check()?;
    let out = &cfg.out;
    fs::create_dir_all(out).map_err(|source| ExperimentError::Io {
        path: out.clone(),
        source,
    })?;
    write_file(&out.join(INCOMPLETE_MARKER), "sweep in progress\n")?;
    write_file(&out.join("config.json"), &cfg.to_json())?;

    let space = search_space(cfg)?;
    log::info!(
        "{}: {} grid points, prior jitter {:e}",
        cfg.objective,
        space.len(),
        space.prior().jitter()
    );
    let tables = if cfg.bounds { Some(info_tables(cfg, &space)?) } else { None };

    let labels = cfg.graph_labels();
    let units: Vec<(usize, u64)> = (0..labels.len())
        .flat_map(|l| cfg.seeds.iter().map(move |&s| (l, s)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| ExperimentError::Plot(format!("thread pool: {e}")))?;
    let runs = pool.install(|| {
        units
            .par_iter()
            .map(|&(l, seed)| {
                let (label, p) = &labels[l];
                let graph = run_graph(cfg, *p, seed)?;
                let mut output = run_experiment(&graph, &space, cfg.rounds, seed, false)?;
                output.trace.config_hash = cfg.run_hash(label, seed);
                let stem = format!("{label}_seed{seed}");
                write_file(&out.join(format!("trace_{stem}.csv")), &output.trace.to_csv())?;
                write_file(
                    &out.join(format!("queries_{stem}.csv")),
                    &query_log_csv(seed, space.objective().dim(), &output.history),
                )?;
                write_file(&out.join(format!("graph_{stem}.json")), &graph.to_json())?;
                if let Some(tables) = &tables {
                    let rows = bound_overlay(&graph, space.len(), cfg.noise_var, tables, cfg.rounds)?;
                    write_file(&out.join(format!("bounds_{stem}.csv")), &bound_overlay_csv(&rows))?;
                }
                log::info!("{label} seed {seed}: final cumRS {:?}", output.trace.last().map(|r| r.cum_rs));
                Ok(RunSummary {
                    label: label.clone(),
                    seed,
                    graph,
                    trace: output.trace,
                })
            })
            .collect::<Result<Vec<_>, ExperimentError>>()
    })?;

    let mut aggregates = Vec::new();
    for (label, _) in &labels {
        let traces: Vec<RegretTrace> = runs.iter().filter(|r| &r.label == label).map(|r| r.trace.clone()).collect();
        let agg = Aggregate::from_traces(&traces)?;
        write_file(&out.join(format!("aggregate_{label}.csv")), &agg.to_csv())?;
        aggregates.push((label.clone(), agg));
    }
    write_plots(out, &cfg.objective.to_string(), &aggregates)?;

    let manifest_runs = runs
        .iter()
        .map(|r| ManifestRun {
            label: &r.label,
            seed: r.seed,
            config_hash: &r.trace.config_hash,
            edges: r.graph.edge_count(),
            clique_cover: crate::graph::greedy_clique_cover(&r.graph).len(),
            max_clique: crate::graph::max_clique(&r.graph).len(),
        })
        .collect();
    let manifest = Manifest {
        complete: true,
        objective: cfg.objective.to_string(),
        scaling: space.objective().scaling(),
        grid_points: space.len(),
        prior_jitter: space.prior().jitter(),
        runs: manifest_runs,
    };
    write_file(
        &out.join("manifest.json"),
        &serde_json::to_string_pretty(&manifest).expect("manifest serializes"),
    )?;
    let _ = fs::remove_file(out.join(INCOMPLETE_MARKER));
    Ok(SweepSummary {
        runs,
        aggregates,
        scaling: space.objective().scaling(),
    })
}

const SERIES_COLORS: [RGBColor; 6] = [
    RGBColor(31, 119, 180),
    RGBColor(255, 127, 14),
    RGBColor(44, 160, 44),
    RGBColor(214, 39, 40),
    RGBColor(148, 103, 189),
    RGBColor(140, 86, 75),
];

/// One SVG per metric (R_A, cumRA, R_S, cumRS), one series per graph label.
pub fn write_plots(out: &Path, title: &str, aggregates: &[(String, Aggregate)]) -> Result<(), ExperimentError> {
    type Pick = fn(&crate::sim::AggregateRow) -> f64;
    let metrics: [(&str, &str, Pick); 4] = [
        ("R_A", "instant average regret", |r| r.r_a.mean),
        ("cumRA", "cumulative average regret", |r| r.cum_ra.mean),
        ("R_S", "instant simple regret", |r| r.r_s.mean),
        ("cumRS", "cumulative simple regret", |r| r.cum_rs.mean),
    ];
    for (key, caption, pick) in metrics {
        let path = out.join(format!("plot_{key}.svg"));
        plot_metric(&path, &format!("{title}: {caption}"), aggregates, pick)
            .map_err(|e| ExperimentError::Plot(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn plot_metric(
    path: &Path,
    caption: &str,
    aggregates: &[(String, Aggregate)],
    pick: fn(&crate::sim::AggregateRow) -> f64,
) -> Result<(), Box<dyn std::error::Error>> {
    let t_max = aggregates
        .iter()
        .flat_map(|(_, a)| a.rows.last().map(|r| r.t))
        .max()
        .unwrap_or(1)
        .max(1);
    let y_max = aggregates
        .iter()
        .flat_map(|(_, a)| a.rows.iter().map(pick))
        .fold(0.0f64, f64::max);
    let y_max = if y_max > 0.0 { y_max * 1.05 } else { 1.0 };

    let root = SVGBackend::new(path, (640, 420)).into_drawing_area();
    root.fill(&WHITE)?;
    let mut chart = ChartBuilder::on(&root)
        .caption(caption, ("sans-serif", 18))
        .margin(12)
        .x_label_area_size(36)
        .y_label_area_size(56)
        .build_cartesian_2d(1f64..t_max as f64, 0f64..y_max)?;
    chart.configure_mesh().x_desc("t").draw()?;
    for (k, (label, agg)) in aggregates.iter().enumerate() {
        let color = SERIES_COLORS[k % SERIES_COLORS.len()];
        chart
            .draw_series(LineSeries::new(agg.rows.iter().map(|r| (r.t as f64, pick(r))), color.stroke_width(2)))?
            .label(label.clone())
            .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 18, y)], color.stroke_width(2)));
    }
    chart
        .configure_series_labels()
        .background_style(WHITE.mix(0.8))
        .border_style(BLACK)
        .draw()?;
    root.present()?;
    Ok(())
}

/// Parse flags (or a replayed sidecar), run the sweep, and return the
/// process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match CliArgs::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match resolve(&args).and_then(|cfg| run_sweep(&cfg)) {
        Ok(summary) => {
            for (label, agg) in &summary.aggregates {
                if let Some(last) = agg.last() {
                    println!(
                        "{label}: t={} cumRA {:.4} ± {:.4}, cumRS {:.4} ± {:.4} ({} seeds)",
                        last.t, last.cum_ra.mean, last.cum_ra.se, last.cum_rs.mean, last.cum_rs.se, agg.seeds
                    );
                }
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn resolve(args: &CliArgs) -> Result<ExperimentConfig, ExperimentError> {
    let Some(path) = &args.config else {
        return Ok(validate_config(args)?);
    };
    let text = fs::read_to_string(path).map_err(|e| ExperimentError::Sidecar(format!("{}: {e}", path.display())))?;
    let mut cfg =
        ExperimentConfig::from_json(&text).map_err(|e| ExperimentError::Sidecar(format!("{}: {e}", path.display())))?;
    if let Some(out) = &args.out {
        cfg.out = out.clone();
    }
    if let Some(jobs) = args.jobs {
        cfg.jobs = jobs;
    }
    cfg.check()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(list: &[&str]) -> CliArgs {
        CliArgs::try_parse_from(std::iter::once("dts").chain(list.iter().copied())).unwrap()
    }

    #[test]
    fn missing_objective_named() {
        let err = validate_config(&args(&["--agents", "3"])).unwrap_err();
        assert!(err.0.iter().any(|e| e.starts_with("--objective")), "{err}");
    }

    #[test]
    fn probability_range_error() {
        let err = validate_config(&args(&["--objective", "ackley", "--edge-prob", "0.2,1.3"])).unwrap_err();
        assert!(err.0.iter().any(|e| e.contains("1.3") && e.contains("range")), "{err}");
    }

    #[test]
    fn every_violation_listed() {
        let err = validate_config(&args(&[
            "--objective", "ackley", "--agents", "0", "--rounds", "0", "--noise-var=-1",
        ]))
        .unwrap_err();
        assert_eq!(err.0.len(), 3, "{err}");
    }

    #[test]
    fn defaults_materialized() {
        let cfg = validate_config(&args(&["--objective", "rosenbrock"])).unwrap();
        assert_eq!(cfg.grid, 50);
        assert_eq!(cfg.kernel.family, KernelFamily::Matern52);
        assert_eq!(cfg.kernel.lengthscale, 1.0);
        assert_eq!(cfg.noise_var, 0.01);
        assert_eq!(cfg.rounds, 50);
        assert_eq!(cfg.seeds, (0..10).collect::<Vec<u64>>());
        assert_eq!(cfg.graph, GraphSpec::Complete);
    }

    #[test]
    fn sweep_list_parsed() {
        let cfg = validate_config(&args(&["--objective", "ackley", "--edge-prob", "0.2, 0.4,0.6", "--seeds", "3"]))
            .unwrap();
        assert_eq!(cfg.graph, GraphSpec::ErdosRenyi { edge_probs: vec![0.2, 0.4, 0.6] });
        assert_eq!(cfg.seeds, vec![0, 1, 2]);
        let labels: Vec<String> = cfg.graph_labels().into_iter().map(|(l, _)| l).collect();
        assert_eq!(labels, ["p0.2", "p0.4", "p0.6"]);
    }

    #[test]
    fn sidecar_round_trip() {
        let mut cfg = ExperimentConfig::new(
            ObjectiveKind::Ackley,
            GraphSpec::ErdosRenyi { edge_probs: vec![0.1, 0.7] },
            "somewhere",
        );
        cfg.noise_var = 0.0123;
        cfg.kernel.lengthscale = 0.37;
        assert_eq!(ExperimentConfig::from_json(&cfg.to_json()).unwrap(), cfg);
    }

    #[test]
    fn run_hash_distinguishes_runs() {
        let cfg = ExperimentConfig::new(ObjectiveKind::Ackley, GraphSpec::Complete, "x");
        assert_ne!(cfg.run_hash("complete", 0), cfg.run_hash("complete", 1));
        assert_eq!(cfg.run_hash("complete", 0), cfg.run_hash("complete", 0));
        assert_eq!(cfg.run_hash("complete", 0).len(), 16);
    }
}
