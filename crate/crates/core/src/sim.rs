//! Synchronous distributed Thompson sampling over a communication graph.
//!
//! Every round each agent conditions its own GP on the data it holds,
//! draws one posterior path on the search grid, queries the maximizer, and
//! only then are the round's observations exchanged with graph neighbours.
//! No agent sees another agent's round-`t` query before choosing its own.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::gp::{argmax_index, GpPosterior, GridPrior, Point};
use crate::graph::CommGraph;
use crate::objectives::{Objective, Scaling};

/// RNG stream reserved for graph generation; agent `i` uses stream `i + 1`.
pub const GRAPH_STREAM: u64 = 0;

/// Deterministic per-purpose RNG split from a master seed.
pub fn stream_rng(master_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

/// The grid agents search, the calibrated objective on it, and the GP prior
/// over the grid (in `[−1, 1]^d` coordinates).
#[derive(Debug, Clone)]
pub struct SearchSpace {
    objective: Objective,
    points: Vec<Point>,
    prior: Arc<GridPrior>,
}

impl SearchSpace {
    /// Grid the objective's domain with `points_per_dim` points per axis,
    /// calibrate the objective on it and factor the prior.
    pub fn new(objective: Objective, points_per_dim: usize, kernel: crate::gp::Kernel) -> Result<Self> {
        let points = objective.make_grid(points_per_dim)?;
        let unit = points.iter().map(|p| objective.to_unit(p)).collect();
        let prior = Arc::new(GridPrior::new(kernel, unit)?);
        Self::assemble(objective, points, prior)
    }

    /// Like [`SearchSpace::new`] but reusing an already factored prior, whose
    /// points must be this objective's grid mapped onto `[−1, 1]^d`.
    pub fn with_prior(objective: Objective, points_per_dim: usize, prior: Arc<GridPrior>) -> Result<Self> {
        let points = objective.make_grid(points_per_dim)?;
        if points.len() != prior.len() {
            return Err(Error::DimensionMismatch {
                expected: prior.len(),
                actual: points.len(),
            });
        }
        for (p, u) in points.iter().zip(prior.points()) {
            let mapped = objective.to_unit(p);
            let far = mapped.coords().iter().zip(u.coords()).any(|(a, b)| (a - b).abs() > 1e-9);
            if far {
                return Err(invalid("prior", "grid prior points do not match the objective grid"));
            }
        }
        Self::assemble(objective, points, prior)
    }

    fn assemble(objective: Objective, points: Vec<Point>, prior: Arc<GridPrior>) -> Result<Self> {
        if !(objective.noise_var() > 0.0) {
            return Err(invalid("noise_var", "the GP model needs positive observation noise"));
        }
        let objective = objective.calibrate(&points)?;
        Ok(Self {
            objective,
            points,
            prior,
        })
    }

    pub fn objective(&self) -> &Objective {
        &self.objective
    }

    /// Grid points in domain coordinates.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn prior(&self) -> &Arc<GridPrior> {
        &self.prior
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn unit_point(&self, i: usize) -> Point {
        self.prior.points()[i].clone()
    }
}

/// Where one observation in an agent's dataset came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Provenance {
    pub round: usize,
    pub source: usize,
    pub grid_index: usize,
}

/// One agent: its GP (which owns the dataset `D_{t,i}`), the provenance of
/// every observation in it, and a private RNG stream.
#[derive(Debug, Clone)]
pub struct AgentState {
    id: usize,
    posterior: GpPosterior,
    provenance: Vec<Provenance>,
    grid_index: Vec<usize>,
    rng: ChaCha8Rng,
}

impl AgentState {
    pub fn id(&self) -> usize {
        self.id
    }

    pub fn dataset(&self) -> &crate::gp::Dataset {
        self.posterior.data()
    }

    pub fn posterior(&self) -> &GpPosterior {
        &self.posterior
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    fn receive(&mut self, space: &SearchSpace, round: usize, queries: &[&AgentQuery]) -> Result<()> {
        for q in queries {
            self.provenance.push(Provenance {
                round,
                source: q.agent,
                grid_index: q.grid_index,
            });
            self.grid_index.push(q.grid_index);
        }
        self.posterior
            .extend(queries.iter().map(|q| (space.unit_point(q.grid_index), q.y)))
    }

    /// Phase one of a round: Thompson draw, argmax, noisy query.
    fn choose(&mut self, space: &SearchSpace) -> Result<AgentQuery> {
        let path = space.prior.sample_posterior(&self.posterior, &self.grid_index, &mut self.rng)?;
        let idx = argmax_index(&path)?;
        self.query(space, idx)
    }

    fn query(&mut self, space: &SearchSpace, grid_index: usize) -> Result<AgentQuery> {
        let point = space.points[grid_index].clone();
        let f = space.objective.eval_noiseless(&point)?;
        let y = space.objective.eval_noisy(&point, &mut self.rng)?;
        Ok(AgentQuery {
            agent: self.id,
            grid_index,
            point,
            y,
            f,
            data_size: self.posterior.len(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AgentQuery {
    pub agent: usize,
    pub grid_index: usize,
    /// Query location in domain coordinates.
    pub point: Point,
    /// Noisy observation seen by the agents.
    pub y: f64,
    /// Noiseless value, used only for regret.
    pub f: f64,
    /// Size of the dataset the query was chosen from.
    pub data_size: usize,
}

/// All queries of one round, one per agent in agent order. Round 0 holds
/// the random initial points.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord {
    pub t: usize,
    pub queries: Vec<AgentQuery>,
}

/// Give every agent one uniformly random grid point, evaluated noisily, and
/// share it with its neighbours so that `|D_{1,i}| = 1 + |N(i)|`.
pub fn init_agents(graph: &CommGraph, space: &SearchSpace, master_seed: u64) -> Result<(Vec<AgentState>, RoundRecord)> {
    let kernel = *space.prior.kernel();
    let noise = space.objective.noise_var();
    let mut agents = (0..graph.m())
        .map(|id| {
            Ok(AgentState {
                id,
                posterior: GpPosterior::prior(kernel, noise)?,
                provenance: Vec::new(),
                grid_index: Vec::new(),
                rng: stream_rng(master_seed, id as u64 + 1),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let queries = agents
        .iter_mut()
        .map(|a| {
            let idx = a.rng.gen_range(0..space.len());
            a.query(space, idx)
        })
        .collect::<Result<Vec<_>>>()?;
    let record = RoundRecord { t: 0, queries };
    broadcast(&mut agents, graph, space, &record)?;
    Ok((agents, record))
}

/// Phase two: each agent appends its own observation, then its neighbours'
/// in ascending agent order.
fn broadcast(agents: &mut [AgentState], graph: &CommGraph, space: &SearchSpace, record: &RoundRecord) -> Result<()> {
    for agent in agents.iter_mut() {
        let i = agent.id;
        let mut incoming = vec![&record.queries[i]];
        incoming.extend(graph.neighbors(i)?.iter().map(|&j| &record.queries[j]));
        agent.receive(space, record.t, &incoming)?;
    }
    Ok(())
}

/// Per-round regret values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegretRow {
    pub t: usize,
    /// `(1/M) Σ_i (f* − f(x_{t,i}))`
    pub r_a: f64,
    /// `f* − max_{τ ≤ t, i} f(x_{τ,i})`
    pub r_s: f64,
    pub cum_ra: f64,
    pub cum_rs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretTrace {
    pub seed: u64,
    pub config_hash: String,
    pub rows: Vec<RegretRow>,
}

impl RegretTrace {
    /// Regrets of rounds `1..` of `history` against `f*`; round 0 (the
    /// initial points) is not a query round and is skipped.
    pub fn from_history(seed: u64, opt_value: f64, history: &[RoundRecord]) -> Self {
        let mut rows = Vec::new();
        let (mut best, mut cum_ra, mut cum_rs) = (f64::NEG_INFINITY, 0.0, 0.0);
        for rec in history.iter().filter(|r| r.t >= 1) {
            let m = rec.queries.len() as f64;
            let r_a = rec.queries.iter().map(|q| opt_value - q.f).sum::<f64>() / m;
            best = rec.queries.iter().map(|q| q.f).fold(best, f64::max);
            let r_s = opt_value - best;
            cum_ra += r_a;
            cum_rs += r_s;
            rows.push(RegretRow {
                t: rec.t,
                r_a,
                r_s,
                cum_ra,
                cum_rs,
            });
        }
        Self {
            seed,
            config_hash: String::new(),
            rows,
        }
    }

    pub fn last(&self) -> Option<&RegretRow> {
        self.rows.last()
    }

    /// Simple regret non-increasing, regrets non-negative, running sums
    /// non-decreasing.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for (k, r) in self.rows.iter().enumerate() {
            if r.r_a < 0.0 || r.r_s < 0.0 {
                return Err(format!("negative regret at t={}", r.t));
            }
            if k > 0 {
                let p = &self.rows[k - 1];
                if r.r_s > p.r_s {
                    return Err(format!("simple regret increased at t={}", r.t));
                }
                if r.cum_ra < p.cum_ra || r.cum_rs < p.cum_rs {
                    return Err(format!("cumulative regret decreased at t={}", r.t));
                }
            }
        }
        Ok(())
    }

    /// `seed,t,R_A,R_S,cumRA,cumRS`
    pub fn to_csv(&self) -> String {
        let mut s = String::from("seed,t,R_A,R_S,cumRA,cumRS\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{},{},{}", self.seed, r.t, r.r_a, r.r_s, r.cum_ra, r.cum_rs);
        }
        s
    }
}

/// `seed,t,agent,x1,...,xd,y,f_noiseless`, including the round-0 initial
/// points.
pub fn query_log_csv(seed: u64, dim: usize, history: &[RoundRecord]) -> String {
    let mut s = String::from("seed,t,agent");
    for d in 1..=dim {
        let _ = write!(s, ",x{d}");
    }
    s.push_str(",y,f_noiseless\n");
    for rec in history {
        for q in &rec.queries {
            let _ = write!(s, "{},{},{}", seed, rec.t, q.agent);
            for c in q.point.coords() {
                let _ = write!(s, ",{c}");
            }
            let _ = writeln!(s, ",{},{}", q.y, q.f);
        }
    }
    s
}

/// A full simulation: agents, graph, grid and the global ledger of every
/// round's queries.
pub struct Simulation<'a> {
    graph: &'a CommGraph,
    space: &'a SearchSpace,
    seed: u64,
    agents: Vec<AgentState>,
    history: Vec<RoundRecord>,
}

impl<'a> Simulation<'a> {
    pub fn new(graph: &'a CommGraph, space: &'a SearchSpace, seed: u64) -> Result<Self> {
        if graph.m() == 0 {
            return Err(invalid("agents", "need at least one agent"));
        }
        let (agents, init) = init_agents(graph, space, seed)?;
        Ok(Self {
            graph,
            space,
            seed,
            agents,
            history: vec![init],
        })
    }

    /// Completed query rounds.
    pub fn round(&self) -> usize {
        self.history.len() - 1
    }

    pub fn agents(&self) -> &[AgentState] {
        &self.agents
    }

    pub fn history(&self) -> &[RoundRecord] {
        &self.history
    }

    pub fn space(&self) -> &SearchSpace {
        self.space
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Run one synchronous round: every agent chooses from data through the
    /// previous round, then all observations are exchanged.
    pub fn run_round(&mut self) -> Result<&RoundRecord> {
        let t = self.round() + 1;
        let space = self.space;
        let queries = self
            .agents
            .par_iter_mut()
            .map(|a| a.choose(space))
            .collect::<Result<Vec<_>>>()?;
        let record = RoundRecord { t, queries };
        broadcast(&mut self.agents, self.graph, space, &record)?;
        self.history.push(record);
        Ok(self.history.last().expect("just pushed"))
    }

    pub fn trace(&self) -> RegretTrace {
        RegretTrace::from_history(self.seed, self.space.objective.opt_value(), &self.history)
    }

    /// Check every agent's dataset against the global ledger: it must hold
    /// exactly the observations of itself and its neighbours from every
    /// completed round, with matching values, and every round-`t` query must
    /// have been chosen from the data of rounds before `t` only.
    pub fn check_consistency(&self) -> Result<()> {
        let now = self.round();
        for agent in &self.agents {
            let i = agent.id;
            let fail = |reason: String| Error::Consistency {
                agent: i,
                round: now,
                reason,
            };
            let mut group: Vec<usize> = self.graph.neighbors(i)?.to_vec();
            group.push(i);
            let expected: BTreeSet<(usize, usize)> = self
                .history
                .iter()
                .flat_map(|r| group.iter().map(move |&j| (r.t, j)))
                .collect();
            let held: BTreeSet<(usize, usize)> = agent.provenance.iter().map(|p| (p.round, p.source)).collect();
            if held.len() != agent.provenance.len() {
                return Err(fail("duplicate (round, agent) record".into()));
            }
            if held != expected {
                return Err(fail(format!("holds {} records, expected {}", held.len(), expected.len())));
            }
            let data = agent.dataset();
            if data.len() != agent.provenance.len() {
                return Err(fail("dataset and provenance lengths differ".into()));
            }
            for (p, (x, y)) in agent.provenance.iter().zip(data.iter()) {
                let q = &self.history[p.round].queries[p.source];
                if q.y != y || q.grid_index != p.grid_index || *x != self.space.unit_point(q.grid_index) {
                    return Err(fail(format!("record ({}, {}) differs from the ledger", p.round, p.source)));
                }
            }
            let per_round = group.len();
            for rec in self.history.iter().filter(|r| r.t >= 1) {
                let used = rec.queries[i].data_size;
                if used != rec.t * per_round {
                    return Err(fail(format!(
                        "round {} query used {used} observations, expected {}",
                        rec.t,
                        rec.t * per_round
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Everything produced by one seeded run.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub trace: RegretTrace,
    pub history: Vec<RoundRecord>,
    pub scaling: Scaling,
}

/// Run `rounds` rounds from a fresh initialization. With `verify`, the
/// ledger consistency check runs after every round.
pub fn run_experiment(
    graph: &CommGraph,
    space: &SearchSpace,
    rounds: usize,
    seed: u64,
    verify: bool,
) -> Result<RunOutput> {
    let mut sim = Simulation::new(graph, space, seed)?;
    if verify {
        sim.check_consistency()?;
    }
    for _ in 0..rounds {
        sim.run_round()?;
        if verify {
            sim.check_consistency()?;
        }
    }
    log::debug!("seed {seed}: {rounds} rounds done");
    Ok(RunOutput {
        trace: sim.trace(),
        scaling: space.objective.scaling(),
        history: sim.history,
    })
}

/// Mean and standard error of one quantity across seeds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanSe {
    pub mean: f64,
    pub se: f64,
}

impl MeanSe {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let se = if values.len() > 1 {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        } else {
            0.0
        };
        Self { mean, se }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub t: usize,
    pub r_a: MeanSe,
    pub r_s: MeanSe,
    pub cum_ra: MeanSe,
    pub cum_rs: MeanSe,
}

/// Seed-averaged regrets: the Monte-Carlo stand-in for the Bayesian
/// (expected) regrets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub seeds: usize,
    pub rows: Vec<AggregateRow>,
}

impl Aggregate {
    pub fn from_traces(traces: &[RegretTrace]) -> Result<Self> {
        let first = traces.first().ok_or(Error::EmptyInput("traces"))?;
        if traces.iter().any(|t| t.rows.len() != first.rows.len()) {
            return Err(invalid("traces", "traces have different lengths"));
        }
        let rows = (0..first.rows.len())
            .map(|k| {
                let col = |f: fn(&RegretRow) -> f64| MeanSe::of(&traces.iter().map(|t| f(&t.rows[k])).collect::<Vec<_>>());
                AggregateRow {
                    t: first.rows[k].t,
                    r_a: col(|r| r.r_a),
                    r_s: col(|r| r.r_s),
                    cum_ra: col(|r| r.cum_ra),
                    cum_rs: col(|r| r.cum_rs),
                }
            })
            .collect();
        Ok(Self {
            seeds: traces.len(),
            rows,
        })
    }

    pub fn last(&self) -> Option<&AggregateRow> {
        self.rows.last()
    }

    /// `t,n_seeds,mean_RA,se_RA,mean_RS,se_RS,mean_cumRA,se_cumRA,mean_cumRS,se_cumRS,bayes_avg_regret`
    /// where the last column is `mean_cumRA / t`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from(
            "t,n_seeds,mean_RA,se_RA,mean_RS,se_RS,mean_cumRA,se_cumRA,mean_cumRS,se_cumRS,bayes_avg_regret\n",
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{}",
                r.t,
                self.seeds,
                r.r_a.mean,
                r.r_a.se,
                r.r_s.mean,
                r.r_s.se,
                r.cum_ra.mean,
                r.cum_ra.se,
                r.cum_rs.mean,
                r.cum_rs.se,
                r.cum_ra.mean / r.t as f64
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gp::Kernel;
    use crate::objectives::ObjectiveKind;

    fn space(ppd: usize) -> SearchSpace {
        let obj = Objective::new(ObjectiveKind::Ackley, 0.01).unwrap();
        SearchSpace::new(obj, ppd, Kernel::default()).unwrap()
    }

    #[test]
    fn init_dataset_sizes() {
        let sp = space(8);
        let g = CommGraph::new(4, [(0, 1), (1, 2)]).unwrap();
        let (agents, rec) = init_agents(&g, &sp, 5).unwrap();
        assert_eq!(rec.queries.len(), 4);
        let sizes: Vec<usize> = agents.iter().map(|a| a.dataset().len()).collect();
        assert_eq!(sizes, vec![2, 3, 2, 1]);

        let (empty, _) = init_agents(&CommGraph::empty(3), &sp, 5).unwrap();
        assert!(empty.iter().all(|a| a.dataset().len() == 1));
    }

    #[test]
    fn init_is_deterministic() {
        let sp = space(8);
        let g = CommGraph::complete(3);
        let (a, _) = init_agents(&g, &sp, 9).unwrap();
        let (b, _) = init_agents(&g, &sp, 9).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.dataset(), y.dataset());
        }
    }

    #[test]
    fn complete_graph_shares_everything() {
        let sp = space(8);
        let g = CommGraph::complete(4);
        let mut sim = Simulation::new(&g, &sp, 1).unwrap();
        sim.run_round().unwrap();
        sim.run_round().unwrap();
        let sets: Vec<BTreeSet<(usize, usize)>> = sim
            .agents()
            .iter()
            .map(|a| a.provenance().iter().map(|p| (p.round, p.source)).collect())
            .collect();
        assert!(sets.windows(2).all(|w| w[0] == w[1]));
        sim.check_consistency().unwrap();
    }

    #[test]
    fn empty_graph_grows_by_one() {
        let sp = space(8);
        let g = CommGraph::empty(3);
        let mut sim = Simulation::new(&g, &sp, 2).unwrap();
        for t in 1..=3 {
            sim.run_round().unwrap();
            assert!(sim.agents().iter().all(|a| a.dataset().len() == t + 1));
        }
    }

    #[test]
    fn single_agent_reduces_to_sequential() {
        let sp = space(8);
        let g = CommGraph::empty(1);
        let out = run_experiment(&g, &sp, 6, 3, true).unwrap();
        assert_eq!(out.trace.rows.len(), 6);
        assert_eq!(out.history.len(), 7);
        let mut sim = Simulation::new(&g, &sp, 3).unwrap();
        for _ in 0..6 {
            sim.run_round().unwrap();
        }
        assert_eq!(sim.agents()[0].dataset().len(), 7);
    }

    #[test]
    fn zero_rounds_gives_empty_trace() {
        let sp = space(6);
        let out = run_experiment(&CommGraph::complete(2), &sp, 0, 0, true).unwrap();
        assert!(out.trace.rows.is_empty());
        assert_eq!(out.trace.to_csv(), "seed,t,R_A,R_S,cumRA,cumRS\n");
    }

    #[test]
    fn consistency_check_catches_tampering() {
        let sp = space(6);
        let g = CommGraph::complete(3);
        let mut sim = Simulation::new(&g, &sp, 4).unwrap();
        sim.run_round().unwrap();
        sim.agents[1].provenance.pop();
        assert!(matches!(sim.check_consistency(), Err(Error::Consistency { agent: 1, .. })));
    }

    #[test]
    fn regret_trace_from_handmade_history() {
        let q = |agent, f| AgentQuery {
            agent,
            grid_index: 0,
            point: Point::from([0.0, 0.0]),
            y: f,
            f,
            data_size: 0,
        };
        let history = vec![
            RoundRecord { t: 0, queries: vec![q(0, -5.0), q(1, -5.0)] },
            RoundRecord { t: 1, queries: vec![q(0, -1.0), q(1, -3.0)] },
            RoundRecord { t: 2, queries: vec![q(0, -2.0), q(1, -2.0)] },
        ];
        let tr = RegretTrace::from_history(7, 0.0, &history);
        assert_eq!(tr.rows[0], RegretRow { t: 1, r_a: 2.0, r_s: 1.0, cum_ra: 2.0, cum_rs: 1.0 });
        assert_eq!(tr.rows[1], RegretRow { t: 2, r_a: 2.0, r_s: 1.0, cum_ra: 4.0, cum_rs: 2.0 });
        tr.check_invariants().unwrap();
        assert_eq!(tr.to_csv(), "seed,t,R_A,R_S,cumRA,cumRS\n7,1,2,1,2,1\n7,2,2,1,4,2\n");
    }

    #[test]
    fn aggregate_mean_and_se() {
        let mk = |seed, v: f64| RegretTrace {
            seed,
            config_hash: String::new(),
            rows: vec![RegretRow { t: 1, r_a: v, r_s: v, cum_ra: v, cum_rs: v }],
        };
        let agg = Aggregate::from_traces(&[mk(0, 1.0), mk(1, 3.0)]).unwrap();
        let r = &agg.rows[0];
        assert_eq!(r.r_a.mean, 2.0);
        assert!((r.r_a.se - 1.0).abs() < 1e-12);
        assert!(Aggregate::from_traces(&[]).is_err());
    }

    #[test]
    fn query_log_layout() {
        let sp = space(6);
        let out = run_experiment(&CommGraph::empty(2), &sp, 1, 0, false).unwrap();
        let csv = query_log_csv(0, 2, &out.history);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "seed,t,agent,x1,x2,y,f_noiseless");
        assert_eq!(lines.len(), 1 + 2 * 2);
        assert!(lines[1].starts_with("0,0,0,"));
    }
}
