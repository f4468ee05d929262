//! Multi-agent Bayesian optimization by distributed Thompson sampling.
//!
//! `M` agents search a grid for the maximum of a noisy black-box function.
//! Each agent keeps its own Gaussian process, conditioned on its own queries
//! and on those broadcast by its neighbours in an undirected communication
//! graph. Rounds are synchronous: all agents draw a posterior sample and
//! query its maximizer, then exchange the new observations.
//!
//! Modules:
//!
//! - [`gp`]: kernels, exact posteriors, joint posterior draws, grid argmax
//! - [`info`]: information gain, greedy maximal-information estimates, `ξ_n`
//! - [`graph`]: communication graphs, Erdős–Rényi sampling, clique cover
//!   and maximum clique
//! - [`objectives`]: negated Rosenbrock and Ackley, noisy evaluation, grids
//! - [`sim`]: the round engine, regret traces and seed aggregates
//! - [`bounds`]: average- and simple-regret bound formulas
//! - [`experiment`]: sweep configuration, CSV/JSON/SVG output, the CLI
//!
//! The `examples/` directory has one runnable program per capability:
//!
//! ```bash
//! cargo run --release -p dts --example gp_posterior
//! cargo run --release -p dts --example information_gain
//! cargo run --release -p dts --example clique_structure
//! cargo run --release -p dts --example objectives
//! cargo run --release -p dts --example single_run
//! cargo run --release -p dts --example regret_bounds
//! cargo run --release -p dts --example connectivity_sweep
//! ```

pub mod bounds;
pub mod error;
pub mod experiment;
pub mod gp;
pub mod graph;
pub mod info;
pub mod linalg;
pub mod objectives;
pub mod sim;

pub use error::{Error, Result};
pub use gp::{argmax_on_grid, Dataset, GpPosterior, GridPrior, Kernel, KernelFamily, Point};
pub use graph::{erdos_renyi, greedy_clique_cover, max_clique, CliqueCover, CommGraph};
pub use objectives::{Objective, ObjectiveKind};
pub use sim::{run_experiment, RegretTrace, SearchSpace, Simulation};
