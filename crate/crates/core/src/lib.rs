//! Stochastic multi-armed bandits with side observations.
//!
//! Pulling an arm reveals its reward and, for free, a reward sample of every
//! neighbor in an undirected side-observation graph. The crate provides:
//!
//! - [`graph`]: the side-observation graph, maximal cliques, greedy clique
//!   covers, synthetic generators and the edge-list format.
//! - [`environment`]: bandit instances, per-round reward/observation draws and
//!   pseudo-regret accounting.
//! - [`policies`]: UCB1, UCB-N, UCB-MaxN, UCB1-on-cliques and epsilon_n-greedy.
//! - [`bounds`]: closed-form regret bounds for clique covers and the two-sample
//!   tail bound used by UCB-MaxN's analysis.
//! - [`harness`]: reproducible Monte-Carlo experiments, regret curves,
//!   speedups and CSV output.
//!
//! ```
//! use side_bandits::environment::{BanditInstance, RewardFamily};
//! use side_bandits::graph::{generate_graph, GraphKind};
//! use side_bandits::harness::run_single;
//! use side_bandits::policies::PolicySpec;
//!
//! let graph = generate_graph(GraphKind::Complete, 4, 0).unwrap();
//! let instance = BanditInstance::new(vec![0.9, 0.5, 0.4, 0.2], RewardFamily::Bernoulli, graph).unwrap();
//! let run = run_single(&instance, &PolicySpec::UcbN, 200, 7).unwrap();
//! assert_eq!(run.pull_log.len(), 200);
//! ```

pub mod bounds;
pub mod environment;
pub mod error;
pub mod graph;
pub mod harness;
mod numfmt;
pub mod policies;

pub use error::{Error, Result};
