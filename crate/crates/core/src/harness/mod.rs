//! Monte-Carlo experiments: single runs, paired multi-run aggregation,
//! speedups and CSV output.
//!
//! Run `r` of every policy uses environment seed `base_seed + r`, so policy
//! comparisons are paired. Runs execute in parallel but are reduced in run
//! order, so the output does not depend on the degree of parallelism.

mod config;
mod csv;

pub use config::{parse_config, ExperimentConfig, GraphSpec, MeansSpec};
pub use csv::{format_csv, write_csv, CSV_HEADER};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::environment::{BanditInstance, RewardFamily};
use crate::error::{Error, Result};
use crate::graph::{cover_stats, greedy_clique_cover, CliqueCover, CoverStats};
use crate::policies::{
    select_epsilon_greedy, select_ucb1, select_ucb_maxn, select_ucbn, update_observations,
    update_on_neighborhood, update_pulled_only, EpsilonGreedyConfig, PolicySpec, PolicyState,
};

/// Everything recorded by one simulated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    /// Arm played at each round.
    pub pull_log: Vec<usize>,
    /// Arm whose index drove each decision: equals the pulled arm except for
    /// UCB-MaxN, where it is the arm chosen for observation.
    pub target_log: Vec<usize>,
    /// `pseudo_regret[t]` is `Σ_i Δ_i T_i(t)`; entry 0 is the empty prefix.
    pub pseudo_regret: Vec<f64>,
    /// `n μ* - Σ_t X_{I_t, t}` at the horizon.
    pub realized_regret: f64,
    pub final_state: PolicyState,
}

fn epsilon_config(
    spec: &PolicySpec,
    instance: &BanditInstance,
) -> Result<Option<EpsilonGreedyConfig>> {
    match *spec {
        PolicySpec::EpsilonGreedy { c, d, k_effective } => {
            let k = match k_effective {
                Some(k) => k,
                None => greedy_clique_cover(instance.graph(), 1.0)?.cliques().len(),
            };
            Ok(Some(EpsilonGreedyConfig::new(c, d, k)?))
        }
        _ => Ok(None),
    }
}

/// Plays `horizon` rounds of `policy` on `instance`. Deterministic in `seed`:
/// the environment stream is ChaCha8 seeded with `seed`, and epsilon-greedy's
/// own coin flips come from stream 1 of the same seed.
pub fn run_single(
    instance: &BanditInstance,
    policy: &PolicySpec,
    horizon: u64,
    seed: u64,
) -> Result<RunRecord> {
    if horizon == 0 {
        return Err(Error::invalid("horizon must be at least 1"));
    }
    let eps = epsilon_config(policy, instance)?;
    let gaps = instance.gap_profile();
    let mut env_rng = ChaCha8Rng::seed_from_u64(seed);
    let mut policy_rng = ChaCha8Rng::seed_from_u64(seed);
    policy_rng.set_stream(1);

    let mut state = PolicyState::new(instance.num_arms());
    let n = horizon as usize;
    let mut pull_log = Vec::with_capacity(n);
    let mut target_log = Vec::with_capacity(n);
    let mut pseudo_regret = Vec::with_capacity(n + 1);
    pseudo_regret.push(0.0);
    let mut cumulative = 0.0;
    let mut total_reward = 0.0;

    for _ in 0..horizon {
        let (target, pulled) = match policy {
            PolicySpec::Ucb1 => {
                let a = select_ucb1(&state);
                (a, a)
            }
            PolicySpec::UcbN | PolicySpec::Ucb1OnCliques => {
                let a = select_ucbn(&state);
                (a, a)
            }
            PolicySpec::UcbMaxN => {
                let c = select_ucb_maxn(&state, instance.graph());
                (c.observe_target, c.pulled)
            }
            PolicySpec::EpsilonGreedy { .. } => {
                let cfg = eps.as_ref().expect("epsilon config resolved above");
                let a = select_epsilon_greedy(&state, cfg, &mut policy_rng);
                (a, a)
            }
        };

        let outcome = instance.sample_round(pulled, &mut env_rng);
        match policy {
            PolicySpec::Ucb1 => update_pulled_only(&mut state, pulled, outcome.reward),
            PolicySpec::Ucb1OnCliques => update_on_neighborhood(
                &mut state,
                pulled,
                outcome.reward,
                instance.neighborhood(pulled),
            ),
            _ => update_observations(&mut state, &outcome),
        }

        cumulative += gaps.gaps[pulled];
        total_reward += outcome.reward;
        pull_log.push(pulled);
        target_log.push(target);
        pseudo_regret.push(cumulative);
    }

    Ok(RunRecord {
        pull_log,
        target_log,
        pseudo_regret,
        realized_regret: horizon as f64 * gaps.optimal_mean - total_reward,
        final_state: state,
    })
}

/// Checkpoint rounds: ten per decade (`round(10^(k/10))`, deduplicated) up to
/// `horizon`, always ending with `horizon`. `full` lists every round.
pub fn checkpoints(horizon: u64, full: bool) -> Vec<u64> {
    if full {
        return (1..=horizon).collect();
    }
    let mut out: Vec<u64> = Vec::new();
    for k in 0.. {
        let t = 10f64.powf(k as f64 / 10.0).round() as u64;
        if t >= horizon {
            break;
        }
        if out.last() != Some(&t) {
            out.push(t);
        }
    }
    out.push(horizon);
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub t: u64,
    /// Mean over runs of `pseudo_regret(t) / t`.
    pub mean_per_step_regret: f64,
    /// Sample standard deviation over runs divided by `sqrt(R)`; 0 for one run.
    pub stderr: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegretCurve {
    pub policy: String,
    pub points: Vec<CurvePoint>,
}

impl RegretCurve {
    /// Aggregates per-run trajectories (`runs[r][t]` = pseudo-regret after `t`
    /// rounds, entry 0 = 0) at `checkpoints`, reducing in run order.
    pub fn from_runs(policy: &str, runs: &[Vec<f64>], checkpoints: &[u64]) -> Self {
        let samples: Vec<Vec<f64>> = runs
            .iter()
            .map(|traj| {
                checkpoints
                    .iter()
                    .map(|&t| traj[t as usize] / t as f64)
                    .collect()
            })
            .collect();
        Self::from_checkpoint_samples(policy, &samples, checkpoints)
    }

    fn from_checkpoint_samples(policy: &str, samples: &[Vec<f64>], checkpoints: &[u64]) -> Self {
        let r = samples.len() as f64;
        let points = checkpoints
            .iter()
            .enumerate()
            .map(|(c, &t)| {
                let mut sum = 0.0;
                for run in samples {
                    sum += run[c];
                }
                let mean = sum / r;
                let stderr = if samples.len() > 1 {
                    let mut ss = 0.0;
                    for run in samples {
                        ss += (run[c] - mean).powi(2);
                    }
                    (ss / (r - 1.0)).sqrt() / r.sqrt()
                } else {
                    0.0
                };
                CurvePoint {
                    t,
                    mean_per_step_regret: mean,
                    stderr,
                }
            })
            .collect();
        Self {
            policy: policy.to_string(),
            points,
        }
    }

    /// Per-step regret at the last checkpoint.
    pub fn final_regret(&self) -> f64 {
        self.points.last().map_or(0.0, |p| p.mean_per_step_regret)
    }
}

/// Speedup of each policy over UCB1 at the horizon: `r_UCB1(T) / r_policy(T)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeedupReport {
    pub factors: Vec<(String, f64)>,
}

impl SpeedupReport {
    pub fn get(&self, policy: &str) -> Option<f64> {
        self.factors
            .iter()
            .find(|(p, _)| p == policy)
            .map(|&(_, k)| k)
    }
}

/// Computes speedups over the `ucb1` curve. `0 / 0` counts as 1, and a policy
/// with zero regret against a positive baseline gets `+inf`.
pub fn speedup(curves: &[RegretCurve]) -> Result<SpeedupReport> {
    let baseline = curves
        .iter()
        .find(|c| c.policy == PolicySpec::Ucb1.name())
        .ok_or_else(|| Error::invalid("speedup needs a ucb1 curve"))?
        .final_regret();
    let factors = curves
        .iter()
        .map(|c| {
            let r = c.final_regret();
            let k = if r == 0.0 {
                if baseline == 0.0 {
                    1.0
                } else {
                    f64::INFINITY
                }
            } else {
                baseline / r
            };
            (c.policy.clone(), k)
        })
        .collect();
    Ok(SpeedupReport { factors })
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    /// One curve per configured policy, in configuration order.
    pub curves: Vec<RegretCurve>,
    /// Present when `ucb1` is among the policies.
    pub speedups: Option<SpeedupReport>,
    pub cover_info: CoverStats,
    /// The cover in the original graph's labels.
    pub cover: CliqueCover,
    /// The instance the policies actually played (restricted to covered arms).
    pub instance: BanditInstance,
}

/// Runs every configured policy `num_runs` times on the instance restricted to
/// the arms covered by the greedy cover at `cover_fraction`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let graph = config.graph_spec.build(config.base_seed)?;
    let means = config.means_spec.resolve(graph.num_arms())?;
    let full = BanditInstance::new(means, RewardFamily::Bernoulli, graph)?;

    let cover = greedy_clique_cover(full.graph(), config.cover_fraction)
        .map_err(|e| Error::Config(e.to_string()))?;
    let cover_info = cover_stats(&cover);
    let instance = full.restrict(cover.covered())?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallelism)
        .build()
        .map_err(|e| Error::Config(format!("cannot start thread pool: {e}")))?;
    let marks = checkpoints(config.horizon, config.dump_full);

    let mut curves = Vec::with_capacity(config.policies.len());
    for spec in &config.policies {
        let spec = match *spec {
            PolicySpec::EpsilonGreedy { c, d, k_effective } => PolicySpec::EpsilonGreedy {
                c,
                d,
                k_effective: Some(k_effective.unwrap_or(cover_info.num_cliques)),
            },
            other => other,
        };
        let samples: Vec<Vec<f64>> = pool.install(|| {
            (0..config.num_runs)
                .into_par_iter()
                .map(|r| {
                    let seed = config.base_seed.wrapping_add(r);
                    let run = run_single(&instance, &spec, config.horizon, seed)?;
                    Ok(marks
                        .iter()
                        .map(|&t| run.pseudo_regret[t as usize] / t as f64)
                        .collect())
                })
                .collect::<Result<Vec<_>>>()
        })?;
        curves.push(RegretCurve::from_checkpoint_samples(
            spec.name(),
            &samples,
            &marks,
        ));
    }

    let speedups = if config.policies.contains(&PolicySpec::Ucb1) {
        Some(speedup(&curves)?)
    } else {
        None
    };

    Ok(ExperimentResult {
        curves,
        speedups,
        cover_info,
        cover,
        instance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_graph, GraphKind, SoGraph};

    fn instance(means: Vec<f64>, graph: SoGraph) -> BanditInstance {
        BanditInstance::new(means, RewardFamily::Bernoulli, graph).unwrap()
    }

    fn all_policies() -> Vec<PolicySpec> {
        PolicySpec::ALL_NAMES
            .iter()
            .map(|n| n.parse().unwrap())
            .collect()
    }

    #[test]
    fn single_arm_single_round() {
        let inst = instance(vec![0.4], SoGraph::edgeless(1).unwrap());
        for p in all_policies() {
            let run = run_single(&inst, &p, 1, 3).unwrap();
            assert_eq!(run.pull_log, vec![0]);
            assert_eq!(run.pseudo_regret, vec![0.0, 0.0]);
        }
        assert!(run_single(&inst, &PolicySpec::Ucb1, 0, 3).is_err());
    }

    #[test]
    fn equal_means_have_zero_regret() {
        let g = generate_graph(GraphKind::ErdosRenyi { p: 0.3 }, 12, 5).unwrap();
        let inst = instance(vec![0.5; 12], g);
        for p in all_policies() {
            let run = run_single(&inst, &p, 300, 9).unwrap();
            assert!(run.pseudo_regret.iter().all(|&r| r == 0.0), "{p}");
        }
    }

    #[test]
    fn edgeless_ucbn_replays_ucb1() {
        let means: Vec<f64> = (0..8).map(|i| 0.1 + 0.1 * i as f64).collect();
        let inst = instance(means, SoGraph::edgeless(8).unwrap());
        let base = run_single(&inst, &PolicySpec::Ucb1, 2000, 77).unwrap();
        let n = run_single(&inst, &PolicySpec::UcbN, 2000, 77).unwrap();
        assert_eq!(base.pull_log, n.pull_log);
    }

    #[test]
    fn trajectories_are_nondecreasing() {
        let g = generate_graph(GraphKind::PreferentialAttachment { m: 2 }, 15, 1).unwrap();
        let means: Vec<f64> = (0..15).map(|i| (i as f64 * 0.37).fract()).collect();
        let inst = instance(means, g);
        for p in all_policies() {
            let run = run_single(&inst, &p, 500, 4).unwrap();
            assert!(run.pseudo_regret.windows(2).all(|w| w[1] >= w[0]));
            assert_eq!(run.final_state.step, 500);
            assert_eq!(run.final_state.pull_counts.iter().sum::<u64>(), 500);
        }
    }

    #[test]
    fn checkpoint_grid() {
        assert_eq!(checkpoints(1, false), vec![1]);
        assert_eq!(checkpoints(10, false), vec![1, 2, 3, 4, 5, 6, 8, 10]);
        let c = checkpoints(50_000, false);
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(*c.last().unwrap(), 50_000);
        assert!(c.contains(&10_000));
        assert_eq!(checkpoints(4, true), vec![1, 2, 3, 4]);
    }

    #[test]
    fn curve_aggregation() {
        let runs = vec![vec![0.0, 1.0, 2.0], vec![0.0, 0.0, 1.0]];
        let c = RegretCurve::from_runs("x", &runs, &[1, 2]);
        assert_eq!(c.points[0].mean_per_step_regret, 0.5);
        assert!((c.points[0].stderr - 0.5).abs() < 1e-12);
        assert_eq!(c.points[1].mean_per_step_regret, 0.75);

        let one = RegretCurve::from_runs("x", &runs[..1], &[1, 2]);
        assert_eq!(one.points[1].mean_per_step_regret, 1.0);
        assert_eq!(one.points[1].stderr, 0.0);
    }

    fn flat_curve(policy: &str, r: f64) -> RegretCurve {
        RegretCurve {
            policy: policy.into(),
            points: vec![CurvePoint {
                t: 10,
                mean_per_step_regret: r,
                stderr: 0.0,
            }],
        }
    }

    #[test]
    fn speedup_conventions() {
        let s = speedup(&[flat_curve("ucb1", 0.10), flat_curve("ucb-n", 0.02)]).unwrap();
        assert!((s.get("ucb-n").unwrap() - 5.0).abs() < 1e-12);
        assert_eq!(s.get("ucb1"), Some(1.0));

        let s = speedup(&[flat_curve("ucb1", 0.0), flat_curve("ucb-n", 0.0)]).unwrap();
        assert_eq!(s.get("ucb-n"), Some(1.0));
        assert_eq!(s.get("ucb1"), Some(1.0));

        let s = speedup(&[flat_curve("ucb1", 0.3), flat_curve("ucb-n", 0.0)]).unwrap();
        assert_eq!(s.get("ucb-n"), Some(f64::INFINITY));

        assert!(speedup(&[flat_curve("ucb-n", 0.1)]).is_err());
    }

    #[test]
    fn ucb_family_cold_start_targets_unseen_arms() {
        let g = generate_graph(GraphKind::ErdosRenyi { p: 0.2 }, 30, 3).unwrap();
        let means: Vec<f64> = (0..30).map(|i| (i as f64 * 0.61).fract()).collect();
        let inst = instance(means, g);
        for p in [
            PolicySpec::Ucb1,
            PolicySpec::UcbN,
            PolicySpec::UcbMaxN,
            PolicySpec::Ucb1OnCliques,
        ] {
            let run = run_single(&inst, &p, 200, 12).unwrap();
            let k = inst.num_arms();
            let mut seen = vec![false; k];
            for (&target, &pulled) in run.target_log.iter().zip(&run.pull_log) {
                if seen.iter().any(|s| !s) {
                    assert!(!seen[target], "{p} targeted an already-seen arm");
                }
                if p == PolicySpec::Ucb1 {
                    seen[pulled] = true;
                } else {
                    for &j in inst.neighborhood(pulled) {
                        seen[j] = true;
                    }
                }
            }
        }
    }
}
