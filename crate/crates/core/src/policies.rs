//! Arm-selection and update rules.
//!
//! Every policy keeps a [`PolicyState`]; the time index used in exploration
//! bonuses is the global round number `t = step + 1`. Argmax ties always go to
//! the lowest arm index.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::environment::RoundOutcome;
use crate::error::{Error, Result};
use crate::graph::SoGraph;

#[derive(Debug, Clone, PartialEq)]
pub struct PolicyState {
    /// Empirical mean per arm; 0 until the arm is first observed.
    pub empirical_means: Vec<f64>,
    /// Number of samples behind each mean (pulls plus side observations).
    pub obs_counts: Vec<u64>,
    /// Direct pulls per arm.
    pub pull_counts: Vec<u64>,
    /// Rounds played so far.
    pub step: u64,
}

impl PolicyState {
    pub fn new(num_arms: usize) -> Self {
        Self {
            empirical_means: vec![0.0; num_arms],
            obs_counts: vec![0; num_arms],
            pull_counts: vec![0; num_arms],
            step: 0,
        }
    }

    pub fn num_arms(&self) -> usize {
        self.empirical_means.len()
    }

    /// Time index for the next decision.
    pub fn next_t(&self) -> u64 {
        self.step + 1
    }

    fn observe(&mut self, arm: usize, value: f64) {
        self.obs_counts[arm] += 1;
        let o = self.obs_counts[arm] as f64;
        self.empirical_means[arm] = value / o + (1.0 - 1.0 / o) * self.empirical_means[arm];
    }
}

/// `mean + sqrt(2 ln t / count)`, or `+inf` for an arm never sampled.
pub fn ucb_index(mean: f64, count: u64, t: u64) -> Result<f64> {
    if t == 0 {
        return Err(Error::invalid("ucb_index needs t >= 1"));
    }
    Ok(index_unchecked(mean, count, (t as f64).ln()))
}

#[inline]
fn index_unchecked(mean: f64, count: u64, ln_t: f64) -> f64 {
    if count == 0 {
        f64::INFINITY
    } else {
        mean + (2.0 * ln_t / count as f64).sqrt()
    }
}

fn argmax_index(means: &[f64], counts: &[u64], t: u64) -> usize {
    let ln_t = (t as f64).ln();
    let mut best = 0;
    let mut best_value = f64::NEG_INFINITY;
    for (i, (&m, &c)) in means.iter().zip(counts).enumerate() {
        let v = index_unchecked(m, c, ln_t);
        if v > best_value {
            best = i;
            best_value = v;
            if v == f64::INFINITY {
                break;
            }
        }
    }
    best
}

/// UCB1: index built from pull counts.
pub fn select_ucb1(state: &PolicyState) -> usize {
    argmax_index(&state.empirical_means, &state.pull_counts, state.next_t())
}

/// UCB-N: index built from observation counts.
pub fn select_ucbn(state: &PolicyState) -> usize {
    argmax_index(&state.empirical_means, &state.obs_counts, state.next_t())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxNChoice {
    /// Arm with the highest UCB, the one UCB-MaxN wants to learn about.
    pub observe_target: usize,
    /// Empirically best arm of `N(observe_target)`; this is the arm played.
    pub pulled: usize,
}

/// UCB-MaxN: pick the arm to observe by UCB, then play the empirically best
/// member of its closed neighborhood.
pub fn select_ucb_maxn(state: &PolicyState, graph: &SoGraph) -> MaxNChoice {
    let target = select_ucbn(state);
    let pulled = best_mean_in(state, &graph.closed_neighborhood(target));
    MaxNChoice {
        observe_target: target,
        pulled,
    }
}

pub(crate) fn best_mean_in(state: &PolicyState, arms: &[usize]) -> usize {
    let mut best = arms[0];
    for &k in &arms[1..] {
        if state.empirical_means[k] > state.empirical_means[best] {
            best = k;
        }
    }
    best
}

/// Counts the round and folds every observation of `outcome` into the means.
pub fn update_observations(state: &mut PolicyState, outcome: &RoundOutcome) {
    state.pull_counts[outcome.pulled] += 1;
    state.step += 1;
    for &(k, x) in &outcome.observations {
        state.observe(k, x);
    }
}

/// UCB1-on-cliques update: every arm of `N(pulled)` is updated with the
/// pulled arm's own reward.
pub fn update_on_cliques(state: &mut PolicyState, pulled: usize, reward: f64, graph: &SoGraph) {
    update_on_neighborhood(state, pulled, reward, &graph.closed_neighborhood(pulled));
}

pub(crate) fn update_on_neighborhood(
    state: &mut PolicyState,
    pulled: usize,
    reward: f64,
    neighborhood: &[usize],
) {
    state.pull_counts[pulled] += 1;
    state.step += 1;
    for &k in neighborhood {
        state.observe(k, reward);
    }
}

/// Plain bandit update: only the pulled arm's reward is used.
pub fn update_pulled_only(state: &mut PolicyState, pulled: usize, reward: f64) {
    state.pull_counts[pulled] += 1;
    state.step += 1;
    state.observe(pulled, reward);
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonGreedyConfig {
    pub c: f64,
    pub d: f64,
    /// Effective number of arms in the schedule, normally the number of
    /// cliques of the active cover.
    pub k_effective: usize,
}

impl EpsilonGreedyConfig {
    pub const DEFAULT_C: f64 = 5.0;
    pub const DEFAULT_D: f64 = 1.0;

    pub fn new(c: f64, d: f64, k_effective: usize) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) || !(d > 0.0 && d.is_finite()) || k_effective == 0 {
            return Err(Error::invalid(format!(
                "epsilon-greedy needs c > 0, d > 0, k_effective >= 1 (got {c}, {d}, {k_effective})"
            )));
        }
        Ok(Self { c, d, k_effective })
    }

    /// `min(1, c K / (d^2 n))`.
    pub fn epsilon(&self, n: u64) -> f64 {
        (self.c * self.k_effective as f64 / (self.d * self.d * n as f64)).min(1.0)
    }
}

/// epsilon_n-greedy: explore a uniformly random arm with probability
/// `epsilon(n)`, otherwise play the lowest-index argmax of the means.
pub fn select_epsilon_greedy<R: Rng + ?Sized>(
    state: &PolicyState,
    cfg: &EpsilonGreedyConfig,
    rng: &mut R,
) -> usize {
    let eps = cfg.epsilon(state.next_t());
    if rng.gen::<f64>() < eps {
        rng.gen_range(0..state.num_arms())
    } else {
        greedy_arm(state)
    }
}

fn greedy_arm(state: &PolicyState) -> usize {
    let mut best = 0;
    for (i, &m) in state.empirical_means.iter().enumerate() {
        if m > state.empirical_means[best] {
            best = i;
        }
    }
    best
}

/// A policy and its parameters, as named on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolicySpec {
    Ucb1,
    UcbN,
    UcbMaxN,
    Ucb1OnCliques,
    /// `k_effective = None` means "number of cliques in a full greedy cover of
    /// the instance's graph".
    EpsilonGreedy {
        c: f64,
        d: f64,
        k_effective: Option<usize>,
    },
}

impl PolicySpec {
    pub const ALL_NAMES: [&'static str; 5] = [
        "ucb1",
        "ucb-n",
        "ucb-maxn",
        "ucb1-on-cliques",
        "epsilon-greedy",
    ];

    pub fn epsilon_greedy() -> Self {
        PolicySpec::EpsilonGreedy {
            c: EpsilonGreedyConfig::DEFAULT_C,
            d: EpsilonGreedyConfig::DEFAULT_D,
            k_effective: None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PolicySpec::Ucb1 => "ucb1",
            PolicySpec::UcbN => "ucb-n",
            PolicySpec::UcbMaxN => "ucb-maxn",
            PolicySpec::Ucb1OnCliques => "ucb1-on-cliques",
            PolicySpec::EpsilonGreedy { .. } => "epsilon-greedy",
        }
    }
}

impl fmt::Display for PolicySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ucb1" => Ok(PolicySpec::Ucb1),
            "ucb-n" => Ok(PolicySpec::UcbN),
            "ucb-maxn" => Ok(PolicySpec::UcbMaxN),
            "ucb1-on-cliques" => Ok(PolicySpec::Ucb1OnCliques),
            "epsilon-greedy" => Ok(PolicySpec::epsilon_greedy()),
            other => Err(Error::Config(format!(
                "unknown policy `{other}` (expected one of {})",
                PolicySpec::ALL_NAMES.join(", ")
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn state(means: &[f64], obs: &[u64], pulls: &[u64], step: u64) -> PolicyState {
        PolicyState {
            empirical_means: means.to_vec(),
            obs_counts: obs.to_vec(),
            pull_counts: pulls.to_vec(),
            step,
        }
    }

    fn outcome(pulled: usize, obs: &[(usize, f64)]) -> RoundOutcome {
        let reward = obs.iter().find(|o| o.0 == pulled).unwrap().1;
        RoundOutcome {
            pulled,
            reward,
            observations: obs.to_vec(),
        }
    }

    #[test]
    fn ucb_index_examples() {
        // No integer t has ln t = 2 exactly; check the formula at ln t = 2.
        assert_eq!(index_unchecked(0.5, 4, 2.0), 1.5);

        assert_eq!(ucb_index(0.3, 0, 1).unwrap(), f64::INFINITY);
        assert_eq!(ucb_index(0.9, 0, 1000).unwrap(), f64::INFINITY);
        assert!((ucb_index(0.2, 1, 10).unwrap() - 2.3460).abs() < 5e-5);
        assert!(ucb_index(0.2, 1, 0).is_err());
    }

    #[test]
    fn ucb1_selection() {
        let s = PolicyState::new(3);
        assert_eq!(select_ucb1(&s), 0);
        let s = state(&[0.9, 0.1], &[100, 100], &[100, 100], 100);
        assert_eq!(select_ucb1(&s), 0);
        let s = state(&[0.5, 0.5], &[1, 100], &[1, 100], 100);
        assert_eq!(select_ucb1(&s), 0);
        // UCB1 ignores observation counts.
        let s = state(&[0.5, 0.5], &[100, 100], &[50, 1], 51);
        assert_eq!(select_ucb1(&s), 1);
    }

    #[test]
    fn ucbn_selection() {
        let s = state(&[0.2, 0.9, 0.4], &[1, 5, 3], &[0, 5, 4], 9);
        let ln10 = 10f64.ln();
        let idx: Vec<f64> = (0..3)
            .map(|i| index_unchecked(s.empirical_means[i], s.obs_counts[i], ln10))
            .collect();
        let want = [2.3460, 1.8597, 1.6390];
        for (a, b) in idx.iter().zip(want) {
            assert!((a - b).abs() < 5e-5, "{a} vs {b}");
        }
        assert_eq!(select_ucbn(&s), 0);

        let s = state(&[0.9, 0.9, 0.1, 0.0], &[3, 3, 3, 0], &[3, 3, 0, 0], 6);
        assert_eq!(select_ucbn(&s), 3);
    }

    #[test]
    fn maxn_selection() {
        let path = SoGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let s = state(&[0.2, 0.9, 0.4], &[1, 5, 3], &[0, 5, 4], 9);
        let c = select_ucb_maxn(&s, &path);
        assert_eq!(
            c,
            MaxNChoice {
                observe_target: 0,
                pulled: 1
            }
        );

        let edgeless = SoGraph::edgeless(3).unwrap();
        let c = select_ucb_maxn(&s, &edgeless);
        assert_eq!(c.pulled, c.observe_target);

        let tri = SoGraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let s = state(&[0.5, 0.5, 0.5], &[1, 1, 0], &[1, 0, 0], 1);
        assert_eq!(
            select_ucb_maxn(&s, &tri),
            MaxNChoice {
                observe_target: 2,
                pulled: 0
            }
        );
    }

    #[test]
    fn observation_updates() {
        let mut s = PolicyState::new(3);
        update_observations(&mut s, &outcome(1, &[(0, 1.0), (1, 0.0), (2, 1.0)]));
        assert_eq!(s.empirical_means, vec![1.0, 0.0, 1.0]);
        assert_eq!(s.obs_counts, vec![1, 1, 1]);
        assert_eq!(s.pull_counts, vec![0, 1, 0]);
        assert_eq!(s.step, 1);

        let mut s = state(&[0.5], &[2], &[2], 2);
        update_observations(&mut s, &outcome(0, &[(0, 1.0)]));
        assert!((s.empirical_means[0] - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(s.obs_counts[0], 3);
    }

    #[test]
    fn clique_updates() {
        let tri = SoGraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let mut s = PolicyState::new(3);
        update_on_cliques(&mut s, 0, 1.0, &tri);
        assert_eq!(s.empirical_means, vec![1.0, 1.0, 1.0]);
        assert_eq!(s.obs_counts, vec![1, 1, 1]);

        let path = SoGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let mut s = PolicyState::new(3);
        update_on_cliques(&mut s, 1, 0.0, &path);
        update_on_cliques(&mut s, 1, 1.0, &path);
        assert_eq!(s.empirical_means, vec![0.5, 0.5, 0.5]);
        assert_eq!(s.pull_counts, vec![0, 2, 0]);
        assert_eq!(s.step, 2);

        let edgeless = SoGraph::edgeless(2).unwrap();
        let mut a = PolicyState::new(2);
        let mut b = PolicyState::new(2);
        for (arm, r) in [(0, 1.0), (1, 0.0), (0, 0.0), (1, 1.0)] {
            update_on_cliques(&mut a, arm, r, &edgeless);
            update_pulled_only(&mut b, arm, r);
        }
        assert_eq!(a, b);
    }

    #[test]
    fn epsilon_schedule() {
        let cfg = EpsilonGreedyConfig::new(5.0, 1.0, 10).unwrap();
        assert!((cfg.epsilon(100) - 0.5).abs() < 1e-12);
        assert_eq!(cfg.epsilon(1), 1.0);
        assert_eq!(cfg.epsilon(50), 1.0);
        assert!(cfg.epsilon(51) < 1.0);
        assert!(EpsilonGreedyConfig::new(0.0, 1.0, 1).is_err());
        assert!(EpsilonGreedyConfig::new(1.0, 1.0, 0).is_err());
    }

    #[test]
    fn epsilon_greedy_exploits_when_schedule_vanishes() {
        // Tiny c makes epsilon ~ 0 once n is large.
        let cfg = EpsilonGreedyConfig::new(1e-12, 1.0, 1).unwrap();
        let s = state(&[0.1, 0.7, 0.7, 0.3], &[9; 4], &[9; 4], 1_000_000);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert_eq!(select_epsilon_greedy(&s, &cfg, &mut rng), 1);
        }
    }

    #[test]
    fn epsilon_greedy_explores_uniformly_at_start() {
        let cfg = EpsilonGreedyConfig::new(5.0, 1.0, 4).unwrap();
        let s = state(&[0.9, 0.0, 0.0, 0.0], &[1, 0, 0, 0], &[1, 0, 0, 0], 1);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut hits = [0usize; 4];
        for _ in 0..4000 {
            hits[select_epsilon_greedy(&s, &cfg, &mut rng)] += 1;
        }
        assert!(hits.iter().all(|&h| h > 800), "{hits:?}");
    }

    #[test]
    fn policy_names_round_trip() {
        for name in PolicySpec::ALL_NAMES {
            assert_eq!(name.parse::<PolicySpec>().unwrap().name(), name);
        }
        assert!(matches!(
            "thompson".parse::<PolicySpec>(),
            Err(Error::Config(_))
        ));
    }

    proptest! {
        #[test]
        fn incremental_mean_matches_batch(values in prop::collection::vec(0.0f64..=1.0, 1..200)) {
            let mut s = PolicyState::new(1);
            for &x in &values {
                update_observations(&mut s, &outcome(0, &[(0, x)]));
                prop_assert!((0.0..=1.0).contains(&s.empirical_means[0]));
            }
            let batch = values.iter().sum::<f64>() / values.len() as f64;
            prop_assert!((s.empirical_means[0] - batch).abs() <= 1e-9);
        }

        #[test]
        fn shifting_means_keeps_choices(
            raw in prop::collection::vec((0u32..=48, 0u64..6), 1..12),
            shift in 0u32..16,
            step in 0u64..40,
        ) {
            let means: Vec<f64> = raw.iter().map(|&(m, _)| m as f64 / 64.0).collect();
            let shifted: Vec<f64> = raw.iter().map(|&(m, _)| (m + shift) as f64 / 64.0).collect();
            let obs: Vec<u64> = raw.iter().map(|&(_, o)| o).collect();
            let a = state(&means, &obs, &obs, step);
            let b = state(&shifted, &obs, &obs, step);
            prop_assert_eq!(select_ucb1(&a), select_ucb1(&b));
            prop_assert_eq!(select_ucbn(&a), select_ucbn(&b));
            prop_assert_eq!(greedy_arm(&a), greedy_arm(&b));
            let k = means.len();
            let g = SoGraph::new(k, &(1..k).map(|v| (v - 1, v)).collect::<Vec<_>>()).unwrap();
            prop_assert_eq!(select_ucb_maxn(&a, &g), select_ucb_maxn(&b, &g));
        }
    }
}
