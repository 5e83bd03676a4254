//! Bandit instances, reward draws and regret accounting.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use rand::Rng;
use rand_distr::{Beta, Distribution};

use crate::error::{Error, Result};
use crate::graph::SoGraph;

/// Reward distribution family; every member has support in `[0, 1]` and is
/// parameterised by its mean.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum RewardFamily {
    #[default]
    Bernoulli,
    /// Beta(μc, (1-μ)c); means of exactly 0 or 1 draw the constant.
    Beta { concentration: f64 },
}

impl RewardFamily {
    pub fn sample<R: Rng + ?Sized>(&self, mean: f64, rng: &mut R) -> f64 {
        match *self {
            RewardFamily::Bernoulli => {
                if rng.gen::<f64>() < mean {
                    1.0
                } else {
                    0.0
                }
            }
            RewardFamily::Beta { concentration } => {
                if mean <= 0.0 || mean >= 1.0 {
                    return mean.clamp(0.0, 1.0);
                }
                let c = concentration;
                Beta::new(mean * c, (1.0 - mean) * c)
                    .expect("validated beta parameters")
                    .sample(rng)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct BanditInstance {
    means: Vec<f64>,
    family: RewardFamily,
    graph: SoGraph,
    neighborhoods: Vec<Vec<usize>>,
}

impl BanditInstance {
    pub fn new(means: Vec<f64>, family: RewardFamily, graph: SoGraph) -> Result<Self> {
        if means.len() != graph.num_arms() {
            return Err(Error::invalid(format!(
                "{} means for a graph with {} arms",
                means.len(),
                graph.num_arms()
            )));
        }
        if let Some((i, m)) = means
            .iter()
            .enumerate()
            .find(|(_, m)| !(0.0..=1.0).contains(*m))
        {
            return Err(Error::invalid(format!(
                "mean of arm {i} is {m}, outside [0, 1]"
            )));
        }
        if let RewardFamily::Beta { concentration } = family {
            if !(concentration > 0.0 && concentration.is_finite()) {
                return Err(Error::invalid("beta concentration must be positive"));
            }
        }
        let neighborhoods = (0..graph.num_arms())
            .map(|i| graph.closed_neighborhood(i))
            .collect();
        Ok(Self {
            means,
            family,
            graph,
            neighborhoods,
        })
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn family(&self) -> RewardFamily {
        self.family
    }

    pub fn graph(&self) -> &SoGraph {
        &self.graph
    }

    pub fn num_arms(&self) -> usize {
        self.means.len()
    }

    /// Cached `N(i)`, sorted ascending.
    pub fn neighborhood(&self, i: usize) -> &[usize] {
        &self.neighborhoods[i]
    }

    /// Restriction to `arms` (sorted, distinct): induced subgraph plus the
    /// matching means, relabelled so `arms[k]` becomes arm `k`.
    pub fn restrict(&self, arms: &[usize]) -> Result<Self> {
        let graph = self.graph.induced(arms)?;
        let means = arms.iter().map(|&a| self.means[a]).collect();
        Self::new(means, self.family, graph)
    }

    pub fn gap_profile(&self) -> GapProfile {
        gap_profile(self)
    }

    /// One round: the pulled arm's reward plus a fresh draw for each arm in
    /// `N(pulled)`. Draws consume `rng` in ascending arm order.
    pub fn sample_round<R: Rng + ?Sized>(&self, pulled: usize, rng: &mut R) -> RoundOutcome {
        let observations: Vec<(usize, f64)> = self.neighborhoods[pulled]
            .iter()
            .map(|&k| (k, self.family.sample(self.means[k], rng)))
            .collect();
        let reward = observations
            .iter()
            .find(|(k, _)| *k == pulled)
            .map(|&(_, x)| x)
            .expect("pulled arm is in its own neighborhood");
        RoundOutcome {
            pulled,
            reward,
            observations,
        }
    }
}

/// Free-function form of [`BanditInstance::sample_round`].
pub fn sample_round<R: Rng + ?Sized>(
    instance: &BanditInstance,
    pulled: usize,
    rng: &mut R,
) -> RoundOutcome {
    instance.sample_round(pulled, rng)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundOutcome {
    pub pulled: usize,
    pub reward: f64,
    /// `(arm, value)` for every arm in `N(pulled)`, ascending by arm.
    pub observations: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GapProfile {
    pub optimal_arm: usize,
    pub optimal_mean: f64,
    pub gaps: Vec<f64>,
}

impl GapProfile {
    /// Builds a profile directly from means (lowest-index argmax is optimal).
    pub fn from_means(means: &[f64]) -> Result<Self> {
        if means.is_empty() {
            return Err(Error::invalid("no arms"));
        }
        let mut optimal_arm = 0;
        for (i, &m) in means.iter().enumerate() {
            if m > means[optimal_arm] {
                optimal_arm = i;
            }
        }
        let optimal_mean = means[optimal_arm];
        Ok(Self {
            optimal_arm,
            optimal_mean,
            gaps: means.iter().map(|&m| optimal_mean - m).collect(),
        })
    }

    pub fn num_arms(&self) -> usize {
        self.gaps.len()
    }

    pub fn has_suboptimal_arm(&self) -> bool {
        self.gaps.iter().any(|&g| g > 0.0)
    }
}

pub fn gap_profile(instance: &BanditInstance) -> GapProfile {
    GapProfile::from_means(&instance.means).expect("instances have at least one arm")
}

/// `Σ_i Δ_i T_i(n)`.
pub fn pseudo_regret(gaps: &GapProfile, pull_counts: &[u64]) -> f64 {
    gaps.gaps
        .iter()
        .zip(pull_counts)
        .map(|(&d, &t)| d * t as f64)
        .sum()
}

/// Per-user acceptance probability: the fraction of the user's ratings
/// strictly above `threshold`. Users are indexed `0..=max_user`; every index
/// in that range must have at least one rating.
pub fn means_from_ratings(
    ratings: &BTreeMap<(usize, usize), f64>,
    threshold: f64,
) -> Result<Vec<f64>> {
    let Some(&(max_user, _)) = ratings.keys().next_back() else {
        return Err(Error::invalid("no ratings"));
    };
    let mut above = vec![0usize; max_user + 1];
    let mut total = vec![0usize; max_user + 1];
    for (&(user, _), &stars) in ratings {
        total[user] += 1;
        if stars > threshold {
            above[user] += 1;
        }
    }
    if let Some(user) = total.iter().position(|&n| n == 0) {
        return Err(Error::invalid(format!("user {user} has no ratings")));
    }
    Ok(above
        .iter()
        .zip(&total)
        .map(|(&a, &n)| a as f64 / n as f64)
        .collect())
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Means file: one value in `[0, 1]` per line, line order = arm order.
pub fn parse_means(text: &str, origin: &str) -> Result<Vec<f64>> {
    let mut means = Vec::new();
    for (line, content) in content_lines(text) {
        let value: f64 = content.parse().map_err(|_| Error::Parse {
            path: origin.into(),
            line,
            message: format!("`{content}` is not a number"),
        })?;
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::Parse {
                path: origin.into(),
                line,
                message: format!("mean {value} outside [0, 1]"),
            });
        }
        means.push(value);
    }
    if means.is_empty() {
        return Err(Error::Parse {
            path: origin.into(),
            line: 1,
            message: "no means found".into(),
        });
    }
    Ok(means)
}

pub fn load_means(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_means(&text, &path.display().to_string())
}

/// Ratings file: lines `user item stars`. A repeated `(user, item)` pair keeps
/// the last rating.
pub fn parse_ratings(text: &str, origin: &str) -> Result<BTreeMap<(usize, usize), f64>> {
    let mut out = BTreeMap::new();
    for (line, content) in content_lines(text) {
        let err = |message: String| Error::Parse {
            path: origin.into(),
            line,
            message,
        };
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err("expected `user item stars`".into()));
        }
        let user = fields[0]
            .parse()
            .map_err(|_| err(format!("bad user `{}`", fields[0])))?;
        let item = fields[1]
            .parse()
            .map_err(|_| err(format!("bad item `{}`", fields[1])))?;
        let stars: f64 = fields[2]
            .parse()
            .map_err(|_| err(format!("bad rating `{}`", fields[2])))?;
        out.insert((user, item), stars);
    }
    Ok(out)
}

pub fn load_ratings(path: impl AsRef<Path>) -> Result<BTreeMap<(usize, usize), f64>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_ratings(&text, &path.display().to_string())
}
