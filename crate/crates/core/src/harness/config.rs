use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::environment::{load_means, load_ratings, means_from_ratings};
use crate::error::{Error, Result};
use crate::graph::{generate_graph, load_edge_list, GraphKind, SoGraph};
use crate::policies::{EpsilonGreedyConfig, PolicySpec};

/// Where the side-observation graph comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSpec {
    /// `seed = None` falls back to the experiment's base seed.
    Generated {
        kind: GraphKind,
        num_arms: usize,
        seed: Option<u64>,
    },
    EdgeList(PathBuf),
}

impl GraphSpec {
    pub fn build(&self, base_seed: u64) -> Result<SoGraph> {
        match self {
            GraphSpec::Generated {
                kind,
                num_arms,
                seed,
            } => generate_graph(*kind, *num_arms, seed.unwrap_or(base_seed)),
            GraphSpec::EdgeList(path) => load_edge_list(path),
        }
    }

    /// Parses `complete:K`, `star:K`, `path:K`, `er:K:p[:seedS]` and
    /// `pa:K:m[:seedS]` (long names `erdos-renyi` and
    /// `preferential-attachment` also accepted).
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::Usage(format!("bad --graph `{text}`: {why}"));
        let parts: Vec<&str> = text.split(':').collect();
        let num_arms = parts
            .get(1)
            .ok_or_else(|| bad("missing arm count"))?
            .parse::<usize>()
            .map_err(|_| bad("arm count is not an integer"))?;
        let seed = |idx: usize| -> Result<Option<u64>> {
            match parts.get(idx) {
                None => Ok(None),
                Some(s) => parse_seed(s).map(Some).ok_or_else(|| bad("bad seed")),
            }
        };
        let (kind, max_parts) = match parts[0] {
            "complete" => (GraphKind::Complete, 2),
            "star" => (GraphKind::Star, 2),
            "path" => (GraphKind::Path, 2),
            "er" | "erdos-renyi" => {
                let p = parts
                    .get(2)
                    .ok_or_else(|| bad("missing edge probability"))?
                    .parse::<f64>()
                    .map_err(|_| bad("edge probability is not a number"))?;
                (GraphKind::ErdosRenyi { p }, 4)
            }
            "pa" | "preferential-attachment" => {
                let m = parts
                    .get(2)
                    .ok_or_else(|| bad("missing attachment count"))?
                    .parse::<usize>()
                    .map_err(|_| bad("attachment count is not an integer"))?;
                (GraphKind::PreferentialAttachment { m }, 4)
            }
            other => return Err(bad(&format!("unknown graph kind `{other}`"))),
        };
        if parts.len() > max_parts {
            return Err(bad("too many fields"));
        }
        let seed = if max_parts == 4 { seed(3)? } else { None };
        Ok(GraphSpec::Generated {
            kind,
            num_arms,
            seed,
        })
    }
}

fn parse_seed(s: &str) -> Option<u64> {
    s.strip_prefix("seed").unwrap_or(s).parse().ok()
}

/// Where per-arm means come from.
#[derive(Debug, Clone, PartialEq)]
pub enum MeansSpec {
    /// I.i.d. uniform draws on `[low, high]`.
    Uniform {
        low: f64,
        high: f64,
        seed: u64,
    },
    File(PathBuf),
    /// Per-user acceptance rates from a `user item stars` ratings file.
    Ratings {
        path: PathBuf,
        threshold: f64,
    },
}

impl MeansSpec {
    pub const DEFAULT_RATING_THRESHOLD: f64 = 3.5;

    /// Parses `uniform:a:b[:seedS]`, `ratings:PATH[:threshold]`, `file:PATH`,
    /// or a bare path to a means file.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::Usage(format!("bad --means `{text}`: {why}"));
        if let Some(rest) = text.strip_prefix("uniform:") {
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() < 2 || parts.len() > 3 {
                return Err(bad("expected uniform:a:b[:seedS]"));
            }
            let low: f64 = parts[0].parse().map_err(|_| bad("bad lower end"))?;
            let high: f64 = parts[1].parse().map_err(|_| bad("bad upper end"))?;
            if !(0.0 <= low && low <= high && high <= 1.0) {
                return Err(bad("need 0 <= a <= b <= 1"));
            }
            let seed = match parts.get(2) {
                Some(s) => parse_seed(s).ok_or_else(|| bad("bad seed"))?,
                None => 0,
            };
            return Ok(MeansSpec::Uniform { low, high, seed });
        }
        if let Some(rest) = text.strip_prefix("ratings:") {
            // A trailing `:number` is the threshold; anything else is path.
            if let Some((path, thr)) = rest.rsplit_once(':') {
                if let Ok(threshold) = thr.parse::<f64>() {
                    return Ok(MeansSpec::Ratings {
                        path: path.into(),
                        threshold,
                    });
                }
            }
            return Ok(MeansSpec::Ratings {
                path: rest.into(),
                threshold: Self::DEFAULT_RATING_THRESHOLD,
            });
        }
        let path = text.strip_prefix("file:").unwrap_or(text);
        if path.is_empty() {
            return Err(bad("empty path"));
        }
        Ok(MeansSpec::File(path.into()))
    }

    /// Produces exactly `num_arms` means.
    pub fn resolve(&self, num_arms: usize) -> Result<Vec<f64>> {
        let means = match self {
            MeansSpec::Uniform { low, high, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..num_arms)
                    .map(|_| low + (high - low) * rng.gen::<f64>())
                    .collect()
            }
            MeansSpec::File(path) => load_means(path)?,
            MeansSpec::Ratings { path, threshold } => {
                means_from_ratings(&load_ratings(path)?, *threshold)?
            }
        };
        if means.len() != num_arms {
            return Err(Error::Config(format!(
                "{} means for a graph with {num_arms} arms",
                means.len()
            )));
        }
        Ok(means)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub graph_spec: GraphSpec,
    pub means_spec: MeansSpec,
    pub policies: Vec<PolicySpec>,
    pub horizon: u64,
    pub num_runs: u64,
    pub base_seed: u64,
    pub cover_fraction: f64,
    /// `None` writes the CSV to stdout.
    pub output_path: Option<PathBuf>,
    pub parallelism: usize,
    /// Emit every round instead of log-spaced checkpoints.
    pub dump_full: bool,
}

impl ExperimentConfig {
    pub const DEFAULT_RUNS: u64 = 100;

    /// A config with the default runs, fraction, seed and parallelism, and
    /// all five policies.
    pub fn new(graph_spec: GraphSpec, means_spec: MeansSpec, horizon: u64) -> Self {
        Self {
            graph_spec,
            means_spec,
            policies: default_policies(),
            horizon,
            num_runs: Self::DEFAULT_RUNS,
            base_seed: 0,
            cover_fraction: 1.0,
            output_path: None,
            parallelism: 1,
            dump_full: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::Config("horizon must be at least 1".into()));
        }
        if self.num_runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        if self.parallelism == 0 {
            return Err(Error::Config("parallelism must be at least 1".into()));
        }
        if !(self.cover_fraction > 0.0 && self.cover_fraction <= 1.0) {
            return Err(Error::Config(format!(
                "cover fraction {} outside (0, 1]",
                self.cover_fraction
            )));
        }
        if self.policies.is_empty() {
            return Err(Error::Config("no policies".into()));
        }
        for (i, p) in self.policies.iter().enumerate() {
            if self.policies[..i].iter().any(|q| q.name() == p.name()) {
                return Err(Error::Config(format!("policy `{p}` listed twice")));
            }
        }
        Ok(())
    }
}

fn default_policies() -> Vec<PolicySpec> {
    PolicySpec::ALL_NAMES
        .iter()
        .map(|n| n.parse().expect("known policy name"))
        .collect()
}

#[derive(Debug, Parser)]
#[command(
    name = "side-bandits",
    about = "Monte-Carlo regret curves for bandits with side observations"
)]
struct Cli {
    /// TOML file with the same keys as the long flags (underscores for dashes).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Generated graph: complete:K, star:K, path:K, er:K:p[:seedS], pa:K:m[:seedS].
    #[arg(long)]
    graph: Option<String>,
    /// Edge-list file (`K M` header, then `u v` lines).
    #[arg(long)]
    edge_list: Option<PathBuf>,
    /// uniform:a:b[:seedS], ratings:PATH[:threshold], or a means file.
    #[arg(long)]
    means: Option<String>,
    /// Policy to run (repeatable): ucb1, ucb-n, ucb-maxn, ucb1-on-cliques, epsilon-greedy.
    #[arg(long = "policy")]
    policies: Vec<String>,
    #[arg(long)]
    horizon: Option<u64>,
    #[arg(long)]
    runs: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    cover_fraction: Option<f64>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    parallelism: Option<usize>,
    #[arg(long)]
    epsilon_c: Option<f64>,
    #[arg(long)]
    epsilon_d: Option<f64>,
    /// Write every round instead of log-spaced checkpoints.
    #[arg(long)]
    dump_full: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    graph: Option<String>,
    edge_list: Option<PathBuf>,
    means: Option<String>,
    #[serde(default)]
    policy: Vec<String>,
    horizon: Option<u64>,
    runs: Option<u64>,
    seed: Option<u64>,
    cover_fraction: Option<f64>,
    output: Option<PathBuf>,
    parallelism: Option<usize>,
    epsilon_c: Option<f64>,
    epsilon_d: Option<f64>,
    dump_full: Option<bool>,
}

fn read_config_file(path: &Path) -> Result<FileConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    toml::from_str(&text).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
}

/// Builds a config from command-line arguments (including the program name).
/// Flags override values from `--config`. Defaults: all five policies,
/// 100 runs, seed 0, cover fraction 1.0, parallelism 1, epsilon c = 5, d = 1.
///
/// `--help` and `--version` come back as [`Error::Help`] carrying the text.
pub fn parse_config<I, T>(args: I) -> Result<ExperimentConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            Error::Help(e.to_string())
        }
        _ => Error::Usage(e.to_string()),
    })?;
    let file = match &cli.config {
        Some(path) => read_config_file(path)?,
        None => FileConfig::default(),
    };

    let graph = cli.graph.or(file.graph);
    let edge_list = cli.edge_list.or(file.edge_list);
    let graph_spec = match (graph, edge_list) {
        (Some(_), Some(_)) => {
            return Err(Error::Usage(
                "give either --graph or --edge-list, not both".into(),
            ))
        }
        (Some(g), None) => GraphSpec::parse(&g)?,
        (None, Some(p)) => GraphSpec::EdgeList(p),
        (None, None) => return Err(Error::Usage("missing --graph or --edge-list".into())),
    };
    let means_spec = MeansSpec::parse(
        &cli.means
            .or(file.means)
            .ok_or_else(|| Error::Usage("missing --means".into()))?,
    )?;
    let horizon = cli
        .horizon
        .or(file.horizon)
        .ok_or_else(|| Error::Usage("missing --horizon".into()))?;
    if horizon == 0 {
        return Err(Error::Usage("--horizon must be at least 1".into()));
    }
    let num_runs = cli
        .runs
        .or(file.runs)
        .unwrap_or(ExperimentConfig::DEFAULT_RUNS);
    if num_runs == 0 {
        return Err(Error::Usage("--runs must be at least 1".into()));
    }
    let cover_fraction = cli.cover_fraction.or(file.cover_fraction).unwrap_or(1.0);
    if !(cover_fraction > 0.0 && cover_fraction <= 1.0) {
        return Err(Error::Usage(format!(
            "--cover-fraction {cover_fraction} outside (0, 1]"
        )));
    }
    let parallelism = cli.parallelism.or(file.parallelism).unwrap_or(1);
    if parallelism == 0 {
        return Err(Error::Usage("--parallelism must be at least 1".into()));
    }
    let eps_c = cli
        .epsilon_c
        .or(file.epsilon_c)
        .unwrap_or(EpsilonGreedyConfig::DEFAULT_C);
    let eps_d = cli
        .epsilon_d
        .or(file.epsilon_d)
        .unwrap_or(EpsilonGreedyConfig::DEFAULT_D);
    if !(eps_c > 0.0 && eps_d > 0.0) {
        return Err(Error::Usage(
            "--epsilon-c and --epsilon-d must be positive".into(),
        ));
    }

    let names = if cli.policies.is_empty() {
        file.policy
    } else {
        cli.policies
    };
    let mut policies = if names.is_empty() {
        default_policies()
    } else {
        names
            .iter()
            .map(|n| {
                n.parse::<PolicySpec>()
                    .map_err(|e| Error::Usage(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?
    };
    for p in &mut policies {
        if let PolicySpec::EpsilonGreedy { c, d, .. } = p {
            *c = eps_c;
            *d = eps_d;
        }
    }

    let config = ExperimentConfig {
        graph_spec,
        means_spec,
        policies,
        horizon,
        num_runs,
        base_seed: cli.seed.or(file.seed).unwrap_or(0),
        cover_fraction,
        output_path: cli.output.or(file.output),
        parallelism,
        dump_full: cli.dump_full || file.dump_full.unwrap_or(false),
    };
    config.validate().map_err(|e| Error::Usage(e.to_string()))?;
    Ok(config)
}
