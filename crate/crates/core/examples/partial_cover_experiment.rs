//! The full experiment protocol on a sparser graph at 3%, 15% and 100% cover
//! fractions: the bandit is restricted to the arms the cover reaches.
//!
//! ```bash
//! cargo run --release -p side-bandits --example partial_cover_experiment
//! ```

use side_bandits::graph::GraphKind;
use side_bandits::harness::{run_experiment, ExperimentConfig, GraphSpec, MeansSpec};

fn main() -> side_bandits::Result<()> {
    for fraction in [0.03, 0.15, 1.0] {
        let mut config = ExperimentConfig::new(
            GraphSpec::Generated {
                kind: GraphKind::ErdosRenyi { p: 0.15 },
                num_arms: 400,
                seed: Some(3),
            },
            MeansSpec::Uniform {
                low: 0.1,
                high: 0.6,
                seed: 9,
            },
            10_000,
        );
        config.cover_fraction = fraction;
        config.num_runs = 10;
        config.parallelism = std::thread::available_parallelism().map_or(1, |n| n.get());

        let result = run_experiment(&config)?;
        println!(
            "fraction {:.2}: {} arms, {} cliques, {:.2} cliques per arm",
            fraction,
            result.instance.num_arms(),
            result.cover_info.num_cliques,
            result.cover_info.avg_cliques_per_arm
        );
        let speedups = result.speedups.as_ref().unwrap();
        for curve in &result.curves {
            println!(
                "    {:<16} r(T) = {:.5}  speedup {:>5.2}x",
                curve.policy,
                curve.final_regret(),
                speedups.get(&curve.policy).unwrap()
            );
        }
    }
    Ok(())
}
