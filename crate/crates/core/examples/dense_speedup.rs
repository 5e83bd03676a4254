//! Regret curves and speedups over UCB1 on a complete graph, the setting
//! where side observations help most. Writes `dense_speedup.csv`.
//!
//! ```bash
//! cargo run --release -p side-bandits --example dense_speedup
//! ```

use side_bandits::graph::GraphKind;
use side_bandits::harness::{run_experiment, write_csv, ExperimentConfig, GraphSpec, MeansSpec};

fn main() -> side_bandits::Result<()> {
    let mut config = ExperimentConfig::new(
        GraphSpec::Generated {
            kind: GraphKind::Complete,
            num_arms: 50,
            seed: None,
        },
        MeansSpec::Uniform {
            low: 0.2,
            high: 0.8,
            seed: 7,
        },
        20_000,
    );
    config.num_runs = 20;
    config.parallelism = std::thread::available_parallelism().map_or(1, |n| n.get());

    let result = run_experiment(&config)?;
    let speedups = result.speedups.as_ref().expect("ucb1 is a default policy");
    for curve in &result.curves {
        println!(
            "{:<16} r(T) = {:.5}  speedup {:>6.2}x",
            curve.policy,
            curve.final_regret(),
            speedups.get(&curve.policy).unwrap()
        );
    }
    write_csv(&result.curves, &result.cover_info, "dense_speedup.csv")?;
    println!("curves written to dense_speedup.csv");
    Ok(())
}
