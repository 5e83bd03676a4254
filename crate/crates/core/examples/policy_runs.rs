//! One run of each policy on the same instance and seed, showing how side
//! observations change exploration.
//!
//! ```bash
//! cargo run -p side-bandits --example policy_runs
//! ```

use side_bandits::environment::{BanditInstance, RewardFamily};
use side_bandits::graph::{generate_graph, GraphKind};
use side_bandits::harness::run_single;
use side_bandits::policies::PolicySpec;

fn main() -> side_bandits::Result<()> {
    let graph = generate_graph(GraphKind::ErdosRenyi { p: 0.3 }, 40, 5)?;
    let means: Vec<f64> = (0..40)
        .map(|i| 0.2 + 0.6 * ((i * 17) % 40) as f64 / 39.0)
        .collect();
    let instance = BanditInstance::new(means, RewardFamily::Bernoulli, graph)?;
    let gaps = instance.gap_profile();
    println!(
        "40 arms, best arm {} with mean {:.3}",
        gaps.optimal_arm, gaps.optimal_mean
    );

    let horizon = 5_000;
    let policies = [
        PolicySpec::Ucb1,
        PolicySpec::UcbN,
        PolicySpec::UcbMaxN,
        PolicySpec::Ucb1OnCliques,
        PolicySpec::epsilon_greedy(),
    ];
    for policy in policies {
        let run = run_single(&instance, &policy, horizon, 2024)?;
        let best_pulls = run.final_state.pull_counts[gaps.optimal_arm];
        let distinct = run
            .final_state
            .pull_counts
            .iter()
            .filter(|&&c| c > 0)
            .count();
        println!(
            "{:<16} pseudo-regret {:>8.2}  realized {:>8.2}  best-arm pulls {:>5}  arms pulled {:>2}",
            policy.name(),
            run.pseudo_regret[horizon as usize],
            run.realized_regret,
            best_pulls,
            distinct
        );
    }
    Ok(())
}
