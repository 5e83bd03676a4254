//! Turning star ratings into per-user acceptance probabilities (a rating
//! above 3.5 stars counts as accepting the offer) and playing the result on a
//! friendship graph read from an edge list.
//!
//! ```bash
//! cargo run -p side-bandits --example ratings_means
//! ```

use side_bandits::environment::{means_from_ratings, parse_ratings, BanditInstance, RewardFamily};
use side_bandits::graph::parse_edge_list;
use side_bandits::harness::run_single;
use side_bandits::policies::PolicySpec;

const RATINGS: &str = "\
# user item stars
0 10 5
0 11 4
0 12 2
1 10 3
1 13 3.5
2 11 4.5
2 12 4
2 14 1
3 10 2
3 12 5
";

const FRIENDS: &str = "\
4 4
0 1
1 2
2 3
0 2
";

fn main() -> side_bandits::Result<()> {
    let ratings = parse_ratings(RATINGS, "inline ratings")?;
    let means = means_from_ratings(&ratings, 3.5)?;
    for (user, m) in means.iter().enumerate() {
        println!("user {user}: accepts with probability {m:.3}");
    }

    let graph = parse_edge_list(FRIENDS, "inline graph")?;
    let instance = BanditInstance::new(means, RewardFamily::Bernoulli, graph)?;
    for policy in [PolicySpec::Ucb1, PolicySpec::UcbN, PolicySpec::UcbMaxN] {
        let run = run_single(&instance, &policy, 2_000, 5)?;
        println!(
            "{:<9} pulls per user {:?}, pseudo-regret {:.1}",
            policy.name(),
            run.final_state.pull_counts,
            run.pseudo_regret.last().unwrap()
        );
    }
    Ok(())
}
