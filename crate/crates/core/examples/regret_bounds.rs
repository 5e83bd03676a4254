//! Closed-form regret bounds for several covers of the same instance, the
//! best of them, and the bound CSV export.
//!
//! ```bash
//! cargo run -p side-bandits --example regret_bounds
//! ```

use side_bandits::bounds::{
    best_bound_over_covers, clique_cover_bound_thm2, clique_cover_bound_thm3, format_bound_csv,
    ucb1_regret_bound, BoundKind,
};
use side_bandits::environment::GapProfile;
use side_bandits::graph::{Clique, CliqueCover};

fn main() -> side_bandits::Result<()> {
    let gaps = GapProfile::from_means(&[0.9, 0.5, 0.4])?;
    let covers = vec![
        ("trivial".to_string(), CliqueCover::trivial(3)?),
        (
            "pair".to_string(),
            CliqueCover::from_cliques(3, vec![Clique::new(vec![0])?, Clique::new(vec![1, 2])?])?,
        ),
        (
            "mixed".to_string(),
            CliqueCover::from_cliques(3, vec![Clique::new(vec![0, 1, 2])?])?,
        ),
    ];

    let n = 10_000;
    let mut rows = vec![("none".to_string(), ucb1_regret_bound(&gaps, n)?)];
    for (id, cover) in &covers {
        rows.push((id.clone(), clique_cover_bound_thm2(&gaps, cover, n)?));
        rows.push((id.clone(), clique_cover_bound_thm3(&gaps, cover, n)?));
    }
    print!("{}", format_bound_csv(&rows));

    let candidates: Vec<CliqueCover> = covers.iter().map(|(_, c)| c.clone()).collect();
    for which in [BoundKind::Thm2, BoundKind::Thm3] {
        let best = best_bound_over_covers(&gaps, &candidates, n, which)?;
        println!(
            "best {} cover: {} (total {:.2})",
            which.name(),
            covers[best.best_cover_index].0,
            best.report.total_at_n
        );
    }

    println!("thm3 residual as n grows (pair cover):");
    for n in [100u64, 10_000, 1_000_000, 100_000_000] {
        let r = clique_cover_bound_thm3(&gaps, &candidates[1], n)?;
        println!("  n = {n:>9}: residual {:.4}", r.residual_term);
    }
    Ok(())
}
