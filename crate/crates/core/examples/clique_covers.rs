//! Greedy clique covers of a synthetic social graph at 3%, 15% and 100%
//! coverage, with the cover statistics and the text export.
//!
//! ```bash
//! cargo run -p side-bandits --example clique_covers
//! ```

use side_bandits::graph::{
    cover_stats, format_cover, generate_graph, greedy_clique_cover, maximal_clique_containing,
    GraphKind,
};

fn main() -> side_bandits::Result<()> {
    let graph = generate_graph(GraphKind::PreferentialAttachment { m: 4 }, 300, 11)?;
    println!(
        "preferential attachment graph: {} arms, {} edges",
        graph.num_arms(),
        graph.num_edges()
    );

    let hub = (0..graph.num_arms())
        .max_by_key(|&v| graph.degree(v))
        .unwrap();
    let clique = maximal_clique_containing(&graph, hub)?;
    println!("maximal clique around hub {hub}: {:?}", clique.members());

    for fraction in [0.03, 0.15, 1.0] {
        let cover = greedy_clique_cover(&graph, fraction)?;
        let stats = cover_stats(&cover);
        println!(
            "{:>5.0}% cover: {:>3} cliques, {:>3} arms, {:.2} cliques per arm",
            fraction * 100.0,
            stats.num_cliques,
            cover.covered().len(),
            stats.avg_cliques_per_arm
        );
    }

    let small = greedy_clique_cover(&graph, 0.03)?;
    print!("3% cover, one clique per line:\n{}", format_cover(&small));
    Ok(())
}
