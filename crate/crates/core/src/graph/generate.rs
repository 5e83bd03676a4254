use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SoGraph;
use crate::error::{Error, Result};

/// Synthetic graph families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphKind {
    /// G(K, p): each pair is an edge independently with probability `p`.
    ErdosRenyi {
        p: f64,
    },
    /// Barabási–Albert growth: a seed clique on `m + 1` vertices, then each
    /// new vertex attaches to `m` distinct existing vertices chosen with
    /// probability proportional to degree.
    PreferentialAttachment {
        m: usize,
    },
    Complete,
    /// Vertex 0 is the hub.
    Star,
    /// `0 - 1 - ... - (K-1)`.
    Path,
}

/// Deterministic in `(kind, num_arms, seed)`; complete, star and path ignore the seed.
pub fn generate_graph(kind: GraphKind, num_arms: usize, seed: u64) -> Result<SoGraph> {
    if num_arms == 0 {
        return Err(Error::invalid("num_arms must be at least 1"));
    }
    let k = num_arms;
    let edges: Vec<(usize, usize)> = match kind {
        GraphKind::ErdosRenyi { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid(format!(
                    "edge probability {p} outside [0, 1]"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..k {
                for v in u + 1..k {
                    if rng.gen::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            edges
        }
        GraphKind::PreferentialAttachment { m } => {
            if m == 0 {
                return Err(Error::invalid("preferential attachment needs m >= 1"));
            }
            preferential_attachment(k, m, seed)
        }
        GraphKind::Complete => complete_edges(k),
        GraphKind::Star => (1..k).map(|v| (0, v)).collect(),
        GraphKind::Path => (1..k).map(|v| (v - 1, v)).collect(),
    };
    SoGraph::new(k, &edges)
}

fn complete_edges(k: usize) -> Vec<(usize, usize)> {
    (0..k)
        .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
        .collect()
}

fn preferential_attachment(k: usize, m: usize, seed: u64) -> Vec<(usize, usize)> {
    let core = (m + 1).min(k);
    let mut edges = complete_edges(core);
    // Each vertex appears once per incident edge endpoint.
    let mut endpoints: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for v in core..k {
        let mut targets: Vec<usize> = Vec::with_capacity(m);
        while targets.len() < m {
            let t = *endpoints.choose(&mut rng).expect("seed clique has edges");
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        targets.sort_unstable();
        for t in targets {
            edges.push((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    edges
}
