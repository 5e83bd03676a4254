use std::collections::HashSet;

use super::SoGraph;
use crate::error::{Error, Result};

/// A nonempty, sorted set of arms. Whether it is a clique is a property of a
/// host graph; see [`SoGraph::is_clique`] and [`Clique::in_graph`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clique {
    members: Vec<usize>,
}

impl Clique {
    pub fn new(mut members: Vec<usize>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::invalid("a clique must have at least one member"));
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self { members })
    }

    /// Like [`Clique::new`] but also checks pairwise adjacency in `graph`.
    pub fn in_graph(graph: &SoGraph, members: Vec<usize>) -> Result<Self> {
        let clique = Self::new(members)?;
        if !graph.is_clique(&clique.members)? {
            return Err(Error::invalid(format!(
                "{:?} is not a clique of the graph",
                clique.members
            )));
        }
        Ok(clique)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, arm: usize) -> bool {
        self.members.binary_search(&arm).is_ok()
    }
}

/// Ordered list of cliques together with the set of arms they cover.
#[derive(Debug, Clone, PartialEq)]
pub struct CliqueCover {
    num_arms: usize,
    cliques: Vec<Clique>,
    covered: Vec<usize>,
    coverage_fraction: f64,
}

impl CliqueCover {
    /// Wraps an explicit list of cliques over `num_arms` arms. The coverage
    /// fraction is `|covered| / num_arms`.
    pub fn from_cliques(num_arms: usize, cliques: Vec<Clique>) -> Result<Self> {
        if num_arms == 0 {
            return Err(Error::invalid("cover needs at least one arm"));
        }
        if cliques.is_empty() {
            return Err(Error::invalid("cover needs at least one clique"));
        }
        let mut seen = vec![false; num_arms];
        for c in &cliques {
            for &m in c.members() {
                if m >= num_arms {
                    return Err(Error::invalid(format!(
                        "clique member {m} outside [0, {num_arms})"
                    )));
                }
                seen[m] = true;
            }
        }
        let covered: Vec<usize> = (0..num_arms).filter(|&i| seen[i]).collect();
        let coverage_fraction = covered.len() as f64 / num_arms as f64;
        Ok(Self {
            num_arms,
            cliques,
            covered,
            coverage_fraction,
        })
    }

    /// The cover made of one singleton per arm.
    pub fn trivial(num_arms: usize) -> Result<Self> {
        let cliques = (0..num_arms).map(|i| Clique { members: vec![i] }).collect();
        Self::from_cliques(num_arms, cliques)
    }

    pub fn num_arms(&self) -> usize {
        self.num_arms
    }

    pub fn cliques(&self) -> &[Clique] {
        &self.cliques
    }

    /// Covered arms in ascending order.
    pub fn covered(&self) -> &[usize] {
        &self.covered
    }

    pub fn coverage_fraction(&self) -> f64 {
        self.coverage_fraction
    }

    pub fn covers_all(&self) -> bool {
        self.covered.len() == self.num_arms
    }

    /// Re-expresses the cover on the subgraph induced by its covered arms,
    /// where `covered()[k]` becomes arm `k`.
    pub fn relabel_to_covered(&self) -> CliqueCover {
        let mut index = vec![usize::MAX; self.num_arms];
        for (k, &v) in self.covered.iter().enumerate() {
            index[v] = k;
        }
        let cliques = self
            .cliques
            .iter()
            .map(|c| Clique {
                members: c.members.iter().map(|&m| index[m]).collect(),
            })
            .collect();
        let n = self.covered.len();
        CliqueCover {
            num_arms: n,
            cliques,
            covered: (0..n).collect(),
            coverage_fraction: 1.0,
        }
    }
}

/// Smallest number of covered arms satisfying `fraction` of `num_arms`,
/// i.e. `ceil(fraction * num_arms)` with products within 1e-9 of an integer
/// snapped to it (so 0.15 * 100 asks for 15 arms, not 16).
pub fn coverage_target(fraction: f64, num_arms: usize) -> usize {
    let x = fraction * num_arms as f64;
    let r = x.round();
    let target = if (x - r).abs() < 1e-9 { r } else { x.ceil() };
    (target as usize).min(num_arms)
}

/// Vertex order used when growing cliques: descending degree, then ascending index.
fn growth_rank(graph: &SoGraph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..graph.num_arms()).collect();
    order.sort_by(|&a, &b| graph.degree(b).cmp(&graph.degree(a)).then(a.cmp(&b)));
    let mut rank = vec![0; order.len()];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }
    rank
}

fn grow_clique(graph: &SoGraph, rank: &[usize], i: usize) -> Clique {
    let mut candidates: Vec<usize> = graph.adjacent(i).to_vec();
    candidates.sort_by_key(|&v| rank[v]);
    let mut members = vec![i];
    for v in candidates {
        if members.iter().all(|&m| graph.has_edge(m, v)) {
            members.push(v);
        }
    }
    members.sort_unstable();
    Clique { members }
}

/// Grows a maximal clique from `{i}`, scanning candidates by descending
/// degree (ties by ascending index) and adding each one adjacent to all
/// current members.
pub fn maximal_clique_containing(graph: &SoGraph, i: usize) -> Result<Clique> {
    graph.check_arm(i)?;
    Ok(grow_clique(graph, &growth_rank(graph), i))
}

/// Greedy set cover over the family `{maximal_clique_containing(i)}`.
///
/// Each step takes the candidate covering the most uncovered arms; ties go to
/// the candidate whose smallest uncovered member is lowest, then to the
/// smallest generating vertex. Stops once `coverage_target(fraction, K)` arms
/// are covered.
pub fn greedy_clique_cover(graph: &SoGraph, coverage_fraction: f64) -> Result<CliqueCover> {
    if !(coverage_fraction > 0.0 && coverage_fraction <= 1.0) {
        return Err(Error::invalid(format!(
            "coverage fraction {coverage_fraction} outside (0, 1]"
        )));
    }
    let k = graph.num_arms();
    let rank = growth_rank(graph);

    let mut seen = HashSet::new();
    let mut candidates: Vec<Clique> = Vec::new();
    for i in 0..k {
        let c = grow_clique(graph, &rank, i);
        if seen.insert(c.members.clone()) {
            candidates.push(c);
        }
    }

    let target = coverage_target(coverage_fraction, k);
    let mut covered = vec![false; k];
    let mut num_covered = 0;
    let mut used = vec![false; candidates.len()];
    let mut selected = Vec::new();

    while num_covered < target {
        // (gain, smallest uncovered member, candidate index)
        let mut best: Option<(usize, usize, usize)> = None;
        for (idx, c) in candidates.iter().enumerate() {
            if used[idx] {
                continue;
            }
            let mut gain = 0;
            let mut first = usize::MAX;
            for &m in &c.members {
                if !covered[m] {
                    gain += 1;
                    first = first.min(m);
                }
            }
            if gain == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((bg, bf, _)) => gain > bg || (gain == bg && first < bf),
            };
            if better {
                best = Some((gain, first, idx));
            }
        }
        // Every vertex lies in its own candidate, so some candidate always gains.
        let (gain, _, idx) = best.expect("uncovered vertex without candidate clique");
        used[idx] = true;
        for &m in &candidates[idx].members {
            covered[m] = true;
        }
        num_covered += gain;
        selected.push(candidates[idx].clone());
    }

    CliqueCover::from_cliques(k, selected)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverStats {
    pub num_cliques: usize,
    /// Mean number of selected cliques containing a covered arm.
    pub avg_cliques_per_arm: f64,
}

pub fn cover_stats(cover: &CliqueCover) -> CoverStats {
    let memberships: usize = cover.cliques.iter().map(Clique::len).sum();
    CoverStats {
        num_cliques: cover.cliques.len(),
        avg_cliques_per_arm: memberships as f64 / cover.covered.len() as f64,
    }
}
