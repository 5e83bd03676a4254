//! Side-observation graphs and clique covers.
//!
//! An edge `{i, j}` means that pulling either arm reveals a reward sample of
//! the other. The closed neighborhood `N(i) = {i} ∪ adj(i)` is the set of arms
//! observed when `i` is pulled.

mod cover;
mod generate;
mod io;

pub use cover::{
    cover_stats, coverage_target, greedy_clique_cover, maximal_clique_containing, Clique,
    CliqueCover, CoverStats,
};
pub use generate::{generate_graph, GraphKind};
pub use io::{format_cover, load_edge_list, parse_edge_list, write_cover, write_edge_list};

use crate::error::{Error, Result};

/// Undirected side-observation graph over `num_arms` arms.
///
/// Adjacency lists are sorted, deduplicated, symmetric and free of self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoGraph {
    adjacency: Vec<Vec<usize>>,
}

impl SoGraph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) collapse to one; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn new(num_arms: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if num_arms == 0 {
            return Err(Error::invalid("graph must have at least one arm"));
        }
        let mut adjacency = vec![Vec::new(); num_arms];
        for &(u, v) in edges {
            if u >= num_arms || v >= num_arms {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) has an endpoint outside [0, {num_arms})"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop on arm {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { adjacency })
    }

    pub fn edgeless(num_arms: usize) -> Result<Self> {
        Self::new(num_arms, &[])
    }

    pub fn num_arms(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Sorted neighbors of `i`, excluding `i` itself.
    pub fn adjacent(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.num_arms() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    fn check_arm(&self, i: usize) -> Result<()> {
        if i >= self.num_arms() {
            return Err(Error::invalid(format!(
                "arm {i} outside [0, {})",
                self.num_arms()
            )));
        }
        Ok(())
    }

    /// Closed neighborhood `N(i)`, sorted ascending. Always contains `i`.
    pub fn neighborhood(&self, i: usize) -> Result<Vec<usize>> {
        self.check_arm(i)?;
        Ok(self.closed_neighborhood(i))
    }

    pub(crate) fn closed_neighborhood(&self, i: usize) -> Vec<usize> {
        let adj = &self.adjacency[i];
        let split = adj.partition_point(|&v| v < i);
        let mut out = Vec::with_capacity(adj.len() + 1);
        out.extend_from_slice(&adj[..split]);
        out.push(i);
        out.extend_from_slice(&adj[split..]);
        out
    }

    /// True iff every distinct pair of `members` is adjacent.
    pub fn is_clique(&self, members: &[usize]) -> Result<bool> {
        if members.is_empty() {
            return Err(Error::invalid("is_clique needs a nonempty member set"));
        }
        for &m in members {
            self.check_arm(m)?;
        }
        Ok(self.is_clique_unchecked(members))
    }

    pub(crate) fn is_clique_unchecked(&self, members: &[usize]) -> bool {
        members.iter().enumerate().all(|(a, &u)| {
            members[a + 1..]
                .iter()
                .all(|&v| u == v || self.has_edge(u, v))
        })
    }

    /// Subgraph induced on `vertices` (sorted, distinct), relabelled so that
    /// `vertices[k]` becomes arm `k`.
    pub fn induced(&self, vertices: &[usize]) -> Result<SoGraph> {
        let mut index = vec![usize::MAX; self.num_arms()];
        for (k, &v) in vertices.iter().enumerate() {
            self.check_arm(v)?;
            if index[v] != usize::MAX {
                return Err(Error::invalid(format!("vertex {v} listed twice")));
            }
            index[v] = k;
        }
        let edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|(u, v)| (index[u], index[v]))
            .collect();
        SoGraph::new(vertices.len(), &edges)
    }
}

/// Free-function form of [`SoGraph::new`].
pub fn build_graph(num_arms: usize, edges: &[(usize, usize)]) -> Result<SoGraph> {
    SoGraph::new(num_arms, edges)
}
