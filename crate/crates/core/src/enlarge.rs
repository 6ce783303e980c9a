//! Augmenting a graph with linkage pairs while extending its
//! tree-decomposition.
//!
//! Each linkage entry carries a node set `Y`, a subtree `T ⊇ Y` and a set of
//! vertex pairs drawn from the bags of `Y`. The pairs become edges; the
//! vertices they touch (`Z`) are added to every bag on `T`. The new bags grow
//! by at most `2·h·k` where `h` is the maximum number of subtrees through a
//! node and `k` the maximum number of pairs in one entry.

use std::collections::BTreeSet;

use crate::error::EnlargeError;
use crate::graph::{Graph, Vertex};
use crate::td::{validate_td, Node, TreeDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Linkage {
    /// Covering nodes; sorted.
    pub y: Vec<Node>,
    /// Subtree nodes; sorted, must contain `y`.
    pub t: Vec<Node>,
    /// Unordered pairs, stored with the smaller vertex first.
    pub pairs: Vec<(Vertex, Vertex)>,
}

impl Linkage {
    pub fn new(mut y: Vec<Node>, mut t: Vec<Node>, pairs: Vec<(Vertex, Vertex)>) -> Self {
        y.sort_unstable();
        y.dedup();
        t.sort_unstable();
        t.dedup();
        let mut pairs: Vec<_> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_unstable();
        pairs.dedup();
        Linkage { y, t, pairs }
    }

    /// Vertices appearing in some pair, sorted.
    pub fn touched(&self) -> Vec<Vertex> {
        let set: BTreeSet<Vertex> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        set.into_iter().collect()
    }
}

pub type LinkageFamily = Vec<Linkage>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AugmentStats {
    /// Maximum number of subtrees containing one node.
    pub h: usize,
    /// Maximum number of pairs in one entry.
    pub k: usize,
    /// Maximum number of distinct pairs containing one vertex.
    pub d: usize,
}

#[derive(Debug, Clone)]
pub struct AugmentResult {
    pub graph: Graph,
    pub td: TreeDecomposition,
    pub stats: AugmentStats,
}

fn check_family(g: &Graph, td: &TreeDecomposition, fam: &[Linkage]) -> Result<(), EnlargeError> {
    let k = td.num_nodes();
    let adj = td.tree_adjacency();
    for (i, entry) in fam.iter().enumerate() {
        let err = |reason: String| EnlargeError::Linkage { entry: i, reason };
        if let Some(&t) = entry.t.iter().chain(&entry.y).find(|&&t| t >= k) {
            return Err(err(format!("node {t} out of range")));
        }
        if entry.t.is_empty() {
            if entry.pairs.is_empty() && entry.y.is_empty() {
                continue;
            }
            return Err(err("empty subtree".into()));
        }
        if !induces_subtree(&adj, &entry.t) {
            return Err(err("subtree nodes are disconnected".into()));
        }
        if let Some(y) = entry.y.iter().find(|y| entry.t.binary_search(y).is_err()) {
            return Err(err(format!("covering node {y} lies outside the subtree")));
        }
        let mut reach: Vec<Vertex> = entry.y.iter().flat_map(|&t| td.bag(t).iter().copied()).collect();
        reach.sort_unstable();
        reach.dedup();
        for &(a, b) in &entry.pairs {
            if a == b {
                return Err(err(format!("self-pair {{{a}, {a}}}")));
            }
            if b >= g.n() {
                return Err(err(format!("vertex {b} out of range")));
            }
            if reach.binary_search(&a).is_err() || reach.binary_search(&b).is_err() {
                return Err(err(format!("pair {{{a}, {b}}} not inside the covering bags")));
            }
        }
    }
    Ok(())
}

/// Whether the sorted node set `nodes` induces a connected subgraph of the
/// tree with adjacency `adj`.
pub fn induces_subtree(adj: &[Vec<Node>], nodes: &[Node]) -> bool {
    if nodes.is_empty() {
        return false;
    }
    let mut seen = vec![nodes[0]];
    let mut stack = vec![nodes[0]];
    while let Some(t) = stack.pop() {
        for &s in &adj[t] {
            if nodes.binary_search(&s).is_ok() && !seen.contains(&s) {
                seen.push(s);
                stack.push(s);
            }
        }
    }
    seen.len() == nodes.len()
}

/// Largest number of subtrees of `fam` that share one node.
pub fn measure_overlap(td: &TreeDecomposition, fam: &[Linkage]) -> usize {
    let mut count = vec![0usize; td.num_nodes()];
    for entry in fam {
        for &t in &entry.t {
            count[t] += 1;
        }
    }
    count.into_iter().max().unwrap_or(0)
}

/// Adds every linkage pair as an edge and extends the bags along each
/// subtree. The result is validated, and the width and degree inequalities
/// are checked against the measured `h`, `k`, `d` before returning.
pub fn augment(g: &Graph, td: &TreeDecomposition, fam: &[Linkage]) -> Result<AugmentResult, EnlargeError> {
    validate_td(g, td).map_err(|v| EnlargeError::Decomposition(format!("{v:?}")))?;
    check_family(g, td, fam)?;

    let mut all_pairs: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut linkage_pairs: Vec<(Vertex, Vertex)> = fam.iter().flat_map(|e| e.pairs.iter().copied()).collect();
    linkage_pairs.sort_unstable();
    linkage_pairs.dedup();
    let mut per_vertex = vec![0usize; g.n()];
    for &(a, b) in &linkage_pairs {
        per_vertex[a] += 1;
        per_vertex[b] += 1;
    }
    all_pairs.extend_from_slice(&linkage_pairs);
    let graph = Graph::from_edges_dedup(g.n(), &all_pairs).map_err(|e| EnlargeError::Internal(e.to_string()))?;

    let mut bags: Vec<Vec<Vertex>> = td.bags().to_vec();
    for entry in fam {
        let z = entry.touched();
        if z.is_empty() {
            continue;
        }
        for &t in &entry.t {
            bags[t].extend_from_slice(&z);
        }
    }
    let mut new_td = TreeDecomposition::new(bags, td.tree_edges().to_vec());
    if let Some(r) = td.explicit_root() {
        new_td = new_td.with_root(r);
    }

    let stats = AugmentStats {
        h: measure_overlap(td, fam),
        k: fam.iter().map(|e| e.pairs.len()).max().unwrap_or(0),
        d: per_vertex.iter().copied().max().unwrap_or(0),
    };

    for t in 0..td.num_nodes() {
        if !is_superset(new_td.bag(t), td.bag(t)) {
            return Err(EnlargeError::Internal(format!("bag {t} lost vertices")));
        }
        if new_td.bag(t).len() > td.bag(t).len() + 2 * stats.h * stats.k {
            return Err(EnlargeError::Internal(format!(
                "bag {t} grew from {} to {}, above 2hk = {}",
                td.bag(t).len(),
                new_td.bag(t).len(),
                2 * stats.h * stats.k
            )));
        }
    }
    for v in 0..g.n() {
        if graph.degree(v) > g.degree(v) + per_vertex[v] {
            return Err(EnlargeError::Internal(format!("degree of {v} exceeds the pair count bound")));
        }
    }
    validate_td(&graph, &new_td).map_err(|v| EnlargeError::Internal(format!("augmented decomposition invalid: {v:?}")))?;
    Ok(AugmentResult { graph, td: new_td, stats })
}

fn is_superset(big: &[Vertex], small: &[Vertex]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}
