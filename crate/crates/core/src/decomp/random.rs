//! Seeded random graphs of bounded treewidth with known decompositions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{bfs_layering, Graph, Vertex};
use crate::td::{LayeredTreeDecomposition, TreeDecomposition};

/// A random subgraph of a random `k`-tree on `n` vertices, together with the
/// `k`-tree's decomposition (width `k`). Each edge is kept with probability
/// `keep` as long as both ends stay within `max_degree`.
pub fn random_ktree_subgraph(n: usize, k: usize, max_degree: usize, keep: f64, seed: u64) -> (Graph, TreeDecomposition) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = n.min(k + 1);
    let mut bags: Vec<Vec<Vertex>> = vec![(0..base).collect()];
    let mut tree = Vec::new();
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for u in 0..base {
        for v in u + 1..base {
            edges.push((u, v));
        }
    }
    for v in base..n {
        let t = rng.gen_range(0..bags.len());
        let mut sep = bags[t].clone();
        sep.shuffle(&mut rng);
        sep.truncate(k);
        for &u in &sep {
            edges.push((u.min(v), u.max(v)));
        }
        sep.push(v);
        tree.push((t, bags.len()));
        bags.push(sep);
    }

    edges.shuffle(&mut rng);
    let mut degree = vec![0usize; n];
    let mut kept = Vec::new();
    for (u, v) in edges {
        if degree[u] < max_degree && degree[v] < max_degree && rng.gen_bool(keep) {
            degree[u] += 1;
            degree[v] += 1;
            kept.push((u, v));
        }
    }
    let g = Graph::from_edges(n, &kept).expect("k-tree edges are simple");
    (g, TreeDecomposition::new(bags, tree))
}

/// [`random_ktree_subgraph`] paired with a BFS layering.
pub fn random_layered_instance(
    n: usize,
    k: usize,
    max_degree: usize,
    keep: f64,
    seed: u64,
) -> (Graph, LayeredTreeDecomposition) {
    let (g, td) = random_ktree_subgraph(n, k, max_degree, keep, seed);
    let layering = bfs_layering(&g);
    (g, LayeredTreeDecomposition::new(td, layering))
}
