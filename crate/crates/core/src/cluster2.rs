//! Two-coloring with small monochromatic components for graphs of bounded
//! treewidth and degree.
//!
//! A rooted tree-decomposition is turned into a tree-partition by contracting
//! vertical node paths, then blocks are colored by the parity of their depth.
//! Neighbouring blocks get different colors, so every monochromatic
//! component stays inside one block and the clustering is at most the
//! tree-partition width.

use std::collections::VecDeque;

use crate::bitgraph::BitGraph;
use crate::error::{ClusterError, OracleError};
use crate::graph::{clustering, Color, Coloring, Graph, Vertex};
use crate::td::{validate_td, Node, TreeDecomposition};

/// Vertex partition into blocks arranged on a tree so that every edge stays
/// inside a block or joins blocks adjacent in the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePartition {
    edges: Vec<(Node, Node)>,
    block_of: Vec<Node>,
    root: Node,
    depth: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionViolation {
    BlockOutOfRange(Vertex),
    NotATree,
    /// Edge whose blocks are distinct and not adjacent.
    LongEdge(Vertex, Vertex),
}

impl TreePartition {
    pub fn new(num_nodes: usize, edges: Vec<(Node, Node)>, block_of: Vec<Node>, root: Node) -> Self {
        let mut adj = vec![Vec::new(); num_nodes];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut depth = vec![usize::MAX; num_nodes];
        if num_nodes > 0 {
            depth[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(t) = queue.pop_front() {
                for &s in &adj[t] {
                    if depth[s] == usize::MAX {
                        depth[s] = depth[t] + 1;
                        queue.push_back(s);
                    }
                }
            }
        }
        TreePartition { edges, block_of, root, depth }
    }

    pub fn num_nodes(&self) -> usize {
        self.depth.len()
    }

    pub fn root(&self) -> Node {
        self.root
    }

    pub fn tree_edges(&self) -> &[(Node, Node)] {
        &self.edges
    }

    pub fn block_of(&self, v: Vertex) -> Node {
        self.block_of[v]
    }

    pub fn depth(&self, t: Node) -> usize {
        self.depth[t]
    }

    pub fn blocks(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.num_nodes()];
        for (v, &b) in self.block_of.iter().enumerate() {
            out[b].push(v);
        }
        out
    }

    /// Largest block size.
    pub fn width(&self) -> usize {
        let mut size = vec![0usize; self.num_nodes()];
        for &b in &self.block_of {
            size[b] += 1;
        }
        size.into_iter().max().unwrap_or(0)
    }

    pub fn validate(&self, g: &Graph) -> Result<(), Vec<PartitionViolation>> {
        let k = self.num_nodes();
        let mut out = Vec::new();
        let connected = self.depth.iter().all(|&d| d != usize::MAX);
        if self.edges.len() + 1 != k.max(1) || !connected {
            out.push(PartitionViolation::NotATree);
        }
        if self.block_of.len() != g.n() {
            out.push(PartitionViolation::BlockOutOfRange(self.block_of.len().min(g.n())));
            return Err(out);
        }
        for (v, &b) in self.block_of.iter().enumerate() {
            if b >= k {
                out.push(PartitionViolation::BlockOutOfRange(v));
            }
        }
        if !out.is_empty() {
            return Err(out);
        }
        let mut tree_adj: Vec<Vec<Node>> = vec![Vec::new(); k];
        for &(a, b) in &self.edges {
            tree_adj[a].push(b);
            tree_adj[b].push(a);
        }
        for (u, v) in g.edges() {
            let (a, b) = (self.block_of[u], self.block_of[v]);
            if a != b && !tree_adj[a].contains(&b) {
                out.push(PartitionViolation::LongEdge(u, v));
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }
}

/// For each vertex, the minimum-depth node whose bag contains it. The
/// decomposition is rooted at its explicit root, or node 0.
pub fn rootmost_assignment(g: &Graph, td: &TreeDecomposition) -> Result<Vec<Node>, ClusterError> {
    validate_td(g, td).map_err(|v| ClusterError::Decomposition(format!("{v:?}")))?;
    let rooted = td.rooted();
    let mut tau = vec![usize::MAX; g.n()];
    for &t in &rooted.order {
        for &v in td.bag(t) {
            if tau[v] == usize::MAX {
                tau[v] = t;
            }
        }
    }
    Ok(tau)
}

struct Contraction {
    parent: Vec<usize>,
    top: Vec<Node>,
}

impl Contraction {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges two classes; the smaller id becomes the representative.
    fn union(&mut self, a: usize, b: usize, depth: &[usize]) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (keep, drop) = (ra.min(rb), ra.max(rb));
        let top = if depth[self.top[ra]] <= depth[self.top[rb]] { self.top[ra] } else { self.top[rb] };
        self.parent[drop] = keep;
        self.top[keep] = top;
    }
}

/// Tree-partition by vertical path contraction: for every edge `uv` whose
/// rootmost nodes are an ancestor/descendant pair at distance two or more,
/// the nodes from the ancestor down to the descendant's parent are merged.
/// The quotient tree carries the blocks `{v : τ(v) in class}`.
pub fn tree_partition(g: &Graph, td: &TreeDecomposition) -> Result<TreePartition, ClusterError> {
    let tau = rootmost_assignment(g, td)?;
    let rooted = td.rooted();
    let k = td.num_nodes();
    let mut dsu = Contraction { parent: (0..k).collect(), top: (0..k).collect() };

    for (u, v) in g.edges() {
        let (mut a, mut b) = (tau[u], tau[v]);
        if rooted.depth[a] > rooted.depth[b] {
            std::mem::swap(&mut a, &mut b);
        }
        if rooted.depth[b] - rooted.depth[a] < 2 {
            continue;
        }
        let mut x = rooted.parent[b].expect("non-root node has a parent");
        loop {
            let rx = dsu.find(x);
            if rx == dsu.find(a) {
                break;
            }
            let top = dsu.top[rx];
            let p = rooted.parent[top].ok_or_else(|| {
                ClusterError::Internal(format!("node {a} is not an ancestor of node {b}"))
            })?;
            dsu.union(top, p, &rooted.depth);
            x = p;
        }
    }

    let mut index = vec![usize::MAX; k];
    let mut reps = 0;
    for t in 0..k {
        let r = dsu.find(t);
        if index[r] == usize::MAX {
            index[r] = reps;
            reps += 1;
        }
    }
    let class = |dsu: &mut Contraction, t: usize| index[dsu.find(t)];
    let mut edges: Vec<(Node, Node)> = Vec::new();
    for &(s, t) in td.tree_edges() {
        let (a, b) = (class(&mut dsu, s), class(&mut dsu, t));
        if a != b {
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let block_of = tau.iter().map(|&t| class(&mut dsu, t)).collect();
    let root = class(&mut dsu, rooted.root);
    let tp = TreePartition::new(reps, edges, block_of, root);
    tp.validate(g).map_err(|v| ClusterError::Internal(format!("contracted partition invalid: {v:?}")))?;
    Ok(tp)
}

/// Tree-partition from breadth-first levels: the blocks at level `i` are the
/// level-`i` parts of the components of `G[levels >= i]`. A block's parent is
/// the block holding its vertices' predecessors. Further components hang
/// off an empty block adjacent to the first root.
pub fn bfs_tree_partition(g: &Graph) -> TreePartition {
    let n = g.n();
    if n == 0 {
        return TreePartition::new(0, Vec::new(), Vec::new(), 0);
    }
    let mut level = vec![usize::MAX; n];
    let mut levels: Vec<Vec<Vertex>> = Vec::new();
    let mut roots = Vec::new();
    for s in 0..n {
        if level[s] != usize::MAX {
            continue;
        }
        roots.push(s);
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            if levels.len() <= level[v] {
                levels.push(Vec::new());
            }
            levels[level[v]].push(v);
            for &w in g.neighbors(v) {
                if level[w] == usize::MAX {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    let mut dsu: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut block_of = vec![usize::MAX; n];
    let mut edges = Vec::new();
    let mut num_blocks = 0;
    let mut below: Vec<Node> = Vec::new();
    for lv in levels.iter().rev() {
        for &v in lv {
            for &w in g.neighbors(v) {
                if level[w] >= level[v] {
                    let (a, b) = (find(&mut dsu, v), find(&mut dsu, w));
                    dsu[a.max(b)] = a.min(b);
                }
            }
        }
        let mut block_of_root: std::collections::BTreeMap<usize, Node> = std::collections::BTreeMap::new();
        for &v in lv {
            let r = find(&mut dsu, v);
            let b = *block_of_root.entry(r).or_insert_with(|| {
                num_blocks += 1;
                num_blocks - 1
            });
            block_of[v] = b;
        }
        // Blocks one level deeper attach to the block sharing their
        // component here.
        for &child in &below {
            let r = find(&mut dsu, child);
            edges.push((block_of[child], block_of_root[&r]));
        }
        let mut firsts: Vec<Vertex> = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for &v in lv {
            if seen.insert(block_of[v]) {
                firsts.push(v);
            }
        }
        below = firsts;
    }
    let root = block_of[roots[0]];
    if roots.len() > 1 {
        // An empty connector keeps every component root at even depth.
        let hub = num_blocks;
        num_blocks += 1;
        edges.push((root, hub));
        for &r in &roots[1..] {
            edges.push((block_of[r], hub));
        }
    }
    let mut edges: Vec<_> = edges.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
    edges.sort_unstable();
    TreePartition::new(num_blocks, edges, block_of, root)
}

/// Colors each block by the parity of its depth: even depth gets
/// `palette.0`, odd depth `palette.1`.
pub fn parity_two_color(tp: &TreePartition, palette: (Color, Color)) -> Coloring {
    let mut c = Coloring::new(tp.block_of.len(), &[palette.0, palette.1]);
    for v in 0..tp.block_of.len() {
        let col = if tp.depth(tp.block_of(v)) % 2 == 0 { palette.0 } else { palette.1 };
        c.set(v, col).expect("palette color");
    }
    c
}

/// Tree-partition followed by parity coloring. Returns the coloring and its
/// measured clustering. The contraction partition is used unless the
/// breadth-first one is strictly narrower; contraction can fold a long cycle
/// that wraps through the root bag into a single block.
pub fn two_color_clustered(
    g: &Graph,
    td: &TreeDecomposition,
    palette: (Color, Color),
) -> Result<(Coloring, usize), ClusterError> {
    let mut tp = tree_partition(g, td)?;
    let alt = bfs_tree_partition(g);
    if alt.width() < tp.width() {
        alt.validate(g).map_err(|v| ClusterError::Internal(format!("level partition invalid: {v:?}")))?;
        tp = alt;
    }
    let c = parity_two_color(&tp, palette);
    let measured = clustering(g, &c);
    if measured > tp.width() {
        return Err(ClusterError::Internal(format!(
            "clustering {measured} exceeds tree-partition width {}",
            tp.width()
        )));
    }
    Ok((c, measured))
}

pub const EXACT_TWO_COLOR_MAX_N: usize = 20;

/// Exhaustive minimum clustering over all 2-colorings (vertex 0 fixed to
/// color 1). Returns an optimal coloring with palette `{1, 2}`.
pub fn exact_two_color(g: &Graph) -> Result<(Coloring, usize), OracleError> {
    let n = g.n();
    if n > EXACT_TWO_COLOR_MAX_N {
        return Err(OracleError::TooLarge { n, max: EXACT_TWO_COLOR_MAX_N });
    }
    if n == 0 {
        return Ok((Coloring::new(0, &[1, 2]), 0));
    }
    let bg = BitGraph::new(g);
    let all: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let (mut best, mut best_mask) = (usize::MAX, 0u32);
    // Bit v set means color 2; vertex 0 always has color 1.
    for code in 0u32..(1u32 << (n - 1)) {
        let second = code << 1;
        let cost = bg.max_component(second).max(bg.max_component(all & !second));
        if cost < best {
            best = cost;
            best_mask = second;
            if best == 1 {
                break;
            }
        }
    }
    let colors: Vec<Color> = (0..n).map(|v| if best_mask >> v & 1 == 1 { 2 } else { 1 }).collect();
    Ok((Coloring::from_colors(&colors, &[1, 2]).expect("palette"), best))
}

#[cfg(test)]
mod tests {
    #[test]
    fn level_partition_is_valid_and_narrow_on_cycles() {
        let n = 40;
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let tp = bfs_tree_partition(&g);
        assert_eq!(tp.validate(&g), Ok(()));
        assert_eq!(tp.width(), 2);
        // A decomposition with the wrap vertex in every bag.
        let bags = (0..n - 2).map(|i| vec![0, i + 1, i + 2]).collect();
        let td = TreeDecomposition::new(bags, (1..n - 2).map(|i| (i - 1, i)).collect());
        let (_, k) = two_color_clustered(&g, &td, (1, 2)).unwrap();
        assert!(k <= 2);
    }

    #[test]
    fn level_partition_on_forests_and_random_graphs() {
        let g = Graph::from_edges(5, &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(bfs_tree_partition(&g).validate(&g), Ok(()));
        for seed in 0..30 {
            let (g, _) = random_ktree_subgraph(25, 3, 6, 0.6, seed);
            assert_eq!(bfs_tree_partition(&g).validate(&g), Ok(()), "seed {seed}");
        }
    }

    use super::*;
    use crate::decomp::{generate_family, random_ktree_subgraph, Family, FamilySpec};
    use crate::td::restrict_td;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn path_td(n: usize) -> TreeDecomposition {
        let bags = (1..n).map(|i| vec![i - 1, i]).collect();
        TreeDecomposition::new(bags, (1..n - 1).map(|t| (t - 1, t)).collect())
    }

    #[test]
    fn rootmost_of_simple_decompositions() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(rootmost_assignment(&tri, &TreeDecomposition::trivial(3)).unwrap(), vec![0, 0, 0]);
        assert_eq!(rootmost_assignment(&path(3), &path_td(3)).unwrap(), vec![0, 0, 1]);
        let bad = TreeDecomposition::new(vec![vec![0, 1]], vec![]);
        assert!(matches!(rootmost_assignment(&path(3), &bad), Err(ClusterError::Decomposition(_))));
    }

    #[test]
    fn rootmost_on_grid_columns() {
        let (g, ltd) = generate_family(&FamilySpec::new(Family::SquareGrid, 5)).unwrap();
        let tau = rootmost_assignment(&g, &ltd.td).unwrap();
        for v in 0..25 {
            let col = v % 5;
            assert_eq!(tau[v], col.saturating_sub(1));
        }
    }

    #[test]
    fn single_bag_gives_single_block() {
        let g = path(6);
        let tp = tree_partition(&g, &TreeDecomposition::trivial(6)).unwrap();
        assert_eq!(tp.num_nodes(), 1);
        assert_eq!(tp.width(), 6);
        let c = parity_two_color(&tp, (1, 2));
        assert_eq!(clustering(&g, &c), 6);
    }

    #[test]
    fn path_of_singletons_is_proper() {
        let g = path(5);
        let tp = TreePartition::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4)], vec![0, 1, 2, 3, 4], 0);
        assert!(tp.validate(&g).is_ok());
        let c = parity_two_color(&tp, (1, 2));
        assert_eq!(clustering(&g, &c), 1);
    }

    #[test]
    fn contraction_merges_long_edges() {
        // Rootmost nodes of 0 and 3 are three levels apart.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let td = TreeDecomposition::new(vec![vec![0, 1, 3], vec![1, 2, 3]], vec![(0, 1)]);
        let tp = tree_partition(&g, &td).unwrap();
        assert!(tp.validate(&g).is_ok());
        let td = TreeDecomposition::new(
            vec![vec![0], vec![0, 1], vec![0, 1, 2], vec![0, 2, 3]],
            vec![(0, 1), (1, 2), (2, 3)],
        );
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 3), (2, 3)]).unwrap();
        let tp = tree_partition(&g, &td).unwrap();
        assert!(tp.validate(&g).is_ok());
        assert!(tp.num_nodes() < 4);
    }

    #[test]
    fn path_clustering_small() {
        let g = path(20);
        let (c, k) = two_color_clustered(&g, &path_td(20), (1, 2)).unwrap();
        assert!(k <= 4);
        assert_eq!(clustering(&g, &c), k);
        let edgeless = Graph::empty(7);
        let (_, k) = two_color_clustered(&edgeless, &TreeDecomposition::trivial(7), (1, 2)).unwrap();
        assert_eq!(k, 1);
    }

    #[test]
    fn exact_small_cases() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(exact_two_color(&tri).unwrap().1, 2);
        assert_eq!(exact_two_color(&path(4)).unwrap().1, 1);
        assert!(exact_two_color(&Graph::empty(21)).is_err());
        let (c, k) = exact_two_color(&tri).unwrap();
        assert_eq!(clustering(&tri, &c), k);
    }

    /// Regression value from the exhaustive search, cross-checked by a
    /// separate enumeration; a 3x3 hex board always has a 3-vertex
    /// monochromatic path.
    #[test]
    fn exact_tri_grid_three() {
        let (g, _) = generate_family(&FamilySpec::new(Family::TriGrid, 3)).unwrap();
        assert_eq!(exact_two_color(&g).unwrap().1, 3);
    }

    #[test]
    fn heuristic_never_beats_optimum() {
        for seed in 0..40 {
            let (g, td) = random_ktree_subgraph(12, 2, 4, 0.85, seed);
            let (_, heuristic) = two_color_clustered(&g, &td, (1, 2)).unwrap();
            let (_, opt) = exact_two_color(&g).unwrap();
            assert!(opt <= heuristic.max(1), "seed {seed}");
        }
    }

    #[test]
    fn tri_grid_row_is_small() {
        let (g, ltd) = generate_family(&FamilySpec::new(Family::TriGrid, 16)).unwrap();
        let row: Vec<_> = (16..32).collect();
        let local = g.induced(&row);
        let td = restrict_td(&ltd.td, &row).restrict_local(g.n(), &row);
        let (_, k) = two_color_clustered(&local, &td, (1, 2)).unwrap();
        assert!(k <= 2);
    }
}
