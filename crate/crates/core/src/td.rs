//! Tree-decompositions, layered tree-decompositions and their validators.

use std::collections::VecDeque;

use crate::graph::{local_index, Graph, Layering, Vertex};

pub type Node = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<Vertex>>,
    edges: Vec<(Node, Node)>,
    root: Option<Node>,
    declared_bag_size: Option<usize>,
}

impl TreeDecomposition {
    /// Bags are normalized to sorted, duplicate-free vectors. Structural
    /// validity is checked separately by [`validate_td`].
    pub fn new(bags: Vec<Vec<Vertex>>, edges: Vec<(Node, Node)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, edges, root: None, declared_bag_size: None }
    }

    /// A single bag holding `0..n`.
    pub fn trivial(n: usize) -> Self {
        Self::new(vec![(0..n).collect()], Vec::new())
    }

    pub fn with_root(mut self, root: Node) -> Self {
        self.root = Some(root);
        self
    }

    /// Records the bag size announced by a file header.
    pub fn with_declared_bag_size(mut self, size: usize) -> Self {
        self.declared_bag_size = Some(size);
        self
    }

    pub fn declared_bag_size(&self) -> Option<usize> {
        self.declared_bag_size
    }

    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    pub fn bag(&self, t: Node) -> &[Vertex] {
        &self.bags[t]
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(Node, Node)] {
        &self.edges
    }

    /// Root node: the explicit root when set, node 0 otherwise.
    pub fn root(&self) -> Node {
        self.root.unwrap_or(0)
    }

    pub fn explicit_root(&self) -> Option<Node> {
        self.root
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `max |bag| - 1`, saturating at zero for all-empty decompositions.
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    pub fn tree_adjacency(&self) -> Vec<Vec<Node>> {
        let mut adj = vec![Vec::new(); self.num_nodes()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// For every vertex in `0..n`, the sorted list of nodes whose bag
    /// contains it. Bag entries `>= n` are ignored.
    pub fn node_sets(&self, n: usize) -> Vec<Vec<Node>> {
        let mut sets = vec![Vec::new(); n];
        for (t, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v < n {
                    sets[v].push(t);
                }
            }
        }
        sets
    }

    /// Parent pointers, depths and BFS order from the root. Assumes the tree
    /// is connected; unreachable nodes keep `depth == usize::MAX`.
    pub fn rooted(&self) -> RootedTree {
        RootedTree::new(&self.tree_adjacency(), self.root())
    }

    /// Bags intersected with `subset`, then relabelled to positions in
    /// `subset` (which must be sorted). Matches [`Graph::induced`].
    pub fn restrict_local(&self, n: usize, subset: &[Vertex]) -> TreeDecomposition {
        let local = local_index(n, subset);
        let bags = self
            .bags
            .iter()
            .map(|b| b.iter().filter_map(|&v| local.get(v).copied().flatten()).collect())
            .collect();
        TreeDecomposition { bags, edges: self.edges.clone(), root: self.root, declared_bag_size: None }
    }

    /// Bags mapped through `map` (local id to global id).
    pub fn relabel(&self, map: &[Vertex]) -> TreeDecomposition {
        let bags = self.bags.iter().map(|b| b.iter().map(|&v| map[v]).collect()).collect();
        TreeDecomposition::new(bags, self.edges.clone()).with_root_opt(self.root)
    }

    fn with_root_opt(mut self, root: Option<Node>) -> Self {
        self.root = root;
        self
    }
}

#[derive(Debug, Clone)]
pub struct RootedTree {
    pub root: Node,
    pub parent: Vec<Option<Node>>,
    pub depth: Vec<usize>,
    pub order: Vec<Node>,
}

impl RootedTree {
    pub fn new(adj: &[Vec<Node>], root: Node) -> Self {
        let k = adj.len();
        let mut parent = vec![None; k];
        let mut depth = vec![usize::MAX; k];
        let mut order = Vec::with_capacity(k);
        if k > 0 {
            depth[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(t) = queue.pop_front() {
                order.push(t);
                for &s in &adj[t] {
                    if depth[s] == usize::MAX {
                        depth[s] = depth[t] + 1;
                        parent[s] = Some(t);
                        queue.push_back(s);
                    }
                }
            }
        }
        RootedTree { root, parent, depth, order }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TdViolation {
    EmptyTree,
    NodeOutOfRange { a: Node, b: Node },
    VertexOutOfRange { node: Node, vertex: Vertex },
    /// A tree edge closes a cycle.
    Cycle { a: Node, b: Node },
    /// The tree has this many connected components.
    Disconnected { components: usize },
    VertexUncovered(Vertex),
    EdgeUncovered(Vertex, Vertex),
    /// The nodes whose bags contain this vertex do not induce a subtree.
    VertexNotConnected(Vertex),
    /// A bag is larger than the size announced by the decomposition's header.
    DeclaredWidth { declared: usize, actual: usize },
}

/// Checks the three decomposition conditions plus tree shape. All failures
/// are collected; `Ok` means the pair is a valid tree-decomposition of `g`.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> Result<(), Vec<TdViolation>> {
    let n = g.n();
    let k = td.num_nodes();
    let mut out = Vec::new();
    if k == 0 {
        return Err(vec![TdViolation::EmptyTree]);
    }

    let mut dsu = (0..k).collect::<Vec<_>>();
    fn find(d: &mut [usize], mut x: usize) -> usize {
        while d[x] != x {
            d[x] = d[d[x]];
            x = d[x];
        }
        x
    }
    let mut components = k;
    for &(a, b) in td.tree_edges() {
        if a >= k || b >= k {
            out.push(TdViolation::NodeOutOfRange { a, b });
            continue;
        }
        let (ra, rb) = (find(&mut dsu, a), find(&mut dsu, b));
        if ra == rb {
            out.push(TdViolation::Cycle { a, b });
        } else {
            dsu[ra] = rb;
            components -= 1;
        }
    }
    if components > 1 {
        out.push(TdViolation::Disconnected { components });
    }

    for (t, bag) in td.bags().iter().enumerate() {
        for &v in bag.iter().filter(|&&v| v >= n) {
            out.push(TdViolation::VertexOutOfRange { node: t, vertex: v });
        }
    }

    let sets = td.node_sets(n);
    for (v, s) in sets.iter().enumerate() {
        if s.is_empty() {
            out.push(TdViolation::VertexUncovered(v));
        }
    }
    for (u, v) in g.edges() {
        if !sorted_intersect(&sets[u], &sets[v]) {
            out.push(TdViolation::EdgeUncovered(u, v));
        }
    }

    // In a forest, a node set induces a subtree iff it spans |S| - 1 edges.
    let mut internal = vec![0usize; n];
    for &(a, b) in td.tree_edges() {
        if a >= k || b >= k {
            continue;
        }
        for v in sorted_common(td.bag(a), td.bag(b)) {
            if v < n {
                internal[v] += 1;
            }
        }
    }
    for (v, s) in sets.iter().enumerate() {
        if !s.is_empty() && internal[v] + 1 != s.len() {
            out.push(TdViolation::VertexNotConnected(v));
        }
    }

    if let Some(declared) = td.declared_bag_size() {
        let actual = td.max_bag_size();
        if actual > declared {
            out.push(TdViolation::DeclaredWidth { declared, actual });
        }
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

pub(crate) fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

pub(crate) fn sorted_common(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Same tree, every bag intersected with `subset`. Empty bags are kept.
pub fn restrict_td(td: &TreeDecomposition, subset: &[Vertex]) -> TreeDecomposition {
    let limit = subset.iter().max().map_or(0, |&m| m + 1);
    let mut inside = vec![false; limit];
    for &v in subset {
        inside[v] = true;
    }
    let bags = td
        .bags()
        .iter()
        .map(|b| b.iter().copied().filter(|&v| v < limit && inside[v]).collect())
        .collect();
    TreeDecomposition::new(bags, td.tree_edges().to_vec()).with_root_opt(td.explicit_root())
}

/// A tree-decomposition paired with a layering, with the layered width
/// `max |X_t ∩ V_i|` measured at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredTreeDecomposition {
    pub td: TreeDecomposition,
    pub layering: Layering,
    layered_width: usize,
}

impl LayeredTreeDecomposition {
    pub fn new(td: TreeDecomposition, layering: Layering) -> Self {
        let layered_width = measure_layered_width(&td, &layering);
        LayeredTreeDecomposition { td, layering, layered_width }
    }

    pub fn layered_width(&self) -> usize {
        self.layered_width
    }
}

pub fn layered_width(ltd: &LayeredTreeDecomposition) -> usize {
    ltd.layered_width()
}

/// `max` over bags and layers of `|bag ∩ layer|`. Bag entries outside the
/// layering are ignored.
pub fn measure_layered_width(td: &TreeDecomposition, layering: &Layering) -> usize {
    let mut count = vec![0usize; layering.n_layers() + 1];
    let mut best = 0;
    for bag in td.bags() {
        for &v in bag.iter().filter(|&&v| v < layering.n()) {
            let l = layering.layer_of(v);
            count[l] += 1;
            best = best.max(count[l]);
        }
        for &v in bag.iter().filter(|&&v| v < layering.n()) {
            count[layering.layer_of(v)] = 0;
        }
    }
    best
}
