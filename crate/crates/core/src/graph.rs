//! Simple undirected graphs, layerings, colorings and component machinery.
//!
//! Vertex ids are dense integers in `0..n`. Every set-valued output is sorted
//! ascending so results never depend on hash or scheduling order.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    declared_max_degree: Option<usize>,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops, duplicate edges and
    /// out-of-range ids are rejected.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj, declared_max_degree: None })
    }

    /// Like [`Graph::from_edges`] but silently merges repeated edges.
    pub fn from_edges_dedup(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut norm: Vec<(Vertex, Vertex)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        norm.sort_unstable();
        norm.dedup();
        Self::from_edges(n, &norm)
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], declared_max_degree: None }
    }

    /// Declares an upper bound on the maximum degree, checked against the
    /// measured value.
    pub fn with_declared_max_degree(mut self, delta: usize) -> Result<Self, GraphError> {
        let measured = self.max_degree();
        if measured > delta {
            return Err(GraphError::DegreeBound { measured, declared: delta });
        }
        self.declared_max_degree = Some(delta);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The declared degree bound when present, the measured one otherwise.
    pub fn degree_bound(&self) -> usize {
        self.declared_max_degree.unwrap_or_else(|| self.max_degree())
    }

    pub fn declared_max_degree(&self) -> Option<usize> {
        self.declared_max_degree
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Induced subgraph on `subset` (sorted, duplicate-free) with local ids
    /// `0..subset.len()`; local id `i` corresponds to `subset[i]`.
    pub fn induced(&self, subset: &[Vertex]) -> Graph {
        let local = local_index(self.n(), subset);
        let adj = subset
            .iter()
            .map(|&v| self.adj[v].iter().filter_map(|&w| local[w]).collect())
            .collect();
        Graph { adj, declared_max_degree: None }
    }
}

/// Maps global ids to positions in `subset`.
pub(crate) fn local_index(n: usize, subset: &[Vertex]) -> Vec<Option<usize>> {
    let mut local = vec![None; n];
    for (i, &v) in subset.iter().enumerate() {
        local[v] = Some(i);
    }
    local
}

/// Connected components of `g[subset]`, each sorted, ordered by smallest
/// member.
pub fn connected_components(g: &Graph, subset: &[Vertex]) -> Result<Vec<Vec<Vertex>>, GraphError> {
    let n = g.n();
    let mut inside = vec![false; n];
    for &v in subset {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        inside[v] = true;
    }
    let mut seen = vec![false; n];
    let mut order: Vec<Vertex> = subset.to_vec();
    order.sort_unstable();
    order.dedup();
    let mut comps = Vec::new();
    let mut queue = VecDeque::new();
    for &s in &order {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    Ok(comps)
}

/// An ordered partition of the vertex set into layers `V_1, ..., V_k`.
/// Layer indices are 1-based; empty layers are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    layer_of: Vec<usize>,
    n_layers: usize,
}

impl Layering {
    pub fn new(layer_of: Vec<usize>, n_layers: usize) -> Result<Self, GraphError> {
        if let Some((v, &l)) = layer_of.iter().enumerate().find(|(_, &l)| l == 0 || l > n_layers) {
            return Err(GraphError::LayerOutOfRange { vertex: v, layer: l, n_layers });
        }
        Ok(Layering { layer_of, n_layers })
    }

    /// Every vertex in layer 1.
    pub fn single(n: usize) -> Self {
        Layering { layer_of: vec![1; n], n_layers: 1 }
    }

    pub fn n(&self) -> usize {
        self.layer_of.len()
    }

    pub fn n_layers(&self) -> usize {
        self.n_layers
    }

    pub fn layer_of(&self, v: Vertex) -> usize {
        self.layer_of[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.layer_of
    }

    /// Vertex sets of all layers; index 0 holds `V_1`.
    pub fn layers(&self) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); self.n_layers];
        for (v, &l) in self.layer_of.iter().enumerate() {
            out[l - 1].push(v);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LayeringViolation {
    /// The layering and the graph disagree on the vertex count.
    Coverage { graph_n: usize, layering_n: usize },
    /// Edge whose endpoints lie in layers at distance two or more.
    SpanningEdge { u: Vertex, v: Vertex, layer_u: usize, layer_v: usize },
}

pub fn validate_layering(g: &Graph, layering: &Layering) -> Result<(), Vec<LayeringViolation>> {
    if g.n() != layering.n() {
        return Err(vec![LayeringViolation::Coverage { graph_n: g.n(), layering_n: layering.n() }]);
    }
    let bad: Vec<_> = g
        .edges()
        .filter_map(|(u, v)| {
            let (a, b) = (layering.layer_of(u), layering.layer_of(v));
            (a.abs_diff(b) >= 2).then_some(LayeringViolation::SpanningEdge { u, v, layer_u: a, layer_v: b })
        })
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

/// BFS layering: each connected component is layered by distance from its
/// smallest vertex, starting at layer 1.
pub fn bfs_layering(g: &Graph) -> Layering {
    let n = g.n();
    let mut layer = vec![0usize; n];
    let mut queue = VecDeque::new();
    let mut n_layers = if n == 0 { 0 } else { 1 };
    for s in 0..n {
        if layer[s] != 0 {
            continue;
        }
        layer[s] = 1;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            n_layers = n_layers.max(layer[v]);
            for &w in g.neighbors(v) {
                if layer[w] == 0 {
                    layer[w] = layer[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    Layering { layer_of: layer, n_layers }
}

pub type Color = u8;

/// A partial map from vertices to colors drawn from a declared palette.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<Option<Color>>,
    palette: Vec<Color>,
}

impl Coloring {
    pub fn new(n: usize, palette: &[Color]) -> Self {
        let mut palette = palette.to_vec();
        palette.sort_unstable();
        palette.dedup();
        Coloring { colors: vec![None; n], palette }
    }

    /// A total coloring from a dense color vector.
    pub fn from_colors(colors: &[Color], palette: &[Color]) -> Result<Self, GraphError> {
        let mut c = Coloring::new(colors.len(), palette);
        for (v, &col) in colors.iter().enumerate() {
            c.set(v, col)?;
        }
        Ok(c)
    }

    pub fn set(&mut self, v: Vertex, color: Color) -> Result<(), GraphError> {
        if !self.palette.contains(&color) {
            return Err(GraphError::ColorOutsidePalette { vertex: v, color });
        }
        self.colors[v] = Some(color);
        Ok(())
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors[v]
    }

    pub fn palette(&self) -> &[Color] {
        &self.palette
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn domain(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.colors.iter().enumerate().filter_map(|(v, c)| c.map(|_| v))
    }

    pub fn class(&self, color: Color) -> Vec<Vertex> {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(v, &c)| (c == Some(color)).then_some(v))
            .collect()
    }

    /// Dense color vector; `None` if some vertex is uncolored.
    pub fn to_dense(&self) -> Option<Vec<Color>> {
        self.colors.iter().copied().collect()
    }
}

/// Monochromatic components of `g` under `c`, restricted to colored
/// vertices. Sorted by smallest member.
pub fn monochromatic_components(g: &Graph, c: &Coloring) -> Vec<(Color, Vec<Vertex>)> {
    let mut out = Vec::new();
    for &col in c.palette() {
        let class = c.class(col);
        for comp in connected_components(g, &class).expect("coloring ids within graph") {
            out.push((col, comp));
        }
    }
    out.sort_by(|a, b| a.1[0].cmp(&b.1[0]));
    out
}

/// Size of the largest monochromatic component (0 for an empty domain).
pub fn clustering(g: &Graph, c: &Coloring) -> usize {
    monochromatic_components(g, c).iter().map(|(_, comp)| comp.len()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn square_grid(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if j + 1 < n {
                    edges.push((i * n + j, i * n + j + 1));
                }
                if i + 1 < n {
                    edges.push((i * n + j, (i + 1) * n + j));
                }
            }
        }
        Graph::from_edges(n * n, &edges).unwrap()
    }

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::from_edges(2, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::from_edges(2, &[(0, 2)]), Err(GraphError::VertexOutOfRange { .. })));
        assert!(Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap().with_declared_max_degree(1).is_err());
    }

    #[test]
    fn components_of_path_subsets() {
        let g = path(3);
        assert_eq!(connected_components(&g, &[0, 2]).unwrap(), vec![vec![0], vec![2]]);
        assert_eq!(connected_components(&g, &[2, 1, 0]).unwrap(), vec![vec![0, 1, 2]]);
        assert!(connected_components(&g, &[3]).is_err());
    }

    #[test]
    fn grid_row_is_one_component() {
        let g = square_grid(4);
        let row: Vec<_> = (4..8).collect();
        assert_eq!(connected_components(&g, &row).unwrap(), vec![row.clone()]);
        let col: Vec<_> = (0..4).map(|i| i * 4 + 1).collect();
        assert_eq!(connected_components(&g, &col).unwrap(), vec![col.clone()]);
    }

    #[test]
    fn layering_checks() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(validate_layering(&g, &Layering::single(3)).is_ok());
        let bad = Layering::new(vec![1, 2, 3], 3).unwrap();
        assert_eq!(
            validate_layering(&g, &bad),
            Err(vec![LayeringViolation::SpanningEdge { u: 0, v: 2, layer_u: 1, layer_v: 3 }])
        );
        let grid = square_grid(5);
        let rows = Layering::new((0..25).map(|v| v / 5 + 1).collect(), 5).unwrap();
        assert!(validate_layering(&grid, &rows).is_ok());
        assert!(validate_layering(&grid, &Layering::single(4)).is_err());
        assert!(Layering::new(vec![0], 1).is_err());
    }

    #[test]
    fn bfs_layering_is_valid() {
        let g = square_grid(6);
        let l = bfs_layering(&g);
        assert!(validate_layering(&g, &l).is_ok());
        assert_eq!(l.n_layers(), 11);
        let two = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(bfs_layering(&two).as_slice(), &[1, 2, 1, 2]);
    }

    #[test]
    fn clustering_of_simple_colorings() {
        let g = path(5);
        let proper = Coloring::from_colors(&[1, 2, 1, 2, 1], &[1, 2]).unwrap();
        assert_eq!(clustering(&g, &proper), 1);
        let constant = Coloring::from_colors(&[1; 5], &[1, 2]).unwrap();
        assert_eq!(clustering(&g, &constant), 5);
        assert!(Coloring::from_colors(&[3], &[1, 2]).is_err());
    }

    #[test]
    fn induced_relabels() {
        let g = square_grid(3);
        let h = g.induced(&[0, 1, 3, 4]);
        assert_eq!(h.m(), 4);
        assert_eq!(h.neighbors(0), &[1, 2]);
    }
}
