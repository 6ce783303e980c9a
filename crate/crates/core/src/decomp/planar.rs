//! Layered tree-decompositions of embedded planar graphs.
//!
//! The embedding is triangulated by fan chords, a BFS tree is grown from the
//! root, and the triangles become decomposition nodes joined along the dual
//! edges of non-tree edges. Each bag is the union of the three root paths of
//! a triangle's corners, so it meets every BFS layer in at most three
//! vertices.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::DecompError;
use crate::graph::{connected_components, Graph, Layering, Vertex};
use crate::td::{validate_td, LayeredTreeDecomposition, TreeDecomposition};

/// Cyclic order of neighbours around each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSystem {
    pub rotations: Vec<Vec<Vertex>>,
}

impl RotationSystem {
    pub fn new(rotations: Vec<Vec<Vertex>>) -> Self {
        RotationSystem { rotations }
    }

    /// Rotation induced by a straight-line drawing: neighbours sorted by
    /// angle around each vertex.
    pub fn from_coordinates(g: &Graph, coords: &[(f64, f64)]) -> Self {
        let rotations = (0..g.n())
            .map(|v| {
                let (x, y) = coords[v];
                let mut nb = g.neighbors(v).to_vec();
                nb.sort_by(|&a, &b| {
                    let ta = (coords[a].1 - y).atan2(coords[a].0 - x);
                    let tb = (coords[b].1 - y).atan2(coords[b].0 - x);
                    ta.total_cmp(&tb)
                });
                nb
            })
            .collect();
        RotationSystem { rotations }
    }

    /// The underlying simple graph; rejects asymmetric or malformed lists.
    pub fn graph(&self) -> Result<Graph, DecompError> {
        let n = self.rotations.len();
        let mut edges = Vec::new();
        for (u, rot) in self.rotations.iter().enumerate() {
            for &v in rot {
                if v >= n {
                    return Err(DecompError::InvalidInput(format!("vertex {u} lists neighbour {v} >= {n}")));
                }
                if !self.rotations[v].contains(&u) {
                    return Err(DecompError::InvalidInput(format!("rotation not symmetric: {u}->{v}")));
                }
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        Ok(Graph::from_edges(n, &edges)?)
    }

    /// Face boundary walks. Dart `u -> v` is followed by `v -> w` where `w`
    /// succeeds `u` in the rotation at `v`. Each walk is returned as its
    /// vertex sequence.
    pub fn faces(&self) -> Vec<Vec<Vertex>> {
        let pos: Vec<HashMap<Vertex, usize>> = self
            .rotations
            .iter()
            .map(|rot| rot.iter().enumerate().map(|(i, &w)| (w, i)).collect())
            .collect();
        let mut used: Vec<Vec<bool>> = self.rotations.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = Vec::new();
        for u in 0..self.rotations.len() {
            for i in 0..self.rotations[u].len() {
                if used[u][i] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut a, mut ai) = (u, i);
                while !used[a][ai] {
                    used[a][ai] = true;
                    walk.push(a);
                    let b = self.rotations[a][ai];
                    let back = pos[b][&a];
                    let bi = (back + 1) % self.rotations[b].len();
                    a = b;
                    ai = bi;
                }
                faces.push(walk);
            }
        }
        faces
    }
}

/// Builds a layered tree-decomposition of layered width at most 3 for a
/// connected plane graph. The layering is BFS distance from `root` in the
/// triangulated graph (chords only, so it is also a layering of the input).
pub fn planar_ltd(rot: &RotationSystem, root: Vertex) -> Result<LayeredTreeDecomposition, DecompError> {
    let g = rot.graph()?;
    let n = g.n();
    if n == 0 || root >= n {
        return Err(DecompError::InvalidInput(format!("root {root} not a vertex of a graph with {n} vertices")));
    }
    let all: Vec<Vertex> = (0..n).collect();
    if connected_components(&g, &all)?.len() != 1 {
        return Err(DecompError::InvalidInput("graph is disconnected".into()));
    }
    let faces = rot.faces();
    let euler = n as i64 - g.m() as i64 + faces.len() as i64;
    if euler != 2 {
        return Err(DecompError::Embedding(format!(
            "|V| - |E| + |F| = {euler}, expected 2 for a planar embedding"
        )));
    }
    if n <= 2 {
        let td = TreeDecomposition::trivial(n);
        let layering = Layering::new((0..n).map(|v| if v == root { 1 } else { 2 }).collect(), n)?;
        return finish(&g, td, layering);
    }

    let tri = triangulate(&g, &faces)?;
    let (depth, parent_edge, parent) = bfs_tree(n, &tri.edges, root);

    // Dual spanning tree over the triangles, through non-tree edges.
    let mut sides: Vec<Vec<usize>> = vec![Vec::new(); tri.edges.len()];
    for (f, t) in tri.triangles.iter().enumerate() {
        for &e in &t.sides {
            sides[e].push(f);
        }
    }
    let mut is_tree_edge = vec![false; tri.edges.len()];
    for e in parent_edge.iter().flatten() {
        is_tree_edge[*e] = true;
    }
    let k = tri.triangles.len();
    let mut dsu: Vec<usize> = (0..k).collect();
    let mut dual_edges = Vec::with_capacity(k.saturating_sub(1));
    for (e, fs) in sides.iter().enumerate() {
        if fs.len() != 2 {
            return Err(DecompError::Embedding(format!("edge {e} borders {} triangle sides", fs.len())));
        }
        if is_tree_edge[e] {
            continue;
        }
        let (a, b) = (find(&mut dsu, fs[0]), find(&mut dsu, fs[1]));
        if a == b {
            return Err(DecompError::Validation(format!("dual of non-tree edge {e} closes a cycle")));
        }
        dsu[a] = b;
        dual_edges.push((fs[0], fs[1]));
    }
    if dual_edges.len() + 1 != k {
        return Err(DecompError::Validation(format!(
            "cotree has {} edges for {k} triangles",
            dual_edges.len()
        )));
    }

    let bags = tri
        .triangles
        .iter()
        .map(|t| t.corners.iter().flat_map(|&c| root_path(c, &parent)).collect())
        .collect();
    let td = TreeDecomposition::new(bags, dual_edges);
    let n_layers = depth.iter().max().map_or(0, |d| d + 1);
    let layering = Layering::new(depth.iter().map(|d| d + 1).collect(), n_layers)?;
    finish(&g, td, layering)
}

fn finish(g: &Graph, td: TreeDecomposition, layering: Layering) -> Result<LayeredTreeDecomposition, DecompError> {
    validate_td(g, &td).map_err(|v| DecompError::Validation(format!("{v:?}")))?;
    crate::graph::validate_layering(g, &layering).map_err(|v| DecompError::Validation(format!("{v:?}")))?;
    let ltd = LayeredTreeDecomposition::new(td, layering);
    if ltd.layered_width() > 3 {
        return Err(DecompError::Validation(format!("layered width {} exceeds 3", ltd.layered_width())));
    }
    Ok(ltd)
}

fn find(d: &mut [usize], mut x: usize) -> usize {
    while d[x] != x {
        d[x] = d[d[x]];
        x = d[x];
    }
    x
}

pub(crate) fn root_path(mut v: Vertex, parent: &[Option<Vertex>]) -> Vec<Vertex> {
    let mut path = vec![v];
    while let Some(p) = parent[v] {
        path.push(p);
        v = p;
    }
    path
}

#[derive(Debug)]
struct Triangle {
    corners: [Vertex; 3],
    sides: [usize; 3],
}

#[derive(Debug)]
struct Triangulation {
    /// Original edges first, then chords; parallel edges allowed.
    edges: Vec<(Vertex, Vertex)>,
    triangles: Vec<Triangle>,
}

/// Fan-triangulates every face from its lowest-id vertex that occurs once on
/// the boundary walk.
fn triangulate(g: &Graph, faces: &[Vec<Vertex>]) -> Result<Triangulation, DecompError> {
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let edge_id: HashMap<(Vertex, Vertex), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let eid = |a: Vertex, b: Vertex| edge_id[&(a.min(b), a.max(b))];
    let mut triangles = Vec::new();
    for walk in faces {
        let len = walk.len();
        if len < 3 {
            return Err(DecompError::Embedding(format!("face of length {len}")));
        }
        let mut count: HashMap<Vertex, usize> = HashMap::new();
        for &v in walk {
            *count.entry(v).or_default() += 1;
        }
        let start = (0..len)
            .filter(|&i| count[&walk[i]] == 1)
            .min_by_key(|&i| walk[i])
            .ok_or_else(|| DecompError::Embedding(format!("face {walk:?} has no simple corner to fan from")))?;
        let w: Vec<Vertex> = (0..len).map(|i| walk[(start + i) % len]).collect();
        let boundary: Vec<usize> = (0..len).map(|i| eid(w[i], w[(i + 1) % len])).collect();
        // chord[i] joins w[0] and w[i] for 2 <= i <= len - 2.
        let mut chord = vec![usize::MAX; len];
        for (i, c) in chord.iter_mut().enumerate().take(len - 1).skip(2) {
            *c = edges.len();
            edges.push((w[0], w[i]));
        }
        for i in 1..len - 1 {
            let a = if i == 1 { boundary[0] } else { chord[i] };
            let c = if i + 1 == len - 1 { boundary[len - 1] } else { chord[i + 1] };
            triangles.push(Triangle { corners: [w[0], w[i], w[i + 1]], sides: [a, boundary[i], c] });
        }
    }
    Ok(Triangulation { edges, triangles })
}

/// BFS over a multigraph given by edge list; neighbours visited in
/// increasing (vertex, edge id) order.
fn bfs_tree(n: usize, edges: &[(Vertex, Vertex)], root: Vertex) -> (Vec<usize>, Vec<Option<usize>>, Vec<Option<Vertex>>) {
    let mut adj: Vec<Vec<(Vertex, usize)>> = vec![Vec::new(); n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut depth = vec![usize::MAX; n];
    let mut parent_edge = vec![None; n];
    let mut parent = vec![None; n];
    depth[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &(w, e) in &adj[v] {
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent_edge[w] = Some(e);
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    (depth, parent_edge, parent)
}

/// BFS parent pointers in the triangulated graph, exposed so callers can
/// check that bags are unions of root paths.
pub fn triangulated_bfs_parents(rot: &RotationSystem, root: Vertex) -> Result<Vec<Option<Vertex>>, DecompError> {
    let g = rot.graph()?;
    if g.n() <= 2 {
        return Ok((0..g.n()).map(|v| (v != root).then_some(root)).collect());
    }
    let tri = triangulate(&g, &rot.faces())?;
    Ok(bfs_tree(g.n(), &tri.edges, root).2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::families::{generate_family, grid_coordinates, Family, FamilySpec};

    fn embedded(family: Family, n: usize) -> (Graph, RotationSystem) {
        let (g, _) = generate_family(&FamilySpec::new(family, n)).unwrap();
        let rot = RotationSystem::from_coordinates(&g, &grid_coordinates(n));
        (g, rot)
    }

    #[test]
    fn single_triangle() {
        let rot = RotationSystem::new(vec![vec![1, 2], vec![2, 0], vec![0, 1]]);
        for root in 0..3 {
            let ltd = planar_ltd(&rot, root).unwrap();
            assert!(ltd.layered_width() <= 3);
            assert!(ltd.td.bags().iter().all(|b| b.len() == 3));
        }
    }

    #[test]
    fn grids_get_width_three() {
        for family in [Family::SquareGrid, Family::TriGrid] {
            let (g, rot) = embedded(family, 6);
            assert_eq!(rot.faces().len() as i64, 2 - g.n() as i64 + g.m() as i64);
            for root in [0, 14, 35] {
                let ltd = planar_ltd(&rot, root).unwrap();
                assert!(validate_td(&g, &ltd.td).is_ok());
                assert!(ltd.layered_width() <= 3);
            }
        }
    }

    #[test]
    fn trees_and_paths() {
        // star with three leaves and a path: faces revisit the centre.
        let star = RotationSystem::new(vec![vec![1, 2, 3], vec![0], vec![0], vec![0]]);
        assert!(planar_ltd(&star, 0).unwrap().layered_width() <= 3);
        let path = RotationSystem::new(vec![vec![1], vec![0, 2], vec![1, 3], vec![2]]);
        assert!(planar_ltd(&path, 2).unwrap().layered_width() <= 3);
        let edge = RotationSystem::new(vec![vec![1], vec![0]]);
        assert_eq!(planar_ltd(&edge, 0).unwrap().td.num_nodes(), 1);
    }

    #[test]
    fn rejects_bad_embeddings() {
        // K4 with a rotation that is not planar.
        let k4 = RotationSystem::new(vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]]);
        assert!(matches!(planar_ltd(&k4, 0), Err(DecompError::Embedding(_))));
        let split = RotationSystem::new(vec![vec![1], vec![0], vec![3], vec![2]]);
        assert!(matches!(planar_ltd(&split, 0), Err(DecompError::InvalidInput(_))));
        let asym = RotationSystem::new(vec![vec![1], vec![]]);
        assert!(planar_ltd(&asym, 0).is_err());
    }
}
