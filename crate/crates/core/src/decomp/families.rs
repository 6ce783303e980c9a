//! Benchmark graph families with analytic layered tree-decompositions.
//!
//! Grid vertex `(row, col)` has id `row * n + col`, rows and columns
//! 0-based. Every family uses the row-based layering (folded for the torus)
//! and a path of bags indexed by column pairs.

use std::fmt;
use std::str::FromStr;

use crate::error::DecompError;
use crate::graph::{validate_layering, Graph, Layering, Vertex};
use crate::td::{validate_td, LayeredTreeDecomposition, TreeDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    SquareGrid,
    TriGrid,
    TorusGrid,
    CrossedGrid,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::SquareGrid, Family::TriGrid, Family::TorusGrid, Family::CrossedGrid];

    pub fn name(self) -> &'static str {
        match self {
            Family::SquareGrid => "square-grid",
            Family::TriGrid => "tri-grid",
            Family::TorusGrid => "torus-grid",
            Family::CrossedGrid => "crossed-grid",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = DecompError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| DecompError::InvalidSpec(format!("unknown family `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    /// Crossed-grid only: every `crossings`-th eligible face receives a
    /// crossing. Ignored by other families.
    pub crossings: usize,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec { family, n, crossings: 1 }
    }

    pub fn with_crossings(mut self, period: usize) -> Self {
        self.crossings = period;
        self
    }

    fn check(&self) -> Result<(), DecompError> {
        let min = if self.family == Family::TorusGrid { 3 } else { 2 };
        if self.n < min {
            return Err(DecompError::InvalidSpec(format!("{} needs n >= {min}, got {}", self.family, self.n)));
        }
        if self.family == Family::CrossedGrid && self.crossings == 0 {
            return Err(DecompError::InvalidSpec("crossing period must be positive".into()));
        }
        Ok(())
    }
}

/// Builds the family graph and its layered tree-decomposition. The output is
/// validated before it is returned.
pub fn generate_family(spec: &FamilySpec) -> Result<(Graph, LayeredTreeDecomposition), DecompError> {
    spec.check()?;
    let n = spec.n;
    let id = |r: usize, c: usize| r * n + c;
    let mut edges = Vec::new();
    let wrap = spec.family == Family::TorusGrid;
    for r in 0..n {
        for c in 0..n {
            if c + 1 < n {
                edges.push((id(r, c), id(r, c + 1)));
            } else if wrap {
                edges.push((id(r, 0), id(r, c)));
            }
            if r + 1 < n {
                edges.push((id(r, c), id(r + 1, c)));
            } else if wrap {
                edges.push((id(0, c), id(r, c)));
            }
        }
    }
    match spec.family {
        Family::TriGrid => {
            for r in 0..n - 1 {
                for c in 0..n - 1 {
                    edges.push((id(r, c), id(r + 1, c + 1)));
                }
            }
        }
        Family::CrossedGrid => {
            for (r, c) in crossing_faces(n, spec.crossings) {
                edges.push((id(r, c), id(r + 1, c + 1)));
                edges.push((id(r, c + 1), id(r + 1, c)));
            }
        }
        _ => {}
    }
    let g = Graph::from_edges(n * n, &edges)?;

    let (layer_of, n_layers): (Vec<usize>, usize) = if wrap {
        // Row r (1-based) and row n + 2 - r share a layer.
        let fold = |r: usize| (r + 1).min(n + 1 - r);
        ((0..n * n).map(|v| fold(v / n)).collect(), n / 2 + 1)
    } else {
        ((0..n * n).map(|v| v / n + 1).collect(), n)
    };
    let layering = Layering::new(layer_of, n_layers)?;

    let column = |c: usize| (0..n).map(move |r| id(r, c));
    let bags: Vec<Vec<Vertex>> = (0..n - 1)
        .map(|c| {
            let mut bag: Vec<Vertex> = column(c).chain(column(c + 1)).collect();
            if wrap {
                bag.extend(column(0).chain(column(n - 1)));
            }
            bag
        })
        .collect();
    let tree: Vec<_> = (1..bags.len()).map(|t| (t - 1, t)).collect();
    let td = TreeDecomposition::new(bags, tree);

    validate_td(&g, &td).map_err(|v| DecompError::Validation(format!("{}: {v:?}", spec.family)))?;
    validate_layering(&g, &layering).map_err(|v| DecompError::Validation(format!("{}: {v:?}", spec.family)))?;
    Ok((g, LayeredTreeDecomposition::new(td, layering)))
}

/// Faces `(r, c)` (top-left corner) that receive a crossing. Only faces with
/// both coordinates even are eligible, so selected faces are vertex-disjoint.
pub fn crossing_faces(n: usize, period: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in (0..n.saturating_sub(1)).step_by(2) {
        for c in (0..n.saturating_sub(1)).step_by(2) {
            if (r / 2 * n + c / 2) % period == 0 {
                out.push((r, c));
            }
        }
    }
    out
}

/// Straight-line coordinates `(x, y) = (col, row)` for the planar families.
pub fn grid_coordinates(n: usize) -> Vec<(f64, f64)> {
    (0..n * n).map(|v| ((v % n) as f64, (v / n) as f64)).collect()
}
