//! Independent checks of pipeline output and brute-force oracles.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitgraph::BitGraph;
use crate::decomp::{generate_family, Family, FamilySpec};
use crate::error::{GraphError, OracleError};
use crate::graph::{validate_layering, Color, Coloring, Graph, Layering, Vertex};
use crate::pipeline::{PipelineReport, CLASS_PALETTE};
use crate::td::{measure_layered_width, validate_td, TreeDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorStats {
    pub components: usize,
    /// Component size to number of components of that size.
    pub histogram: BTreeMap<usize, usize>,
    pub max: usize,
    /// Largest component, smallest-id tie break.
    pub largest: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub per_color: BTreeMap<Color, ColorStats>,
    pub clustering: usize,
}

impl ClusterReport {
    /// Sum of size times count over every histogram; equals `n`.
    pub fn histogram_total(&self) -> usize {
        self.per_color.values().flat_map(|s| s.histogram.iter()).map(|(size, count)| size * count).sum()
    }
}

/// Component statistics by a depth-first sweep over each color class.
pub fn cluster_stats(g: &Graph, c: &Coloring) -> Result<ClusterReport, GraphError> {
    let n = g.n();
    if c.n() != n {
        return Err(GraphError::InvalidInput(format!("coloring has {} vertices, graph has {n}", c.n())));
    }
    if let Some(v) = (0..n).find(|&v| c.get(v).is_none()) {
        return Err(GraphError::Uncolored(v));
    }
    let mut seen = vec![false; n];
    let mut per_color: BTreeMap<Color, ColorStats> = BTreeMap::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let col = c.get(s).expect("checked");
        seen[s] = true;
        let mut stack = vec![s];
        let mut comp = Vec::new();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in g.neighbors(v) {
                if !seen[w] && c.get(w) == Some(col) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        let stats = per_color.entry(col).or_insert_with(|| ColorStats {
            components: 0,
            histogram: BTreeMap::new(),
            max: 0,
            largest: Vec::new(),
        });
        stats.components += 1;
        *stats.histogram.entry(comp.len()).or_default() += 1;
        if comp.len() > stats.max {
            stats.max = comp.len();
            stats.largest = comp;
        }
    }
    let clustering = per_color.values().map(|s| s.max).max().unwrap_or(0);
    Ok(ClusterReport { per_color, clustering })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    Input(String),
    PaletteByClass { vertex: Vertex, color: Color, class: usize },
    /// A color-`color` component meets the class it must avoid.
    ForbiddenClass { color: Color, class: usize, component: Vec<Vertex> },
    ComponentSize { color: Color, size: usize, bound: usize, component: Vec<Vertex> },
    ClusteringMismatch { color: Color, reported: usize, recomputed: usize },
    AugmentedWidth { phase: usize, layer: usize, restricted: usize, augmented: usize, bound: usize },
    LemmaParameter { phase: usize, name: String, measured: usize, bound: usize },
    LayeredWidth { reported: usize, recomputed: usize },
}

/// Re-derives the classes from `layering` and re-checks the output
/// properties of `report` against `g`. The decomposition, when supplied, is
/// validated and used to recompute the layered width.
pub fn check_pipeline_invariants(
    g: &Graph,
    layering: &Layering,
    report: &PipelineReport,
    td: Option<&TreeDecomposition>,
) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let n = g.n();
    if layering.n() != n || report.colors.len() != n {
        return Err(vec![Violation::Input(format!(
            "vertex counts differ: graph {n}, layering {}, coloring {}",
            layering.n(),
            report.colors.len()
        ))]);
    }
    if let Err(v) = validate_layering(g, layering) {
        return Err(vec![Violation::Input(format!("invalid layering: {v:?}"))]);
    }
    let class_of: Vec<usize> = (0..n).map(|v| (layering.layer_of(v) - 1) % 3).collect();
    for v in 0..n {
        let (a, b) = CLASS_PALETTE[class_of[v]];
        let col = report.colors[v];
        if col != a && col != b {
            out.push(Violation::PaletteByClass { vertex: v, color: col, class: class_of[v] + 1 });
        }
    }
    let coloring = match Coloring::from_colors(&report.colors, &[1, 2, 3]) {
        Ok(c) => c,
        Err(e) => {
            out.push(Violation::Input(e.to_string()));
            return Err(out);
        }
    };

    let m = &report.measured;
    let delta = g.max_degree();
    let [f1, f2, f3] = [m.f1.max(1), m.f2.max(1), m.f3.max(1)];
    let stats = cluster_stats(g, &coloring).expect("total coloring");
    let components = crate::graph::monochromatic_components(g, &coloring);
    for (&color, s) in &stats.per_color {
        // Forbidden class and size bound per color.
        let (forbidden, bound) = match color {
            2 => (2, (1 + f1 * delta) * f2),
            1 => (1, (1 + f1 * delta) * f3),
            _ => (0, (1 + f2 * delta) * f3),
        };
        let reported = report.clustering.per_color.get(&color.to_string()).copied().unwrap_or(0);
        if reported != s.max {
            out.push(Violation::ClusteringMismatch { color, reported, recomputed: s.max });
        }
        for (_, comp) in components.iter().filter(|(c, _)| *c == color) {
            if comp.iter().any(|&v| class_of[v] == forbidden) {
                out.push(Violation::ForbiddenClass { color, class: forbidden + 1, component: comp.clone() });
            }
            if comp.len() > bound {
                out.push(Violation::ComponentSize { color, size: comp.len(), bound, component: comp.clone() });
            }
        }
    }
    if report.clustering.overall != stats.clustering {
        out.push(Violation::ClusteringMismatch { color: 0, reported: report.clustering.overall, recomputed: stats.clustering });
    }

    let fm = f1.max(f2);
    let ell = m.widths.input;
    for (phase, layers, f, h_bound) in [(2, &m.widths.phase2, f1, ell + 1), (3, &m.widths.phase3, fm, 2 * (m.widths.w2 + 1))] {
        for l in layers {
            let bound = l.restricted_max_bag + 2 * l.h * l.k;
            if l.augmented_max_bag > bound {
                out.push(Violation::AugmentedWidth {
                    phase,
                    layer: l.layer,
                    restricted: l.restricted_max_bag,
                    augmented: l.augmented_max_bag,
                    bound,
                });
            }
            for (name, measured, bound) in
                [("h", l.h, h_bound), ("k", l.k, f * f * delta * delta), ("d", l.d, f * delta * delta)]
            {
                if measured > bound {
                    out.push(Violation::LemmaParameter { phase, name: name.into(), measured, bound });
                }
            }
        }
    }

    if let Some(td) = td {
        match validate_td(g, td) {
            Err(v) => out.push(Violation::Input(format!("invalid decomposition: {v:?}"))),
            Ok(()) => {
                let recomputed = measure_layered_width(td, layering);
                if recomputed != ell {
                    out.push(Violation::LayeredWidth { reported: ell, recomputed });
                }
            }
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

pub const EXACT_THREE_COLOR_MAX_N: usize = 15;

/// Exhaustive minimum clustering over all 3-colorings. Colors are assigned
/// in vertex order with symmetry breaking (a vertex may open at most one new
/// color); a branch dies as soon as a partial component exceeds the target.
pub fn exact_three_color(g: &Graph) -> Result<(Coloring, usize), OracleError> {
    let n = g.n();
    if n > EXACT_THREE_COLOR_MAX_N {
        return Err(OracleError::TooLarge { n, max: EXACT_THREE_COLOR_MAX_N });
    }
    if n == 0 {
        return Ok((Coloring::new(0, &[1, 2, 3]), 0));
    }
    let bg = BitGraph::new(g);
    let mut assign = vec![0usize; n];
    for target in 1..=n {
        let mut classes = [0u32; 3];
        if search(&bg, 0, target, &mut classes, &mut assign, 0) {
            let colors: Vec<Color> = assign.iter().map(|&c| c as Color + 1).collect();
            return Ok((Coloring::from_colors(&colors, &[1, 2, 3]).expect("palette"), target));
        }
    }
    unreachable!("a single color class has clustering at most n")
}

fn search(bg: &BitGraph, v: usize, target: usize, classes: &mut [u32; 3], assign: &mut [usize], used: usize) -> bool {
    if v == assign.len() {
        return true;
    }
    for col in 0..(used + 1).min(3) {
        classes[col] |= 1 << v;
        if bg.component(v, classes[col]).count_ones() as usize <= target {
            assign[v] = col;
            if search(bg, v + 1, target, classes, assign, used.max(col + 1)) {
                return true;
            }
        }
        classes[col] &= !(1 << v);
    }
    false
}

pub const HEX_MAX_N: usize = 4;

/// Checks every 2-coloring of the `n × n` triangular grid for a
/// monochromatic path on at least `n` vertices. Returns the first coloring
/// without one, if any.
pub fn hex_check(n: usize) -> Result<Option<Vec<Color>>, OracleError> {
    if n > HEX_MAX_N {
        return Err(OracleError::TooLarge { n, max: HEX_MAX_N });
    }
    if n < 2 {
        return Ok(None);
    }
    let (g, _) = generate_family(&FamilySpec::new(Family::TriGrid, n)).expect("tri-grid for n >= 2");
    let bg = BitGraph::new(&g);
    let nn = g.n();
    let full: u32 = (1u32 << nn) - 1;
    let bad = (0u32..1 << nn).into_par_iter().find_first(|&mask| {
        !(has_path(&bg, mask, n) || has_path(&bg, full & !mask, n))
    });
    Ok(bad.map(|mask| (0..nn).map(|v| if mask >> v & 1 == 1 { 2 } else { 1 }).collect()))
}

/// Whether `class` contains a simple path on at least `len` vertices.
fn has_path(bg: &BitGraph, class: u32, len: usize) -> bool {
    fn extend(bg: &BitGraph, v: usize, visited: u32, class: u32, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        let mut next = bg.adj[v] & class & !visited;
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            if extend(bg, w, visited | 1 << w, class, left - 1) {
                return true;
            }
            next &= next - 1;
        }
        false
    }
    let mut rest = class;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        if extend(bg, v, 1 << v, class, len - 1) {
            return true;
        }
        rest &= rest - 1;
    }
    false
}
