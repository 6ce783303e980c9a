//! Three-phase clustered 3-coloring.
//!
//! Layers are grouped into classes `U_j = V_j ∪ V_{j+3} ∪ ...`. Phase 1
//! colors `U_1` with `{1, 2}`. Phase 2 links, for every color-2 component in
//! `V_{3i+1}`, all of its neighbours in `V_{3i+2}` pairwise, then colors the
//! resulting graph `G2` on `U_2` with `{2, 3}`. Phase 3 does the same for
//! color-1 components of `U_1` and color-3 components of `G2`, linking their
//! neighbours in `U_3`, and colors `G3` with `{1, 3}`. Every monochromatic
//! component of the final coloring then lives in two adjacent classes and
//! its size is bounded by the phase clusterings.

mod bounds;
mod report;

pub use bounds::{compute_bounds, measured_bounds, Bounds, FModel, DEFAULT_F_CONSTANT};
pub use report::{
    BoundsReport, ClusteringReport, LayerAugment, Measured, PhaseStats, PipelineReport, Widths,
};

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::cluster2::two_color_clustered;
use crate::enlarge::{augment, AugmentStats, Linkage};
use crate::error::PipelineError;
use crate::graph::{connected_components, monochromatic_components, validate_layering, Color, Coloring, Graph, Layering, Vertex};
use crate::td::{sorted_common, validate_td, LayeredTreeDecomposition, Node, TreeDecomposition};

/// Palettes of the three classes.
pub const CLASS_PALETTE: [(Color, Color); 3] = [(1, 2), (2, 3), (1, 3)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerClasses {
    /// `layers[l - 1]` is `V_l`.
    pub layers: Vec<Vec<Vertex>>,
    /// `classes[j]` is `U_{j+1}`, sorted.
    pub classes: [Vec<Vertex>; 3],
    /// 1-based indices of the layers in each class.
    pub class_layers: [Vec<usize>; 3],
}

impl LayerClasses {
    /// Class index (0, 1, 2) of a 1-based layer.
    pub fn class_of_layer(layer: usize) -> usize {
        (layer - 1) % 3
    }

    pub fn n_layers(&self) -> usize {
        self.layers.len()
    }

    fn layer(&self, l: usize) -> Option<&[Vertex]> {
        (l >= 1 && l <= self.layers.len()).then(|| self.layers[l - 1].as_slice())
    }
}

/// Splits a layering into the three classes. Asserts that distinct layers of
/// one class are non-adjacent in `g`.
pub fn split_layers(g: &Graph, layering: &Layering) -> Result<LayerClasses, PipelineError> {
    let layers = layering.layers();
    let mut classes: [Vec<Vertex>; 3] = Default::default();
    let mut class_layers: [Vec<usize>; 3] = Default::default();
    for (i, layer) in layers.iter().enumerate() {
        let j = LayerClasses::class_of_layer(i + 1);
        classes[j].extend_from_slice(layer);
        class_layers[j].push(i + 1);
    }
    for class in &mut classes {
        class.sort_unstable();
    }
    for (u, v) in g.edges() {
        let (a, b) = (layering.layer_of(u), layering.layer_of(v));
        if a != b && LayerClasses::class_of_layer(a) == LayerClasses::class_of_layer(b) {
            return Err(PipelineError::invariant(format!("edge joins layers {a} and {b} of one class"), &[u, v]));
        }
    }
    Ok(LayerClasses { layers, classes, class_layers })
}

#[derive(Debug, Clone, Default)]
pub struct PipelineConfig {
    pub f_model: FModel,
    /// Size of a dedicated worker pool; `None` uses the global pool.
    pub threads: Option<usize>,
}

/// Two-colors each layer independently on its restricted decomposition.
/// Returns the coloring over `n` vertices and the largest clustering.
fn color_layers(
    g: &Graph,
    td: &TreeDecomposition,
    layers: &[&[Vertex]],
    palette: (Color, Color),
) -> Result<(Coloring, usize), PipelineError> {
    let results: Vec<_> = layers
        .par_iter()
        .map(|layer| {
            let local = g.induced(layer);
            let ltd = td.restrict_local(g.n(), layer);
            two_color_clustered(&local, &ltd, palette)
        })
        .collect::<Result<_, _>>()?;
    let mut c = Coloring::new(g.n(), &[palette.0, palette.1]);
    let mut f = 0;
    for (layer, (local_c, k)) in layers.iter().zip(results) {
        for (i, &v) in layer.iter().enumerate() {
            c.set(v, local_c.get(i).expect("total local coloring")).expect("palette");
        }
        f = f.max(k);
    }
    Ok((c, f))
}

#[derive(Debug, Clone)]
pub struct Phase1 {
    pub coloring: Coloring,
    pub f1: usize,
}

/// Colors `U_1` with `{1, 2}`, one layer at a time.
pub fn phase1(g: &Graph, ltd: &LayeredTreeDecomposition, classes: &LayerClasses) -> Result<Phase1, PipelineError> {
    let layers: Vec<&[Vertex]> = classes.class_layers[0].iter().filter_map(|&l| classes.layer(l)).collect();
    let (coloring, f1) = color_layers(g, &ltd.td, &layers, CLASS_PALETTE[0])?;
    // Components of G[U_1] never cross layers.
    for (_, comp) in monochromatic_components(g, &coloring) {
        let l = ltd.layering.layer_of(comp[0]);
        if comp.iter().any(|&v| ltd.layering.layer_of(v) != l) {
            return Err(PipelineError::invariant("phase-1 component spans two layers", &comp));
        }
    }
    Ok(Phase1 { coloring, f1 })
}

/// A monochromatic component with the linkage it induces on the next class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLinkage {
    pub component: Vec<Vertex>,
    pub color: Color,
    /// 1-based layer holding the component.
    pub layer: usize,
    /// 1-based layer receiving the linkage pairs.
    pub target: usize,
    /// Neighbours of the component inside the target layer.
    pub neighbors: Vec<Vertex>,
    /// Number of edges between the component and the target layer.
    pub boundary_edges: usize,
    pub linkage: Linkage,
}

/// Builds `Y`, `E`, `T` for one component. `cover` holds node sets of the
/// original decomposition (used for `Y`), `span` those of the decomposition
/// whose bags define `T`.
fn link_component(
    g: &Graph,
    layering: &Layering,
    cover: &[Vec<Node>],
    span: &[Vec<Node>],
    component: Vec<Vertex>,
    color: Color,
    target: usize,
) -> Result<ComponentLinkage, PipelineError> {
    let layer = layering.layer_of(component[0]);
    let mut neighbors = Vec::new();
    let mut y = Vec::new();
    let mut boundary_edges = 0;
    for &c in &component {
        for &w in g.neighbors(c) {
            if layering.layer_of(w) != target {
                continue;
            }
            boundary_edges += 1;
            neighbors.push(w);
            // Smallest node whose bag holds both ends.
            let node = sorted_common(&cover[c], &cover[w]).first().copied().ok_or_else(|| {
                PipelineError::Decomposition(format!("no bag contains edge {c}-{w}"))
            })?;
            y.push(node);
        }
    }
    neighbors.sort_unstable();
    neighbors.dedup();
    let mut pairs = Vec::with_capacity(neighbors.len() * neighbors.len().saturating_sub(1) / 2);
    for (i, &a) in neighbors.iter().enumerate() {
        for &b in &neighbors[i + 1..] {
            pairs.push((a, b));
        }
    }
    let t: Vec<Node> = component.iter().flat_map(|&c| span[c].iter().copied()).collect();
    let linkage = Linkage::new(y, t, pairs);
    Ok(ComponentLinkage { component, color, layer, target, neighbors, boundary_edges, linkage })
}

/// Components of `color` inside `layer` of `graph`, each linked into
/// `target`.
#[allow(clippy::too_many_arguments)]
fn link_layer(
    graph: &Graph,
    g: &Graph,
    layering: &Layering,
    coloring: &Coloring,
    cover: &[Vec<Node>],
    span: &[Vec<Node>],
    layer: &[Vertex],
    color: Color,
    target: usize,
) -> Result<Vec<ComponentLinkage>, PipelineError> {
    let members: Vec<Vertex> = layer.iter().copied().filter(|&v| coloring.get(v) == Some(color)).collect();
    connected_components(graph, &members)
        .map_err(|e| PipelineError::InvalidInput(e.to_string()))?
        .into_iter()
        .map(|comp| link_component(g, layering, cover, span, comp, color, target))
        .collect()
}

/// Linkages of the color-2 components of `c1` in each `V_{3i+1}` into
/// `V_{3i+2}`.
pub fn build_linkages_phase2(
    g: &Graph,
    ltd: &LayeredTreeDecomposition,
    c1: &Coloring,
    classes: &LayerClasses,
) -> Result<Vec<ComponentLinkage>, PipelineError> {
    let cover = ltd.td.node_sets(g.n());
    let mut out = Vec::new();
    for &l in &classes.class_layers[0] {
        if classes.layer(l + 1).is_none() {
            continue;
        }
        let layer = classes.layer(l).unwrap_or(&[]);
        out.extend(link_layer(g, g, &ltd.layering, c1, &cover, &cover, layer, 2, l + 1)?);
    }
    Ok(out)
}

/// Per-layer augmentation followed by a two-coloring of the augmented graph.
#[derive(Debug, Clone)]
pub struct AugmentedPhase {
    /// Auxiliary graph on all `n` vertices; only the class's vertices carry
    /// edges.
    pub graph: Graph,
    /// Per-node union over layers of the augmented restricted bags.
    pub bags: Vec<Vec<Vertex>>,
    pub coloring: Coloring,
    pub f: usize,
    pub layers: Vec<LayerAugment>,
}

fn augment_class(
    g: &Graph,
    td: &TreeDecomposition,
    classes: &LayerClasses,
    class: usize,
    linkages: &[ComponentLinkage],
    palette: (Color, Color),
) -> Result<AugmentedPhase, PipelineError> {
    let n = g.n();
    let mut by_target: BTreeMap<usize, Vec<&ComponentLinkage>> = BTreeMap::new();
    for cl in linkages {
        by_target.entry(cl.target).or_default().push(cl);
    }
    let work: Vec<(usize, &[Vertex])> =
        classes.class_layers[class].iter().filter_map(|&l| classes.layer(l).map(|s| (l, s))).collect();

    let results: Vec<_> = work
        .par_iter()
        .map(|&(l, layer)| -> Result<_, PipelineError> {
            let local_graph = g.induced(layer);
            let local_td = td.restrict_local(n, layer);
            let to_local = crate::graph::local_index(n, layer);
            let fam: Vec<Linkage> = by_target
                .get(&l)
                .map(|v| v.as_slice())
                .unwrap_or(&[])
                .iter()
                .map(|cl| {
                    let pairs = cl
                        .linkage
                        .pairs
                        .iter()
                        .map(|&(a, b)| (to_local[a].expect("pair in target layer"), to_local[b].expect("pair in target layer")))
                        .collect();
                    Linkage::new(cl.linkage.y.clone(), cl.linkage.t.clone(), pairs)
                })
                .collect();
            let aug = augment(&local_graph, &local_td, &fam)?;
            let (local_c, f) = two_color_clustered(&aug.graph, &aug.td, palette)?;
            let stats = LayerAugment {
                layer: l,
                restricted_width: local_td.width(),
                restricted_max_bag: local_td.max_bag_size(),
                augmented_width: aug.td.width(),
                augmented_max_bag: aug.td.max_bag_size(),
                h: aug.stats.h,
                k: aug.stats.k,
                d: aug.stats.d,
                clustering: f,
            };
            Ok((l, layer, aug, local_c, f, stats))
        })
        .collect::<Result<_, _>>()?;

    let mut edges = Vec::new();
    let mut bags: Vec<Vec<Vertex>> = vec![Vec::new(); td.num_nodes()];
    let mut coloring = Coloring::new(n, &[palette.0, palette.1]);
    let mut f = 0;
    let mut layers = Vec::new();
    for (_, layer, aug, local_c, lf, stats) in results {
        edges.extend(aug.graph.edges().map(|(a, b)| (layer[a], layer[b])));
        for (t, bag) in aug.td.bags().iter().enumerate() {
            bags[t].extend(bag.iter().map(|&v| layer[v]));
        }
        for (i, &v) in layer.iter().enumerate() {
            coloring.set(v, local_c.get(i).expect("total local coloring")).expect("palette");
        }
        f = f.max(lf);
        layers.push(stats);
    }
    let graph = Graph::from_edges(n, &edges).map_err(|e| PipelineError::invariant(e.to_string(), &[]))?;
    Ok(AugmentedPhase { graph, bags, coloring, f, layers })
}

fn check_layer_local(graph: &Graph, layering: &Layering, name: &str) -> Result<(), PipelineError> {
    for (u, v) in graph.edges() {
        if layering.layer_of(u) != layering.layer_of(v) {
            return Err(PipelineError::invariant(format!("{name} has an edge between distinct layers"), &[u, v]));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct Phase2 {
    pub aug: AugmentedPhase,
    /// `X2_t = (augmented bags over U_2) ∪ (X_t ∩ U_1)`.
    pub td2: TreeDecomposition,
}

impl Phase2 {
    pub fn g2(&self) -> &Graph {
        &self.aug.graph
    }

    pub fn c2(&self) -> &Coloring {
        &self.aug.coloring
    }

    pub fn f2(&self) -> usize {
        self.aug.f
    }
}

/// Builds `G2`, colors it with `{2, 3}`, and merges the bags into `X2`.
pub fn phase2(
    g: &Graph,
    ltd: &LayeredTreeDecomposition,
    classes: &LayerClasses,
    linkages: &[ComponentLinkage],
) -> Result<Phase2, PipelineError> {
    let aug = augment_class(g, &ltd.td, classes, 1, linkages, CLASS_PALETTE[1])?;
    check_layer_local(&aug.graph, &ltd.layering, "G2")?;
    let u1 = &classes.classes[0];
    let bags = ltd
        .td
        .bags()
        .iter()
        .zip(&aug.bags)
        .map(|(orig, extra)| {
            let mut b: Vec<Vertex> = orig.iter().copied().filter(|v| u1.binary_search(v).is_ok()).collect();
            b.extend_from_slice(extra);
            b
        })
        .collect();
    let mut td2 = TreeDecomposition::new(bags, ltd.td.tree_edges().to_vec());
    if let Some(r) = ltd.td.explicit_root() {
        td2 = td2.with_root(r);
    }
    Ok(Phase2 { aug, td2 })
}

/// Linkages into each `V_{3i+3}`: color-1 components of `c1` in `V_{3i+4}`
/// and color-3 components of `G2` in `V_{3i+2}`. Subtrees use the `X2` bags.
pub fn build_linkages_phase3(
    g: &Graph,
    ltd: &LayeredTreeDecomposition,
    c1: &Coloring,
    p2: &Phase2,
    classes: &LayerClasses,
) -> Result<Vec<ComponentLinkage>, PipelineError> {
    let cover = ltd.td.node_sets(g.n());
    let span = p2.td2.node_sets(g.n());
    let mut out = Vec::new();
    for &l in &classes.class_layers[2] {
        if let Some(below) = classes.layer(l + 1) {
            out.extend(link_layer(g, g, &ltd.layering, c1, &cover, &span, below, 1, l)?);
        }
        if let Some(above) = classes.layer(l - 1) {
            out.extend(link_layer(p2.g2(), g, &ltd.layering, p2.c2(), &cover, &span, above, 3, l)?);
        }
    }
    Ok(out)
}

/// Builds `G3` and colors it with `{1, 3}`.
pub fn phase3(
    g: &Graph,
    ltd: &LayeredTreeDecomposition,
    classes: &LayerClasses,
    linkages: &[ComponentLinkage],
) -> Result<AugmentedPhase, PipelineError> {
    let aug = augment_class(g, &ltd.td, classes, 2, linkages, CLASS_PALETTE[2])?;
    check_layer_local(&aug.graph, &ltd.layering, "G3")?;
    Ok(aug)
}

/// Everything computed by one pipeline run.
#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub classes: LayerClasses,
    pub phase1: Phase1,
    pub linkages2: Vec<ComponentLinkage>,
    pub phase2: Phase2,
    pub linkages3: Vec<ComponentLinkage>,
    pub phase3: AugmentedPhase,
    pub coloring: Coloring,
    pub report: PipelineReport,
}

/// Runs the pipeline and returns only the report.
pub fn three_color(g: &Graph, ltd: &LayeredTreeDecomposition, config: &PipelineConfig) -> Result<PipelineReport, PipelineError> {
    three_color_detailed(g, ltd, config).map(|run| run.report)
}

pub fn three_color_detailed(
    g: &Graph,
    ltd: &LayeredTreeDecomposition,
    config: &PipelineConfig,
) -> Result<PipelineRun, PipelineError> {
    match config.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| PipelineError::InvalidInput(format!("thread pool: {e}")))?
            .install(|| run(g, ltd, config)),
        None => run(g, ltd, config),
    }
}

fn run(g: &Graph, ltd: &LayeredTreeDecomposition, config: &PipelineConfig) -> Result<PipelineRun, PipelineError> {
    if ltd.layering.n() != g.n() {
        return Err(PipelineError::InvalidInput(format!(
            "layering covers {} vertices, graph has {}",
            ltd.layering.n(),
            g.n()
        )));
    }
    validate_td(g, &ltd.td).map_err(|v| PipelineError::Decomposition(format!("{v:?}")))?;
    validate_layering(g, &ltd.layering).map_err(|v| PipelineError::Decomposition(format!("{v:?}")))?;

    let delta = g.max_degree();
    let ell = ltd.layered_width();
    let classes = split_layers(g, &ltd.layering)?;

    let p1 = phase1(g, ltd, &classes)?;
    let f1 = p1.f1;
    let linkages2 = build_linkages_phase2(g, ltd, &p1.coloring, &classes)?;
    let p2 = phase2(g, ltd, &classes, &linkages2)?;
    let f2 = p2.f2();
    let stats2 = max_stats(&p2.aug.layers);
    check_phase_stats("phase 2", stats2, f1.max(1), delta, ell + 1)?;
    let w2 = p2.aug.layers.iter().map(|l| l.augmented_width).max().unwrap_or(0).max(ell.saturating_sub(1));
    check_degree("G2", p2.g2(), delta + f1 * delta * delta)?;

    let linkages3 = build_linkages_phase3(g, ltd, &p1.coloring, &p2, &classes)?;
    let p3 = phase3(g, ltd, &classes, &linkages3)?;
    let f3 = p3.f;
    let f12 = f1.max(f2).max(1);
    let stats3 = max_stats(&p3.layers);
    check_phase_stats("phase 3", stats3, f12, delta, 2 * (w2 + 1))?;
    check_degree("G3", &p3.graph, delta + f12 * delta * delta)?;
    let w3 = p3.layers.iter().map(|l| l.augmented_width).max().unwrap_or(0);

    let mut coloring = Coloring::new(g.n(), &[1, 2, 3]);
    for (class, source) in [(0usize, &p1.coloring), (1, p2.c2()), (2, &p3.coloring)] {
        for &v in &classes.classes[class] {
            let col = source.get(v).ok_or_else(|| PipelineError::invariant("uncolored vertex", &[v]))?;
            coloring.set(v, col).expect("palette");
        }
    }

    let fs = [f1.max(1), f2.max(1), f3.max(1)];
    let clustering = check_final_components(g, &classes, &coloring, p2.g2(), &p3.graph, fs, delta)?;

    let measured = Measured {
        f1,
        f2,
        f3,
        max_degree: delta,
        max_degree_g2: p2.g2().max_degree(),
        max_degree_g3: p3.graph.max_degree(),
        widths: Widths { input: ell, w2, w3, phase2: p2.aug.layers.clone(), phase3: p3.layers.clone() },
        h: PhaseStats { phase2: stats2.h, phase3: stats3.h },
        k: PhaseStats { phase2: stats2.k, phase3: stats3.k },
        d: PhaseStats { phase2: stats2.d, phase3: stats3.d },
    };
    let (w, d) = (ell.max(1) as u64, delta.max(1) as u64);
    let bounds = BoundsReport {
        f_model: config.f_model,
        model: compute_bounds(w, d, &config.f_model)?,
        measured: measured_bounds(w, d, [f1 as u64, f2 as u64, f3 as u64]),
    };
    let report = PipelineReport::new(coloring.to_dense().expect("total coloring"), measured, bounds, clustering);
    Ok(PipelineRun {
        classes,
        phase1: p1,
        linkages2,
        phase2: p2,
        linkages3,
        phase3: p3,
        coloring,
        report,
    })
}

fn max_stats(layers: &[LayerAugment]) -> AugmentStats {
    layers.iter().fold(AugmentStats::default(), |acc, l| AugmentStats {
        h: acc.h.max(l.h),
        k: acc.k.max(l.k),
        d: acc.d.max(l.d),
    })
}

/// Measured `h, k, d` against `h_bound`, `k <= f²Δ²`, `d <= fΔ²`, and the
/// per-layer width growth `<= 2hk`.
fn check_phase_stats(name: &str, s: AugmentStats, f: usize, delta: usize, h_bound: usize) -> Result<(), PipelineError> {
    let k_bound = f * f * delta * delta;
    let d_bound = f * delta * delta;
    if s.h > h_bound || s.k > k_bound || s.d > d_bound {
        return Err(PipelineError::invariant(
            format!("{name}: measured h={} k={} d={} exceed bounds h<={h_bound} k<={k_bound} d<={d_bound}", s.h, s.k, s.d),
            &[],
        ));
    }
    Ok(())
}

fn check_degree(name: &str, graph: &Graph, bound: usize) -> Result<(), PipelineError> {
    if graph.max_degree() > bound {
        return Err(PipelineError::invariant(format!("{name} max degree {} above {bound}", graph.max_degree()), &[]));
    }
    Ok(())
}

/// The output properties of the final coloring, checked component by
/// component. Returns per-color and overall clustering.
fn check_final_components(
    g: &Graph,
    classes: &LayerClasses,
    c: &Coloring,
    g2: &Graph,
    g3: &Graph,
    [f1, f2, f3]: [usize; 3],
    delta: usize,
) -> Result<ClusteringReport, PipelineError> {
    let mut class_of = vec![0usize; g.n()];
    for (j, class) in classes.classes.iter().enumerate() {
        for &v in class {
            class_of[v] = j;
        }
    }
    for v in 0..g.n() {
        let (a, b) = CLASS_PALETTE[class_of[v]];
        let col = c.get(v).ok_or_else(|| PipelineError::invariant("uncolored vertex", &[v]))?;
        if col != a && col != b {
            return Err(PipelineError::invariant(format!("color {col} outside the class palette"), &[v]));
        }
    }

    let mut per_color: BTreeMap<Color, usize> = BTreeMap::new();
    for (color, d) in monochromatic_components(g, c) {
        let entry = per_color.entry(color).or_default();
        *entry = (*entry).max(d.len());
        let part = |j: usize| -> Vec<Vertex> { d.iter().copied().filter(|&v| class_of[v] == j).collect() };
        // Color 2 lives on U1 ∪ U2 with G2 as the hub; colors 1 and 3 on
        // U1 ∪ U3 and U2 ∪ U3 with G3 as the hub.
        let (hub_class, hub_graph, spoke_class, missing, f_hub, f_spoke) = match color {
            2 => (1, g2, 0, 2, f2, f1),
            1 => (2, g3, 0, 1, f3, f1),
            _ => (2, g3, 1, 0, f3, f2),
        };
        if !part(missing).is_empty() {
            return Err(PipelineError::invariant(format!("color-{color} component meets U{}", missing + 1), &d));
        }
        let hub = part(hub_class);
        let spokes = part(spoke_class);
        let hub_pieces = connected_components(hub_graph, &hub).expect("ids in range");
        if hub_pieces.len() > 1 {
            return Err(PipelineError::invariant(
                format!("hub part of a color-{color} component is disconnected in the auxiliary graph"),
                &d,
            ));
        }
        let leaving = hub.iter().map(|&v| g.neighbors(v).iter().filter(|&&w| spokes.binary_search(&w).is_ok()).count()).sum::<usize>();
        let spoke_pieces = connected_components(g, &spokes).expect("ids in range").len();
        if !hub.is_empty() && (spoke_pieces > leaving || leaving > f_hub * delta) {
            return Err(PipelineError::invariant(
                format!("color-{color} component has {spoke_pieces} spoke pieces for {leaving} boundary edges"),
                &d,
            ));
        }
        let bound = (1 + f_spoke * delta) * f_hub;
        if d.len() > bound {
            return Err(PipelineError::invariant(format!("color-{color} component of size {} above {bound}", d.len()), &d));
        }
    }
    let overall = per_color.values().copied().max().unwrap_or(0);
    Ok(ClusteringReport { per_color: per_color.into_iter().map(|(k, v)| (k.to_string(), v)).collect(), overall })
}
