use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bounds::{Bounds, FModel};
use super::CLASS_PALETTE;
use crate::graph::Color;

/// Measurements of one per-layer augmentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerAugment {
    pub layer: usize,
    pub restricted_width: usize,
    pub restricted_max_bag: usize,
    pub augmented_width: usize,
    pub augmented_max_bag: usize,
    pub h: usize,
    pub k: usize,
    pub d: usize,
    pub clustering: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Widths {
    /// Layered width of the input.
    pub input: usize,
    pub w2: usize,
    pub w3: usize,
    pub phase2: Vec<LayerAugment>,
    pub phase3: Vec<LayerAugment>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseStats {
    pub phase2: usize,
    pub phase3: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measured {
    pub f1: usize,
    pub f2: usize,
    pub f3: usize,
    pub max_degree: usize,
    pub max_degree_g2: usize,
    pub max_degree_g3: usize,
    pub widths: Widths,
    pub h: PhaseStats,
    pub k: PhaseStats,
    pub d: PhaseStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub f_model: FModel,
    pub model: Bounds,
    pub measured: Bounds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusteringReport {
    /// Largest component per used color, keyed by the color as a string.
    pub per_color: BTreeMap<String, usize>,
    pub overall: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub n: usize,
    pub colors: Vec<Color>,
    pub palette_by_class: BTreeMap<String, [Color; 2]>,
    pub measured: Measured,
    pub bounds: BoundsReport,
    pub clustering: ClusteringReport,
}

impl PipelineReport {
    pub fn new(colors: Vec<Color>, measured: Measured, bounds: BoundsReport, clustering: ClusteringReport) -> Self {
        PipelineReport {
            n: colors.len(),
            colors,
            palette_by_class: default_palette_by_class(),
            measured,
            bounds,
            clustering,
        }
    }
}

pub(crate) fn default_palette_by_class() -> BTreeMap<String, [Color; 2]> {
    CLASS_PALETTE.iter().enumerate().map(|(j, &(a, b))| (format!("U{}", j + 1), [a, b])).collect()
}
