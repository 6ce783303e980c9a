//! Bitmask adjacency for the exhaustive oracles (at most 32 vertices).

use crate::graph::Graph;

pub(crate) struct BitGraph {
    pub adj: Vec<u32>,
}

impl BitGraph {
    pub fn new(g: &Graph) -> Self {
        assert!(g.n() <= 32);
        let adj = (0..g.n()).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
        BitGraph { adj }
    }

    fn neighborhood(&self, mut set: u32) -> u32 {
        let mut out = 0;
        while set != 0 {
            let v = set.trailing_zeros() as usize;
            out |= self.adj[v];
            set &= set - 1;
        }
        out
    }

    /// Component of `start` inside the vertex set `class`.
    pub fn component(&self, start: usize, class: u32) -> u32 {
        let mut comp = 1u32 << start;
        loop {
            let next = comp | (self.neighborhood(comp) & class);
            if next == comp {
                return comp;
            }
            comp = next;
        }
    }

    /// Largest connected piece of `class`.
    pub fn max_component(&self, mut class: u32) -> usize {
        let mut best = 0;
        while class != 0 {
            let comp = self.component(class.trailing_zeros() as usize, class);
            best = best.max(comp.count_ones() as usize);
            class &= !comp;
        }
        best
    }
}
