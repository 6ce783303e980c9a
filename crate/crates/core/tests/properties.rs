use ltw_coloring::cluster2::{bfs_tree_partition, tree_partition, two_color_clustered};
use ltw_coloring::decomp::{generate_family, random_ktree_subgraph, random_layered_instance, Family, FamilySpec};
use ltw_coloring::graph::{bfs_layering, connected_components, Graph, Layering};
use ltw_coloring::io::{parse_gr, parse_layers, parse_td, write_gr, write_layers, write_td};
use ltw_coloring::td::{measure_layered_width, restrict_td, validate_td, TreeDecomposition};
use proptest::prelude::*;

fn instance() -> impl Strategy<Value = (Graph, TreeDecomposition)> {
    (4usize..30, 1usize..4, 0.3f64..1.0, any::<u64>())
        .prop_map(|(n, k, keep, seed)| random_ktree_subgraph(n, k, 2 * k + 3, keep, seed))
}

fn subset_of(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(any::<bool>(), n).prop_map(|mask| {
        mask.iter().enumerate().filter_map(|(v, &b)| b.then_some(v)).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dropping_a_covering_vertex_is_caught((g, td) in instance(), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.m() > 0);
        let edges: Vec<_> = g.edges().collect();
        let (u, _) = edges[pick.index(edges.len())];
        let bags = td.bags().iter().map(|b| b.iter().copied().filter(|&v| v != u).collect()).collect();
        let broken = TreeDecomposition::new(bags, td.tree_edges().to_vec());
        prop_assert!(validate_td(&g, &broken).is_err());
    }

    #[test]
    fn restriction_stays_valid((g, td) in instance(), seed in any::<u64>()) {
        let subset: Vec<usize> = (0..g.n()).filter(|v| (seed >> (v % 64)) & 1 == 1).collect();
        let local = td.restrict_local(g.n(), &subset);
        prop_assert_eq!(validate_td(&g.induced(&subset), &local), Ok(()));
        let global = restrict_td(&td, &subset);
        prop_assert!(global.bags().iter().all(|b| b.iter().all(|v| subset.binary_search(v).is_ok())));
    }

    #[test]
    fn merging_layers_never_lowers_layered_width((g, td) in instance()) {
        let layering = bfs_layering(&g);
        let fine = measure_layered_width(&td, &layering);
        let coarse = Layering::single(g.n());
        prop_assert!(measure_layered_width(&td, &coarse) >= fine);
        let halves = Layering::new(layering.as_slice().iter().map(|&l| l.div_ceil(2)).collect(), layering.n_layers().div_ceil(2).max(1)).unwrap();
        prop_assert!(measure_layered_width(&td, &halves) >= fine);
    }

    #[test]
    fn components_partition_the_subset((g, _) in instance(), mask in subset_of(30)) {
        let subset: Vec<usize> = mask.into_iter().filter(|&v| v < g.n()).collect();
        let comps = connected_components(&g, &subset).unwrap();
        let mut all: Vec<usize> = comps.concat();
        all.sort_unstable();
        prop_assert_eq!(all, subset.clone());
        // No edge between distinct components.
        let mut which = vec![usize::MAX; g.n()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                which[v] = i;
            }
        }
        for (u, v) in g.edges() {
            if which[u] != usize::MAX && which[v] != usize::MAX {
                prop_assert_eq!(which[u], which[v]);
            }
        }
    }

    #[test]
    fn partitions_are_valid((g, td) in instance()) {
        prop_assert_eq!(tree_partition(&g, &td).unwrap().validate(&g), Ok(()));
        prop_assert_eq!(bfs_tree_partition(&g).validate(&g), Ok(()));
        let (c, k) = two_color_clustered(&g, &td, (1, 2)).unwrap();
        prop_assert!((0..g.n()).all(|v| c.get(v).is_some()));
        prop_assert!(k >= 1);
    }

    #[test]
    fn text_formats_round_trip(n in 4usize..24, k in 1usize..4, seed in any::<u64>()) {
        let (g, ltd) = random_layered_instance(n, k, 2 * k + 2, 0.8, seed);
        let gr = write_gr(&g);
        prop_assert_eq!(parse_gr(&gr).unwrap(), g.clone());
        let td = write_td(&ltd.td, g.n());
        let parsed = parse_td(&td).unwrap();
        prop_assert_eq!(write_td(&parsed.td, parsed.n), td);
        prop_assert_eq!(parse_layers(&write_layers(&ltd.layering)).unwrap(), ltd.layering.clone());
    }
}

#[test]
fn generated_families_round_trip() {
    for family in [Family::SquareGrid, Family::TriGrid, Family::TorusGrid, Family::CrossedGrid] {
        for n in [3, 8, 16] {
            let (g, ltd) = generate_family(&FamilySpec::new(family, n)).unwrap();
            let text = (write_gr(&g), write_td(&ltd.td, g.n()), write_layers(&ltd.layering));
            let g2 = parse_gr(&text.0).unwrap();
            let td2 = parse_td(&text.1).unwrap();
            let l2 = parse_layers(&text.2).unwrap();
            assert_eq!((write_gr(&g2), write_td(&td2.td, td2.n), write_layers(&l2)), text);
            assert_eq!(validate_td(&g2, &td2.td), Ok(()));
        }
    }
}
