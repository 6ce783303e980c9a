//! Acceptance suite. Runs without the libtest harness so that each
//! criterion prints one `criterion N: PASS|FAIL` line even on success.

use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use ltw_coloring::cluster2::{exact_two_color, two_color_clustered};
use ltw_coloring::decomp::{generate_family, grid_coordinates, planar_ltd, random_layered_instance, Family, FamilySpec, RotationSystem};
use ltw_coloring::enlarge::{augment, Linkage};
use ltw_coloring::io::write_report;
use ltw_coloring::pipeline::{compute_bounds, three_color, FModel, PipelineConfig};
use ltw_coloring::td::{validate_td, TreeDecomposition};
use ltw_coloring::verify::{check_pipeline_invariants, exact_three_color, hex_check};
use ltw_coloring::Graph;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

fn verdict(criterion: u32, failures: &[String], detail: String) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {status} ({detail})");
    for f in failures.iter().take(10) {
        println!("  {f}");
    }
    if !failures.is_empty() {
        panic!("criterion {criterion} failed with {} problems", failures.len());
    }
}

fn family(f: Family, n: usize) -> (Graph, ltw_coloring::LayeredTreeDecomposition) {
    generate_family(&FamilySpec::new(f, n)).unwrap()
}

/// A random connected node set of size up to `size` grown from `start`.
fn random_subtree(adj: &[Vec<usize>], start: usize, size: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut nodes = vec![start];
    let mut frontier: Vec<usize> = adj[start].clone();
    while nodes.len() < size && !frontier.is_empty() {
        let i = rng.gen_range(0..frontier.len());
        let t = frontier.swap_remove(i);
        if nodes.contains(&t) {
            continue;
        }
        nodes.push(t);
        frontier.extend(adj[t].iter().copied().filter(|s| !nodes.contains(s)));
    }
    nodes.sort_unstable();
    nodes
}

fn random_family(td: &TreeDecomposition, rng: &mut ChaCha8Rng) -> Vec<Linkage> {
    let adj = td.tree_adjacency();
    let entries = rng.gen_range(0..6);
    (0..entries)
        .map(|_| {
            let start = rng.gen_range(0..td.num_nodes());
            let t = random_subtree(&adj, start, rng.gen_range(1..6), rng);
            let ny = rng.gen_range(1..=t.len().min(3));
            let y: Vec<usize> = t.choose_multiple(rng, ny).copied().collect();
            let mut reach: Vec<usize> = y.iter().flat_map(|&s| td.bag(s).iter().copied()).collect();
            reach.sort_unstable();
            reach.dedup();
            let mut pairs = Vec::new();
            if reach.len() >= 2 {
                for _ in 0..rng.gen_range(0..5) {
                    let two: Vec<usize> = reach.choose_multiple(rng, 2).copied().collect();
                    pairs.push((two[0], two[1]));
                }
            }
            Linkage::new(y, t, pairs)
        })
        .collect()
}

fn criterion_1_augment_inequalities() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let families = [Family::SquareGrid, Family::TriGrid, Family::TorusGrid, Family::CrossedGrid];
    let mut failures = Vec::new();
    for i in 0..1000 {
        let f = families[i % 4];
        let n = rng.gen_range(3..10);
        let (g, ltd) = family(f, n);
        let fam = random_family(&ltd.td, &mut rng);
        let r = match augment(&g, &ltd.td, &fam) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("instance {i}: {e}"));
                continue;
            }
        };
        // Independent recount of h, k, d.
        let mut through = vec![0usize; ltd.td.num_nodes()];
        for e in &fam {
            for &t in &e.t {
                through[t] += 1;
            }
        }
        let h = through.into_iter().max().unwrap_or(0);
        let k = fam.iter().map(|e| e.pairs.len()).max().unwrap_or(0);
        let mut all_pairs: Vec<(usize, usize)> = fam.iter().flat_map(|e| e.pairs.iter().copied()).collect();
        all_pairs.sort_unstable();
        all_pairs.dedup();
        let d = (0..g.n()).map(|v| all_pairs.iter().filter(|&&(a, b)| a == v || b == v).count()).max().unwrap_or(0);
        for t in 0..ltd.td.num_nodes() {
            let (old, new) = (ltd.td.bag(t), r.td.bag(t));
            if !old.iter().all(|v| new.contains(v)) {
                failures.push(format!("instance {i}: bag {t} lost a vertex"));
            }
            if new.len() > old.len() + 2 * h * k {
                failures.push(format!("instance {i}: bag {t} grew {} -> {} with h={h} k={k}", old.len(), new.len()));
            }
        }
        for v in 0..g.n() {
            if r.graph.degree(v) > g.degree(v) + d {
                failures.push(format!("instance {i}: degree of {v} above deg + {d}"));
            }
        }
        if validate_td(&r.graph, &r.td).is_err() {
            failures.push(format!("instance {i}: augmented decomposition invalid"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(30) {
        failures.push(format!("runtime {elapsed:?} above 30 s"));
    }
    verdict(1, &failures, format!("1000 augment instances in {elapsed:.2?}"));
}

fn criterion_2_pipeline_validity() {
    let suite = [
        (Family::TriGrid, 8),
        (Family::TriGrid, 16),
        (Family::TriGrid, 32),
        (Family::TriGrid, 64),
        (Family::SquareGrid, 8),
        (Family::SquareGrid, 32),
        (Family::TorusGrid, 8),
        (Family::TorusGrid, 16),
        (Family::CrossedGrid, 16),
    ];
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for (f, n) in suite {
        let (g, ltd) = family(f, n);
        let start = Instant::now();
        match three_color(&g, &ltd, &PipelineConfig::default()) {
            Ok(report) => {
                let elapsed = start.elapsed();
                if let Err(v) = check_pipeline_invariants(&g, &ltd.layering, &report, Some(&ltd.td)) {
                    failures.push(format!("{f} {n}: {v:?}"));
                }
                if elapsed > Duration::from_secs(10) {
                    failures.push(format!("{f} {n}: runtime {elapsed:?}"));
                }
                summary.push(format!("{f}/{n}={}", report.clustering.overall));
            }
            Err(e) => failures.push(format!("{f} {n}: {e}")),
        }
    }
    verdict(2, &failures, summary.join(" "));
}

#[derive(Deserialize)]
struct Calibration {
    tri_grid_clustering: usize,
    tri_grid_sizes: Vec<usize>,
}

fn criterion_3_clustering_plateau() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/calibration.json");
    let cal: Calibration = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    let values: Vec<usize> = cal
        .tri_grid_sizes
        .iter()
        .map(|&n| {
            let (g, ltd) = family(Family::TriGrid, n);
            three_color(&g, &ltd, &PipelineConfig::default()).unwrap().clustering.overall
        })
        .collect();
    let mut failures = Vec::new();
    if values.windows(2).any(|w| w[0] != w[1]) {
        failures.push(format!("clustering differs across sizes: {values:?}"));
    }
    if values.iter().any(|&v| v > cal.tri_grid_clustering) {
        failures.push(format!("clustering {values:?} above calibration {}", cal.tri_grid_clustering));
    }
    verdict(3, &failures, format!("tri-grid n={:?} clustering {values:?}, calibration {}", cal.tri_grid_sizes, cal.tri_grid_clustering));
}

fn criterion_4_oracle_dominance() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let mut gaps = [0usize; 2];
    for i in 0..200u64 {
        let n = rng.gen_range(3..=12);
        let (g, ltd) = random_layered_instance(n, 2, 4, rng.gen_range(0.5..1.0), 1000 + i);
        if g.max_degree() > 4 || ltd.td.width() > 2 {
            failures.push(format!("instance {i}: generator broke Δ or width"));
        }
        let pipeline = three_color(&g, &ltd, &PipelineConfig::default()).unwrap().clustering.overall;
        let opt3 = exact_three_color(&g).unwrap().1;
        if opt3 > pipeline {
            failures.push(format!("instance {i}: 3-color optimum {opt3} above pipeline {pipeline}"));
        }
        let heuristic = two_color_clustered(&g, &ltd.td, (1, 2)).unwrap().1;
        let opt2 = exact_two_color(&g).unwrap().1;
        if opt2 > heuristic {
            failures.push(format!("instance {i}: 2-color optimum {opt2} above heuristic {heuristic}"));
        }
        gaps[0] += pipeline - opt3.min(pipeline);
        gaps[1] += heuristic - opt2.min(heuristic);
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("runtime {elapsed:?} above 60 s"));
    }
    verdict(4, &failures, format!("200 instances in {elapsed:.2?}, summed gaps 3-color {} 2-color {}", gaps[0], gaps[1]));
}

fn criterion_5_hex() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 2..=4 {
        match hex_check(n) {
            Ok(None) => {}
            Ok(Some(c)) => failures.push(format!("n={n}: coloring {c:?} has no long monochromatic path")),
            Err(e) => failures.push(format!("n={n}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(10) {
        failures.push(format!("runtime {elapsed:?} above 10 s"));
    }
    verdict(5, &failures, format!("n=2..4 in {elapsed:.2?}"));
}

fn criterion_6_planar_ltd() {
    let mut failures = Vec::new();
    let mut checked = 0;
    for f in [Family::SquareGrid, Family::TriGrid] {
        for n in 2..=32 {
            let (g, _) = family(f, n);
            let rot = RotationSystem::from_coordinates(&g, &grid_coordinates(n));
            for root in [0, g.n() / 2, g.n() - 1] {
                checked += 1;
                match planar_ltd(&rot, root) {
                    Ok(ltd) => {
                        if let Err(v) = validate_td(&g, &ltd.td) {
                            failures.push(format!("{f} {n} root {root}: {v:?}"));
                        }
                        if ltd.layered_width() > 3 {
                            failures.push(format!("{f} {n} root {root}: layered width {}", ltd.layered_width()));
                        }
                    }
                    Err(e) => failures.push(format!("{f} {n} root {root}: {e}")),
                }
            }
        }
    }
    verdict(6, &failures, format!("{checked} embedded grids"));
}

/// Separate fixed-width evaluation of the cascade with `f ≡ 1`.
fn unit_cascade(w: u128, d: u128) -> [u128; 8] {
    let f1 = 1;
    let d2 = d + f1 * d * d;
    let w2 = w + 2 * (w + 1) * f1 * f1 * d * d;
    let f2 = 1;
    let d3 = d + f2 * d * d;
    let w3 = w + 4 * (w2 + 1) * f2 * f2 * d * d;
    let f3 = 1;
    let g = (1 + f2 * d) * f3;
    [f1, d2, w2, f2, d3, w3, f3, g]
}

fn criterion_7_bounds_arithmetic() {
    let mut failures = Vec::new();
    for w in 1..=4u64 {
        for d in 1..=6u64 {
            let b = compute_bounds(w, d, &FModel::Constant(1)).unwrap();
            let got: Vec<&BigUint> = b.rows().iter().map(|r| r.1).collect();
            let want = unit_cascade(w as u128, d as u128);
            for (i, (g, x)) in got.iter().zip(want).enumerate() {
                if **g != BigUint::from(x) {
                    failures.push(format!("w={w} Δ={d} row {}: {g} vs {x}", b.rows()[i].0));
                }
            }
        }
    }
    verdict(7, &failures, "24 (w, Δ) pairs".into());
}

fn determinism_reports(threads: usize) -> Vec<(String, String)> {
    let config = PipelineConfig { threads: Some(threads), ..Default::default() };
    let mut out = Vec::new();
    for (f, n) in [(Family::TriGrid, 32), (Family::SquareGrid, 16), (Family::TorusGrid, 8), (Family::CrossedGrid, 16)] {
        let (g, ltd) = family(f, n);
        out.push((format!("{f}-{n}"), write_report(&three_color(&g, &ltd, &config).unwrap())));
    }
    for seed in 0..10 {
        let (g, ltd) = random_layered_instance(40, 3, 6, 0.7, seed);
        out.push((format!("random-{seed}"), write_report(&three_color(&g, &ltd, &config).unwrap())));
    }
    out
}

fn criterion_8_determinism() {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("determinism");
    let mut failures = Vec::new();
    let mut runs = Vec::new();
    for (run, threads) in [(0, 1), (1, 4), (2, 1), (3, 4)] {
        let sub = dir.join(format!("run{run}-t{threads}"));
        fs::create_dir_all(&sub).unwrap();
        let reports = determinism_reports(threads);
        for (name, text) in &reports {
            fs::write(sub.join(format!("{name}.json")), text).unwrap();
        }
        runs.push((sub, reports.len()));
    }
    let (base, count) = &runs[0];
    for (other, _) in &runs[1..] {
        for entry in fs::read_dir(base).unwrap() {
            let name = entry.unwrap().file_name();
            let a = fs::read(base.join(&name)).unwrap();
            let b = fs::read(other.join(&name)).unwrap();
            if a != b {
                failures.push(format!("{} differs in {}", name.to_string_lossy(), other.display()));
            }
        }
    }
    verdict(8, &failures, format!("{count} reports x 4 runs, threads 1 and 4"));
}

fn main() {
    let criteria: [(u32, fn()); 8] = [
        (1, criterion_1_augment_inequalities),
        (2, criterion_2_pipeline_validity),
        (3, criterion_3_clustering_plateau),
        (4, criterion_4_oracle_dominance),
        (5, criterion_5_hex),
        (6, criterion_6_planar_ltd),
        (7, criterion_7_bounds_arithmetic),
        (8, criterion_8_determinism),
    ];
    let mut failed = Vec::new();
    for (i, f) in criteria {
        if std::panic::catch_unwind(f).is_err() {
            // A panic before `verdict` still needs its line.
            println!("criterion {i}: FAIL (panicked)");
            failed.push(i);
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
