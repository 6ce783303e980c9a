//! `ltwcolor`: generate layered decompositions, run the clustered
//! 3-coloring, and check its output.
//!
//! Exit codes: 0 ok, 1 usage, 2 parse, 3 validation, 4 pipeline invariant.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ltw_coloring::cluster2::{exact_two_color, two_color_clustered};
use ltw_coloring::decomp::{generate_family, planar_ltd, Family, FamilySpec, RotationSystem};
use ltw_coloring::io::{write_report, FileBundle, IoError};
use ltw_coloring::pipeline::{compute_bounds, three_color, Bounds, FModel, PipelineConfig};
use ltw_coloring::td::{validate_td, LayeredTreeDecomposition};
use ltw_coloring::verify::{check_pipeline_invariants, cluster_stats, exact_three_color, hex_check};
use ltw_coloring::{DecompError, PipelineError};

#[derive(Parser)]
#[command(name = "ltwcolor", version, about = "Clustered 3-coloring via layered tree-decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write `<prefix>.gr`, `<prefix>.td` and `<prefix>.layers` for a grid family.
    Generate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Crossed-grid: put a crossing on every k-th eligible face.
        #[arg(long, default_value_t = 1)]
        crossings: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build a layered decomposition from a rotation-system JSON file.
    Decompose {
        #[arg(long)]
        rotation: PathBuf,
        /// 1-based BFS root.
        #[arg(long, default_value_t = 1)]
        root: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run the 3-coloring pipeline and write its report.
    Color {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        td: PathBuf,
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Recheck a report against graph and layering.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        td: Option<PathBuf>,
        /// Report JSON produced by `color`.
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Exhaustive oracles for tiny inputs.
    Oracle {
        #[command(subcommand)]
        oracle: Oracle,
    },
    /// Print the parameter cascade for given w and Δ.
    Bounds {
        #[arg(long)]
        w: u64,
        #[arg(long)]
        delta: u64,
        #[command(flatten)]
        model: ModelArg,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Input {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    layers: PathBuf,
}

#[derive(Args)]
struct ModelArg {
    /// `C` for C·(w+1)·Δ, or `const:C`.
    #[arg(long = "f-model", env = "LTWCOLOR_F_MODEL", default_value_t = FModel::default())]
    f_model: FModel,
}

#[derive(Subcommand)]
enum Oracle {
    /// Optimal 2-coloring clustering; the decomposition enables a comparison.
    TwoColor {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        td: Option<PathBuf>,
    },
    ThreeColor {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Check every 2-coloring of the n x n triangular grid.
    Hex {
        #[arg(long)]
        n: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(m: impl Into<String>) -> Self {
        Failure { code: 1, message: m.into() }
    }
    fn validation(m: impl Into<String>) -> Self {
        Failure { code: 3, message: m.into() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let code = match e {
            IoError::Read { .. } => 1,
            IoError::Parse { .. } => 2,
            IoError::Inconsistent(_) => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<DecompError> for Failure {
    fn from(e: DecompError) -> Self {
        let code = match e {
            DecompError::InvalidSpec(_) => 1,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let code = match e {
            PipelineError::InvalidInput(_) | PipelineError::Decomposition(_) => 3,
            _ => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn bounds_table(b: &Bounds) -> String {
    let mut s = String::new();
    for (name, v) in b.rows() {
        writeln!(s, "{name:<7}{v}").unwrap();
    }
    s
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Generate { family, n, crossings, output } => {
            let (g, ltd) = generate_family(&FamilySpec::new(family, n).with_crossings(crossings))?;
            FileBundle::write_prefix(&output, &g, &ltd.td, &ltd.layering)
                .map_err(|e| Failure::usage(format!("{}: {e}", output.display())))?;
            eprintln!("{family} n={n}: {} vertices, {} edges, layered width {}", g.n(), g.m(), ltd.layered_width());
        }
        Command::Decompose { rotation, root, output } => {
            let text = fs::read_to_string(&rotation).map_err(|e| Failure::usage(format!("{}: {e}", rotation.display())))?;
            let rot: RotationSystem = serde_json::from_str(&text)
                .map_err(|e| Failure { code: 2, message: format!("{}: {e}", rotation.display()) })?;
            if root == 0 {
                return Err(Failure::usage("--root is 1-based"));
            }
            let ltd = planar_ltd(&rot, root - 1)?;
            let g = rot.graph()?;
            FileBundle::write_prefix(&output, &g, &ltd.td, &ltd.layering)
                .map_err(|e| Failure::usage(format!("{}: {e}", output.display())))?;
            eprintln!("{} vertices, {} bags, layered width {}", g.n(), ltd.td.num_nodes(), ltd.layered_width());
        }
        Command::Color { input, td, model, threads, output } => {
            let b = FileBundle::load(&input.graph, Some(&td), Some(&input.layers), None)?;
            let td = b.td.expect("requested");
            validate_td(&b.graph, &td).map_err(|v| Failure::validation(format!("invalid decomposition: {v:?}")))?;
            let ltd = LayeredTreeDecomposition::new(td, b.layering.expect("requested"));
            let config = PipelineConfig { f_model: model.f_model, threads };
            let report = three_color(&b.graph, &ltd, &config)?;
            write(&output, &write_report(&report))?;
            let m = &report.measured;
            eprintln!(
                "clustering {} (f1={} f2={} f3={}, layered width {}, max degree {})",
                report.clustering.overall, m.f1, m.f2, m.f3, m.widths.input, m.max_degree
            );
        }
        Command::Verify { input, td, coloring } => {
            let b = FileBundle::load(&input.graph, td.as_deref(), Some(&input.layers), Some(&coloring))?;
            let report = b.report.expect("requested");
            let layering = b.layering.expect("requested");
            match check_pipeline_invariants(&b.graph, &layering, &report, b.td.as_ref()) {
                Ok(()) => println!("ok: clustering {}", report.clustering.overall),
                Err(violations) => {
                    for v in &violations {
                        println!("violation: {}", serde_json::to_string(v).expect("serializable"));
                    }
                    return Err(Failure { code: 4, message: format!("{} violations", violations.len()) });
                }
            }
        }
        Command::Oracle { oracle } => match oracle {
            Oracle::TwoColor { graph, td } => {
                let b = FileBundle::load(&graph, td.as_deref(), None, None)?;
                let (_, opt) = exact_two_color(&b.graph).map_err(|e| Failure::usage(e.to_string()))?;
                println!("optimum {opt}");
                if let Some(td) = b.td {
                    let (_, k) = two_color_clustered(&b.graph, &td, (1, 2))
                        .map_err(|e| Failure::validation(e.to_string()))?;
                    println!("tree-partition {k}");
                }
            }
            Oracle::ThreeColor { graph } => {
                let b = FileBundle::load(&graph, None, None, None)?;
                let (c, opt) = exact_three_color(&b.graph).map_err(|e| Failure::usage(e.to_string()))?;
                debug_assert_eq!(cluster_stats(&b.graph, &c).map(|s| s.clustering), Ok(opt));
                println!("optimum {opt}");
            }
            Oracle::Hex { n } => match hex_check(n).map_err(|e| Failure::usage(e.to_string()))? {
                None => println!("ok: every 2-coloring of the {n}x{n} triangular grid has a monochromatic path on {n} vertices"),
                Some(c) => {
                    println!("counterexample: {c:?}");
                    return Err(Failure::validation("hex check failed"));
                }
            },
        },
        Command::Bounds { w, delta, model, json } => {
            let b = compute_bounds(w, delta, &model.f_model).map_err(|e| Failure::usage(e.to_string()))?;
            if json {
                println!("{}", serde_json::to_string_pretty(&b).expect("serializable"));
            } else {
                println!("w={w} delta={delta} f-model={}", model.f_model);
                print!("{}", bounds_table(&b));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
