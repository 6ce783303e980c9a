//! Text formats. Ids are 1-based in files and 0-based in memory.
//!
//! ```text
//! .gr      p tw <n> <m>            then m lines `<u> <v>`
//! .td      s td <bags> <width+1> <n>
//!          b <id> <v...>           one line per bag
//!          <a> <b>                 tree edges
//! .layers  s layering <n> <layers> then n lines `<v> <layer>`
//! ```
//!
//! Lines starting with `c` are comments. Writers emit the normalized form
//! (sorted edges and bags, vertices in id order) so a parse followed by a
//! write is stable.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::error::{GraphError, ParseError};
use crate::graph::{Graph, Layering, Vertex};
use crate::pipeline::PipelineReport;
use crate::td::{Node, TreeDecomposition};

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line == "c" || line.starts_with("c ") {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn number(line: usize, tok: &str, what: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| ParseError::new(line, format!("expected {what}, found `{tok}`")))
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<Vertex, ParseError> {
    let v = number(line, tok, "vertex id")?;
    if v == 0 || v > n {
        return Err(ParseError::new(line, format!("vertex {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    prefix: &[&str],
    count: usize,
) -> Result<(usize, Vec<usize>), ParseError> {
    let usage = format!("`{} {}`", prefix.join(" "), vec!["<int>"; count].join(" "));
    let (line, toks) = lines.next().ok_or_else(|| ParseError::new(1, format!("missing header {usage}")))?;
    if toks.len() != prefix.len() + count || toks[..prefix.len()] != *prefix {
        return Err(ParseError::new(line, format!("malformed header, expected {usage}")));
    }
    let values = toks[prefix.len()..].iter().map(|t| number(line, t, "header integer")).collect::<Result<_, _>>()?;
    Ok((line, values))
}

pub fn parse_gr(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (hline, h) = header(&mut lines, &["p", "tw"], 2)?;
    let (n, m) = (h[0], h[1]);
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    for (line, toks) in lines {
        if toks.len() != 2 {
            return Err(ParseError::new(line, "edge line needs exactly two vertex ids"));
        }
        let (u, v) = (vertex(line, toks[0], n)?, vertex(line, toks[1], n)?);
        if u == v {
            return Err(ParseError::new(line, format!("self-loop at vertex {}", u + 1)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::new(line, format!("duplicate edge {} {}", u + 1, v + 1)));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::new(hline, format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, &edges).map_err(|e| ParseError::new(hline, e.to_string()))
}

pub fn write_gr(g: &Graph) -> String {
    let mut s = format!("p tw {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(s, "{} {}", u + 1, v + 1).unwrap();
    }
    s
}

/// A parsed `.td` file: the decomposition and the vertex count from its
/// header. The announced bag size is kept on the decomposition so that
/// validation can compare it with the actual bags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdFile {
    pub td: TreeDecomposition,
    pub n: usize,
}

pub fn parse_td(text: &str) -> Result<TdFile, ParseError> {
    let mut lines = content_lines(text);
    let (hline, h) = header(&mut lines, &["s", "td"], 3)?;
    let (k, declared, n) = (h[0], h[1], h[2]);
    let mut bags: Vec<Option<Vec<Vertex>>> = vec![None; k];
    let mut edges = Vec::new();
    let node = |line: usize, tok: &str| -> Result<Node, ParseError> {
        let t = number(line, tok, "bag id")?;
        if t == 0 || t > k {
            return Err(ParseError::new(line, format!("bag {t} out of range 1..={k}")));
        }
        Ok(t - 1)
    };
    for (line, toks) in lines {
        if toks[0] == "b" {
            if toks.len() < 2 {
                return Err(ParseError::new(line, "bag line needs an id"));
            }
            let t = node(line, toks[1])?;
            if bags[t].is_some() {
                return Err(ParseError::new(line, format!("bag {} defined twice", t + 1)));
            }
            bags[t] = Some(toks[2..].iter().map(|tok| vertex(line, tok, n)).collect::<Result<_, _>>()?);
        } else {
            if toks.len() != 2 {
                return Err(ParseError::new(line, "tree edge line needs exactly two bag ids"));
            }
            edges.push((node(line, toks[0])?, node(line, toks[1])?));
        }
    }
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(t, b)| b.ok_or_else(|| ParseError::new(hline, format!("bag {} never defined", t + 1))))
        .collect::<Result<_, _>>()?;
    Ok(TdFile { td: TreeDecomposition::new(bags, edges).with_declared_bag_size(declared), n })
}

/// Writes `td` with its actual maximum bag size in the header.
pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut s = format!("s td {} {} {}\n", td.num_nodes(), td.max_bag_size(), n);
    for (t, bag) in td.bags().iter().enumerate() {
        write!(s, "b {}", t + 1).unwrap();
        for &v in bag {
            write!(s, " {}", v + 1).unwrap();
        }
        s.push('\n');
    }
    let mut edges: Vec<_> = td.tree_edges().iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    edges.sort_unstable();
    for (a, b) in edges {
        writeln!(s, "{} {}", a + 1, b + 1).unwrap();
    }
    s
}

pub fn parse_layers(text: &str) -> Result<Layering, ParseError> {
    let mut lines = content_lines(text);
    let (hline, h) = header(&mut lines, &["s", "layering"], 2)?;
    let (n, n_layers) = (h[0], h[1]);
    let mut layer_of: Vec<Option<usize>> = vec![None; n];
    for (line, toks) in lines {
        if toks.len() != 2 {
            return Err(ParseError::new(line, "layer line needs `<vertex> <layer>`"));
        }
        let v = vertex(line, toks[0], n)?;
        let l = number(line, toks[1], "layer")?;
        if l == 0 || l > n_layers {
            return Err(ParseError::new(line, format!("layer {l} out of range 1..={n_layers}")));
        }
        if layer_of[v].replace(l).is_some() {
            return Err(ParseError::new(line, format!("vertex {} assigned twice", v + 1)));
        }
    }
    let layer_of = layer_of
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| ParseError::new(hline, format!("vertex {} has no layer", v + 1))))
        .collect::<Result<_, _>>()?;
    Layering::new(layer_of, n_layers).map_err(|e: GraphError| ParseError::new(hline, e.to_string()))
}

pub fn write_layers(layering: &Layering) -> String {
    let mut s = format!("s layering {} {}\n", layering.n(), layering.n_layers());
    for (v, l) in layering.as_slice().iter().enumerate() {
        writeln!(s, "{} {}", v + 1, l).unwrap();
    }
    s
}

pub fn parse_report(text: &str) -> Result<PipelineReport, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError::new(e.line(), e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn write_report(report: &PipelineReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    /// Files that parse but disagree with each other.
    #[error("{0}")]
    Inconsistent(String),
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read { path: path.to_owned(), source })
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> Result<T, ParseError>) -> Result<T, IoError> {
    parse(&read(path)?).map_err(|source| IoError::Parse { path: path.to_owned(), source })
}

/// Graph with optional decomposition, layering and report, checked for a
/// common vertex count.
#[derive(Debug, Clone)]
pub struct FileBundle {
    pub graph: Graph,
    pub td: Option<TreeDecomposition>,
    pub layering: Option<Layering>,
    pub report: Option<PipelineReport>,
}

impl FileBundle {
    pub fn load(gr: &Path, td: Option<&Path>, layers: Option<&Path>, report: Option<&Path>) -> Result<Self, IoError> {
        let graph = load(gr, parse_gr)?;
        let n = graph.n();
        let mismatch = |what: &str, path: &Path, m: usize| {
            IoError::Inconsistent(format!("{} declares {m} vertices for {what}, graph has {n}", path.display()))
        };
        let td = match td {
            Some(p) => {
                let f = load(p, parse_td)?;
                if f.n != n {
                    return Err(mismatch("the decomposition", p, f.n));
                }
                Some(f.td)
            }
            None => None,
        };
        let layering = match layers {
            Some(p) => {
                let l = load(p, parse_layers)?;
                if l.n() != n {
                    return Err(mismatch("the layering", p, l.n()));
                }
                Some(l)
            }
            None => None,
        };
        let report = match report {
            Some(p) => {
                let r = load(p, parse_report)?;
                if r.colors.len() != n {
                    return Err(mismatch("the coloring", p, r.colors.len()));
                }
                Some(r)
            }
            None => None,
        };
        Ok(FileBundle { graph, td, layering, report })
    }

    /// Writes `<prefix>.gr`, `<prefix>.td`, `<prefix>.layers`.
    pub fn write_prefix(prefix: &Path, g: &Graph, td: &TreeDecomposition, layering: &Layering) -> std::io::Result<()> {
        let with = |ext: &str| {
            let mut p = prefix.as_os_str().to_owned();
            p.push(ext);
            PathBuf::from(p)
        };
        fs::write(with(".gr"), write_gr(g))?;
        fs::write(with(".td"), write_td(td, g.n()))?;
        fs::write(with(".layers"), write_layers(layering))
    }
}
