//! Clustered 3-coloring of graphs with bounded layered treewidth and bounded
//! maximum degree.
//!
//! Given a graph with a layered tree-decomposition, [`pipeline::three_color`]
//! produces a 3-coloring whose monochromatic components stay small. The
//! layers are split into three classes modulo 3; each class is 2-colored in
//! turn with a tree-partition based routine ([`cluster2`]) on an auxiliary
//! graph whose extra edges link the neighbourhoods of earlier monochromatic
//! components ([`enlarge`]). Every step is checked, and [`verify`]
//! recomputes the output properties independently.

mod bitgraph;
pub mod cluster2;
pub mod decomp;
pub mod enlarge;
pub mod error;
pub mod graph;
pub mod io;
pub mod pipeline;
pub mod td;
pub mod verify;

pub use error::{ClusterError, DecompError, EnlargeError, GraphError, OracleError, ParseError, PipelineError};
pub use graph::{Color, Coloring, Graph, Layering, Vertex};
pub use td::{LayeredTreeDecomposition, TreeDecomposition};
