//! Graph constructors that come with layered tree-decompositions.

pub mod families;
pub mod planar;
pub mod random;

pub use families::{crossing_faces, generate_family, grid_coordinates, Family, FamilySpec};
pub use planar::{planar_ltd, RotationSystem};
pub use random::{random_ktree_subgraph, random_layered_instance};
