//! Rainbow vertex-disconnection colorings of graphs.
//!
//! A coloring is rainbow vertex-disconnected when every pair of vertices can
//! be separated by a set of vertices with pairwise distinct colors. This
//! crate verifies such colorings, computes the minimum number of colors
//! exactly on small graphs, colors K4-minor-free graphs constructively and
//! builds the gadgets relating the parameter to chromatic numbers.

pub mod acceptance;
pub mod blocks;
pub mod colorer;
pub mod error;
pub mod exact;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod recognize;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Color, Graph, Vertex, VertexColoring};
