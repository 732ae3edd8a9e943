#![no_std]
// Negated float comparisons reject NaN on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod cheeger;
pub mod eigen;
pub mod enumeration;
pub mod error;
pub mod generate;
pub mod graph;
pub mod ratios;
pub mod solver;
pub mod spectral;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, VertexSet};
