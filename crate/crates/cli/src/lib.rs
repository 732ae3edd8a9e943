//! Edge-list IO, multi-threaded drivers and the `mucheeger` command line on
//! top of `mucheeger-core`.

pub mod args;
pub mod commands;
pub mod edgelist;
pub mod error;
pub mod grid;
pub mod output;
pub mod par;

pub use edgelist::{parse_edge_list, serialize_edge_list, ParseError, ParsedGraph};
pub use error::CliError;
