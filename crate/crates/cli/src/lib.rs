//! Command-line front end and JSON file formats for the decategorified
//! 2-category toolkit in `decat-core`.
//!
//! The binary guarantees reproducibility: identical inputs produce
//! byte-identical reports (stable orderings, no timestamps), and all JSON is
//! emitted with lexicographically sorted keys.

mod commands;
pub mod drivers;
pub mod formats;

pub use commands::{run, CommandResult};
