//! File formats, reports and the command-line frontend for `orbitk-core`.

pub use orbitk_core as core;

pub mod cli;
pub mod report;
pub mod schema;
pub mod selfcheck;
