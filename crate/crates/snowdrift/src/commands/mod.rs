//! One module per subcommand. Each builds its outputs in memory; the caller
//! prints the summary and writes the files.

pub mod basins;
pub mod classify;
pub mod equilibria;
pub mod separatrix;
pub mod simulate;
pub mod sweep;

use crate::error::Outcome;

/// What a command produced.
#[derive(Debug)]
pub struct Output {
    pub outcome: Outcome,
    /// JSON summary, printed to stdout and saved as `<command>.json`.
    pub summary: String,
    /// Extra files for the output directory.
    pub files: Vec<(String, Vec<u8>)>,
}
