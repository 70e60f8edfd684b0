//! Standard-library companion to `qcorr-core`: the text file format for
//! density matrices, a multi-threaded D search, named state families,
//! parameter sweeps with CSV output, and the report printed by the `qcorr`
//! command-line tool.

mod error;
pub mod format;
pub mod report;
pub mod search;
pub mod state;
pub mod sweep;

pub use error::{Error, Result};
pub use qcorr_core;
