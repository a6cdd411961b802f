//! Loading presentation files, running the complexes and writing reports
//! for the `hoalg` binary.

pub mod error;
pub mod format;
pub mod report;
pub mod run;
