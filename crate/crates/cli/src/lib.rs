//! Library side of the `popuc-lab` command: run configuration, figure datasets,
//! SVG output and the verification suites.

pub mod config;
pub mod error;
pub mod figures;
pub mod run;
pub mod svg;
pub mod verify;

pub use config::{BSpec, Command, RunConfig};
pub use error::{CliError, CliResult};
pub use run::run;
