//! Command-line front end: surface specs, reports, contour traces and figures.

pub mod commands;
pub mod report;
pub mod spec;
pub mod svg;

pub use commands::{run, Cli, CliError};
pub use report::{analyze, InvariantReport, Quantity};
pub use spec::{CatalogSurface, SurfaceKind, SurfaceSpec};
