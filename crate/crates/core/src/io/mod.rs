//! Config files, CSV series, manifests and the command line.

pub mod cli;
pub mod config;
pub mod manifest;
pub mod table;

pub use config::{parse_config, read_config, write_config};
pub use manifest::RunManifest;
pub use table::{Cell, Format, Table};
