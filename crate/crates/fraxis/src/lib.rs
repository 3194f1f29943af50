//! Command-line front end for the free-axis circuit optimizers.
//!
//! File formats, builtin-name parsing, experiment drivers and the `verify`
//! property checks live here; the numerics are in `fraxis-core`.

pub mod error;
pub mod experiments;
pub mod formats;
pub mod specs;
pub mod verify;
