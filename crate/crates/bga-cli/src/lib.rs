//! Command-line surface and diagram emitter for the `bga-core` library.

pub mod commands;
pub mod render;
