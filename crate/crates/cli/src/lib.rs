//! File formats, Graphviz export, seeded corpora and the `plumb`
//! subcommands on top of `plumbing-core`.

pub mod commands;
pub mod corpus;
pub mod dot;
pub mod format;
