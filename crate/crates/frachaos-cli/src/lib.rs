//! Library side of the `frachaos` command-line tool: claim records, output
//! writers, the verification suites, and small input helpers. The binary in
//! `main.rs` is a thin argument-parsing layer over these.

pub mod output;
pub mod spline;
pub mod suites;
pub mod timefmt;

/// Artifact version stamped into every output record.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
