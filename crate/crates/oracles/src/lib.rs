//! Reference computations for the ribbon test suites.
//!
//! Nothing here shares code with the pipeline beyond reading diagrams and
//! complexes: the Jones polynomial comes from a Kauffman-bracket state sum
//! and homology from a dense Smith form of every differential.

pub mod jones;
pub mod knotinfo;
pub mod snf;

pub use jones::{jones, jones_from_euler};
pub use knotinfo::{fixture, KnotInfoRow};
pub use snf::{dense_summary, DenseSnf};
