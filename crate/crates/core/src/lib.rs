//! Recognition of Mengerian multigraphs.
//!
//! A multigraph is Mengerian when, for every assignment of positive time labels
//! to its edges and every pair of non-adjacent vertices `s`, `t`, the maximum
//! number of internally vertex-disjoint temporal `s,t`-paths equals the
//! minimum size of a vertex set whose removal destroys every temporal
//! `s,t`-walk. This crate decides the property exactly, returns an embedded
//! forbidden pattern as evidence when it fails, and builds a verified
//! counterexample labeling from that evidence.

pub mod dot;
pub mod error;
pub mod flow;
pub mod format;
pub mod generate;
pub mod menger;
pub mod multigraph;
pub mod patterns;
pub mod recognizer;
pub mod temporal;
pub mod witness;

pub use error::{Error, Result};
