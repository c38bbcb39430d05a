//! Exact computations for closures of quasi-alternating 3-braids: string
//! families, Gram forms of cyclic plumbings, lattice embeddings, cubiquity,
//! and knot invariants of the closures.

pub mod braid;
pub mod cubiquity;
pub mod embeddings;
pub mod error;
pub mod lattice;
pub mod par;
pub mod pipeline;
pub mod strings;

pub use error::{Error, Result};
