//! Iterated line digraphs, inner metric parameters, and exact order
//! sequences.
//!
//! The crate is organised bottom-up:
//!
//! * [`digraph`]: the multigraph type, the line-digraph operator, SCCs.
//! * [`metrics`]: distances, inner eccentricities, radii and diameters.
//! * [`families`]: De Bruijn, Kautz, cyclic Kautz, square-free and the
//!   small hand-built families.
//! * [`exactla`]: big-integer matrices, regular partitions, minimal
//!   polynomials and linear recurrences.
//! * [`sequences`]: order and inner-diameter sequences with cross-checked
//!   methods, forbidden-word digraphs and the word-count oracle.
//! * [`oeis`]: matching sequences against an OEIS snapshot or the web API.

pub mod digraph;
pub mod error;
pub mod exactla;
pub mod families;
pub mod metrics;
pub mod oeis;
pub mod sequences;

pub use digraph::{Digraph, IterLimits, SccDecomposition};
pub use error::{Error, Result};
