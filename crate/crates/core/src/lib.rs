//! Versals of hypergraphs.
//!
//! For a hypergraph `H` whose edges form an antichain, a vertex set `S` is a
//! *versal* for edge `e` if `|e| + |S ∩ e| < |f| + |S ∩ f|` for every other
//! edge `f`. Equivalently, weighting `S` by 2 and every other vertex by 1
//! makes `e` the unique lightest edge.
//!
//! The crate provides:
//!
//! * [`VertexSet`] and [`Hypergraph`]: word-sized set arithmetic, validation
//!   and the `.hg` text format.
//! * [`versal`]: the predicate and exact enumeration of `L(e)`, `Z(H)`,
//!   `Z'(H)` (null versals) and free vertices.
//! * [`families`]: singletons, co-singletons, stars, binary stars, flags.
//! * [`isolation`]: the weighting view and min-unique probabilities.
//! * [`verifier`]: exhaustive and seeded-random verification of the lower
//!   bound `|Z(H)| >= n + 1` and its supporting lemmas.

pub mod error;
pub mod families;
pub mod hypergraph;
pub mod isolation;
pub mod verifier;
pub mod versal;
pub mod vertex_set;

pub use error::{Error, Result};
pub use hypergraph::{parse_hypergraph, Hypergraph};
pub use vertex_set::{VertexSet, VERTEX_CAP};
