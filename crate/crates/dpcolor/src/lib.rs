//! Exact DP (correspondence) coloring with equitable variants.
//!
//! A *cover* of a graph assigns each vertex a list of colors and each edge a
//! partial matching between the endpoint lists; an *H-coloring* picks one
//! color per vertex so that no matched pair is chosen. On top of plain
//! H-colorability this crate decides and constructs *m-bounded* colorings
//! (no color class larger than ⌈n/k⌉) and *strongly m-bounded* colorings
//! (additionally at most n mod k classes of size ⌊n/k⌋+1), exactly, at desk
//! scale.
//!
//! The pieces:
//!
//! * [`graph`] — simple undirected graphs, degeneracy orderings, and the
//!   structural subroutines (stars, ends, hubs, independent sets) the
//!   constructive algorithms consume.
//! * [`cover`] — covers, their predicates and transformations, and
//!   availability bookkeeping.
//! * [`witness`] — constructors for a registry of small witness covers that
//!   separate DP colorability from its equitable variants.
//! * [`solver`] — the exhaustive oracle: verdicts, counting, and
//!   Hall-condition extension.
//! * [`construct`] — constructive coloring algorithms: first-fit along an
//!   ordering, the k ≥ n+d guarantee, the tight k = n+d−1
//!   decide-or-characterize, forest and path recursions, and the 3Δ²
//!   promising-coloring procedure.
//! * [`search`] — decide colorability over explicit cover families by
//!   symmetry-reduced exhaustive enumeration; find and shrink witnesses.
//! * [`io`] — text formats for graphs, covers, colorings and certificates.
//! * [`repro`] — the runnable registry of witness instances.
//!
//! The `dpcolor` binary exposes `solve`, `construct`, `repro`, `search` and
//! `example` subcommands over the same machinery; see the book under
//! `book/` for a guided tour.

pub mod construct;
pub mod cover;
mod error;
pub mod graph;
pub mod io;
pub mod perm;
pub mod repro;
pub mod search;
pub mod solver;
pub mod witness;

pub use error::Error;

/// Vertices are dense 0-based indices into a graph.
pub type Vertex = usize;
/// Colors are 0-based indices into the global palette Γ.
pub type Color = usize;

pub type Result<T> = std::result::Result<T, Error>;
