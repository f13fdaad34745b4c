//! Exact tools for depth, projective dimension and regularity of symbolic
//! powers of cover ideals of graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: simple graphs and brute-force combinatorial invariants
//!   (independence number, induced / ordered / s-ordered matching numbers,
//!   clique whiskering, enumeration of small graphs).
//! * [`ideal`]: monomial ideals with minimal generators, intersections,
//!   ordinary and symbolic powers, polarization and Alexander duality.
//! * [`layered`]: the layered graph `G_k` whose cover ideal is the
//!   polarized `k`-th symbolic power of `J(G)`, plus the explicit induced
//!   matchings of `G_k` built from (s-)ordered matchings of `G`.
//! * [`homology`]: reduced simplicial homology over an exact field, graded
//!   Betti numbers via Hochster's formula and the Taylor complex, and the
//!   derived `pd`, `reg` and `depth`.
//! * [`lab`]: corpus sweeps that check the depth-stability statements
//!   instance by instance and produce deterministic reports.

pub mod config;
pub mod error;
pub mod graph;
pub mod homology;
pub mod ideal;
pub mod lab;
pub mod layered;
pub mod linalg;

pub use config::Guards;
pub use error::{Error, Result};
pub use graph::{CliquePartition, Graph, MatchValue, Matching};
pub use homology::{BettiTable, Field};
pub use ideal::{Monomial, MonomialIdeal, Var, VariableSpace};
pub use layered::{LayeredGraph, LayeredMatching};
