//! Vertex orderings for sparse graph compression and sparse-matrix locality.
//!
//! The crate is `no_std` (it needs `alloc`). It contains:
//!
//! - [`graph`]: the CSR [`Graph`] and [`Permutation`] types and structural utilities.
//! - [`generators`]: the elementary graphs (band, path of cliques, biclique, wheel) plus
//!   Watts-Strogatz and binomial trees.
//! - [`measures`]: the `mLogA` / `mLogGapA` adjacency-locality scores and their reference bounds.
//! - [`spectral`]: Fiedler vectors of the normalized Laplacian.
//! - [`orderings`]: RCM, AMD, SlashBurn and a spectral nested dissection.
//! - [`vifps`]: recursive Fiedler partitioning conditioned by Pareto splits.
//! - [`codec`]: an Elias-gamma gap codec that materializes what `mLogGapA` predicts.
//!
//! File formats, threads and the command line live in the `graphorder` crate.
#![no_std]

extern crate alloc;

pub mod codec;
pub mod error;
pub mod generators;
pub mod graph;
pub mod measures;
pub mod orderings;
pub mod spectral;
pub mod vifps;

mod sum;
mod traversal;

pub use error::{CodecError, GeneratorError, GraphError, SpectralError};
pub use graph::{ComponentLabeling, Graph, Permutation};
pub use measures::{evaluate, mlog_a, mlog_gap_a, reference_bounds, AalReport, ReferenceBounds};
pub use spectral::{FiedlerResult, SolverConfig};
pub use vifps::{MinorityPlacement, ParetoParams};
