//! The std side of graphorder: graph and permutation files, the threaded
//! SpMM benchmark, named orderings and the comparison report. The algorithms
//! live in [`graphorder_core`], re-exported here as [`core`].

pub use graphorder_core as core;

pub mod bench;
pub mod io;
pub mod methods;
pub mod report;

pub use methods::{Method, MethodParams};
