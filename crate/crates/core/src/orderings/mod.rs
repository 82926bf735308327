//! Baseline orderings. Every scheme returns a bijection for any input and
//! orders disconnected graphs component by component, largest first.

mod amd;
mod nd;
mod rcm;
mod slashburn;

pub use amd::amd;
pub use nd::{nested_dissection, NdParams};
pub use rcm::rcm;
pub use slashburn::{slashburn, SlashburnParams};

pub(crate) use nd::amd_into;

use crate::graph::{Graph, Permutation};

/// The native labeling.
pub fn identity_order(g: &Graph) -> Permutation {
    Permutation::identity(g.n())
}

/// The reversed ordering: position `p` becomes `n − 1 − p`.
pub fn reverse(pi: &Permutation) -> Permutation {
    pi.reverse()
}
