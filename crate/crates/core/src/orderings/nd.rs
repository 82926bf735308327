use alloc::vec;
use alloc::vec::Vec;

use super::amd::amd_order;
use crate::graph::{Graph, Permutation};
use crate::spectral::{fiedler_cut, SolverConfig};

/// Recursion guard; deeper subgraphs are ordered by AMD.
const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NdParams {
    /// Subgraphs of at most this many vertices are ordered by AMD.
    pub n_base: usize,
    pub solver: SolverConfig,
}

impl Default for NdParams {
    fn default() -> Self {
        NdParams {
            n_base: 64,
            solver: SolverConfig::for_recursion(),
        }
    }
}

/// Spectral nested dissection: median Fiedler bisection, a greedy vertex
/// separator covering the cut edges, the two remaining parts first and the
/// separator last. Leaves and spectrally degenerate subgraphs use AMD.
///
/// # Panics
/// If `n_base < 2`.
pub fn nested_dissection(g: &Graph, params: &NdParams) -> Permutation {
    assert!(params.n_base >= 2, "n_base must be at least 2");
    let g = g.undirected();
    let ids: Vec<usize> = (0..g.n()).collect();
    let mut order = Vec::with_capacity(g.n());
    dissect(&g, &ids, params, 0, &mut order);
    Permutation::from_order(order).expect("every vertex is placed once")
}

/// Appends `ids[v]` for `v` in AMD order of `g`, reversed if that order runs
/// against the local labels. Callers label subgraphs in Fiedler order, so the
/// leaf follows the direction of the enclosing cut.
pub(crate) fn amd_into(g: &Graph, ids: &[usize], out: &mut Vec<usize>) {
    let mut order = amd_order(g);
    let mid = (order.len() as f64 - 1.0) / 2.0;
    let trend: f64 = order
        .iter()
        .enumerate()
        .map(|(p, &v)| (p as f64 - mid) * v as f64)
        .sum();
    if trend < 0.0 {
        order.reverse();
    }
    out.extend(order.into_iter().map(|v| ids[v]));
}

fn dissect(g: &Graph, ids: &[usize], params: &NdParams, depth: usize, out: &mut Vec<usize>) {
    if g.n() <= params.n_base || depth >= MAX_DEPTH {
        amd_into(g, ids, out);
        return;
    }
    let comps = g.connected_components();
    if comps.count() > 1 {
        for members in comps.members() {
            if members.len() == 1 {
                out.push(ids[members[0]]);
                continue;
            }
            let (sub, _) = g
                .induced_subgraph(&members)
                .expect("component members are distinct");
            let sub_ids: Vec<usize> = members.iter().map(|&v| ids[v]).collect();
            dissect(&sub, &sub_ids, params, depth, out);
        }
        return;
    }
    let Ok((a, b)) = fiedler_cut(g, &params.solver) else {
        amd_into(g, ids, out);
        return;
    };
    let (a_rest, b_rest, sep) = separator(g, &a, &b);
    let parts = g.induced_parts(&[&a_rest, &b_rest, &sep]);
    for (part, members) in parts.iter().zip([&a_rest, &b_rest]) {
        let sub_ids: Vec<usize> = members.iter().map(|&v| ids[v]).collect();
        dissect(part, &sub_ids, params, depth + 1, out);
    }
    let sep_ids: Vec<usize> = sep.iter().map(|&v| ids[v]).collect();
    amd_into(&parts[2], &sep_ids, out);
}

/// Greedy cover of the edges between `a` and `b`. Each uncovered cut edge is
/// covered by the endpoint with more uncovered cut edges, ties going to the
/// smaller side and then the smaller id. Returns both sides without the
/// separator and the separator, all in their input order.
fn separator(g: &Graph, a: &[usize], b: &[usize]) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let n = g.n();
    let mut in_a = vec![false; n];
    for &v in a {
        in_a[v] = true;
    }
    let a_smaller = a.len() < b.len();
    let b_smaller = b.len() < a.len();
    let mut uncovered = vec![0usize; n];
    for v in 0..n {
        uncovered[v] = g
            .neighbors(v)
            .iter()
            .filter(|&&u| in_a[u] != in_a[v])
            .count();
    }
    let mut in_sep = vec![false; n];
    for &u in a {
        for &v in g.neighbors(u) {
            if in_a[v] || in_sep[u] || in_sep[v] {
                continue;
            }
            let pick = match uncovered[u].cmp(&uncovered[v]) {
                core::cmp::Ordering::Greater => u,
                core::cmp::Ordering::Less => v,
                core::cmp::Ordering::Equal if a_smaller => u,
                core::cmp::Ordering::Equal if b_smaller => v,
                core::cmp::Ordering::Equal => u.min(v),
            };
            in_sep[pick] = true;
            for &w in g.neighbors(pick) {
                if in_a[w] != in_a[pick] && !in_sep[w] {
                    uncovered[w] -= 1;
                }
            }
            uncovered[pick] = 0;
        }
    }
    let keep = |side: &[usize]| side.iter().copied().filter(|&v| !in_sep[v]).collect();
    let sep = a.iter().chain(b).copied().filter(|&v| in_sep[v]).collect();
    (keep(a), keep(b), sep)
}
