//! Recursive Fiedler partitioning conditioned by Pareto splits.
//!
//! At each level: a subgraph of at most `n_base` vertices is ordered by AMD.
//! Otherwise, if a small set of high-degree vertices holds a large share of the
//! volume, those vertices (the minority) are split off and ordered by AMD as a
//! block; each connected component of the rest is then cut at the median of
//! its Fiedler vector and both halves are ordered recursively.
//!
//! Subgraphs keep their vertices in Fiedler order as local ids, so orientation
//! carries across levels and AMD ties at the leaves follow the cut.

use alloc::vec::Vec;

use crate::graph::{Graph, Permutation};
use crate::orderings::amd_into;
use crate::spectral::{fiedler_cut, SolverConfig};

/// Where the minority block goes relative to the majority at its level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MinorityPlacement {
    Front,
    #[default]
    Back,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParetoParams {
    /// Percent of the total volume the minority must hold.
    pub rvol: f64,
    /// Largest minority, in percent of the vertices.
    pub rminor: f64,
    pub n_base: usize,
    pub solver: SolverConfig,
    pub max_depth: usize,
    pub placement: MinorityPlacement,
}

impl Default for ParetoParams {
    fn default() -> Self {
        ParetoParams {
            rvol: 20.0,
            rminor: 4.0,
            n_base: 64,
            solver: SolverConfig::for_recursion(),
            max_depth: 64,
            placement: MinorityPlacement::Back,
        }
    }
}

impl ParetoParams {
    /// Ratios under which no split can happen on a graph with a vertex outside
    /// the top 1%.
    pub fn without_splits() -> Self {
        ParetoParams {
            rvol: 100.0,
            rminor: 1.0,
            ..ParetoParams::default()
        }
    }

    fn validate(&self) {
        assert!(
            self.rvol > 0.0 && self.rvol <= 100.0,
            "rvol must lie in (0, 100]"
        );
        assert!(
            self.rminor > 0.0 && self.rminor <= 100.0,
            "rminor must lie in (0, 100]"
        );
        assert!(self.n_base >= 2, "n_base must be at least 2");
    }
}

/// Splits off the highest-degree vertices holding `rvol`% of the volume when
/// they number at most `rminor`% of the vertices.
///
/// Vertices are ranked by degree (descending, ties by id) and the shortest
/// prefix reaching the volume share is taken, extended over any vertices tied
/// in degree with its last member. Returns `(minority, majority)`: the
/// minority in rank order, the majority by id.
pub fn pareto_split(g: &Graph, rvol: f64, rminor: f64) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.n();
    if g.nnz() == 0 {
        return None;
    }
    let mut ranked: Vec<usize> = (0..n).collect();
    ranked.sort_unstable_by_key(|&v| (usize::MAX - g.degree(v), v));
    let target = rvol / 100.0 * g.nnz() as f64;
    let mut held = 0usize;
    let mut len = 0;
    while len < n && (held as f64) < target {
        held += g.degree(ranked[len]);
        len += 1;
    }
    let last = g.degree(ranked[len - 1]);
    while len < n && g.degree(ranked[len]) == last {
        len += 1;
    }
    if len as f64 > rminor / 100.0 * n as f64 {
        return None;
    }
    let mut minor = ranked;
    let mut major = minor.split_off(len);
    major.sort_unstable();
    Some((minor, major))
}

/// The vifps ordering of a symmetric graph.
///
/// # Panics
/// If the parameters are out of range.
pub fn vifps(g: &Graph, params: &ParetoParams) -> Permutation {
    params.validate();
    let g = g.undirected();
    let ids: Vec<usize> = (0..g.n()).collect();
    let mut order = Vec::with_capacity(g.n());
    Recursion { params }.level(&g, &ids, 0, &mut order);
    Permutation::from_order(order).expect("every vertex is placed once")
}

/// Row and column orderings from vifps on the bipartite embedding
/// `[0, A; Aᵀ, 0]`, each the projection of the joint order.
pub fn vifps_directed(g: &Graph, params: &ParetoParams) -> (Permutation, Permutation) {
    params.validate();
    let n = g.n();
    let embedded = g.bipartite_embed();
    let ids: Vec<usize> = (0..2 * n).collect();
    let mut order = Vec::with_capacity(2 * n);
    Recursion { params }.level(&embedded, &ids, 0, &mut order);
    let rows = order.iter().copied().filter(|&v| v < n).collect();
    let cols = order.iter().filter(|&&v| v >= n).map(|&v| v - n).collect();
    (
        Permutation::from_order(rows).expect("rows are projected once"),
        Permutation::from_order(cols).expect("columns are projected once"),
    )
}

struct Recursion<'a> {
    params: &'a ParetoParams,
}

impl Recursion<'_> {
    fn level(&self, g: &Graph, ids: &[usize], depth: usize, out: &mut Vec<usize>) {
        if g.n() <= self.params.n_base || depth >= self.params.max_depth {
            amd_into(g, ids, out);
            return;
        }
        let Some((minor, major)) = pareto_split(g, self.params.rvol, self.params.rminor) else {
            self.cut(g, ids, depth, out);
            return;
        };
        let parts = g.induced_parts(&[&minor, &major]);
        let minor_ids: Vec<usize> = minor.iter().map(|&v| ids[v]).collect();
        let major_ids: Vec<usize> = major.iter().map(|&v| ids[v]).collect();
        if self.params.placement == MinorityPlacement::Front {
            amd_into(&parts[0], &minor_ids, out);
        }
        self.cut(&parts[1], &major_ids, depth, out);
        if self.params.placement == MinorityPlacement::Back {
            amd_into(&parts[0], &minor_ids, out);
        }
    }

    /// Cuts every component of `g`, largest first.
    fn cut(&self, g: &Graph, ids: &[usize], depth: usize, out: &mut Vec<usize>) {
        for members in g.connected_components().members() {
            if members.len() == 1 {
                out.push(ids[members[0]]);
                continue;
            }
            let (sub, _) = g
                .induced_subgraph(&members)
                .expect("component members are distinct");
            let sub_ids: Vec<usize> = members.iter().map(|&v| ids[v]).collect();
            if sub.n() <= self.params.n_base {
                amd_into(&sub, &sub_ids, out);
                continue;
            }
            let Ok((a, b)) = fiedler_cut(&sub, &self.params.solver) else {
                amd_into(&sub, &sub_ids, out);
                continue;
            };
            let halves = sub.induced_parts(&[&a, &b]);
            for (half, side) in halves.iter().zip([&a, &b]) {
                let half_ids: Vec<usize> = side.iter().map(|&v| sub_ids[v]).collect();
                self.level(half, &half_ids, depth + 1, out);
            }
        }
    }
}
