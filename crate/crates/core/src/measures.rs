//! Adjacency-access-locality scores.
//!
//! For an ordering `π` of graph `G` with `m` stored entries:
//!
//! - `mLogA(G, π) = (1/m) Σ_(u,v) log₂(1 + |π(u) − π(v)|)`, the mean bit length of
//!   the distance between a vertex and its neighbors;
//! - `mLogGapA(G, π) = (1/m) Σ_v [1 + Σ_{i≥2} log₂(1 + π(u_i) − π(u_{i−1}))]`, the mean
//!   bit length of gaps between consecutive neighbors, the first neighbor costing 1;
//! - `Δ = mLogA − mLogGapA`.
//!
//! Scores use the stored rows, so directed graphs are scored on their out-lists.
//! All bounds use `γ₁ = 1`.

use alloc::vec::Vec;

use crate::error::GraphError;
use crate::graph::{Graph, Permutation};
use crate::sum::Accumulator;

#[inline]
fn bits(gap: usize) -> f64 {
    libm::log2(1.0 + gap as f64)
}

fn check(g: &Graph, pi: &Permutation) -> Result<(), GraphError> {
    if g.n() != pi.len() {
        return Err(GraphError::SizeMismatch {
            expected: g.n(),
            found: pi.len(),
        });
    }
    Ok(())
}

/// Mean neighbor distance in bits. Zero for a graph without entries.
pub fn mlog_a(g: &Graph, pi: &Permutation) -> Result<f64, GraphError> {
    check(g, pi)?;
    Ok(totals(g, pi).distance_per_link())
}

/// Mean neighbor gap in bits. Zero for a graph without entries.
pub fn mlog_gap_a(g: &Graph, pi: &Permutation) -> Result<f64, GraphError> {
    check(g, pi)?;
    Ok(totals(g, pi).gap_per_link())
}

/// `mLogA − mLogGapA`.
pub fn delta(g: &Graph, pi: &Permutation) -> Result<f64, GraphError> {
    check(g, pi)?;
    let t = totals(g, pi);
    Ok(t.distance_per_link() - t.gap_per_link())
}

struct Totals {
    distance: f64,
    gap: f64,
    m: usize,
}

impl Totals {
    fn distance_per_link(&self) -> f64 {
        if self.m == 0 {
            0.0
        } else {
            self.distance / self.m as f64
        }
    }

    fn gap_per_link(&self) -> f64 {
        if self.m == 0 {
            0.0
        } else {
            self.gap / self.m as f64
        }
    }
}

fn totals(g: &Graph, pi: &Permutation) -> Totals {
    let mut distance = Accumulator::default();
    let mut gap = Accumulator::default();
    let mut row: Vec<usize> = Vec::new();
    for v in 0..g.n() {
        let nbrs = g.neighbors(v);
        if nbrs.is_empty() {
            continue;
        }
        let pv = pi.position(v);
        row.clear();
        row.extend(nbrs.iter().map(|&u| pi.position(u)));
        row.sort_unstable();
        let mut row_distance = 0.0;
        let mut row_gap = 1.0;
        for (i, &pu) in row.iter().enumerate() {
            row_distance += bits(pu.abs_diff(pv));
            if i > 0 {
                row_gap += bits(pu - row[i - 1]);
            }
        }
        distance.add(row_distance);
        gap.add(row_gap);
    }
    Totals {
        distance: distance.value(),
        gap: gap.value(),
        m: g.nnz(),
    }
}

/// Reference values for graphs of size `n` and average degree `d̄`, with `b = ⌈d̄/2⌉`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceBounds {
    /// The biclique optimum, 1.
    pub lower: f64,
    /// `1 + (log₂3 − 1)/d̄`, the band graph at minimal bandwidth.
    pub conv1_ref: f64,
    /// `1 + log₂(n − d̄)/d̄`, the best gap score of the wheel composition.
    pub wheel_ref: f64,
    /// `1 + log₂(1 + n − b)`, the envelope of all feasible gap scores.
    pub upper_gap: f64,
    /// `mLogA` of the complete biclique `K(b, n−b)` with centers first, summed exactly.
    pub warning_threshold: f64,
}

/// Computes [`ReferenceBounds`]; `None` unless `n > d̄ ≥ 1` and `n > 2b`.
pub fn reference_bounds(n: usize, d_avg: f64) -> Option<ReferenceBounds> {
    if d_avg.is_nan() || d_avg < 1.0 || (n as f64) <= d_avg {
        return None;
    }
    let b = libm::ceil(d_avg / 2.0) as usize;
    if n <= 2 * b {
        return None;
    }
    Some(ReferenceBounds {
        lower: 1.0,
        conv1_ref: 1.0 + (libm::log2(3.0) - 1.0) / d_avg,
        wheel_ref: 1.0 + libm::log2(n as f64 - d_avg) / d_avg,
        upper_gap: 1.0 + libm::log2((1 + n - b) as f64),
        warning_threshold: biclique_mlog_a(n, b),
    })
}

/// `mLogA` of `K(b, n−b)` with centers at positions `0..b`.
fn biclique_mlog_a(n: usize, b: usize) -> f64 {
    // Both directions of each center/peripheral pair contribute the same
    // distance, so the factor 2 cancels against m = 2b(n−b).
    let mut acc = Accumulator::default();
    for c in 0..b {
        for p in b..n {
            acc.add(bits(p - c));
        }
    }
    acc.value() / (b * (n - b)) as f64
}

/// The locality descriptor of one (graph, ordering) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct AalReport {
    pub mlog_a: f64,
    pub mlog_gap_a: f64,
    pub delta: f64,
    pub n: usize,
    pub m: usize,
    pub d_avg: f64,
    pub bounds: Option<ReferenceBounds>,
    /// `mLogA` exceeds the biclique threshold: the ordering is worth replacing.
    pub warning: bool,
    /// The graph had no entries; scores are reported as zero.
    pub empty: bool,
}

pub fn evaluate(g: &Graph, pi: &Permutation) -> Result<AalReport, GraphError> {
    check(g, pi)?;
    let t = totals(g, pi);
    let mlog_a = t.distance_per_link();
    let mlog_gap_a = t.gap_per_link();
    let bounds = reference_bounds(g.n(), g.d_avg());
    let warning = bounds.is_some_and(|b| mlog_a > b.warning_threshold);
    Ok(AalReport {
        mlog_a,
        mlog_gap_a,
        delta: mlog_a - mlog_gap_a,
        n: g.n(),
        m: g.nnz(),
        d_avg: g.d_avg(),
        bounds,
        warning,
        empty: g.nnz() == 0,
    })
}
