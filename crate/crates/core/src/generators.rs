//! Deterministic constructors for the elementary and synthetic test graphs.
//!
//! All outputs are symmetric and loop-free. Only [`watts_strogatz`] takes a seed.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GeneratorError;
use crate::graph::Graph;

type Result<T> = core::result::Result<T, GeneratorError>;

/// Which generator a [`GenSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GenKind {
    /// Band graph with semi-bandwidth `b`.
    Conv1 {
        b: usize,
    },
    /// Path of cliques of size `d_avg`.
    PathOfCliques,
    Biclique,
    Wheel {
        b_local: usize,
        b_global: usize,
    },
    WattsStrogatz {
        k_half: usize,
        beta: f64,
    },
    /// Binomial tree `B_k`; `n` is ignored.
    Binomial {
        order: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub d_avg: f64,
    pub seed: u64,
}

impl GenSpec {
    pub fn build(&self) -> Result<Graph> {
        match self.kind {
            GenKind::Conv1 { b } => conv1(self.n, b),
            GenKind::PathOfCliques => {
                let c = libm::round(self.d_avg);
                if c.is_nan() || c < 2.0 {
                    return Err(GeneratorError::InvalidParameter(
                        "clique size must be at least 2",
                    ));
                }
                path_of_cliques(self.n, c as usize)
            }
            GenKind::Biclique => biclique(self.n, self.d_avg),
            GenKind::Wheel { b_local, b_global } => wheel(self.n, b_local, b_global),
            GenKind::WattsStrogatz { k_half, beta } => {
                watts_strogatz(self.n, k_half, beta, self.seed)
            }
            GenKind::Binomial { order } => binomial_tree(order),
        }
    }
}

fn undirected(n: usize, edges: Vec<(usize, usize)>) -> Graph {
    Graph::from_undirected_edges(n, edges).expect("generated ids are in range")
}

/// Non-circulant band graph: `u ~ v` iff `0 < |u − v| ≤ b`.
pub fn conv1(n: usize, b: usize) -> Result<Graph> {
    if b < 1 || b >= n {
        return Err(GeneratorError::InvalidParameter("conv1 needs 1 <= b < n"));
    }
    let mut edges = Vec::with_capacity(n * b);
    for u in 0..n {
        for v in u + 1..=(u + b).min(n - 1) {
            edges.push((u, v));
        }
    }
    Ok(undirected(n, edges))
}

/// Chain of cliques of size `c` (the last one truncated when `c ∤ n`), with a
/// single bridge from the last vertex of each clique to the first of the next.
pub fn path_of_cliques(n: usize, c: usize) -> Result<Graph> {
    if c < 2 {
        return Err(GeneratorError::InvalidParameter(
            "clique size must be at least 2",
        ));
    }
    if n < 2 {
        return Err(GeneratorError::InvalidParameter(
            "need at least two vertices",
        ));
    }
    let mut edges = Vec::new();
    let mut start = 0;
    while start < n {
        let end = (start + c).min(n);
        for u in start..end {
            for v in u + 1..end {
                edges.push((u, v));
            }
        }
        if end < n {
            edges.push((end - 1, end));
        }
        start = end;
    }
    Ok(undirected(n, edges))
}

/// Biclique `K(b, n−b)` with `b = ⌈d̄/2⌉`, centers `0..b`.
///
/// When `round(d̄·n)` is below the complete count `2b(n−b)`, edges between the
/// last centers and the highest peripherals are dropped until the count
/// matches (rounded up to a whole edge); a larger target clamps to complete.
pub fn biclique(n: usize, d_avg: f64) -> Result<Graph> {
    if d_avg.is_nan() || d_avg < 1.0 {
        return Err(GeneratorError::InvalidParameter(
            "biclique needs d_avg >= 1",
        ));
    }
    let b = libm::ceil(d_avg / 2.0) as usize;
    if n <= 2 * b {
        return Err(GeneratorError::InvalidParameter("biclique needs n > 2b"));
    }
    let peripherals = n - b;
    let complete = b * peripherals;
    let target = libm::round(d_avg * n as f64) as usize;
    let target_edges = (target / 2).min(complete);
    // Every peripheral keeps center 0, so at most (b−1)(n−b) edges can go.
    if target_edges < peripherals {
        return Err(GeneratorError::InvalidParameter(
            "biclique edge target below a spanning star",
        ));
    }
    let mut drop = complete - target_edges;
    let mut keep_upto = vec![n; b];
    for c in (1..b).rev() {
        let take = drop.min(peripherals);
        keep_upto[c] = n - take;
        drop -= take;
        if drop == 0 {
            break;
        }
    }
    let mut edges = Vec::with_capacity(target_edges);
    for (c, &upto) in keep_upto.iter().enumerate() {
        for p in b..upto {
            edges.push((c, p));
        }
    }
    Ok(undirected(n, edges))
}

/// The complete biclique `K(b_global, n − b_global)` plus a band of
/// semi-bandwidth `b_local` over the peripherals `b_global..n`.
pub fn wheel(n: usize, b_local: usize, b_global: usize) -> Result<Graph> {
    if b_local < 1 || b_global < 1 || n <= 2 * (b_local + b_global) {
        return Err(GeneratorError::InvalidParameter(
            "wheel needs b_l, b_g >= 1 and n > 2(b_l + b_g)",
        ));
    }
    let mut edges = Vec::with_capacity(n * (b_local + b_global));
    for c in 0..b_global {
        for p in b_global..n {
            edges.push((c, p));
        }
    }
    for u in b_global..n {
        for v in u + 1..=(u + b_local).min(n - 1) {
            edges.push((u, v));
        }
    }
    Ok(undirected(n, edges))
}

/// Watts-Strogatz small world: a ring lattice with `k_half` neighbors per side,
/// each lattice edge `(u, u+j)` rewired to `(u, w)` with probability `beta`,
/// `w` uniform among vertices that are neither `u` nor already adjacent.
pub fn watts_strogatz(n: usize, k_half: usize, beta: f64, seed: u64) -> Result<Graph> {
    if k_half < 1 || 2 * k_half >= n {
        return Err(GeneratorError::InvalidParameter(
            "ws needs 1 <= k_half < n/2",
        ));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(GeneratorError::InvalidParameter("ws needs 0 <= beta <= 1"));
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(2 * k_half + 2); n];
    for u in 0..n {
        for j in 1..=k_half {
            let v = (u + j) % n;
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for j in 1..=k_half {
        for u in 0..n {
            if rng.random::<f64>() >= beta {
                continue;
            }
            let v = (u + j) % n;
            if !adj[u].contains(&v) || adj[u].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n);
                if w != u && !adj[u].contains(&w) {
                    break w;
                }
            };
            remove(&mut adj[u], v);
            remove(&mut adj[v], u);
            adj[u].push(w);
            adj[w].push(u);
        }
    }
    Ok(Graph::from_adjacency(&adj).expect("generated ids are in range"))
}

fn remove(row: &mut Vec<usize>, x: usize) {
    if let Some(i) = row.iter().position(|&y| y == x) {
        row.swap_remove(i);
    }
}

/// Binomial tree `B_k` on `2^k` vertices rooted at 0.
///
/// `B_k` is two copies of `B_{k−1}` with roots joined; the parent of `v > 0`
/// is `v` with its lowest set bit cleared.
pub fn binomial_tree(k: u32) -> Result<Graph> {
    if k > 30 {
        return Err(GeneratorError::InvalidParameter("binomial order too large"));
    }
    let n = 1usize << k;
    let edges = (1..n).map(|v| (v & (v - 1), v)).collect();
    Ok(undirected(n, edges))
}
