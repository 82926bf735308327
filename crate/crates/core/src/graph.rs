//! Compressed-sparse-row graphs, permutations and structural utilities.
//!
//! Vertex ids are 0-based. Every row of a [`Graph`] is strictly increasing and
//! free of self-loops, so each stored entry is a distinct neighbor.

use alloc::borrow::Cow;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;

const UNSET: usize = usize::MAX;

/// Immutable sparse adjacency structure in CSR layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    symmetric: bool,
}

impl Graph {
    /// A graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
            symmetric: true,
        }
    }

    /// Builds a graph from directed entries `(u, v)`.
    ///
    /// Self-loops are dropped and parallel entries collapse into one. The
    /// symmetry flag is computed from the resulting pattern.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u != v {
                pairs.push((u, v));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(Self::from_sorted_pairs(n, &pairs))
    }

    /// Builds a graph from undirected edges, storing both directions.
    pub fn from_undirected_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut both = Vec::new();
        for (u, v) in edges {
            both.push((u, v));
            both.push((v, u));
        }
        Self::from_edges(n, both)
    }

    /// Builds a graph from one neighbor list per vertex.
    pub fn from_adjacency(rows: &[Vec<usize>]) -> Result<Self, GraphError> {
        let n = rows.len();
        Self::from_edges(
            n,
            rows.iter()
                .enumerate()
                .flat_map(|(u, row)| row.iter().map(move |&v| (u, v))),
        )
    }

    fn from_sorted_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in pairs {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.iter().map(|&(_, v)| v).collect();
        let mut g = Graph {
            offsets,
            targets,
            symmetric: false,
        };
        g.symmetric = g.check_symmetry();
        g
    }

    /// Builds a graph from rows that the caller guarantees are sorted,
    /// deduplicated and loop-free.
    pub(crate) fn from_sorted_rows(offsets: Vec<usize>, targets: Vec<usize>) -> Self {
        debug_assert_eq!(*offsets.last().unwrap_or(&0), targets.len());
        let mut g = Graph {
            offsets,
            targets,
            symmetric: false,
        };
        debug_assert!(g.rows_are_canonical());
        g.symmetric = g.check_symmetry();
        g
    }

    fn rows_are_canonical(&self) -> bool {
        (0..self.n()).all(|v| {
            let row = self.neighbors(v);
            row.windows(2).all(|w| w[0] < w[1]) && row.iter().all(|&u| u != v && u < self.n())
        })
    }

    fn check_symmetry(&self) -> bool {
        // Row u lists v exactly when row v lists u; walking rows in order, the
        // transposed entries of each row arrive in increasing order too.
        let n = self.n();
        let mut cursor: Vec<usize> = self.offsets[..n].to_vec();
        for u in 0..n {
            for &v in self.neighbors(u) {
                let c = cursor[v];
                if c >= self.offsets[v + 1] || self.targets[c] != u {
                    return false;
                }
                cursor[v] = c + 1;
            }
        }
        (0..n).all(|v| cursor[v] == self.offsets[v + 1])
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of stored entries (`2|E|` for undirected graphs).
    pub fn nnz(&self) -> usize {
        self.targets.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.targets
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Average degree `nnz / n`.
    pub fn d_avg(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            self.nnz() as f64 / self.n() as f64
        }
    }

    /// All stored entries `(u, v)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| self.neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// Largest `|u - v|` over stored entries.
    pub fn bandwidth(&self) -> usize {
        self.entries()
            .map(|(u, v)| u.abs_diff(v))
            .max()
            .unwrap_or(0)
    }

    pub fn transpose(&self) -> Graph {
        if self.symmetric {
            return self.clone();
        }
        let n = self.n();
        let mut offsets = vec![0usize; n + 1];
        for &v in &self.targets {
            offsets[v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0usize; self.nnz()];
        for (u, v) in self.entries() {
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        Graph::from_sorted_rows(offsets, targets)
    }

    /// The pattern of `A + Aᵀ`.
    pub fn symmetrize(&self) -> Graph {
        if self.symmetric {
            return self.clone();
        }
        let t = self.transpose();
        let n = self.n();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(self.nnz() * 2);
        offsets.push(0);
        for v in 0..n {
            merge_sorted(self.neighbors(v), t.neighbors(v), &mut targets);
            offsets.push(targets.len());
        }
        Graph::from_sorted_rows(offsets, targets)
    }

    /// Borrowed view when already symmetric, otherwise the symmetrized pattern.
    pub fn undirected(&self) -> Cow<'_, Graph> {
        if self.symmetric {
            Cow::Borrowed(self)
        } else {
            Cow::Owned(self.symmetrize())
        }
    }

    /// The symmetric `2n`-vertex graph of `[0, A; Aᵀ, 0]`.
    ///
    /// Vertex `i < n` stands for row `i`, vertex `n + j` for column `j`.
    pub fn bipartite_embed(&self) -> Graph {
        let n = self.n();
        let t = self.transpose();
        let mut offsets = Vec::with_capacity(2 * n + 1);
        let mut targets = Vec::with_capacity(2 * self.nnz());
        offsets.push(0);
        for i in 0..n {
            targets.extend(self.neighbors(i).iter().map(|&j| n + j));
            offsets.push(targets.len());
        }
        for j in 0..n {
            targets.extend_from_slice(t.neighbors(j));
            offsets.push(targets.len());
        }
        Graph::from_sorted_rows(offsets, targets)
    }

    /// Connected components of the undirected view.
    pub fn connected_components(&self) -> ComponentLabeling {
        let g = self.undirected();
        let n = g.n();
        let mut raw = vec![UNSET; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if raw[s] != UNSET {
                continue;
            }
            let id = members.len();
            raw[s] = id;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in g.neighbors(u) {
                    if raw[v] == UNSET {
                        raw[v] = id;
                        queue.push_back(v);
                    }
                }
            }
            members.push(comp);
        }
        // Largest first; equal sizes keep discovery order, i.e. by smallest member.
        let mut rank: Vec<usize> = (0..members.len()).collect();
        rank.sort_by(|&a, &b| members[b].len().cmp(&members[a].len()).then(a.cmp(&b)));
        let mut relabel = vec![0usize; members.len()];
        for (new, &old) in rank.iter().enumerate() {
            relabel[old] = new;
        }
        let labels = raw.iter().map(|&l| relabel[l]).collect();
        let sizes = rank.iter().map(|&c| members[c].len()).collect();
        ComponentLabeling { labels, sizes }
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().count() == 1
    }

    /// The subgraph induced by `subset`.
    ///
    /// Local vertex `i` is `subset[i]`, so the caller's order fixes the
    /// relabeling; the returned map is `subset` itself.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        let n = self.n();
        let mut local = vec![UNSET; n];
        for (i, &v) in subset.iter().enumerate() {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if local[v] != UNSET {
                return Err(GraphError::DuplicateVertex(v));
            }
            local[v] = i;
        }
        Ok((self.induced_with_map(subset, &local), subset.to_vec()))
    }

    /// `local[v]` must be the position of `v` in `subset`, or `UNSET`.
    fn induced_with_map(&self, subset: &[usize], local: &[usize]) -> Graph {
        let mut offsets = Vec::with_capacity(subset.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for &v in subset {
            let start = targets.len();
            targets.extend(
                self.neighbors(v)
                    .iter()
                    .map(|&u| local[u])
                    .filter(|&l| l != UNSET),
            );
            targets[start..].sort_unstable();
            offsets.push(targets.len());
        }
        let mut g = Graph {
            offsets,
            targets,
            symmetric: self.symmetric,
        };
        if !self.symmetric {
            g.symmetric = g.check_symmetry();
        }
        g
    }

    /// Splits the graph into several induced subgraphs at once, reusing one
    /// lookup table. Each part keeps the order in which its vertices are given.
    pub(crate) fn induced_parts(&self, parts: &[&[usize]]) -> Vec<Graph> {
        let mut local = vec![UNSET; self.n()];
        let mut out = Vec::with_capacity(parts.len());
        for part in parts {
            for (i, &v) in part.iter().enumerate() {
                local[v] = i;
            }
            out.push(self.induced_with_map(part, &local));
            for &v in part.iter() {
                local[v] = UNSET;
            }
        }
        out
    }

    /// The graph of `A(π, π)`: entry `(u, v)` moves to `(π(u), π(v))`.
    pub fn permute(&self, perm: &Permutation) -> Result<Graph, GraphError> {
        let n = self.n();
        if perm.len() != n {
            return Err(GraphError::SizeMismatch {
                expected: n,
                found: perm.len(),
            });
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(self.nnz());
        offsets.push(0);
        for &old in perm.order() {
            let start = targets.len();
            targets.extend(self.neighbors(old).iter().map(|&u| perm.position(u)));
            targets[start..].sort_unstable();
            offsets.push(targets.len());
        }
        Ok(Graph {
            offsets,
            targets,
            symmetric: self.symmetric,
        })
    }
}

fn merge_sorted(a: &[usize], b: &[usize], out: &mut Vec<usize>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// A bijection from old vertex ids to new positions, with its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    forward: Vec<usize>,
    inverse: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        let forward: Vec<usize> = (0..n).collect();
        Permutation {
            inverse: forward.clone(),
            forward,
        }
    }

    /// From `forward[v]` = new position of vertex `v`.
    pub fn from_forward(forward: Vec<usize>) -> Result<Self, GraphError> {
        let inverse = invert(&forward)?;
        Ok(Permutation { forward, inverse })
    }

    /// From a vertex sequence: `order[p]` is the vertex placed at position `p`.
    pub fn from_order(order: Vec<usize>) -> Result<Self, GraphError> {
        let forward = invert(&order)?;
        Ok(Permutation {
            forward,
            inverse: order,
        })
    }

    /// Uniform pseudo-random permutation, reproducible per seed.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut order: Vec<usize> = (0..n).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);
        Self::from_order(order).expect("a shuffle is a bijection")
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// New position of vertex `v`.
    #[inline]
    pub fn position(&self, v: usize) -> usize {
        self.forward[v]
    }

    /// Old vertex at position `p`.
    #[inline]
    pub fn vertex_at(&self, p: usize) -> usize {
        self.inverse[p]
    }

    pub fn forward(&self) -> &[usize] {
        &self.forward
    }

    /// Vertices listed by new position.
    pub fn order(&self) -> &[usize] {
        &self.inverse
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }

    /// The ordering read back to front.
    pub fn reverse(&self) -> Permutation {
        let mut order = self.inverse.clone();
        order.reverse();
        Self::from_order(order).expect("reversal preserves bijectivity")
    }

    /// `self` applied after `first`: `v ↦ self(first(v))`.
    pub fn compose(&self, first: &Permutation) -> Result<Permutation, GraphError> {
        if self.len() != first.len() {
            return Err(GraphError::SizeMismatch {
                expected: first.len(),
                found: self.len(),
            });
        }
        let forward = first.forward.iter().map(|&p| self.forward[p]).collect();
        Self::from_forward(forward)
    }
}

fn invert(map: &[usize]) -> Result<Vec<usize>, GraphError> {
    let n = map.len();
    let mut inv = vec![UNSET; n];
    for (i, &p) in map.iter().enumerate() {
        if p >= n || inv[p] != UNSET {
            return Err(GraphError::NotBijection(p));
        }
        inv[p] = i;
    }
    Ok(inv)
}

/// Undirected connected components, labelled largest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub labels: Vec<usize>,
    /// Sizes indexed by label, non-increasing.
    pub sizes: Vec<usize>,
}

impl ComponentLabeling {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Vertex lists per label, each ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (v, &l) in self.labels.iter().enumerate() {
            out[l].push(v);
        }
        out
    }
}
