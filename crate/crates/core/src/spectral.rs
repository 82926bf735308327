//! Fiedler vectors of the normalized Laplacian `L = I − D^{−1/2} A D^{−1/2}`.
//!
//! The second-smallest eigenpair is found with a block-2 LOBPCG iteration in an
//! explicitly orthonormalized basis, deflated against the null vector `d^{1/2}`.
//! `L` is applied matrix-free. The second block column tracks `λ₃` so that
//! multiplicities can be detected.
//!
//! The first start vector is `D^{1/2}` times the BFS level of each vertex from a
//! pseudo-peripheral vertex, which is already smooth along the graph; the
//! second is drawn from a seeded generator.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::SpectralError;
use crate::graph::{Graph, Permutation};
use crate::traversal::{pseudo_peripheral, Bfs};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Relative residual tolerance `‖Lv − λv‖ ≤ tol·‖v‖`.
    pub tol: f64,
    /// Budget of operator applications.
    pub max_iters: usize,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-6,
            max_iters: 5000,
            seed: 0,
        }
    }
}

impl SolverConfig {
    /// Budget used per cut by the recursive orderings. A median cut only needs
    /// the ranking of the vertices, which settles long before the residual.
    pub fn for_recursion() -> Self {
        SolverConfig {
            max_iters: 300,
            ..SolverConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiedlerResult {
    /// Unit eigenvector estimate of `L`, orthogonal to `d^{1/2}`, with the
    /// sign chosen so that vertex 0 is non-positive.
    pub vector: Vec<f64>,
    pub eigenvalue_estimate: f64,
    /// Ritz estimate of the third-smallest eigenvalue (an upper bound);
    /// `NaN` when the graph has only two vertices.
    pub next_eigenvalue_estimate: f64,
    pub residual_norm: f64,
    /// Operator applications spent.
    pub iterations_used: usize,
    pub converged: bool,
    /// Both block vectors converged to equal Ritz values: the vector is not
    /// unique, and the member of the cluster nearest the smooth start vector is
    /// returned.
    pub degenerate: bool,
}

impl FiedlerResult {
    /// `D^{−1/2} v`, the per-vertex values used to order and cut.
    pub fn vertex_values(&self, g: &Graph) -> Vec<f64> {
        self.vector
            .iter()
            .enumerate()
            .map(|(v, x)| x / libm::sqrt(g.degree(v) as f64))
            .collect()
    }
}

/// Relative eigenvalue separation below which `λ₂` and `λ₃` count as equal.
const MULTIPLICITY_RTOL: f64 = 1e-6;
/// Tracked images drift from `L·x`; recompute them this often.
const REFRESH_EVERY: usize = 32;

fn validate(g: &Graph) -> Result<(), SpectralError> {
    if g.n() < 2 {
        return Err(SpectralError::TooSmall);
    }
    if !g.is_symmetric() {
        return Err(SpectralError::NotSymmetric);
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(SpectralError::IsolatedVertex(v));
    }
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    Ok(())
}

struct Laplacian<'a> {
    g: &'a Graph,
    inv_sqrt_deg: Vec<f64>,
    scratch: Vec<f64>,
    applications: usize,
}

impl<'a> Laplacian<'a> {
    fn new(g: &'a Graph) -> Self {
        Laplacian {
            g,
            inv_sqrt_deg: (0..g.n())
                .map(|v| 1.0 / libm::sqrt(g.degree(v) as f64))
                .collect(),
            scratch: vec![0.0; g.n()],
            applications: 0,
        }
    }

    fn apply(&mut self, x: &[f64]) -> Vec<f64> {
        self.applications += 1;
        for ((s, &xi), &w) in self.scratch.iter_mut().zip(x).zip(&self.inv_sqrt_deg) {
            *s = xi * w;
        }
        (0..self.g.n())
            .map(|i| {
                let acc: f64 = self.g.neighbors(i).iter().map(|&j| self.scratch[j]).sum();
                x[i] - self.inv_sqrt_deg[i] * acc
            })
            .collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0f64; 4];
    let (ca, cb) = (a.chunks_exact(4), b.chunks_exact(4));
    let tail: f64 = ca
        .remainder()
        .iter()
        .zip(cb.remainder())
        .map(|(x, y)| x * y)
        .sum();
    for (x, y) in ca.zip(cb) {
        for k in 0..4 {
            acc[k] += x[k] * y[k];
        }
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

fn scale(alpha: f64, x: &mut [f64]) {
    for xi in x.iter_mut() {
        *xi *= alpha;
    }
}

/// A basis vector with its image under `L`.
#[derive(Clone)]
struct Pair {
    v: Vec<f64>,
    lv: Vec<f64>,
}

/// Gram-Schmidt of `candidates` against `null` and `basis`, appending the
/// survivors to `basis`. A second pass runs when the first removes most of a
/// candidate. Images follow the same combinations (`L·null = 0`), except after
/// heavy cancellation, where the drift they carry would be amplified and the
/// image is recomputed instead.
fn extend_orthonormal(
    op: &mut Laplacian<'_>,
    basis: &mut Vec<Pair>,
    candidates: Vec<Pair>,
    null: &[f64],
) {
    for mut c in candidates {
        let start = libm::sqrt(dot(&c.v, &c.v));
        if start.is_nan() || start <= 0.0 {
            continue;
        }
        let mut before = start;
        let mut norm = 0.0;
        for _ in 0..2 {
            let a = dot(null, &c.v);
            axpy(-a, null, &mut c.v);
            for q in basis.iter() {
                let a = dot(&q.v, &c.v);
                axpy(-a, &q.v, &mut c.v);
                axpy(-a, &q.lv, &mut c.lv);
            }
            norm = libm::sqrt(dot(&c.v, &c.v));
            if norm > 0.5 * before {
                break;
            }
            before = norm;
        }
        if norm <= 1e-8 * start || norm < 1e-300 {
            continue;
        }
        scale(1.0 / norm, &mut c.v);
        if norm < 1e-2 * start {
            c.lv = op.apply(&c.v);
        } else {
            scale(1.0 / norm, &mut c.lv);
        }
        basis.push(c);
    }
}

/// Ritz pairs of `basis`, ascending.
fn rayleigh_ritz(basis: &[Pair]) -> (Vec<f64>, DMatrix<f64>) {
    let k = basis.len();
    let mut h = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let x = dot(&basis[i].v, &basis[j].lv);
            h[(i, j)] = x;
            h[(j, i)] = x;
        }
    }
    let eig = h.symmetric_eigen();
    let mut idx: Vec<usize> = (0..k).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(k, k, |r, c| eig.eigenvectors[(r, idx[c])]);
    (values, vectors)
}

fn combine(basis: &[Pair], coeffs: impl Iterator<Item = (usize, f64)>, n: usize) -> Pair {
    let mut out = Pair {
        v: vec![0.0; n],
        lv: vec![0.0; n],
    };
    for (i, c) in coeffs {
        axpy(c, &basis[i].v, &mut out.v);
        axpy(c, &basis[i].lv, &mut out.lv);
    }
    out
}

fn start_vectors(g: &Graph, cfg: &SolverConfig) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut bfs = Bfs::new(n);
    let start = (0..n).min_by_key(|&v| (g.degree(v), v)).unwrap();
    pseudo_peripheral(g, &mut bfs, start);
    let smooth = (0..n)
        .map(|v| libm::sqrt(g.degree(v) as f64) * bfs.dist[v] as f64)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let random = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    vec![smooth, random]
}

/// Fiedler vector of a connected symmetric graph without isolated vertices.
///
/// The solve stops once both block vectors meet the tolerance; equal Ritz
/// values then mark the result degenerate. When the budget runs out first,
/// `converged` reports whether the Fiedler estimate alone meets the
/// tolerance. Non-convergence is not an error: the best vector is returned.
pub fn fiedler_vector(g: &Graph, cfg: &SolverConfig) -> Result<FiedlerResult, SpectralError> {
    validate(g)?;
    let n = g.n();
    let mut op = Laplacian::new(g);
    let total: f64 = (0..n).map(|v| g.degree(v) as f64).sum();
    let null: Vec<f64> = (0..n)
        .map(|v| libm::sqrt(g.degree(v) as f64 / total))
        .collect();
    let block = (n - 1).min(2);

    let mut x: Vec<Pair> = Vec::new();
    let starts = start_vectors(g, cfg);
    let smooth = starts[0].clone();
    let starts: Vec<Pair> = starts
        .into_iter()
        .map(|v| {
            let lv = op.apply(&v);
            Pair { v, lv }
        })
        .collect();
    extend_orthonormal(&mut op, &mut x, starts, &null);
    if x.len() < block {
        // Both start vectors collapsed (only possible for tiny graphs); fall
        // back to coordinate vectors.
        let extra = (0..n)
            .map(|i| {
                let mut v = vec![0.0; n];
                v[i] = 1.0;
                let lv = op.apply(&v);
                Pair { v, lv }
            })
            .collect();
        extend_orthonormal(&mut op, &mut x, extra, &null);
    }
    x.truncate(block);
    let (mut theta, c) = rayleigh_ritz(&x);
    x = (0..block)
        .map(|j| combine(&x, (0..x.len()).map(|i| (i, c[(i, j)])), n))
        .collect();
    let mut p: Vec<Pair> = Vec::new();

    let mut iteration = 0usize;
    let converged;
    let mut degenerate = false;
    let mut fresh = false;
    loop {
        iteration += 1;
        if iteration.is_multiple_of(REFRESH_EVERY) {
            refresh(&mut op, &mut x, &mut theta, &null);
            fresh = true;
        }
        let residuals: Vec<Vec<f64>> = x
            .iter()
            .zip(&theta)
            .map(|(xi, &t)| {
                let mut r = xi.lv.clone();
                axpy(-t, &xi.v, &mut r);
                r
            })
            .collect();
        let norms: Vec<f64> = residuals.iter().map(|r| libm::sqrt(dot(r, r))).collect();

        if norms[0] <= cfg.tol && !fresh {
            // Confirm against exact images before stopping.
            refresh(&mut op, &mut x, &mut theta, &null);
            fresh = true;
            continue;
        }
        if norms[0] <= cfg.tol {
            if block < 2 {
                converged = true;
                break;
            }
            if norms[1] <= cfg.tol {
                converged = true;
                degenerate = theta[1] - theta[0] <= MULTIPLICITY_RTOL * theta[1].abs() + 1e-14;
                break;
            }
        }
        if op.applications + block > cfg.max_iters {
            converged = norms[0] <= cfg.tol;
            break;
        }

        let w: Vec<Pair> = residuals
            .into_iter()
            .zip(&norms)
            // Converged columns are locked: their residuals are noise.
            .filter(|(_, &nr)| nr > cfg.tol)
            .map(|(r, _)| {
                let lv = op.apply(&r);
                Pair { v: r, lv }
            })
            .collect();
        let mut basis = core::mem::take(&mut x);
        let x_dim = basis.len();
        extend_orthonormal(&mut op, &mut basis, w, &null);
        extend_orthonormal(&mut op, &mut basis, core::mem::take(&mut p), &null);
        let (values, c) = rayleigh_ritz(&basis);
        let k = basis.len();
        if k <= x_dim {
            // Nothing new to search: the block is invariant.
            x = (0..k)
                .map(|j| combine(&basis, (0..k).map(|i| (i, c[(i, j)])), n))
                .collect();
            theta = values;
            converged = true;
            degenerate =
                block == 2 && theta[1] - theta[0] <= MULTIPLICITY_RTOL * theta[1].abs() + 1e-14;
            break;
        }
        theta = values[..block].to_vec();
        x = (0..block)
            .map(|j| combine(&basis, (0..k).map(|i| (i, c[(i, j)])), n))
            .collect();
        p = (0..block)
            .map(|j| combine(&basis, (x_dim..k).map(|i| (i, c[(i, j)])), n))
            .collect();
        fresh = false;
    }

    let mut vector = if degenerate {
        // Any vector of the cluster will do; take the one nearest the smooth
        // start, which is free of the random start's noise.
        let mut v = vec![0.0; n];
        for xi in &x {
            axpy(dot(&xi.v, &smooth), &xi.v, &mut v);
        }
        if dot(&v, &v) > 0.0 {
            v
        } else {
            core::mem::take(&mut x[0].v)
        }
    } else {
        core::mem::take(&mut x[0].v)
    };
    let lv = op.apply(&vector);
    let norm = libm::sqrt(dot(&vector, &vector));
    scale(1.0 / norm, &mut vector);
    let lambda = dot(&vector, &lv) / norm;
    let mut r = lv;
    scale(1.0 / norm, &mut r);
    axpy(-lambda, &vector, &mut r);
    if vector[0] > 0.0 {
        scale(-1.0, &mut vector);
    }
    Ok(FiedlerResult {
        vector,
        eigenvalue_estimate: lambda,
        next_eigenvalue_estimate: theta.get(1).copied().unwrap_or(f64::NAN),
        residual_norm: libm::sqrt(dot(&r, &r)),
        iterations_used: op.applications,
        converged,
        degenerate,
    })
}

/// Re-orthonormalizes the block and recomputes its images and Ritz values.
fn refresh(op: &mut Laplacian<'_>, x: &mut Vec<Pair>, theta: &mut [f64], null: &[f64]) {
    let block = core::mem::take(x);
    extend_orthonormal(op, x, block, null);
    for (xi, t) in x.iter_mut().zip(theta.iter_mut()) {
        xi.lv = op.apply(&xi.v);
        *t = dot(&xi.v, &xi.lv);
    }
}

/// Vertices sorted by Fiedler value (ties by id); a vertex sequence.
fn sorted_vertices(g: &Graph, result: &FiedlerResult) -> Vec<usize> {
    let values = result.vertex_values(g);
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    order
}

/// The `fcut1` ordering: vertices by ascending Fiedler value.
pub fn fiedler_order(g: &Graph, cfg: &SolverConfig) -> Result<Permutation, SpectralError> {
    let result = fiedler_vector(g, cfg)?;
    Ok(Permutation::from_order(sorted_vertices(g, &result)).expect("sorted ids form a bijection"))
}

/// Median Fiedler cut: the `⌊n/2⌋` lowest vertices and the rest, each listed
/// in ascending Fiedler order.
pub fn fiedler_cut(
    g: &Graph,
    cfg: &SolverConfig,
) -> Result<(Vec<usize>, Vec<usize>), SpectralError> {
    let result = fiedler_vector(g, cfg)?;
    if result.degenerate {
        return Err(SpectralError::Degenerate);
    }
    let mut order = sorted_vertices(g, &result);
    let high = order.split_off(g.n() / 2);
    Ok((order, high))
}
