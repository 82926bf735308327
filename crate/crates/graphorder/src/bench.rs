//! Blocked subspace iteration `X ← A·X` under a vertex ordering.

use std::time::Instant;

use graphorder_core::{Graph, GraphError, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("block has {found} values, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid benchmark setting: {0}")]
    InvalidConfig(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    /// Columns of the iterated block.
    pub d: usize,
    pub threads: usize,
    pub iters: usize,
    pub seed: u64,
    /// Timed repetitions after one warm-up; the median is reported.
    pub reps: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            d: 8,
            threads: 1,
            iters: 10,
            seed: 0,
            reps: 5,
        }
    }
}

impl BenchConfig {
    fn validate(&self) -> Result<(), BenchError> {
        let bad = |msg| Err(BenchError::InvalidConfig(msg));
        match () {
            _ if self.d == 0 => bad("d must be at least 1"),
            _ if self.threads == 0 => bad("threads must be at least 1"),
            _ if self.iters == 0 => bad("iters must be at least 1"),
            _ if self.reps == 0 => bad("reps must be at least 1"),
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    /// Median wall time of the iteration loop.
    pub seconds: f64,
    /// Wall time of every timed repetition.
    pub samples: Vec<f64>,
    /// Rows handled by each thread.
    pub rows_per_thread: Vec<usize>,
    /// `Σ|X|` of the final scaled block.
    pub checksum: f64,
}

/// Splits `0..n` into at most `parts` contiguous row ranges of about equal
/// nonzero count. Returns the range boundaries.
pub fn balanced_rows(g: &Graph, parts: usize) -> Vec<usize> {
    let n = g.n();
    let offsets = g.row_offsets();
    let parts = parts.clamp(1, n.max(1));
    let nnz = g.nnz();
    let mut bounds = vec![0];
    for k in 1..parts {
        let target = (nnz * k).div_ceil(parts);
        let row = offsets.partition_point(|&o| o < target).min(n);
        let row = row.max(*bounds.last().unwrap());
        bounds.push(row);
    }
    bounds.push(n);
    bounds
}

fn multiply_rows(g: &Graph, x: &[f64], d: usize, first: usize, out: &mut [f64]) {
    for (k, y) in out.chunks_exact_mut(d).enumerate() {
        y.fill(0.0);
        for &j in g.neighbors(first + k) {
            for (yi, xi) in y.iter_mut().zip(&x[j * d..(j + 1) * d]) {
                *yi += xi;
            }
        }
    }
}

/// `Y = A·X` for a row-major `n × d` block, row-parallel over `threads`
/// nnz-balanced row blocks.
pub fn spmm_block(g: &Graph, x: &[f64], d: usize, threads: usize) -> Result<Vec<f64>, BenchError> {
    let mut y = vec![0.0; g.n() * d];
    spmm_into(g, x, d, &balanced_rows(g, threads), &mut y)?;
    Ok(y)
}

fn spmm_into(
    g: &Graph,
    x: &[f64],
    d: usize,
    bounds: &[usize],
    y: &mut [f64],
) -> Result<(), BenchError> {
    let expected = g.n() * d;
    if d == 0 {
        return Err(BenchError::InvalidConfig("d must be at least 1"));
    }
    if x.len() != expected {
        return Err(BenchError::DimensionMismatch {
            expected,
            found: x.len(),
        });
    }
    if bounds.len() <= 2 {
        multiply_rows(g, x, d, 0, y);
        return Ok(());
    }
    std::thread::scope(|s| {
        let mut rest = &mut y[..];
        for w in bounds.windows(2) {
            let (mine, tail) = rest.split_at_mut((w[1] - w[0]) * d);
            rest = tail;
            s.spawn(move || multiply_rows(g, x, d, w[0], mine));
        }
    });
    Ok(())
}

/// Scales every column by the inverse of its largest magnitude.
fn normalize_columns(x: &mut [f64], d: usize) {
    let mut top = vec![0.0f64; d];
    for row in x.chunks_exact(d) {
        for (t, v) in top.iter_mut().zip(row) {
            *t = t.max(v.abs());
        }
    }
    let inv: Vec<f64> = top
        .iter()
        .map(|&t| if t > 0.0 { 1.0 / t } else { 1.0 })
        .collect();
    for row in x.chunks_exact_mut(d) {
        for (v, s) in row.iter_mut().zip(&inv) {
            *v *= s;
        }
    }
}

/// The seeded start block in original vertex order.
pub fn start_block(n: usize, d: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n * d).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Runs `cfg.iters` scaled multiplications on `g` relabeled by `pi`. The start
/// block is drawn in the original labels and moved along, so the checksum does
/// not depend on the ordering.
pub fn subspace_iterate(
    g: &Graph,
    pi: &Permutation,
    cfg: &BenchConfig,
) -> Result<BenchResult, BenchError> {
    cfg.validate()?;
    let h = g.permute(pi)?;
    let (n, d) = (g.n(), cfg.d);
    let original = start_block(n, d, cfg.seed);
    let mut x0 = vec![0.0; n * d];
    for v in 0..n {
        let p = pi.position(v);
        x0[p * d..(p + 1) * d].copy_from_slice(&original[v * d..(v + 1) * d]);
    }
    let bounds = balanced_rows(&h, cfg.threads);
    let mut samples = Vec::with_capacity(cfg.reps);
    let mut x = x0.clone();
    let mut y = vec![0.0; n * d];
    for rep in 0..=cfg.reps {
        x.copy_from_slice(&x0);
        let start = Instant::now();
        for _ in 0..cfg.iters {
            spmm_into(&h, &x, d, &bounds, &mut y)?;
            normalize_columns(&mut y, d);
            std::mem::swap(&mut x, &mut y);
        }
        let t = start.elapsed().as_secs_f64();
        if rep > 0 {
            samples.push(t);
        }
    }
    let mut sorted = samples.clone();
    sorted.sort_by(f64::total_cmp);
    Ok(BenchResult {
        seconds: sorted[sorted.len() / 2].max(f64::MIN_POSITIVE),
        samples,
        rows_per_thread: bounds.windows(2).map(|w| w[1] - w[0]).collect(),
        checksum: x.iter().map(|v| v.abs()).sum(),
    })
}
