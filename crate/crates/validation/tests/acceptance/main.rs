//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Criterion numbers given as arguments select a subset:
//! `cargo test --test acceptance -- 5 9`.

mod small;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use graphorder::bench::{spmm_block, start_block};
use graphorder::core::codec::{self, Code};
use graphorder::core::generators::{self, GenKind, GenSpec};
use graphorder::core::spectral::fiedler_vector;
use graphorder::core::{evaluate, mlog_a, mlog_gap_a, Graph, Permutation, SolverConfig};
use graphorder::methods::order;
use graphorder::report::report;
use graphorder::{Method, MethodParams};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const N: usize = 250_000;
const TABLE: [Method; 6] = [
    Method::Rcm,
    Method::Fiedler,
    Method::Slashburn,
    Method::Nd,
    Method::Amd,
    Method::Vifps,
];

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn verdict(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

type Criterion = (u32, &'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        (1, "biclique optimum", biclique_optimum),
        (2, "conv1 band recovery", conv1_band),
        (3, "wheel composition", wheel_composition),
        (4, "path of cliques", path_of_cliques),
        (5, "binomial tree ranking", binomial_ranking),
        (6, "watts-strogatz trend", watts_strogatz_trend),
        (7, "basic inequalities", basic_inequalities),
        (8, "brute-force scorer", brute_force_scorer),
        (9, "contiguous centers", contiguous_centers),
        (10, "codec", codec_round_trip_and_rank),
        (11, "dense spectral oracle", spectral_oracle),
        (12, "spmv permutation equivalence", spmv_equivalence),
        (13, "real graph smoke", real_graph),
    ];
    let wanted: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (id, name, run) in criteria {
        if !wanted.is_empty() && !wanted.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Verdict::Fail(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match v {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Verdict::Skip(d) => ("SKIP", d),
        };
        println!("criterion {id:>2} {tag}: {name}: {detail} [{secs:.1}s]");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn params() -> MethodParams {
    MethodParams::default()
}

/// Scores of each method on `g` shuffled by `seed`; SlashBurn keeps its best
/// hub ratio.
fn table_row(g: &Graph, methods: &[Method], seed: u64) -> Vec<(Method, f64, f64)> {
    report(g, methods, &[seed], &params())
        .expect("orderings run")
        .into_iter()
        .map(|r| (r.method, r.scores.mlog_gap_a, r.scores.delta))
        .collect()
}

fn fmt_row(row: &[(Method, f64, f64)]) -> String {
    row.iter()
        .map(|(m, g, d)| format!("{m} {g:.4}|{d:.3}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn biclique_optimum() -> Verdict {
    let g = generators::biclique(N, 14.0).unwrap();
    let shuffled = g.permute(&Permutation::random(N, 1)).unwrap();
    let start = Instant::now();
    let mut row = Vec::new();
    for m in TABLE {
        let pi = order(&shuffled, m, &params()).unwrap().perm;
        let r = evaluate(&shuffled, &pi).unwrap();
        row.push((m, r.mlog_gap_a, r.delta));
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = row.iter().all(|&(_, g, _)| (g - 1.0).abs() <= 0.01) && secs < 60.0;
    verdict(ok, format!("{} in {secs:.1}s (limit 60s)", fmt_row(&row)))
}

fn conv1_band() -> Verdict {
    let g = generators::conv1(N, 7).unwrap();
    let target = 1.0 + (3f64.log2() - 1.0) / 14.0;
    let mut ok = true;
    let mut parts = Vec::new();
    for seed in [1, 2, 3] {
        let row = table_row(&g, &[Method::Rcm, Method::Vifps], seed);
        ok &= row
            .iter()
            .all(|&(_, gap, d)| (gap - target).abs() <= 0.02 && (d - 1.14).abs() <= 0.05);
        parts.push(format!("seed {seed}: {}", fmt_row(&row)));
    }
    verdict(
        ok,
        format!(
            "target {target:.4}±0.02, delta 1.14±0.05; {}",
            parts.join("; ")
        ),
    )
}

fn wheel_composition() -> Verdict {
    let g = generators::wheel(N, 3, 4).unwrap();
    let bound = 1.0 + ((N - 14) as f64).log2() / 14.0;
    let row = table_row(&g, &[Method::Amd, Method::Vifps, Method::Slashburn], 1);
    let good = row[..2]
        .iter()
        .all(|&(_, gap, _)| gap <= bound && (gap - 2.15).abs() <= 0.15);
    let sb = row[2].1 > 2.9;
    verdict(good && sb, format!("bound {bound:.4}; {}", fmt_row(&row)))
}

fn path_of_cliques() -> Verdict {
    let g = generators::path_of_cliques(N, 14).unwrap();
    let row = table_row(&g, &[Method::Rcm, Method::Vifps], 1);
    let ok = row.iter().all(|&(_, gap, _)| (gap - 1.06).abs() <= 0.06);
    verdict(ok, format!("1.06±0.06; {}", fmt_row(&row)))
}

fn binomial_ranking() -> Verdict {
    let g = generators::binomial_tree(18).unwrap();
    let row = table_row(
        &g,
        &[Method::Vifps, Method::Amd, Method::Nd, Method::Rcm],
        1,
    );
    let s: Vec<f64> = row.iter().map(|r| r.1).collect();
    let ok = s.windows(2).all(|w| w[0] < w[1]) && s[0] <= 1.8 && s[1] <= 2.0;
    verdict(
        ok,
        format!(
            "vifps < amd < nd < rcm, vifps ≤ 1.8, amd ≤ 2.0; {}",
            fmt_row(&row)
        ),
    )
}

fn watts_strogatz_trend() -> Verdict {
    let methods = [Method::Rcm, Method::Amd, Method::Vifps];
    let mut sums = [0.0; 3];
    for seed in [1, 2, 3] {
        let g = generators::watts_strogatz(N, 7, 0.1, seed).unwrap();
        for (s, r) in sums.iter_mut().zip(table_row(&g, &methods, seed)) {
            *s += r.1 / 3.0;
        }
    }
    let ok = sums[2] < sums[0].min(sums[1]);
    verdict(
        ok,
        format!(
            "mean over 3 seeds: rcm {:.4}, amd {:.4}, vifps {:.4}",
            sums[0], sums[1], sums[2]
        ),
    )
}

fn random_spec(r: &mut ChaCha8Rng) -> GenSpec {
    let n = r.random_range(10..=200);
    let (kind, d_avg) = match r.random_range(0..6) {
        0 => (
            GenKind::Conv1 {
                b: r.random_range(1..=(n - 1) / 2),
            },
            0.0,
        ),
        1 => (GenKind::PathOfCliques, r.random_range(2..=n.min(20)) as f64),
        2 => (
            GenKind::Biclique,
            r.random_range(1.0..(n as f64 / 2.0).min(30.0)),
        ),
        3 => {
            let half = (n - 1) / 2;
            let b_global = r.random_range(1..=(half - 1).min(4));
            let b_local = r.random_range(1..=(half - b_global).min(6));
            (GenKind::Wheel { b_local, b_global }, 0.0)
        }
        4 => (
            GenKind::WattsStrogatz {
                k_half: r.random_range(1..=(n - 1) / 2).min(8),
                beta: r.random_range(0.0..=1.0),
            },
            0.0,
        ),
        _ => (
            GenKind::Binomial {
                order: r.random_range(4..=7),
            },
            0.0,
        ),
    };
    GenSpec {
        kind,
        n,
        d_avg,
        seed: r.random(),
    }
}

fn random_graph(r: &mut ChaCha8Rng) -> Graph {
    loop {
        if let Ok(g) = random_spec(r).build() {
            return g;
        }
    }
}

fn basic_inequalities() -> Verdict {
    let mut r = rng(7);
    let (mut low, mut high) = (0, 0);
    let mut worst = f64::INFINITY;
    let mut example = String::new();
    for _ in 0..1000 {
        let spec = random_spec(&mut r);
        let Ok(g) = spec.build() else {
            continue;
        };
        let pi = Permutation::random(g.n(), r.random());
        let gap = mlog_gap_a(&g, &pi).unwrap();
        let a = mlog_a(&g, &pi).unwrap();
        if gap < 1.0 - 1e-12 {
            low += 1;
        }
        if gap > a * (1.0 + 1e-12) {
            high += 1;
            if example.is_empty() {
                example = format!("; first: {:?} gap {gap:.4} > mlogA {a:.4}", spec.kind);
            }
        }
        worst = worst.min(a - gap);
    }
    verdict(
        low == 0 && high == 0,
        format!(
            "1000 pairs: {low} below 1, {high} above mlogA, min(mlogA - gap) {worst:.4}{example}"
        ),
    )
}

/// The scores straight from their definitions.
fn brute(n: usize, edges: &[(usize, usize)], pos: &[usize]) -> (f64, f64) {
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        rows[u].push(v);
        rows[v].push(u);
    }
    let m = 2 * edges.len();
    let (mut dist, mut gap) = (0.0, 0.0);
    for (v, row) in rows.iter().enumerate() {
        let mut p: Vec<usize> = row.iter().map(|&u| pos[u]).collect();
        p.sort();
        for &q in &p {
            dist += ((pos[v] as f64 - q as f64).abs() + 1.0).log2();
        }
        if !p.is_empty() {
            gap += 1.0;
        }
        for w in p.windows(2) {
            gap += ((w[1] - w[0]) as f64 + 1.0).log2();
        }
    }
    (dist / m as f64, gap / m as f64)
}

fn shuffled(n: usize, r: &mut ChaCha8Rng) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        v.swap(i, r.random_range(0..=i));
    }
    v
}

fn brute_force_scorer() -> Verdict {
    let mut r = rng(8);
    let mut checked = 0usize;
    let mut worst = 0.0f64;
    let classes = small::connected_classes(9);
    for graphs in &classes {
        for edges in graphs {
            let n = edges.iter().map(|&(_, v)| v + 1).max().unwrap_or(1);
            let g = Graph::from_undirected_edges(n, edges.iter().copied()).unwrap();
            let mut positions = vec![(0..n).collect::<Vec<_>>()];
            positions.push(shuffled(n, &mut r));
            for pos in positions {
                let (a, gap) = brute(n, edges, &pos);
                let pi = Permutation::from_forward(pos).unwrap();
                worst = worst
                    .max((mlog_a(&g, &pi).unwrap() - a).abs())
                    .max((mlog_gap_a(&g, &pi).unwrap() - gap).abs());
                checked += 1;
            }
        }
    }
    let counts: Vec<usize> = classes.iter().map(Vec::len).collect();
    let expected = small::CONNECTED[..classes.len()].to_vec();
    verdict(
        worst <= 1e-12 && counts == expected,
        format!(
            "every connected graph n 2..=9 up to isomorphism {counts:?}, identity and random order: {checked} cases, max error {worst:.1e}"
        ),
    )
}

fn contiguous_centers() -> Verdict {
    let (n, b) = (N, 7);
    let g = generators::biclique(n, 14.0).unwrap();
    assert_eq!(g.nnz(), 2 * b * (n - b), "complete biclique");
    let mut r = rng(9);
    let mut exact = 0;
    let mut interior_min = f64::INFINITY;
    for _ in 0..100 {
        let offset = r.random_range(0..=n - b);
        let centers = shuffled(b, &mut r);
        let others = shuffled(n - b, &mut r);
        let mut order = Vec::with_capacity(n);
        order.extend(others[..offset].iter().map(|&v| v + b));
        order.extend(centers);
        order.extend(others[offset..].iter().map(|&v| v + b));
        let gap = mlog_gap_a(&g, &Permutation::from_order(order).unwrap()).unwrap();
        if gap == 1.0 {
            exact += 1;
        } else {
            interior_min = interior_min.min(gap);
        }
    }
    let dispersed = mlog_gap_a(&g, &Permutation::random(n, 99)).unwrap();
    let at_end = |first: bool| {
        let mut order: Vec<usize> = (b..n).collect();
        if first {
            order.splice(0..0, 0..b);
        } else {
            order.extend(0..b);
        }
        mlog_gap_a(&g, &Permutation::from_order(order).unwrap()).unwrap()
    };
    verdict(
        exact == 100 && dispersed > 1.5,
        format!(
            "{exact}/100 random contiguous placements score exactly 1 (others ≥ {interior_min:.6}); block first {}, block last {}; dispersed {dispersed:.4}",
            at_end(true),
            at_end(false)
        ),
    )
}

/// Spearman correlation with average ranks for ties.
fn spearman(x: &[f64], y: &[f64]) -> f64 {
    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut out = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            for &k in &idx[i..=j] {
                out[k] = (i + j) as f64 / 2.0;
            }
            i = j + 1;
        }
        out
    }
    let (rx, ry) = (ranks(x), ranks(y));
    let mean = (x.len() - 1) as f64 / 2.0;
    let cov: f64 = rx
        .iter()
        .zip(&ry)
        .map(|(a, b)| (a - mean) * (b - mean))
        .sum();
    let vx: f64 = rx.iter().map(|a| (a - mean).powi(2)).sum();
    let vy: f64 = ry.iter().map(|b| (b - mean).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

fn round_trips(g: &Graph, pi: &Permutation) -> bool {
    let expected = g.permute(pi).unwrap();
    [Code::Gamma, Code::Varint].into_iter().all(|code| {
        let enc = codec::encode_with(g, pi, code).unwrap();
        codec::decode(&enc.bytes).unwrap() == expected
    })
}

fn codec_round_trip_and_rank() -> Verdict {
    let mut trips = 0;
    let mut bad = 0;
    let mut check = |g: &Graph, pi: &Permutation| {
        trips += 1;
        if !round_trips(g, pi) {
            bad += 1;
        }
    };
    let full = [
        generators::conv1(N, 7).unwrap(),
        generators::path_of_cliques(N, 14).unwrap(),
        generators::biclique(N, 14.0).unwrap(),
        generators::wheel(N, 3, 4).unwrap(),
        generators::watts_strogatz(N, 7, 0.1, 1).unwrap(),
        generators::binomial_tree(18).unwrap(),
    ];
    for g in &full {
        check(g, &Permutation::identity(g.n()));
        check(g, &Permutation::random(g.n(), 1));
    }
    let mut r = rng(10);
    for i in 0..1000 {
        let g = match i % 3 {
            0 => random_graph(&mut r),
            _ => {
                let n = r.random_range(0..300);
                let m = if n > 0 { r.random_range(0..4 * n) } else { 0 };
                let edges: Vec<(usize, usize)> = (0..m)
                    .map(|_| (r.random_range(0..n), r.random_range(0..n)))
                    .collect();
                if i % 3 == 1 {
                    Graph::from_edges(n, edges).unwrap()
                } else {
                    Graph::from_undirected_edges(n, edges).unwrap()
                }
            }
        };
        check(&g, &Permutation::random(g.n(), r.random()));
    }

    let g = full[4].permute(&Permutation::random(N, 1)).unwrap();
    let (mut gaps, mut bits) = (Vec::new(), Vec::new());
    let mut parts = Vec::new();
    for m in TABLE {
        let pi = order(&g, m, &params()).unwrap().perm;
        let gap = mlog_gap_a(&g, &pi).unwrap();
        let size = codec::encode(&g, &pi).unwrap().payload_bits as f64;
        parts.push(format!("{m} {gap:.3}/{:.2}", size / g.nnz() as f64));
        gaps.push(gap);
        bits.push(size);
    }
    let rho = spearman(&gaps, &bits);
    verdict(
        bad == 0 && rho >= 0.9,
        format!(
            "{trips} round trips, {bad} mismatches; shuffled ws n={N}: spearman {rho:.3} over mlogGapA/bits per link {}",
            parts.join(", ")
        ),
    )
}

/// λ₂, λ₃ and the λ₂ eigenvector of the dense normalized Laplacian.
fn dense_fiedler(g: &Graph) -> (f64, f64, Vec<f64>) {
    let n = g.n();
    let d: Vec<f64> = (0..n).map(|v| g.degree(v) as f64).collect();
    let mut l = DMatrix::<f64>::identity(n, n);
    for (u, v) in g.entries() {
        l[(u, v)] -= 1.0 / (d[u] * d[v]).sqrt();
    }
    let eig = l.symmetric_eigen();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let next = if n > 2 {
        eig.eigenvalues[idx[2]]
    } else {
        f64::INFINITY
    };
    let vec = eig.eigenvectors.column(idx[1]).iter().copied().collect();
    (eig.eigenvalues[idx[1]], next, vec)
}

fn spectral_oracle() -> Verdict {
    let cfg = SolverConfig {
        tol: 1e-11,
        ..SolverConfig::default()
    };
    let (mut simple, mut degenerate, mut bad) = (0, 0, 0);
    let (mut worst_value, mut worst_cos) = (0.0f64, 0.0f64);
    let mut first_bad = String::new();
    for graphs in small::connected_classes(8).iter().skip(1) {
        for edges in graphs {
            let n = edges.iter().map(|&(_, v)| v + 1).max().unwrap();
            let g = Graph::from_undirected_edges(n, edges.iter().copied()).unwrap();
            let (l2, l3, v) = dense_fiedler(&g);
            let r = fiedler_vector(&g, &cfg).unwrap();
            let value_err = (r.eigenvalue_estimate - l2).abs();
            worst_value = worst_value.max(value_err);
            let mut ok = r.converged && value_err <= 1e-8;
            if l3 - l2 <= 1e-6 * l3.abs() {
                degenerate += 1;
            } else {
                simple += 1;
                let cos: f64 = r.vector.iter().zip(&v).map(|(a, b)| a * b).sum();
                worst_cos = worst_cos.max(1.0 - cos.abs());
                ok &= cos.abs() >= 1.0 - 1e-8;
            }
            if !ok {
                bad += 1;
                if first_bad.is_empty() {
                    first_bad = format!("; first mismatch {edges:?}");
                }
            }
        }
    }
    verdict(
        bad == 0,
        format!(
            "every connected graph n 2..=8 up to isomorphism: {simple} simple, {degenerate} with repeated λ₂; {bad} mismatches, max |Δλ| {worst_value:.1e}, max 1-|cos| {worst_cos:.1e}{first_bad}"
        ),
    )
}

fn spmv_equivalence() -> Verdict {
    // Size of the APS citation graph: 667365 vertices, about 8.85M entries.
    let n = 667_365;
    let g = generators::watts_strogatz(n, 7, 0.1, 12).unwrap();
    let d = 8;
    let x = start_block(n, d, 12);
    let base = spmm_block(&g, &x, d, 1).unwrap();
    let scale = base.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut worst = 0.0f64;
    let mut parts = Vec::new();
    for m in [
        Method::Identity,
        Method::Random,
        Method::Rcm,
        Method::Slashburn,
        Method::Amd,
    ] {
        let pi = order(&g, m, &params()).unwrap().perm;
        let h = g.permute(&pi).unwrap();
        let mut px = vec![0.0; n * d];
        for v in 0..n {
            let p = pi.position(v);
            px[p * d..(p + 1) * d].copy_from_slice(&x[v * d..(v + 1) * d]);
        }
        for threads in [1, 4] {
            let start = Instant::now();
            let y = spmm_block(&h, &px, d, threads).unwrap();
            let secs = start.elapsed().as_secs_f64();
            for v in 0..n {
                let p = pi.position(v);
                for k in 0..d {
                    worst = worst.max((y[p * d + k] - base[v * d + k]).abs() / scale);
                }
            }
            parts.push(format!("{m}/p{threads} {:.1}ms", secs * 1e3));
        }
    }
    verdict(
        worst <= 1e-9,
        format!(
            "n={n} nnz={} d={d}: max relative error {worst:.1e}; one multiply (informational): {}",
            g.nnz(),
            parts.join(", ")
        ),
    )
}

fn real_graph() -> Verdict {
    let Ok(path) = std::env::var("GRAPHORDER_REAL_GRAPH") else {
        return Verdict::Skip(
            "set GRAPHORDER_REAL_GRAPH to a Matrix Market or edge-list file (e.g. powergrid)"
                .into(),
        );
    };
    let file = std::io::BufReader::new(std::fs::File::open(&path).expect("graph file opens"));
    let g = if path.ends_with(".mtx") {
        graphorder::io::load_matrix_market(file)
    } else {
        graphorder::io::load_edge_list(file, true, true)
    }
    .expect("graph file parses");
    let row = table_row(&g, &[Method::Rcm, Method::Amd, Method::Vifps], 1);
    let ok = row[2].1 < row[0].1 && row[2].1 < row[1].1;
    verdict(
        ok,
        format!("{path} n={} nnz={}: {}", g.n(), g.nnz(), fmt_row(&row)),
    )
}
