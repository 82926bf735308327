//! Table-style comparison of orderings on shuffled copies of one graph.

use std::io::{self, Write};
use std::time::Instant;

use graphorder_core::orderings::SlashburnParams;
use graphorder_core::{evaluate, AalReport, Graph, Permutation, SpectralError};

use crate::methods::{order, Method, MethodParams};

/// Hub ratios tried for SlashBurn; the best score is reported.
pub const HUB_RATIOS: [f64; 5] = [0.001, 0.005, 0.01, 0.02, 0.05];

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub seed: u64,
    pub method: Method,
    /// The hub ratio behind a SlashBurn row.
    pub hub_ratio: Option<f64>,
    pub scores: AalReport,
    pub converged: bool,
    pub seconds: f64,
}

/// Shuffles `g` once per seed and scores every method on the shuffled copy.
pub fn report(
    g: &Graph,
    methods: &[Method],
    seeds: &[u64],
    params: &MethodParams,
) -> Result<Vec<ReportRow>, SpectralError> {
    let mut rows = Vec::new();
    for &seed in seeds {
        let shuffled = g
            .permute(&Permutation::random(g.n(), seed))
            .expect("shuffle matches the graph size");
        for &method in methods {
            rows.push(run(&shuffled, method, seed, params)?);
        }
    }
    Ok(rows)
}

fn run(
    g: &Graph,
    method: Method,
    seed: u64,
    params: &MethodParams,
) -> Result<ReportRow, SpectralError> {
    let score = |perm: &Permutation| evaluate(g, perm).expect("ordering matches the graph size");
    let start = Instant::now();
    if method == Method::Slashburn {
        let mut best: Option<(f64, AalReport)> = None;
        for ratio in HUB_RATIOS {
            let p = MethodParams {
                slashburn: SlashburnParams {
                    hub_ratio: ratio,
                    ..params.slashburn
                },
                ..*params
            };
            let scores = score(&order(g, method, &p)?.perm);
            if best
                .as_ref()
                .is_none_or(|(_, b)| scores.mlog_gap_a < b.mlog_gap_a)
            {
                best = Some((ratio, scores));
            }
        }
        let (ratio, scores) = best.expect("at least one ratio is tried");
        return Ok(ReportRow {
            seed,
            method,
            hub_ratio: Some(ratio),
            scores,
            converged: true,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
    let ordered = order(g, method, params)?;
    let seconds = start.elapsed().as_secs_f64();
    Ok(ReportRow {
        seed,
        method,
        hub_ratio: None,
        scores: score(&ordered.perm),
        converged: ordered.converged,
        seconds,
    })
}

/// Writes the rows as CSV. Wall times make the output run-dependent, so they
/// are only written when asked for.
pub fn write_csv<W: Write>(rows: &[ReportRow], timings: bool, w: W) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec![
        "seed",
        "method",
        "param",
        "mlog_gap_a",
        "delta",
        "mlog_a",
        "n",
        "m",
        "lower",
        "conv1_ref",
        "wheel_ref",
        "upper_gap",
        "warning_threshold",
        "warning",
        "converged",
    ];
    if timings {
        header.push("seconds");
    }
    out.write_record(&header)?;
    for r in rows {
        let s = &r.scores;
        let f = |x: f64| format!("{x:.6}");
        let bound = |get: fn(&graphorder_core::ReferenceBounds) -> f64| {
            s.bounds.as_ref().map(get).map(f).unwrap_or_default()
        };
        let mut rec = vec![
            r.seed.to_string(),
            r.method.to_string(),
            r.hub_ratio
                .map(|h| format!("hub_ratio={h}"))
                .unwrap_or_default(),
            f(s.mlog_gap_a),
            f(s.delta),
            f(s.mlog_a),
            s.n.to_string(),
            s.m.to_string(),
            bound(|b| b.lower),
            bound(|b| b.conv1_ref),
            bound(|b| b.wheel_ref),
            bound(|b| b.upper_gap),
            bound(|b| b.warning_threshold),
            s.warning.to_string(),
            r.converged.to_string(),
        ];
        if timings {
            rec.push(format!("{:.6}", r.seconds));
        }
        out.write_record(&rec)?;
    }
    out.flush()
}
