use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use graphorder::bench::{subspace_iterate, BenchConfig};
use graphorder::core::codec::{self, Code};
use graphorder::core::generators::{GenKind, GenSpec};
use graphorder::core::orderings::{NdParams, SlashburnParams};
use graphorder::core::{
    evaluate, Graph, MinorityPlacement, ParetoParams, Permutation, SolverConfig,
};
use graphorder::io::{self as gio, FormatError};
use graphorder::report::{report, write_csv};
use graphorder::{Method, MethodParams};
use serde_json::json;

/// Vertex orderings for adjacency locality: generate, order, score, encode
/// and benchmark sparse graphs.
#[derive(Debug, Parser)]
#[command(name = "graphorder", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a synthetic graph as Matrix Market.
    Generate(GenerateArgs),
    /// Compute an ordering and write it as a permutation file.
    Order(OrderArgs),
    /// Score an ordering; prints JSON.
    Score(ScoreArgs),
    /// Gap-encode a graph under an ordering.
    Encode(EncodeArgs),
    /// Decode a gap-encoded stream into Matrix Market.
    Decode(DecodeArgs),
    /// Benchmarks.
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Compare orderings on shuffled copies of a graph; prints CSV.
    Report(ReportArgs),
}

#[derive(Debug, Subcommand)]
enum BenchCommand {
    /// Blocked subspace iteration X ← A·X under each ordering; prints CSV.
    Spmv(SpmvArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Conv1,
    Pok,
    Biclique,
    Wheel,
    Ws,
    Binomial,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Vertex count (ignored by binomial).
    #[arg(long, default_value_t = 250_000)]
    n: usize,
    /// Average degree; sets the clique size of pok and the centers of biclique.
    #[arg(long, default_value_t = 14.0)]
    davg: f64,
    /// Semi-bandwidth of conv1.
    #[arg(long, default_value_t = 7)]
    b: usize,
    #[arg(long, default_value_t = 3)]
    b_local: usize,
    #[arg(long, default_value_t = 4)]
    b_global: usize,
    /// Ring neighbors on each side for ws.
    #[arg(long, default_value_t = 7)]
    k_half: usize,
    /// Rewiring probability for ws.
    #[arg(long, default_value_t = 0.1)]
    beta: f64,
    /// Order k of the binomial tree B_k.
    #[arg(long, default_value_t = 18)]
    order: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Shuffle the generated labels with this seed.
    #[arg(long)]
    shuffle_seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Input {
    /// Graph file: Matrix Market (.mtx) or a whitespace edge list.
    #[arg(long = "in")]
    input: PathBuf,
    /// Edge lists count vertices from 1.
    #[arg(long)]
    one_based: bool,
    /// Mirror edge-list entries.
    #[arg(long)]
    symmetrize: bool,
}

#[derive(Debug, Args)]
struct OrderingArgs {
    /// Fraction of the current component removed per SlashBurn round.
    #[arg(long, default_value_t = 0.005)]
    hub_ratio: f64,
    /// SlashBurn spokes up to this size are not split further.
    #[arg(long, default_value_t = 16)]
    min_component: usize,
    /// Subgraphs of at most this many vertices are ordered by AMD.
    #[arg(long, default_value_t = 64)]
    nbase: usize,
    /// Volume share, in percent, a Pareto minority must hold.
    #[arg(long, default_value_t = 20.0)]
    rvol: f64,
    /// Largest Pareto minority, in percent of the vertices.
    #[arg(long, default_value_t = 4.0)]
    rminor: f64,
    #[arg(long, value_enum, default_value_t = Placement::Back)]
    minority_placement: Placement,
    /// Relative residual tolerance of the eigensolver.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Operator applications for a standalone Fiedler vector.
    #[arg(long, default_value_t = 5000)]
    max_iters: usize,
    /// Operator applications per recursive cut.
    #[arg(long, default_value_t = 300)]
    cut_iters: usize,
    /// Seed of the eigensolver start vector and of the random ordering.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Exit with status 3 when an eigensolve does not converge.
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Placement {
    Front,
    Back,
}

#[derive(Debug, Args)]
struct OrderArgs {
    #[arg(long)]
    method: Method,
    #[command(flatten)]
    input: Input,
    /// Permutation file to write; stdout when absent.
    #[arg(long)]
    perm: Option<PathBuf>,
    #[command(flatten)]
    params: OrderingArgs,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    #[command(flatten)]
    input: Input,
    /// Permutation file; the identity when absent.
    #[arg(long)]
    perm: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CodeArg {
    Gamma,
    Varint,
}

#[derive(Debug, Args)]
struct EncodeArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    perm: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = CodeArg::Gamma)]
    code: CodeArg,
    /// Encoded stream (.vgc).
    #[arg(short, long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct DecodeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SpmvArgs {
    #[command(flatten)]
    input: Input,
    /// Orderings to compare, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "identity,rcm,amd,vifps")]
    methods: Vec<Method>,
    /// Block widths, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
    dim: Vec<usize>,
    /// Thread counts, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        env = "GRAPHORDER_THREADS",
        default_value = "1"
    )]
    threads: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    iters: usize,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    /// Seed of the start block.
    #[arg(long, default_value_t = 0)]
    block_seed: u64,
    #[command(flatten)]
    params: OrderingArgs,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[command(flatten)]
    input: Input,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "rcm,fcut1,slashburn,nd,amd,vifps"
    )]
    methods: Vec<Method>,
    /// One table per seed, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    shuffle_seed: Vec<u64>,
    /// Add a wall-time column.
    #[arg(long)]
    timings: bool,
    #[arg(short, long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    params: OrderingArgs,
}

enum Failure {
    Usage(String),
    Data(anyhow::Error),
    Numerical(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Data(e)
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Data(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    eprintln!("graphorder: {cli:?}");
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Generate(a) => generate(a),
        Command::Order(a) => order(a),
        Command::Score(a) => score(a),
        Command::Encode(a) => encode(a),
        Command::Decode(a) => decode(a),
        Command::Bench(BenchCommand::Spmv(a)) => spmv(a),
        Command::Report(a) => table(a),
    }
}

fn output(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn open(path: &Path) -> anyhow::Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path).with_context(|| {
        format!("cannot open {}", path.display())
    })?))
}

fn load(input: &Input) -> Result<Graph, Failure> {
    let reader = open(&input.input)?;
    let is_mtx = input
        .input
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("mtx"));
    let g = if is_mtx {
        gio::load_matrix_market(reader)
    } else {
        gio::load_edge_list(reader, !input.one_based, input.symmetrize)
    };
    Ok(g.with_context(|| format!("reading {}", input.input.display()))?)
}

fn load_perm(path: Option<&Path>, g: &Graph) -> Result<Permutation, Failure> {
    let Some(path) = path else {
        return Ok(Permutation::identity(g.n()));
    };
    let pi = gio::read_permutation(open(path)?)
        .with_context(|| format!("reading {}", path.display()))?;
    if pi.len() != g.n() {
        return Err(Failure::Data(anyhow::anyhow!(
            "permutation has {} entries for a graph with {} vertices",
            pi.len(),
            g.n()
        )));
    }
    Ok(pi)
}

fn generate(a: GenerateArgs) -> Outcome {
    let kind = match a.kind {
        Kind::Conv1 => GenKind::Conv1 { b: a.b },
        Kind::Pok => GenKind::PathOfCliques,
        Kind::Biclique => GenKind::Biclique,
        Kind::Wheel => GenKind::Wheel {
            b_local: a.b_local,
            b_global: a.b_global,
        },
        Kind::Ws => GenKind::WattsStrogatz {
            k_half: a.k_half,
            beta: a.beta,
        },
        Kind::Binomial => GenKind::Binomial { order: a.order },
    };
    let spec = GenSpec {
        kind,
        n: a.n,
        d_avg: a.davg,
        seed: a.seed,
    };
    let mut g = spec.build().map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(seed) = a.shuffle_seed {
        g = g
            .permute(&Permutation::random(g.n(), seed))
            .expect("sizes match");
    }
    gio::write_matrix_market(&g, output(a.out.as_deref())?)?;
    eprintln!("graphorder: generated n={} nnz={}", g.n(), g.nnz());
    Ok(())
}

fn method_params(p: &OrderingArgs) -> Result<MethodParams, Failure> {
    let usage = |m: &str| Err(Failure::Usage(m.to_string()));
    if !(p.hub_ratio > 0.0 && p.hub_ratio <= 0.5) {
        return usage("--hub-ratio must lie in (0, 0.5]");
    }
    if p.nbase < 2 {
        return usage("--nbase must be at least 2");
    }
    if !(p.rvol > 0.0 && p.rvol <= 100.0) || !(p.rminor > 0.0 && p.rminor <= 100.0) {
        return usage("--rvol and --rminor must lie in (0, 100]");
    }
    if p.tol.is_nan() || p.tol <= 0.0 || p.max_iters == 0 || p.cut_iters == 0 {
        return usage("--tol, --max-iters and --cut-iters must be positive");
    }
    let cut = SolverConfig {
        tol: p.tol,
        max_iters: p.cut_iters,
        seed: p.seed,
    };
    Ok(MethodParams {
        slashburn: SlashburnParams {
            hub_ratio: p.hub_ratio,
            min_component: p.min_component,
        },
        nd: NdParams {
            n_base: p.nbase,
            solver: cut,
        },
        pareto: ParetoParams {
            rvol: p.rvol,
            rminor: p.rminor,
            n_base: p.nbase,
            solver: cut,
            placement: match p.minority_placement {
                Placement::Front => MinorityPlacement::Front,
                Placement::Back => MinorityPlacement::Back,
            },
            ..ParetoParams::default()
        },
        fiedler: SolverConfig {
            max_iters: p.max_iters,
            ..cut
        },
        seed: p.seed,
    })
}

fn ordered(g: &Graph, method: Method, p: &OrderingArgs) -> Result<Permutation, Failure> {
    let params = method_params(p)?;
    let r = graphorder::methods::order(g, method, &params)
        .map_err(|e| Failure::Numerical(format!("{method}: {e}")))?;
    if !r.converged {
        let msg = format!("{method}: eigensolver did not converge");
        if p.strict {
            return Err(Failure::Numerical(msg));
        }
        eprintln!("graphorder: warning: {msg}");
    }
    Ok(r.perm)
}

fn order(a: OrderArgs) -> Outcome {
    let g = load(&a.input)?;
    let pi = ordered(&g, a.method, &a.params)?;
    gio::write_permutation(&pi, output(a.perm.as_deref())?)?;
    Ok(())
}

fn score(a: ScoreArgs) -> Outcome {
    let g = load(&a.input)?;
    let pi = load_perm(a.perm.as_deref(), &g)?;
    let r = evaluate(&g, &pi).expect("sizes checked");
    let bounds = r.bounds.map(|b| {
        json!({
            "lower": b.lower,
            "conv1Ref": b.conv1_ref,
            "wheelRef": b.wheel_ref,
            "upperGap": b.upper_gap,
            "warningThreshold": b.warning_threshold,
        })
    });
    let doc = json!({
        "mlogA": r.mlog_a,
        "mlogGapA": r.mlog_gap_a,
        "delta": r.delta,
        "n": r.n,
        "m": r.m,
        "dAvg": r.d_avg,
        "bounds": bounds,
        "warning": r.warning,
    });
    println!("{doc}");
    Ok(())
}

fn encode(a: EncodeArgs) -> Outcome {
    let g = load(&a.input)?;
    let pi = load_perm(a.perm.as_deref(), &g)?;
    let code = match a.code {
        CodeArg::Gamma => Code::Gamma,
        CodeArg::Varint => Code::Varint,
    };
    let enc = codec::encode_with(&g, &pi, code).expect("sizes checked");
    let mut w = output(Some(&a.out))?;
    w.write_all(&enc.bytes)?;
    w.flush()?;
    let per_link = if enc.m > 0 {
        enc.payload_bits as f64 / enc.m as f64
    } else {
        0.0
    };
    println!(
        "{}",
        json!({
            "n": enc.n,
            "m": enc.m,
            "bytes": enc.bytes.len(),
            "payloadBits": enc.payload_bits,
            "bitsPerLink": per_link,
        })
    );
    Ok(())
}

fn decode(a: DecodeArgs) -> Outcome {
    let bytes =
        std::fs::read(&a.input).with_context(|| format!("cannot read {}", a.input.display()))?;
    let g = codec::decode(&bytes).with_context(|| format!("decoding {}", a.input.display()))?;
    gio::write_matrix_market(&g, output(a.out.as_deref())?)?;
    Ok(())
}

fn spmv(a: SpmvArgs) -> Outcome {
    if a.dim.contains(&0) || a.threads.contains(&0) || a.iters == 0 || a.reps == 0 {
        return Err(Failure::Usage(
            "--dim, --threads, --iters and --reps must be positive".into(),
        ));
    }
    let g = load(&a.input)?;
    let mut out = csv::Writer::from_writer(output(None)?);
    out.write_record(["ordering", "d", "p", "seconds", "checksum"])
        .map_err(anyhow::Error::from)?;
    for &method in &a.methods {
        let pi = ordered(&g, method, &a.params)?;
        for &d in &a.dim {
            for &p in &a.threads {
                let cfg = BenchConfig {
                    d,
                    threads: p,
                    iters: a.iters,
                    seed: a.block_seed,
                    reps: a.reps,
                };
                let r = subspace_iterate(&g, &pi, &cfg).map_err(anyhow::Error::from)?;
                out.write_record([
                    method.to_string(),
                    d.to_string(),
                    p.to_string(),
                    format!("{:.6}", r.seconds),
                    format!("{:.12e}", r.checksum),
                ])
                .map_err(anyhow::Error::from)?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn table(a: ReportArgs) -> Outcome {
    let g = load(&a.input)?;
    let params = method_params(&a.params)?;
    let rows = report(&g, &a.methods, &a.shuffle_seed, &params)
        .map_err(|e| Failure::Numerical(e.to_string()))?;
    if a.params.strict {
        if let Some(r) = rows.iter().find(|r| !r.converged) {
            return Err(Failure::Numerical(format!(
                "{}: eigensolver did not converge",
                r.method
            )));
        }
    }
    write_csv(&rows, a.timings, output(a.out.as_deref())?)?;
    Ok(())
}
