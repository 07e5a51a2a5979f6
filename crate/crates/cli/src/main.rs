mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use connectit::amsf::{amsf, kruskal_oracle, AmsfVariant};
use connectit::driver::{
    bfs_oracle, check_spanning_forest, connectivity, spanning_forest, AlgorithmSpec, ComponentReport,
};
use connectit::graph::fixtures::{seeded_er, small_fixtures, standard_fixtures, Fixture};
use connectit::graph::{
    generate_graph, load_adjacency_graph, load_edge_list, write_adjacency_graph, EdgeList, Graph, GraphModel,
};
use connectit::recommend::recommend;
use connectit::streaming::{Batch, StreamClass, StreamEngine};

use output::{Emitter, Format};

/// Bumped whenever a report field changes meaning or disappears.
const REPORT_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "connectit", version, about = "Parallel graph connectivity")]
struct Cli {
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = "CONNECTIT_THREADS")]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Connected components.
    Cc(RunArgs),
    /// Spanning forest (root-based finishes only).
    Sf(RunArgs),
    /// Batch-incremental connectivity over an edge stream.
    Stream(StreamArgs),
    /// Approximate minimum spanning forest of a weighted edge list.
    Amsf(AmsfArgs),
    /// Generate a synthetic graph in adjacency format.
    Gen(GenArgs),
    /// Run every algorithm spec on the built-in fixtures against the oracle.
    Verify(VerifyArgs),
    /// Time repeated connectivity runs.
    Bench(BenchArgs),
    /// Suggest an algorithm spec for a graph.
    Recommend(GraphArgs),
}

#[derive(Args, Clone)]
struct GraphArgs {
    /// Graph in adjacency format.
    #[arg(long, conflicts_with = "edges", required_unless_present = "edges")]
    graph: Option<PathBuf>,
    /// Edge list, one `u v [w]` per line; symmetrized on load.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Vertex count for edge lists; defaults to the largest id plus one.
    #[arg(long)]
    n: Option<usize>,
}

impl GraphArgs {
    fn name(&self) -> String {
        self.graph
            .as_ref()
            .or(self.edges.as_ref())
            .map(|p| p.display().to_string())
            .unwrap_or_default()
    }

    fn load(&self) -> anyhow::Result<Graph> {
        match (&self.graph, &self.edges) {
            (Some(path), _) => Ok(load_adjacency_graph(path)?),
            (None, Some(path)) => Ok(Graph::try_from(&load_edge_list(path, self.n)?)?),
            (None, None) => bail!("one of --graph or --edges is required"),
        }
    }
}

#[derive(Args, Clone)]
struct AlgoArgs {
    /// Finish method, or a full `<sampling> + <finish>` spec.
    #[arg(long, default_value = "uf_rem_cas;split_atomic_one;find_naive")]
    algo: String,
    /// Sampling scheme: none, kout, bfs or ldd.
    #[arg(long)]
    sample: Option<String>,
    #[arg(long)]
    kout_k: Option<usize>,
    /// afforest, pure, hybrid or maxdeg.
    #[arg(long)]
    kout_variant: Option<String>,
    #[arg(long)]
    bfs_rounds: Option<usize>,
    #[arg(long)]
    bfs_threshold: Option<f64>,
    #[arg(long)]
    ldd_beta: Option<f64>,
    #[arg(long)]
    ldd_permute: bool,
    #[arg(long)]
    seed: Option<u64>,
}

impl AlgoArgs {
    fn resolve(&self) -> anyhow::Result<AlgorithmSpec> {
        let mut spec: AlgorithmSpec = self.algo.parse()?;
        let s = &mut spec.sampling;
        if let Some(scheme) = &self.sample {
            s.scheme = scheme.parse()?;
        }
        if let Some(k) = self.kout_k {
            s.kout_k = k;
        }
        if let Some(v) = &self.kout_variant {
            s.kout_variant = v.parse()?;
        }
        if let Some(r) = self.bfs_rounds {
            s.bfs_rounds = r;
        }
        if let Some(t) = self.bfs_threshold {
            s.bfs_threshold = t;
        }
        if let Some(b) = self.ldd_beta {
            s.ldd_beta = b;
        }
        if self.ldd_permute {
            s.ldd_permute = true;
        }
        if let Some(seed) = self.seed {
            s.seed = seed;
        }
        s.validate()?;
        Ok(spec)
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    algo: AlgoArgs,
    /// Compare against a sequential BFS; exit nonzero on mismatch.
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = 1)]
    reps: usize,
}

#[derive(Args)]
struct StreamArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    algo: AlgoArgs,
    #[arg(long, default_value_t = 1000)]
    batch_size: usize,
    /// Random connectivity queries added to each batch.
    #[arg(long, default_value_t = 0)]
    queries_per_batch: usize,
    /// Check the final labels against a sequential BFS.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct AmsfArgs {
    /// Weighted edge list.
    #[arg(long)]
    edges: PathBuf,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0.25)]
    epsilon: f64,
    /// coo, nf or nf_s.
    #[arg(long, default_value = "coo")]
    variant: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also compute the exact optimum and fail if the ratio exceeds 1 + epsilon.
    #[arg(long)]
    verify: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Er,
    Torus,
    Ba,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value_t = 8.0)]
    avg_degree: f64,
    #[arg(long, default_value_t = 2)]
    dims: u32,
    #[arg(long, default_value_t = 32)]
    side: usize,
    #[arg(long, default_value_t = 4)]
    edges_per_vertex: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Grid {
    Small,
    Full,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "small")]
    grid: Grid,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    algo: AlgoArgs,
    #[arg(long, default_value_t = 5)]
    reps: usize,
}

#[derive(Serialize)]
struct CcReport {
    version: u32,
    graph: String,
    n: usize,
    m: usize,
    spec_string: String,
    sample_s: f64,
    identify_s: f64,
    finish_s: f64,
    total_s: f64,
    num_components: usize,
    largest_component: usize,
    label_checksum: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    forest_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

impl CcReport {
    fn new(graph: &str, g: &Graph, spec: &AlgorithmSpec, r: &ComponentReport) -> Self {
        CcReport {
            version: REPORT_VERSION,
            graph: graph.to_string(),
            n: g.n(),
            m: g.m(),
            spec_string: spec.to_string(),
            sample_s: r.timings.sample.as_secs_f64(),
            identify_s: r.timings.identify.as_secs_f64(),
            finish_s: r.timings.finish.as_secs_f64(),
            total_s: r.timings.total().as_secs_f64(),
            num_components: r.num_components,
            largest_component: r.largest_size,
            label_checksum: format!("{:016x}", r.label_checksum()),
            forest_edges: None,
            verified: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = Emitter::new(cli.format);
    let result = match cli.command {
        Command::Cc(args) => run_cc(&args, false, &mut out),
        Command::Sf(args) => run_cc(&args, true, &mut out),
        Command::Stream(args) => run_stream(&args, &mut out),
        Command::Amsf(args) => run_amsf(&args, &mut out),
        Command::Gen(args) => run_gen(&args, &mut out),
        Command::Verify(args) => run_verify(&args, &mut out),
        Command::Bench(args) => run_bench(&args, &mut out),
        Command::Recommend(args) => run_recommend(&args, &mut out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every requested verification passed.
fn run_cc(args: &RunArgs, forest_mode: bool, out: &mut Emitter) -> anyhow::Result<bool> {
    let spec = args.algo.resolve()?;
    let graph = args.graph.load()?;
    let oracle = args.verify.then(|| bfs_oracle(&graph));
    let mut ok = true;
    for _ in 0..args.reps.max(1) {
        let mut record;
        if forest_mode {
            let (forest, report) = spanning_forest(&graph, &spec)?;
            record = CcReport::new(&args.graph.name(), &graph, &spec, &report);
            record.forest_edges = Some(forest.len());
            if let Some(oracle) = &oracle {
                let pass = report.canonical_labels == *oracle && check_spanning_forest(&graph, &forest).is_ok();
                record.verified = Some(pass);
                ok &= pass;
            }
        } else {
            let report = connectivity(&graph, &spec)?;
            record = CcReport::new(&args.graph.name(), &graph, &spec, &report);
            if let Some(oracle) = &oracle {
                let pass = report.canonical_labels == *oracle;
                record.verified = Some(pass);
                ok &= pass;
            }
        }
        out.emit(&record)?;
    }
    Ok(ok)
}

#[derive(Serialize)]
struct BatchRecord {
    batch: usize,
    inserts: usize,
    queries: usize,
    connected_answers: usize,
    latency_s: f64,
}

#[derive(Serialize)]
struct StreamSummary {
    version: u32,
    graph: String,
    spec_string: String,
    class: String,
    batches: usize,
    batch_size: usize,
    directed_edges: usize,
    total_s: f64,
    edges_per_s: f64,
    num_components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

fn run_stream(args: &StreamArgs, out: &mut Emitter) -> anyhow::Result<bool> {
    use rand::{Rng, SeedableRng};

    let spec = args.algo.resolve()?;
    let graph = args.graph.load()?;
    let n = graph.n();
    let edges = graph.undirected_edges();
    let mut engine = StreamEngine::new(n, &spec)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(spec.sampling.seed);
    let batch_size = args.batch_size.max(1);
    let mut elapsed = 0.0;
    let mut batches = 0;
    for (i, chunk) in edges.chunks(batch_size).enumerate() {
        let queries = if n == 0 {
            Vec::new()
        } else {
            (0..args.queries_per_batch)
                .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
                .collect()
        };
        let batch = Batch {
            inserts: chunk.to_vec(),
            queries,
        };
        let start = Instant::now();
        let answers = engine.process_batch(&batch)?;
        let latency = start.elapsed().as_secs_f64();
        elapsed += latency;
        batches += 1;
        out.emit(&BatchRecord {
            batch: i,
            inserts: batch.inserts.len(),
            queries: batch.queries.len(),
            connected_answers: answers.iter().filter(|&&a| a).count(),
            latency_s: latency,
        })?;
    }
    let labels = engine.final_labels();
    let verified = args.verify.then(|| labels == bfs_oracle(&graph));
    let class = match engine.class() {
        StreamClass::WaitFree => "wait_free",
        StreamClass::RoundSynchronous => "round_synchronous",
        StreamClass::PhaseConcurrent => "phase_concurrent",
    };
    let directed = 2 * edges.len();
    out.emit(&StreamSummary {
        version: REPORT_VERSION,
        graph: args.graph.name(),
        spec_string: spec.finish.to_string(),
        class: class.to_string(),
        batches,
        batch_size,
        directed_edges: directed,
        total_s: elapsed,
        edges_per_s: if elapsed > 0.0 { directed as f64 / elapsed } else { 0.0 },
        num_components: connectit::driver::component_stats(&labels).0,
        verified,
    })?;
    Ok(verified.unwrap_or(true))
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct AmsfReport {
    version: u32,
    edges: String,
    variant: String,
    epsilon: f64,
    forest_edges: usize,
    W_apx: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    W_opt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
    buckets: Vec<usize>,
    total_s: f64,
}

fn run_amsf(args: &AmsfArgs, out: &mut Emitter) -> anyhow::Result<bool> {
    let variant: AmsfVariant = args.variant.parse()?;
    let list: EdgeList = load_edge_list(&args.edges, args.n)?;
    let start = Instant::now();
    let result = amsf(&list, args.epsilon, variant, args.seed)?;
    let total_s = start.elapsed().as_secs_f64();
    let optimum = if args.verify {
        Some(kruskal_oracle(&list)?)
    } else {
        None
    };
    let ratio = optimum.map(|w| if w > 0.0 { result.weight / w } else { 1.0 });
    out.emit(&AmsfReport {
        version: REPORT_VERSION,
        edges: args.edges.display().to_string(),
        variant: variant.to_string(),
        epsilon: args.epsilon,
        forest_edges: result.forest.len(),
        W_apx: result.weight,
        W_opt: optimum,
        ratio,
        buckets: result.bucket_profile(),
        total_s,
    })?;
    // Relative slack for summation order only.
    Ok(ratio.is_none_or(|r| (1.0 - 1e-9..=(1.0 + args.epsilon) * (1.0 + 1e-9)).contains(&r)))
}

#[derive(Serialize)]
struct GenReport {
    model: String,
    n: usize,
    m: usize,
    out: String,
}

fn run_gen(args: &GenArgs, out: &mut Emitter) -> anyhow::Result<bool> {
    let (name, model) = match args.model {
        Model::Er => ("er", GraphModel::erdos_renyi_avg_degree(args.n, args.avg_degree)),
        Model::Torus => (
            "torus",
            GraphModel::Torus {
                dims: args.dims,
                side: args.side,
            },
        ),
        Model::Ba => (
            "ba",
            GraphModel::BarabasiAlbert {
                n: args.n,
                edges_per_vertex: args.edges_per_vertex,
            },
        ),
    };
    let graph = generate_graph(&model, args.seed)?;
    let text = write_adjacency_graph(&graph);
    match &args.out {
        Some(path) => {
            write_file(path, &text)?;
            out.emit(&GenReport {
                model: name.to_string(),
                n: graph.n(),
                m: graph.m(),
                out: path.display().to_string(),
            })?;
        }
        None => print!("{text}"),
    }
    Ok(true)
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, text).with_context(|| format!("failed to write {}", path.display()))
}

#[derive(Serialize)]
struct VerifySummary {
    grid: String,
    fixtures: usize,
    specs: usize,
    checks: usize,
    failures: usize,
}

fn run_verify(args: &VerifyArgs, out: &mut Emitter) -> anyhow::Result<bool> {
    let fixtures: Vec<Fixture> = match args.grid {
        Grid::Small => small_fixtures(),
        Grid::Full => {
            let mut f = standard_fixtures();
            f.extend(seeded_er(20));
            f
        }
    };
    let specs = AlgorithmSpec::grid();
    let mut checks = 0;
    let mut failures = 0;
    let mut fail = |what: String| {
        eprintln!("FAIL {what}");
        failures += 1;
    };
    for fx in &fixtures {
        let oracle = bfs_oracle(&fx.graph);
        for spec in &specs {
            checks += 1;
            match connectivity(&fx.graph, spec) {
                Ok(r) if r.canonical_labels == oracle => {}
                Ok(_) => fail(format!("{} {spec}: labels differ from oracle", fx.name)),
                Err(e) => fail(format!("{} {spec}: {e}", fx.name)),
            }
            if spec.finish.is_root_based() {
                checks += 1;
                match spanning_forest(&fx.graph, spec) {
                    Ok((forest, _)) => {
                        if let Err(e) = check_spanning_forest(&fx.graph, &forest) {
                            fail(format!("{} {spec}: {e}", fx.name));
                        }
                    }
                    Err(e) => fail(format!("{} {spec}: {e}", fx.name)),
                }
            }
            if spec.sampling.scheme == connectit::sampling::SamplingScheme::None
                && StreamClass::of(&spec.finish).is_ok()
            {
                checks += 1;
                match stream_labels(&fx.graph, spec, 10) {
                    Ok(labels) if labels == oracle => {}
                    Ok(_) => fail(format!("{} {spec}: streamed labels differ from oracle", fx.name)),
                    Err(e) => fail(format!("{} {spec}: {e}", fx.name)),
                }
            }
        }
    }
    out.emit(&VerifySummary {
        grid: match args.grid {
            Grid::Small => "small",
            Grid::Full => "full",
        }
        .to_string(),
        fixtures: fixtures.len(),
        specs: specs.len(),
        checks,
        failures,
    })?;
    Ok(failures == 0)
}

fn stream_labels(graph: &Graph, spec: &AlgorithmSpec, batch_size: usize) -> connectit::Result<Vec<usize>> {
    let mut engine = StreamEngine::new(graph.n(), spec)?;
    for chunk in graph.undirected_edges().chunks(batch_size) {
        engine.process_batch(&Batch {
            inserts: chunk.to_vec(),
            queries: Vec::new(),
        })?;
    }
    Ok(engine.final_labels())
}

#[derive(Serialize)]
struct BenchReport {
    version: u32,
    graph: String,
    n: usize,
    m: usize,
    spec_string: String,
    threads: usize,
    reps: usize,
    min_s: f64,
    median_s: f64,
    mean_s: f64,
    num_components: usize,
}

fn run_bench(args: &BenchArgs, out: &mut Emitter) -> anyhow::Result<bool> {
    let spec = args.algo.resolve()?;
    let graph = args.graph.load()?;
    let reps = args.reps.max(1);
    let mut times = Vec::with_capacity(reps);
    let mut components = 0;
    for _ in 0..reps {
        let start = Instant::now();
        let report = connectivity(&graph, &spec)?;
        times.push(start.elapsed().as_secs_f64());
        components = report.num_components;
    }
    times.sort_by(f64::total_cmp);
    let median = if reps % 2 == 1 {
        times[reps / 2]
    } else {
        (times[reps / 2 - 1] + times[reps / 2]) / 2.0
    };
    out.emit(&BenchReport {
        version: REPORT_VERSION,
        graph: args.graph.name(),
        n: graph.n(),
        m: graph.m(),
        spec_string: spec.to_string(),
        threads: rayon::current_num_threads(),
        reps,
        min_s: times[0],
        median_s: median,
        mean_s: times.iter().sum::<f64>() / reps as f64,
        num_components: components,
    })?;
    Ok(true)
}

#[derive(Serialize)]
struct RecommendReport {
    graph: String,
    n: usize,
    m: usize,
    m_over_n: f64,
    diameter_estimate: Option<usize>,
    spec_string: String,
}

fn run_recommend(args: &GraphArgs, out: &mut Emitter) -> anyhow::Result<bool> {
    let graph = args.load()?;
    let spec = recommend(&graph);
    out.emit(&RecommendReport {
        graph: args.name(),
        n: graph.n(),
        m: graph.m(),
        m_over_n: if graph.n() > 0 {
            graph.m() as f64 / graph.n() as f64
        } else {
            0.0
        },
        diameter_estimate: graph.estimate_diameter(),
        spec_string: spec.to_string(),
    })?;
    Ok(true)
}
