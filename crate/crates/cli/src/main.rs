use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gordonlab_core::hilbert::{hp_p_ri, hp_quotient_j};
use gordonlab_core::hypergraph::{build_h_lambda, truncate_h_infinity};
use gordonlab_core::partition::{enumerate_class, is_neighborly, satisfies_multiplicity_bounds};
use gordonlab_core::qseries::{andrews_gordon_product_side, andrews_gordon_sum_side, class_series, product_side};
use gordonlab_core::signature::{neighborly_signed_series, signature};
use gordonlab_core::verify::{self, ReportParams};
use gordonlab_core::{
    ClassWeighting, Error, Identity, Interpretation, Partition, PartitionClass, SignatureMethod, SignatureResult,
    TruncatedSeries, VerificationReport,
};
use serde::Serialize;

mod cache;

use cache::{CacheKey, SeriesCache};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NOT_NEIGHBORLY: u8 = 3;
const EXIT_DISAGREE: u8 = 4;

#[derive(Parser)]
#[command(name = "gordonlab", version, about = "Neighborly partitions, hypergraph signatures and Gordon-type identities")]
struct Cli {
    /// Directory for cached series (GORDONLAB_CACHE takes precedence)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Report wall-clock time (makes output non-reproducible)
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the partitions of n in a class
    Enumerate(EnumerateArgs),
    /// Signature of one neighborly partition
    Signature(SignatureArgs),
    /// Dump a truncated q-series
    Series(SeriesArgs),
    /// Render H_λ or a truncation of the infinite hypergraph
    Hypergraph(HypergraphArgs),
    /// Check an identity coefficient by coefficient
    Verify(VerifyArgs),
}

#[derive(Args, Clone, Copy)]
struct RiArgs {
    #[arg(long, default_value_t = 2)]
    r: usize,
    /// Defaults to r
    #[arg(long)]
    i: Option<usize>,
    #[arg(long, value_enum, default_value_t = InterpArg::Induced)]
    interp: InterpArg,
}

impl RiArgs {
    fn i(&self) -> usize {
        self.i.unwrap_or(self.r)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum InterpArg {
    Induced,
    Definition,
}

impl From<InterpArg> for Interpretation {
    fn from(a: InterpArg) -> Self {
        match a {
            InterpArg::Induced => Interpretation::InducedNoIsolated,
            InterpArg::Definition => Interpretation::DefinitionConditions,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    All,
    Neighborly,
    GordonB,
    GordonA,
    DistinctR,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ListFormat {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    class: ClassArg,
    #[command(flatten)]
    ri: RiArgs,
    #[arg(long, value_enum, default_value_t = ListFormat::Text)]
    format: ListFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Brute,
    Dp,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct SignatureArgs {
    /// Weakly decreasing parts, e.g. 3,2,2 (empty string for the empty partition)
    #[arg(long, value_parser = parse_partition, allow_hyphen_values = true)]
    partition: Partition,
    #[command(flatten)]
    ri: RiArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Dp)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    NeighborlySigned,
    Product,
    AgSum,
    AgProduct,
    GordonB,
    GordonA,
    DistinctRSigned,
    HpP,
    HpJ,
}

impl Which {
    fn name(self) -> String {
        self.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesFormat {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, value_enum)]
    which: Which,
    #[command(flatten)]
    ri: RiArgs,
    #[arg(long)]
    trunc: usize,
    #[arg(long, value_enum, default_value_t = SeriesFormat::Json)]
    format: SeriesFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Paoh,
    Json,
}

#[derive(Args)]
struct HypergraphArgs {
    #[arg(long, value_parser = parse_partition, conflicts_with_all = ["infinite", "max_level"], required_unless_present = "infinite")]
    partition: Option<Partition>,
    /// Truncation of the infinite hypergraph (needs --max-level)
    #[arg(long, requires = "max_level")]
    infinite: bool,
    #[arg(long)]
    max_level: Option<usize>,
    #[command(flatten)]
    ri: RiArgs,
    #[arg(long, value_enum, default_value_t = GraphFormat::Paoh)]
    format: GraphFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdentityArg {
    Main,
    Gordon,
    AndrewsGordon,
    HilbertProp,
    Polarization,
    DpVsBrute,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    identity: IdentityArg,
    #[command(flatten)]
    ri: RiArgs,
    #[arg(long)]
    trunc: usize,
    /// Random hypergraphs for hilbert-prop
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// RNG seed for hilbert-prop
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

/// A failed command: exit code plus message for stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameters { .. }
            | Error::InvalidPartition(_)
            | Error::InvalidArgument(_)
            | Error::InvalidWeight(_)
            | Error::MalformedHypergraph(_) => EXIT_USAGE,
            Error::NotNeighborly { .. } | Error::MultiplicityBound { .. } => EXIT_NOT_NEIGHBORLY,
            Error::RouteMismatch { .. } => EXIT_DISAGREE,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_FAILURE, e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::new(EXIT_FAILURE, e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::new(EXIT_FAILURE, e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

struct Context {
    cache: Option<SeriesCache>,
    timing: bool,
    start: Instant,
}

impl Context {
    fn report_time(&self) {
        if self.timing {
            eprintln!("elapsed: {} ms", self.start.elapsed().as_millis());
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache_dir = std::env::var_os("GORDONLAB_CACHE").filter(|v| !v.is_empty()).map(PathBuf::from).or(cli.cache_dir);
    let cache = match cache_dir.as_deref().map(SeriesCache::open).transpose() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: cannot open cache directory: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let ctx = Context { cache, timing: cli.timing, start: Instant::now() };
    let result = match &cli.command {
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Signature(a) => cmd_signature(a),
        Command::Series(a) => cmd_series(a, &ctx),
        Command::Hypergraph(a) => cmd_hypergraph(a),
        Command::Verify(a) => cmd_verify(a, &ctx),
    };
    match result {
        Ok(()) => {
            ctx.report_time();
            ExitCode::SUCCESS
        }
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn class_of(class: ClassArg, r: usize, i: usize) -> PartitionClass {
    match class {
        ClassArg::All => PartitionClass::All,
        ClassArg::Neighborly => PartitionClass::Neighborly { r, i },
        ClassArg::GordonB => PartitionClass::GordonB { r, i },
        ClassArg::GordonA => PartitionClass::GordonA { r, i },
        ClassArg::DistinctR => PartitionClass::DistinctR { r, i },
    }
}

#[derive(Serialize)]
struct Listing<'a> {
    n: usize,
    class: PartitionClass,
    interp: Interpretation,
    count: usize,
    partitions: &'a [Partition],
}

fn cmd_enumerate(a: &EnumerateArgs) -> CmdResult {
    let (r, i, interp) = (a.ri.r, a.ri.i(), a.ri.interp.into());
    let class = class_of(a.class, r, i);
    let parts = enumerate_class(a.n, class, interp)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match a.format {
        ListFormat::Text => {
            for p in &parts {
                writeln!(out, "{p}")?;
            }
            writeln!(out, "count: {}", parts.len())?;
        }
        ListFormat::Json => {
            let listing = Listing { n: a.n, class, interp, count: parts.len(), partitions: &parts };
            serde_json::to_writer_pretty(&mut out, &listing)?;
            writeln!(out)?;
        }
        ListFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["n", "partition"])?;
            for p in &parts {
                w.write_record([a.n.to_string(), p.to_csv()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SignatureReport<'a> {
    partition: &'a Partition,
    r: usize,
    i: usize,
    interp: Interpretation,
    value: i64,
    results: &'a [SignatureResult],
    agree: bool,
}

fn cmd_signature(a: &SignatureArgs) -> CmdResult {
    let (r, i, interp) = (a.ri.r, a.ri.i(), a.ri.interp.into());
    let lambda = &a.partition;
    if !satisfies_multiplicity_bounds(lambda, r, i) || !is_neighborly(lambda, r, i, interp)? {
        return Err(Failure::new(
            EXIT_NOT_NEIGHBORLY,
            format!("{lambda} is not ({r},{i})-neighborly under the {interp} reading"),
        ));
    }
    let methods: &[SignatureMethod] = match a.method {
        MethodArg::Brute => &[SignatureMethod::BruteForce],
        MethodArg::Dp => &[SignatureMethod::LevelDp],
        MethodArg::Both => &[SignatureMethod::BruteForce, SignatureMethod::LevelDp],
    };
    let results = methods
        .iter()
        .map(|&m| signature(lambda, r, i, interp, m))
        .collect::<gordonlab_core::Result<Vec<_>>>()?;
    let agree = results.windows(2).all(|w| w[0].value == w[1].value);
    let report = SignatureReport { partition: lambda, r, i, interp, value: results[0].value, results: &results, agree };

    let stdout = io::stdout();
    let mut out = stdout.lock();
    match a.format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
        }
        ReportFormat::Text => {
            writeln!(out, "partition: {lambda}")?;
            writeln!(out, "r={r} i={i} interp={interp}")?;
            for res in &results {
                write!(out, "method: {} edges={}", res.method.as_str(), res.edge_count)?;
                if let Some(c) = res.spanning_subset_count {
                    write!(out, " spanning-subsets={c}")?;
                }
                writeln!(out, " delta={}", res.value)?;
            }
            if results.len() > 1 {
                writeln!(out, "agree: {}", if agree { "yes" } else { "no" })?;
            }
            writeln!(out, "delta: {}", report.value)?;
        }
    }
    if !agree {
        let values: Vec<String> = results.iter().map(|r| format!("{}={}", r.method.as_str(), r.value)).collect();
        return Err(Failure::new(EXIT_DISAGREE, format!("methods disagree: {}", values.join(", "))));
    }
    Ok(())
}

fn compute_series(which: Which, r: usize, i: usize, trunc: usize, interp: Interpretation) -> gordonlab_core::Result<TruncatedSeries> {
    let d = Interpretation::default();
    match which {
        Which::NeighborlySigned => neighborly_signed_series(r, i, trunc, interp, SignatureMethod::LevelDp),
        Which::Product => product_side(r, i, trunc),
        Which::AgSum => andrews_gordon_sum_side(r, i, trunc),
        Which::AgProduct => andrews_gordon_product_side(r, i, trunc),
        Which::GordonB => class_series(PartitionClass::GordonB { r, i }, trunc, d, ClassWeighting::Count),
        Which::GordonA => class_series(PartitionClass::GordonA { r, i }, trunc, d, ClassWeighting::Count),
        Which::DistinctRSigned => class_series(PartitionClass::DistinctR { r, i }, trunc, d, ClassWeighting::Signed),
        Which::HpP => hp_p_ri(r, i, trunc, interp),
        Which::HpJ => hp_quotient_j(r, i, trunc),
    }
}

/// Computes a series, going through the cache when one is configured.
fn series_via_cache(ctx: &Context, which: Which, r: usize, i: usize, trunc: usize, interp: Interpretation) -> Result<TruncatedSeries, Failure> {
    let Some(cache) = &ctx.cache else {
        return Ok(compute_series(which, r, i, trunc, interp)?);
    };
    let key = CacheKey { which: which.name(), r, i, trunc, interp: interp.as_str().to_owned() };
    if let Some(s) = cache.load(&key) {
        return Ok(s);
    }
    let s = compute_series(which, r, i, trunc, interp)?;
    if let Err(e) = cache.store(&key, &s) {
        eprintln!("warning: could not write cache entry: {e}");
    }
    Ok(s)
}

fn cmd_series(a: &SeriesArgs, ctx: &Context) -> CmdResult {
    let (r, i, interp) = (a.ri.r, a.ri.i(), a.ri.interp.into());
    let s = series_via_cache(ctx, a.which, r, i, a.trunc, interp)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match a.format {
        SeriesFormat::Json => {
            serde_json::to_writer(&mut out, &s)?;
            writeln!(out)?;
        }
        SeriesFormat::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["n", "coefficient"])?;
            for (n, c) in s.coeffs().iter().enumerate() {
                w.write_record([n.to_string(), c.to_string()])?;
            }
            w.flush()?;
        }
        SeriesFormat::Text => writeln!(out, "{s}")?,
    }
    Ok(())
}

fn cmd_hypergraph(a: &HypergraphArgs) -> CmdResult {
    let (r, i, interp) = (a.ri.r, a.ri.i(), a.ri.interp.into());
    let h = match (&a.partition, a.max_level) {
        (Some(lambda), _) => build_h_lambda(lambda, r, i, interp)?,
        (None, Some(levels)) => truncate_h_infinity(r, i, levels)?,
        (None, None) => return Err(Failure::new(EXIT_USAGE, "need --partition or --infinite --max-level")),
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match a.format {
        GraphFormat::Paoh => write!(out, "{}", h.render_paoh())?,
        GraphFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &h)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, ctx: &Context) -> CmdResult {
    let (r, i, interp) = (a.ri.r, a.ri.i(), a.ri.interp.into());
    let d = Interpretation::default();
    let pair = |identity: Identity, params: ReportParams, lhs: Which, rhs: Which| -> Result<VerificationReport, Failure> {
        let left = series_via_cache(ctx, lhs, r, i, a.trunc, params.interp)?;
        let right = series_via_cache(ctx, rhs, r, i, a.trunc, params.interp)?;
        Ok(VerificationReport::compare(identity, params, &left, &right, None))
    };
    let mut report = match a.identity {
        IdentityArg::Main => {
            pair(Identity::Main, ReportParams::new(r, i, a.trunc, interp), Which::NeighborlySigned, Which::Product)?
        }
        IdentityArg::Gordon => pair(Identity::Gordon, ReportParams::new(r, i, a.trunc, d), Which::GordonB, Which::GordonA)?,
        IdentityArg::AndrewsGordon => {
            pair(Identity::AndrewsGordon, ReportParams::new(r, i, a.trunc, d), Which::AgSum, Which::AgProduct)?
        }
        IdentityArg::HilbertProp => verify::verify_hilbert_prop(a.trials, a.seed, a.trunc)?,
        IdentityArg::Polarization => verify::verify_polarization(r, i, a.trunc, interp)?,
        IdentityArg::DpVsBrute => verify::verify_dp_vs_brute(r, i, a.trunc, interp)?,
    };
    report.elapsed_ms = ctx.timing.then(|| ctx.start.elapsed().as_millis() as u64);

    let stdout = io::stdout();
    let mut out = stdout.lock();
    match a.format {
        ReportFormat::Text => write!(out, "{}", report.render_text())?,
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    if report.pass {
        return Ok(());
    }
    let message = match report.first_failure {
        Some(n) => {
            let row = &report.rows[n];
            format!("{} failed at q^{n}: {} != {}", report.identity.as_str(), row.lhs.0, row.rhs.0)
        }
        None => match report.sweep.as_ref().and_then(|s| s.first_mismatch.clone()) {
            Some(m) => format!("{} failed: {m}", report.identity.as_str()),
            None => format!("{} failed", report.identity.as_str()),
        },
    };
    Err(Failure::new(EXIT_FAILURE, message))
}
