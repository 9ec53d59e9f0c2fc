//! `nbrw`: analyze graphs for rho = Lambda, generate family members, and
//! measure the random bits used by non-backtracking walks.
//!
//! Exit codes: 0 equal (or success), 1 strict, 2 precondition failure
//! (e.g. not NB-irreducible), 64 usage, 65 malformed input, 66 unreadable
//! input, 70 internal error, 74 output error.

mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nbrw::families::{self, FamilySpec};
use nbrw::walk::simulate_bits;
use nbrw::{exact_bit_pdf, Error, Graph, VarianceReport, Verdict};
use serde::Serialize;

use report::AnalysisReport;

const EX_USAGE: u8 = 64;
const EX_DATAERR: u8 = 65;
const EX_NOINPUT: u8 = 66;
const EX_SOFTWARE: u8 = 70;
const EX_IOERR: u8 = 74;

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NotIrreducible(_) | Error::TooManyOutdegrees(_) => 2,
            Error::InvalidParameter(_) => EX_USAGE,
            Error::Graph(_) => EX_DATAERR,
            _ => EX_SOFTWARE,
        };
        Failure::new(code, e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "nbrw",
    version,
    about = "Non-backtracking walk growth rates and bit consumption"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide rho = Lambda for a graph and report witnesses.
    Analyze(AnalyzeArgs),
    /// Write a family member in the graph text format.
    Gen(GenArgs),
    /// Monte Carlo statistics of the bits used by a walk.
    Walk(WalkArgs),
    /// Exact distribution of the bits used by a walk.
    Pdf(PdfArgs),
    /// Asymptotic normalized variance of the bit count.
    Asymvar(AsymvarArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    input: PathBuf,
    /// Relative tolerance for the Perron value.
    #[arg(long, default_value_t = nbrw::operator::DEFAULT_REL_TOL)]
    tol: f64,
    #[arg(long)]
    json: bool,
    /// Also compute the asymptotic variance of the bit count.
    #[arg(long)]
    with_variance: bool,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: GenFamily,
    /// Output path; stdout when omitted.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenFamily {
    /// Wheel W(n, l1, l2): rim paths of length l1, spokes of length l2.
    Wheel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l1: usize,
        #[arg(long)]
        l2: usize,
    },
    /// Member H_k of the H family.
    Hk {
        #[arg(long)]
        k: u32,
    },
    /// Replace every edge of the input graph by a path of m edges.
    Subdivide {
        #[arg(long)]
        m: usize,
        #[arg(short, long)]
        input: PathBuf,
    },
    /// K4 with one edge removed.
    K4e,
    /// Complete graph K_n.
    Complete {
        #[arg(long)]
        n: usize,
    },
    /// Complete bipartite graph K_{a,b}.
    Bipartite {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
}

#[derive(Args)]
struct WalkArgs {
    input: PathBuf,
    #[arg(long)]
    len: usize,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to the available parallelism, capped by
    /// NBRW_THREADS.
    #[arg(long)]
    workers: Option<usize>,
    /// Write the empirical PDF of bits per step as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PdfArgs {
    input: PathBuf,
    #[arg(long)]
    len: usize,
    /// CSV destination; the CSV goes to stdout when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Print a JSON summary instead of the text one (requires --csv).
    #[arg(long, requires = "csv")]
    json: bool,
}

#[derive(Args)]
struct AsymvarArgs {
    input: PathBuf,
    /// Walk lengths at which to also evaluate the truncated sum.
    #[arg(long, num_args = 1..)]
    truncate: Vec<usize>,
    #[arg(long)]
    json: bool,
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EX_NOINPUT, format!("cannot read {}: {e}", path.display())))?;
    Graph::parse_text(&text).map_err(|e| Failure::new(EX_DATAERR, format!("{}: {e}", path.display())))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    let res = match path {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    res.map_err(|e| Failure::new(EX_IOERR, format!("write failed: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::new(EX_SOFTWARE, e.to_string()))
}

fn worker_count(requested: Option<usize>) -> Result<usize, Failure> {
    let mut workers = requested.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if workers == 0 {
        return Err(Failure::new(EX_USAGE, "--workers must be positive"));
    }
    if let Ok(cap) = std::env::var("NBRW_THREADS") {
        let cap: usize = cap.trim().parse().ok().filter(|&c| c > 0).ok_or_else(|| {
            Failure::new(
                EX_USAGE,
                format!("NBRW_THREADS must be a positive integer, got `{cap}`"),
            )
        })?;
        workers = workers.min(cap);
    }
    Ok(workers)
}

fn analyze(args: &AnalyzeArgs) -> Result<u8, Failure> {
    let g = read_graph(&args.input)?;
    let report = AnalysisReport::build(&g, args.tol, args.with_variance)?;
    let text = if args.json {
        to_json(&report)?
    } else {
        report.render_text(&g)
    };
    write_out(None, &text)?;
    Ok(match report.verdict {
        None => 2,
        Some(Verdict::Equal) => 0,
        Some(Verdict::Strict) => 1,
    })
}

fn gen(args: &GenArgs) -> Result<u8, Failure> {
    let usage = |e: Error| Failure::new(EX_USAGE, e.to_string());
    let g = match &args.family {
        GenFamily::Wheel { n, l1, l2 } => FamilySpec::Wheel {
            n: *n,
            l1: *l1,
            l2: *l2,
        }
        .build()
        .map_err(usage)?,
        GenFamily::Hk { k } => FamilySpec::Hk { k: *k }.build().map_err(usage)?,
        GenFamily::K4e => FamilySpec::K4MinusEdge.build().map_err(usage)?,
        GenFamily::Complete { n } => FamilySpec::Complete { n: *n }.build().map_err(usage)?,
        GenFamily::Bipartite { a, b } => FamilySpec::CompleteBipartite { a: *a, b: *b }.build().map_err(usage)?,
        GenFamily::Subdivide { m, input } => families::subdivide(&read_graph(input)?, *m).map_err(usage)?,
    };
    write_out(args.output.as_deref(), &g.to_text())?;
    Ok(0)
}

fn walk(args: &WalkArgs) -> Result<u8, Failure> {
    let g = read_graph(&args.input)?;
    let workers = worker_count(args.workers)?;
    let sim = simulate_bits(&g, args.len, args.samples, args.seed, workers)?;
    if let Some(path) = &args.csv {
        write_out(Some(path), &sim.histogram.to_csv())?;
    }
    let s = &sim.stats;
    let text = if args.json {
        to_json(s)?
    } else {
        format!(
            "length {}, {} samples, seed {}\nmean bits per step {:.6} (standard error {:.2e})\nVar[R] = {:.6}, Var[R]/length = {:.6}\n",
            s.len,
            s.sample_count,
            s.seed,
            s.mean_bits_per_step,
            s.standard_error_of_mean,
            s.variance_of_r,
            s.variance_of_r / s.len.max(1) as f64
        )
    };
    write_out(None, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct PdfSummary {
    len: usize,
    outdeg_values: Vec<usize>,
    support_size: usize,
    /// Exact `E[c_j]` as `num/den` strings.
    expected_counts: Vec<String>,
    mean_bits: f64,
    variance_bits: f64,
}

fn pdf(args: &PdfArgs) -> Result<u8, Failure> {
    let g = read_graph(&args.input)?;
    let pdf = exact_bit_pdf(&g, args.len)?;
    let Some(path) = &args.csv else {
        write_out(None, &pdf.to_csv())?;
        return Ok(0);
    };
    write_out(Some(path), &pdf.to_csv())?;
    let summary = PdfSummary {
        len: pdf.len,
        outdeg_values: pdf.outdeg_values.clone(),
        support_size: pdf.support.len(),
        expected_counts: pdf.expected_counts().iter().map(|c| c.to_string()).collect(),
        mean_bits: pdf.mean_bits(),
        variance_bits: pdf.variance_bits(),
    };
    let text = if args.json {
        to_json(&summary)?
    } else {
        format!(
            "length {}, {} support points\nE[R] = {:.9}, Var[R] = {:.9}\n",
            summary.len, summary.support_size, summary.mean_bits, summary.variance_bits
        )
    };
    write_out(None, &text)?;
    Ok(0)
}

fn asymvar(args: &AsymvarArgs) -> Result<u8, Failure> {
    let g = read_graph(&args.input)?;
    let report = VarianceReport::compute(&g, &args.truncate)?;
    let text = if args.json {
        to_json(&report)?
    } else {
        let mut out = format!("asymptotic Var[R]/length = {:.12}\n", report.asymptotic_limit);
        for (l, v) in &report.truncated_values {
            out.push_str(&format!("  length {l}: {v:.12}\n"));
        }
        out
    };
    write_out(None, &text)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EX_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Gen(a) => gen(a),
        Command::Walk(a) => walk(a),
        Command::Pdf(a) => pdf(a),
        Command::Asymvar(a) => asymvar(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("nbrw: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
