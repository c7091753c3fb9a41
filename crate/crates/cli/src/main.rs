use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use linedigraph::digraph::{parse_text, to_text};
use linedigraph::exactla::{adjacency_matrix, minimal_polynomial};
use linedigraph::families::FamilySpec;
use linedigraph::metrics::metric_report;
use linedigraph::oeis::{self, OeisError, OeisMatch, DEFAULT_MIN_OVERLAP};
use linedigraph::sequences::{
    forbidden_word_digraph, inner_diameter_report_with, order_recurrence, order_sequence_with, render_table,
    ForbiddenWordSpec, Method, OrderOptions, SequenceReport, TableFormat, WordBase,
};
use linedigraph::{Digraph, Error, IterLimits};

/// Adjacency matrices up to this order get their own minimal polynomial in
/// `recur`; larger inputs fall back to the equitable quotient.
const MAX_ADJACENCY_MINPOLY: usize = 96;

#[derive(Parser)]
#[command(name = "linedigraph", version, about = "Iterated line digraphs, inner metrics and order sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a family member in the digraph text format
    Gen(GenArgs),
    /// Order or inner-diameter sequence of the iterated line digraphs
    Seq(SeqArgs),
    /// Orders after removing forbidden words from a De Bruijn or square-free digraph
    Forbid(ForbidArgs),
    /// Inner metric report as JSON
    Metrics(MetricsArgs),
    /// Minimal polynomial and least-order recurrence of the order sequence
    Recur(RecurArgs),
    /// Look a sequence up in an OEIS snapshot or online
    Oeis(OeisArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Debruijn,
    Kautz,
    Ck,
    Subkautz,
    Sf,
    Starcycle,
    Pendant,
    Unicyclic,
    Radii,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Alphabet size (debruijn)
    #[arg(long)]
    sigma: Option<usize>,
    /// Word length (debruijn) or cycle length (starcycle, pendant, unicyclic)
    #[arg(long)]
    n: Option<usize>,
    /// Degree (kautz, ck, subkautz, sf, unicyclic)
    #[arg(long)]
    d: Option<usize>,
    /// Word length (kautz, ck, subkautz, sf)
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    r1: Option<usize>,
    #[arg(long)]
    r2: Option<usize>,
    /// Apply the line digraph operator this many times first
    #[arg(long, default_value_t = 0)]
    line: usize,
    /// Output file; stdout when omitted
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodChoice {
    Direct,
    Walk,
    Recurrence,
    /// direct and recurrence
    Both,
    /// direct, walk and recurrence
    All,
}

impl MethodChoice {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodChoice::Direct => vec![Method::Direct],
            MethodChoice::Walk => vec![Method::Walk],
            MethodChoice::Recurrence => vec![Method::Recurrence],
            MethodChoice::Both => vec![Method::Direct, Method::Recurrence],
            MethodChoice::All => vec![Method::Direct, Method::Walk, Method::Recurrence],
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SequenceChoice {
    Order,
    Diameter,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableChoice {
    Markdown,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Print the full report as JSON
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Print a table of forbidden words, sequence prefix and OEIS id
    #[arg(long, value_enum, num_args = 0..=1, default_missing_value = "markdown")]
    table: Option<TableChoice>,
    /// Separator for plain sequence output
    #[arg(long, default_value = " ")]
    sep: String,
    /// OEIS snapshot used to fill the OEIS column
    #[arg(long)]
    oeis_local: Option<PathBuf>,
    /// Ask the OEIS search service for the OEIS column
    #[arg(long)]
    oeis_remote: bool,
    /// Largest order of an iterate built by direct iteration
    #[arg(long, default_value_t = linedigraph::digraph::DEFAULT_MAX_ORDER)]
    max_order: usize,
}

#[derive(Args)]
struct SeqArgs {
    /// Digraph text file, `-` for stdin
    input: PathBuf,
    /// Last index k of the sequence n_0..n_k
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "both")]
    method: MethodChoice,
    #[arg(long, value_enum, default_value = "order")]
    sequence: SequenceChoice,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ForbidArgs {
    /// Alphabet size
    #[arg(long)]
    sigma: usize,
    /// Word length of the base digraph's vertices
    #[arg(long)]
    n: usize,
    /// Comma-separated forbidden words; repeat for several rows
    #[arg(long, required = true)]
    avoid: Vec<String>,
    #[arg(long, default_value_t = 7)]
    k: usize,
    /// Start from the square-free digraph SF(sigma - 1, n) instead of B(sigma, n)
    #[arg(long)]
    square_free: bool,
    #[arg(long, value_enum, default_value = "all")]
    method: MethodChoice,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MetricsArgs {
    input: PathBuf,
    /// Report on L^k instead of the input
    #[arg(long, default_value_t = 0)]
    line: usize,
}

#[derive(Args)]
struct RecurArgs {
    input: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OeisArgs {
    /// Comma-separated terms
    #[arg(long, value_delimiter = ',', required = true)]
    terms: Vec<BigInt>,
    /// Snapshot in the stripped format, optionally gzipped
    #[arg(long, conflicts_with = "remote", required_unless_present = "remote")]
    local: Option<PathBuf>,
    /// Query the OEIS search service ($OEIS_BASE_URL overrides the host)
    #[arg(long)]
    remote: bool,
    #[arg(long, default_value_t = DEFAULT_MIN_OVERLAP)]
    min_overlap: usize,
    #[arg(long, default_value_t = 10_000)]
    timeout_ms: u64,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
    broken_pipe: bool,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::ResourceLimit { .. } | Error::EnumerationCapExceeded { .. } => 3,
            Error::MethodDisagreement { .. } => 4,
            Error::Oeis(o) => return Failure::from_oeis(o),
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
            broken_pipe: false,
        }
    }
}

impl From<OeisError> for Failure {
    fn from(e: OeisError) -> Self {
        Failure::from_oeis(&e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
            broken_pipe: e.kind() == io::ErrorKind::BrokenPipe,
        }
    }
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
            broken_pipe: false,
        }
    }

    fn from_oeis(e: &OeisError) -> Self {
        let code = match e {
            OeisError::DbUnreadable { .. } | OeisError::TooFewTerms { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
            broken_pipe: false,
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn read_digraph(path: &Path) -> CliResult<Digraph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?
    };
    Ok(parse_text(&text)?)
}

fn need(value: Option<usize>, flag: &str, family: &str) -> CliResult<usize> {
    value.ok_or_else(|| Failure::usage(format!("--family {family} needs --{flag}")))
}

fn family_spec(a: &GenArgs) -> CliResult<FamilySpec> {
    Ok(match a.family {
        Family::Debruijn => FamilySpec::DeBruijn {
            sigma: need(a.sigma, "sigma", "debruijn")?,
            n: need(a.n, "n", "debruijn")?,
        },
        Family::Kautz => FamilySpec::Kautz {
            d: need(a.d, "d", "kautz")?,
            l: need(a.l, "l", "kautz")?,
        },
        Family::Ck => FamilySpec::CyclicKautz {
            d: need(a.d, "d", "ck")?,
            l: need(a.l, "l", "ck")?,
        },
        Family::Subkautz => FamilySpec::SubKautz {
            d: need(a.d, "d", "subkautz")?,
            l: need(a.l, "l", "subkautz")?,
        },
        Family::Sf => FamilySpec::SquareFree {
            d: need(a.d, "d", "sf")?,
            l: need(a.l, "l", "sf")?,
        },
        Family::Starcycle => FamilySpec::StarCycle {
            n: need(a.n, "n", "starcycle")?,
        },
        Family::Pendant => FamilySpec::PendantCycle {
            n: need(a.n, "n", "pendant")?,
        },
        Family::Unicyclic => FamilySpec::Unicyclic {
            n: need(a.n, "n", "unicyclic")?,
            d: need(a.d, "d", "unicyclic")?,
        },
        Family::Radii => FamilySpec::Radii {
            r1: need(a.r1, "r1", "radii")?,
            r2: need(a.r2, "r2", "radii")?,
        },
    })
}

fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> CliResult {
    let spec = family_spec(&a)?;
    let (g, _) = spec.build()?.line_iterate(a.line)?;
    let text = to_text(&g);
    match a.output {
        Some(path) => fs::write(&path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn lookup(terms: &[BigInt], o: &OutputArgs) -> CliResult<Vec<OeisMatch>> {
    if terms.len() < DEFAULT_MIN_OVERLAP {
        return Ok(Vec::new());
    }
    let prefix = &terms[..DEFAULT_MIN_OVERLAP];
    if let Some(path) = &o.oeis_local {
        return Ok(oeis::match_local(prefix, path, DEFAULT_MIN_OVERLAP)?);
    }
    if o.oeis_remote {
        return Ok(oeis::search_remote(prefix, Duration::from_secs(10))?);
    }
    Ok(Vec::new())
}

fn print_reports(reports: &mut [SequenceReport], o: &OutputArgs, out: &mut dyn Write) -> CliResult {
    if o.oeis_local.is_some() || o.oeis_remote {
        for r in reports.iter_mut() {
            r.oeis_matches = lookup(&r.terms, o)?;
        }
    }
    if o.json {
        let text = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(&reports)
        }
        .expect("reports serialize");
        writeln!(out, "{text}")?;
    } else if let Some(t) = o.table {
        let format = match t {
            TableChoice::Markdown => TableFormat::Markdown,
            TableChoice::Csv => TableFormat::Csv,
        };
        out.write_all(render_table(reports, format).as_bytes())?;
    } else {
        for r in reports.iter() {
            writeln!(out, "{}", r.terms_joined(&o.sep))?;
        }
    }
    Ok(())
}

fn order_options(method: MethodChoice, o: &OutputArgs) -> OrderOptions {
    OrderOptions {
        methods: method.methods(),
        limits: IterLimits::with_max_order(o.max_order),
    }
}

fn cmd_seq(a: SeqArgs, out: &mut dyn Write) -> CliResult {
    let g = read_digraph(&a.input)?;
    let report = match a.sequence {
        SequenceChoice::Order => order_sequence_with(&g, a.k, &order_options(a.method, &a.output))?,
        SequenceChoice::Diameter => {
            inner_diameter_report_with(&g, a.k, IterLimits::with_max_order(a.output.max_order))?
        }
    };
    print_reports(&mut [report], &a.output, out)
}

fn cmd_forbid(a: ForbidArgs, out: &mut dyn Write) -> CliResult {
    let base = if a.square_free {
        WordBase::SquareFree
    } else {
        WordBase::DeBruijn
    };
    let mut reports = Vec::new();
    for set in &a.avoid {
        let words: Vec<&str> = set.split(',').map(str::trim).filter(|w| !w.is_empty()).collect();
        let spec = ForbiddenWordSpec::build(a.sigma, a.n, &words, base)?;
        let g = forbidden_word_digraph(&spec)?;
        if g.is_empty() {
            return Err(Failure::usage(format!("{spec} has no vertices")));
        }
        let report = order_sequence_with(&g, a.k, &order_options(a.method, &a.output))?;
        reports.push(report.with_forbidden(&spec));
    }
    print_reports(&mut reports, &a.output, out)
}

fn cmd_metrics(a: MetricsArgs, out: &mut dyn Write) -> CliResult {
    let (g, _) = read_digraph(&a.input)?.line_iterate(a.line)?;
    let report = metric_report(&g)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"))?;
    Ok(())
}

fn cmd_recur(a: RecurArgs, out: &mut dyn Write) -> CliResult {
    let g = read_digraph(&a.input)?;
    let (quotient_poly, recurrence) = order_recurrence(&g)?;
    let (poly, source) = if g.order() <= MAX_ADJACENCY_MINPOLY {
        (minimal_polynomial(&adjacency_matrix(&g)), "adjacency")
    } else {
        (quotient_poly, "quotient")
    };
    if a.json {
        let value = serde_json::json!({
            "minimal_polynomial": poly,
            "polynomial_of": source,
            "recurrence": recurrence,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializes"))?;
    } else {
        writeln!(out, "m(x) = {poly}; {recurrence}")?;
        writeln!(out, "holds for k >= {}", recurrence.start + recurrence.order)?;
        if source == "quotient" {
            writeln!(out, "(m(x) is the minimal polynomial of the equitable quotient)")?;
        }
    }
    Ok(())
}

fn cmd_oeis(a: OeisArgs, out: &mut dyn Write) -> CliResult {
    let matches = match &a.local {
        Some(path) => oeis::match_local(&a.terms, path, a.min_overlap)?,
        None => {
            if a.terms.len() < a.min_overlap {
                return Err(OeisError::TooFewTerms {
                    needed: a.min_overlap,
                    got: a.terms.len(),
                }
                .into());
            }
            oeis::search_remote(&a.terms, Duration::from_millis(a.timeout_ms))?
        }
    };
    if matches.is_empty() {
        writeln!(out, "not in OEIS")?;
    }
    for m in matches {
        writeln!(out, "{} offset {} length {}", m.id, m.offset, m.matched_length)?;
    }
    Ok(())
}

fn run(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Seq(a) => cmd_seq(a, out),
        Command::Forbid(a) => cmd_forbid(a, out),
        Command::Metrics(a) => cmd_metrics(a, out),
        Command::Recur(a) => cmd_recur(a, out),
        Command::Oeis(a) => cmd_oeis(a, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out).and_then(|()| out.flush().map_err(Failure::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) if f.broken_pipe => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
