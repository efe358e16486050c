//! Command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand inside a dedicated
//! thread pool and writes the rendered report. Exit codes: 0 success,
//! 1 failed verification, 2 usage error, 3 enumeration cap exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};

use crate::compositions::{composition_count, DEFAULT_MAX_COMPOSITIONS, MAX_COMPOSITIONS_ENV};
use crate::error::Error;
use crate::firing::{dhar_burn, fire_set, is_legal_firing, q_reduce, BurnReport};
use crate::gonality::{
    enumerate_positive_rank_classes, gonality_exact_small, gonality_upper_bound,
    queen_gonality_formula, toroidal_gonality_formula, verify_correspondence, CorrespondenceMode,
    CorrespondenceReport, GonalityMethod, GonalityReport,
};
use crate::independence::{
    max_independent_sets, queen_alpha_formula, toroidal_alpha_formula, IndependentSet,
};
use crate::rank::{rank, RankResult};
use crate::{Divisor, Graph, Limits, VertexSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "chipfire", version, about = "Chip-firing and gonality on queen's graphs")]
struct Cli {
    /// Worker threads for the parallel searches.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,

    /// Largest number of divisors enumerated at one degree.
    #[arg(long, global = true, env = MAX_COMPOSITIONS_ENV, default_value_t = DEFAULT_MAX_COMPOSITIONS,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_compositions: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Formula,
    Exact,
    Bound,
}

fn board_side(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 2 => Ok(v),
        Ok(_) => Err("board sides must be at least 2".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Board width (vertices per row).
    #[arg(long, requires = "n", value_parser = board_side)]
    m: Option<usize>,
    /// Board height (number of rows).
    #[arg(long, requires = "m", value_parser = board_side)]
    n: Option<usize>,
    /// Wrap diagonals around the board.
    #[arg(long)]
    toroidal: bool,
    /// `@FILE` with graph JSON, `complete:N`, or `ladder`.
    #[arg(long, conflicts_with_all = ["m", "n", "toroidal"])]
    graph: Option<String>,
}

#[derive(Debug, Args)]
struct DivisorArg {
    /// Comma-separated chip counts, or `@FILE` holding the same or `{"values":[…]}`.
    #[arg(long, allow_hyphen_values = true)]
    divisor: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a board as JSON, DOT or an adjacency list.
    Gen {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Independence number and maximum independent sets.
    Alpha {
        #[command(flatten)]
        graph: GraphArgs,
        /// Include every maximum independent set.
        #[arg(long)]
        enumerate: bool,
    },
    /// Gonality by closed form, exhaustive search or the independence bound.
    Gonality {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = Mode::Formula)]
        mode: Mode,
    },
    /// Rank of a divisor; exits 1 with a certificate when below --max-k.
    Rank {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        divisor: DivisorArg,
        #[arg(long, default_value_t = 1)]
        max_k: u64,
    },
    /// Reduced divisor at a base vertex, with its firing script.
    Reduce {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        divisor: DivisorArg,
        #[arg(long, default_value_t = 0)]
        q: usize,
    },
    /// Run the burning algorithm from a base vertex.
    Burn {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        divisor: DivisorArg,
        #[arg(long, default_value_t = 0)]
        q: usize,
    },
    /// Fire a vertex set once.
    Fire {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        divisor: DivisorArg,
        /// Comma-separated vertex ids.
        #[arg(long)]
        set: String,
    },
    /// One reduced representative per positive-rank class of a degree.
    Classes {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        degree: u64,
    },
    /// Check the independence and gonality formulas and the class correspondence on a board.
    Verify {
        /// 1 for the plain board, 2 for the torus.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        #[arg(long, value_parser = board_side)]
        m: usize,
        #[arg(long, value_parser = board_side)]
        n: usize,
    },
}

/// Why a command stopped short of exit code 0.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Cap(String),
    Failed(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Cap(_) => EXIT_CAP,
            Failure::Failed(_) => EXIT_FAILED,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Cap(m) | Failure::Failed(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { what: "composition", .. } => Failure::Cap(format!(
                "{e} (raise --max-compositions or {MAX_COMPOSITIONS_ENV})"
            )),
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::Internal(_) => Failure::Failed(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// Anything the CLI can print.
pub trait Report: Serialize {
    fn text(&self) -> String;

    fn dot(&self) -> Option<String> {
        None
    }
}

/// Renders a report. JSON keeps field declaration order and ends with a newline.
pub fn render<R: Report>(report: &R, format: Format) -> Result<String, String> {
    match format {
        Format::Json => Ok(serde_json::to_string(report).map_err(|e| e.to_string())? + "\n"),
        Format::Text => Ok(report.text()),
        Format::Dot => report
            .dot()
            .ok_or_else(|| "--format dot is only available for gen".to_string()),
    }
}

fn ids(values: impl IntoIterator<Item = usize>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

struct GraphReport<'a>(&'a Graph);

impl Serialize for GraphReport<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.to_json_value().serialize(s)
    }
}

impl Report for GraphReport<'_> {
    fn text(&self) -> String {
        let g = self.0;
        let name = g.grid().map_or_else(|| "graph".to_string(), |grid| grid.to_string());
        let mut out = format!(
            "{name}: {} vertices, {} edges, min degree {}\n",
            g.vertex_count(),
            g.edge_count(),
            g.min_degree()
        );
        for v in 0..g.vertex_count() {
            out += &format!("{v}: {}\n", ids(g.neighbors(v).iter().copied()));
        }
        out
    }

    fn dot(&self) -> Option<String> {
        Some(self.0.to_dot())
    }
}

#[derive(Serialize)]
struct AlphaReport {
    alpha: usize,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    sets: Option<Vec<IndependentSet>>,
}

impl Report for AlphaReport {
    fn text(&self) -> String {
        let mut out = format!("alpha {}\ncount {}\n", self.alpha, self.count);
        for s in self.sets.iter().flatten() {
            out += &format!("{}\n", ids(s.to_vec()));
        }
        out
    }
}

fn optional_divisor(d: &Option<Divisor>) -> String {
    d.as_ref().map_or_else(|| "none".into(), |d| d.to_string())
}

impl Report for GonalityReport {
    fn text(&self) -> String {
        let method = serde_json::to_value(self.method).expect("plain enum");
        format!(
            "value {}\nwitness {}\nmethod {}\nlower_bound {}\n",
            self.value,
            optional_divisor(&self.witness),
            method.as_str().unwrap_or_default(),
            self.lower_bound
        )
    }
}

impl Report for RankResult {
    fn text(&self) -> String {
        format!(
            "rank {}{}\ncertificate {}\n",
            self.rank,
            if self.exact { "" } else { " (lower bound)" },
            optional_divisor(&self.certificate)
        )
    }
}

#[derive(Serialize)]
struct ReduceReport {
    q: usize,
    values: Vec<i64>,
    fires: Vec<i64>,
}

impl Report for ReduceReport {
    fn text(&self) -> String {
        format!("{}\n", Divisor::new(self.values.clone()))
    }
}

impl Report for BurnReport {
    fn text(&self) -> String {
        self.trace()
    }
}

#[derive(Serialize)]
struct FireReport {
    set: Vec<usize>,
    legal: bool,
    values: Vec<i64>,
}

impl Report for FireReport {
    fn text(&self) -> String {
        format!(
            "{}\nlegal {}\n",
            Divisor::new(self.values.clone()),
            self.legal
        )
    }
}

#[derive(Serialize)]
struct ClassesReport {
    degree: u64,
    count: usize,
    classes: Vec<Vec<i64>>,
}

impl Report for ClassesReport {
    fn text(&self) -> String {
        let mut out = format!("degree {}\ncount {}\n", self.degree, self.count);
        for c in &self.classes {
            out += &format!("{}\n", Divisor::new(c.clone()));
        }
        out
    }
}

#[derive(Serialize)]
struct VerifyReport {
    theorem: u8,
    m: usize,
    n: usize,
    alpha: usize,
    alpha_formula: usize,
    gonality: u64,
    gonality_bound: u64,
    exact_gonality: Option<u64>,
    correspondence: CorrespondenceReport,
    passed: bool,
}

impl Report for VerifyReport {
    fn text(&self) -> String {
        let c = &self.correspondence;
        let mode = serde_json::to_value(c.mode).expect("plain enum");
        let exact = self
            .exact_gonality
            .map_or_else(|| "not run".into(), |v| v.to_string());
        format!(
            "board {}{},{}\nalpha {} (formula {})\ngonality {} (independence bound {}, exact search {})\n\
             correspondence {} at degree {}: {} sets, injective {}, positive rank {}, surjective {}\n\
             matched {}\npassed {}\n",
            if self.theorem == 2 { "TQ" } else { "Q" },
            self.m,
            self.n,
            self.alpha,
            self.alpha_formula,
            self.gonality,
            self.gonality_bound,
            exact,
            mode.as_str().unwrap_or_default(),
            c.degree,
            c.mis_list.len(),
            c.injective,
            c.images_positive_rank,
            c.surjective.map_or_else(|| "not run".into(), |s| s.to_string()),
            c.matched,
            self.passed
        )
    }
}

fn read_arg(value: &str, flag: &str) -> Result<String, Failure> {
    match value.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{flag}: cannot read {path}: {e}"))),
        None => Ok(value.to_string()),
    }
}

fn load_graph(args: &GraphArgs) -> Result<Graph, Failure> {
    if let Some(spec) = &args.graph {
        let graph = if let Some(count) = spec.strip_prefix("complete:") {
            let count = count
                .parse()
                .map_err(|_| Failure::Usage(format!("--graph: bad vertex count {count:?}")))?;
            Graph::complete(count)
        } else if spec == "ladder" {
            Ok(Graph::capped_ladder())
        } else if spec.starts_with('@') {
            Graph::from_json(&read_arg(spec, "--graph")?)
        } else {
            return Err(Failure::Usage(
                "--graph: expected @FILE, complete:N or ladder".into(),
            ));
        };
        return graph.map_err(|e| Failure::Usage(format!("--graph: {e}")));
    }
    match (args.m, args.n) {
        (Some(m), Some(n)) if args.toroidal => Ok(Graph::toroidal_queen(m, n)?),
        (Some(m), Some(n)) => Ok(Graph::queen(m, n)?),
        _ => Err(Failure::Usage("give --m and --n, or --graph".into())),
    }
}

fn load_divisor(g: &Graph, arg: &DivisorArg) -> Result<Divisor, Failure> {
    let d = Divisor::parse(&read_arg(&arg.divisor, "--divisor")?)
        .map_err(|e| Failure::Usage(format!("--divisor: {e}")))?;
    if d.len() != g.vertex_count() {
        return Err(Failure::Usage(format!(
            "--divisor: has {} entries, graph has {} vertices",
            d.len(),
            g.vertex_count()
        )));
    }
    Ok(d)
}

fn check_vertex(g: &Graph, v: usize, flag: &str) -> Result<(), Failure> {
    g.check_vertex(v)
        .map_err(|e| Failure::Usage(format!("{flag}: {e}")))
}

fn parse_set(g: &Graph, text: &str) -> Result<VertexSet, Failure> {
    let mut set = VertexSet::new(g.vertex_count());
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v = tok
            .parse()
            .map_err(|_| Failure::Usage(format!("--set: bad vertex {tok:?}")))?;
        check_vertex(g, v, "--set")?;
        set.insert(v);
    }
    Ok(set)
}

/// Rendered output plus the exit code to report with it.
struct Outcome {
    output: String,
    code: i32,
    note: Option<String>,
}

fn emit<R: Report>(report: &R, format: Format) -> Result<Outcome, Failure> {
    Ok(Outcome {
        output: render(report, format).map_err(Failure::Usage)?,
        code: EXIT_OK,
        note: None,
    })
}

fn formula_gonality(g: &Graph, limits: &Limits) -> Result<GonalityReport, Failure> {
    let grid = g
        .grid()
        .ok_or_else(|| Failure::Usage("--mode formula needs a board (--m/--n)".into()))?;
    let value = if grid.toroidal {
        toroidal_gonality_formula(grid.m, grid.n)?
    } else {
        queen_gonality_formula(grid.m, grid.n)?
    };
    let witness = if g.vertex_count() <= limits.max_mis_vertices {
        gonality_upper_bound(g, limits)?
            .witness
            .filter(|w| w.degree() as u64 == value)
    } else {
        None
    };
    Ok(GonalityReport {
        value,
        witness,
        method: GonalityMethod::Formula,
        lower_bound: value,
    })
}

fn verify(theorem: u8, m: usize, n: usize, limits: &Limits) -> Result<VerifyReport, Failure> {
    let (g, alpha_formula, gonality) = if theorem == 1 {
        (Graph::queen(m, n)?, queen_alpha_formula(m, n)?, queen_gonality_formula(m, n)?)
    } else {
        (
            Graph::toroidal_queen(m, n)?,
            toroidal_alpha_formula(m, n)?,
            toroidal_gonality_formula(m, n)?,
        )
    };
    let count = g.vertex_count();
    let alpha = max_independent_sets(&g, limits.max_mis_vertices)?.alpha;
    let bound = (count - alpha) as u64;
    let within_cap = |degree: u64| composition_count(degree, count) <= limits.max_compositions as u128;

    let mode = if within_cap(bound) {
        CorrespondenceMode::Full
    } else {
        CorrespondenceMode::InjectivityOnly
    };
    let correspondence = verify_correspondence(&g, bound, mode, limits)?;
    let exact_gonality = if within_cap(bound.saturating_sub(1)) {
        let report = gonality_exact_small(&g, limits)?;
        (report.method == GonalityMethod::ExactSearch).then_some(report.value)
    } else {
        None
    };
    let passed = alpha == alpha_formula
        && gonality == bound
        && correspondence.matched
        && exact_gonality.is_none_or(|v| v == gonality);
    Ok(VerifyReport {
        theorem,
        m,
        n,
        alpha,
        alpha_formula,
        gonality,
        gonality_bound: bound,
        exact_gonality,
        correspondence,
        passed,
    })
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let limits = Limits::with_max_compositions(cli.max_compositions);
    let format = cli.format;
    match &cli.command {
        Command::Gen { graph } => emit(&GraphReport(&load_graph(graph)?), format),
        Command::Alpha { graph, enumerate } => {
            let g = load_graph(graph)?;
            let mis = max_independent_sets(&g, limits.max_mis_vertices)?;
            let report = AlphaReport {
                alpha: mis.alpha,
                count: mis.sets.len(),
                sets: enumerate.then_some(mis.sets),
            };
            emit(&report, format)
        }
        Command::Gonality { graph, mode } => {
            let g = load_graph(graph)?;
            let report = match mode {
                Mode::Formula => formula_gonality(&g, &limits)?,
                Mode::Exact => gonality_exact_small(&g, &limits)?,
                Mode::Bound => gonality_upper_bound(&g, &limits)?,
            };
            emit(&report, format)
        }
        Command::Rank { graph, divisor, max_k } => {
            let g = load_graph(graph)?;
            let d = load_divisor(&g, divisor)?;
            let result = rank(&g, &d, *max_k, &limits)?;
            let mut outcome = emit(&result, format)?;
            if result.rank < *max_k as i64 {
                outcome.code = EXIT_FAILED;
                outcome.note = Some(format!("rank {} is below --max-k {max_k}", result.rank));
            }
            Ok(outcome)
        }
        Command::Reduce { graph, divisor, q } => {
            let g = load_graph(graph)?;
            let d = load_divisor(&g, divisor)?;
            check_vertex(&g, *q, "--q")?;
            let (reduced, script) = q_reduce(&g, &d, *q)?;
            let report = ReduceReport {
                q: *q,
                values: reduced.values,
                fires: script.fires,
            };
            emit(&report, format)
        }
        Command::Burn { graph, divisor, q } => {
            let g = load_graph(graph)?;
            let d = load_divisor(&g, divisor)?;
            check_vertex(&g, *q, "--q")?;
            let report = dhar_burn(&g, &d, *q).map_err(|e| Failure::Usage(format!("--divisor: {e}")))?;
            emit(&report, format)
        }
        Command::Fire { graph, divisor, set } => {
            let g = load_graph(graph)?;
            let d = load_divisor(&g, divisor)?;
            let set = parse_set(&g, set)?;
            let report = FireReport {
                legal: is_legal_firing(&g, &d, &set)?,
                values: fire_set(&g, &d, &set)?.values,
                set: set.to_vec(),
            };
            emit(&report, format)
        }
        Command::Classes { graph, degree } => {
            let g = load_graph(graph)?;
            let classes: Vec<Vec<i64>> = enumerate_positive_rank_classes(&g, *degree, &limits)?
                .into_iter()
                .map(|d| d.values)
                .collect();
            emit(
                &ClassesReport {
                    degree: *degree,
                    count: classes.len(),
                    classes,
                },
                format,
            )
        }
        Command::Verify { theorem, m, n } => {
            let report = verify(*theorem, *m, *n, &limits)?;
            let mut outcome = emit(&report, format)?;
            if !report.passed {
                outcome.code = EXIT_FAILED;
                outcome.note = Some("verification failed".into());
            }
            Ok(outcome)
        }
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{e}");
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads as usize)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {} worker threads: {e}", cli.threads);
            return EXIT_USAGE;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.output.as_bytes());
            if let Some(note) = outcome.note {
                let _ = writeln!(err, "{note}");
            }
            outcome.code
        }
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message());
            failure.code()
        }
    }
}
