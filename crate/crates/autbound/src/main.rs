use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use autbound::render;
use autbound::verify::{self, Suite, VerifyOptions};
use autbound::{parse_graph, parse_graph6, FormatError, InputFormat};
use autbound_core::{compose_report, BoundId, BoundReport, CorollaryMode, Graph, ReportOptions};
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

/// Exact automorphism group orders and the upper bounds that estimate them.
#[derive(Parser)]
#[command(name = "autbound", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one graph.
    Analyze {
        /// Input file; stdin when absent or `-`.
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "graph6")]
        format: FormatArg,
        #[command(flatten)]
        opts: ReportArgs,
    },
    /// Analyze every graph in a graph6 file, one per line.
    Batch {
        input: Option<PathBuf>,
        #[command(flatten)]
        opts: ReportArgs,
    },
    /// Run the verification suites over all small connected graphs.
    Verify {
        #[arg(long, default_value_t = verify::MAX_NMAX)]
        nmax: usize,
        /// Comma-separated subset of: soundness, exactness, oracle, embeddings, estimates, greedy, orbits.
        #[arg(long, value_delimiter = ',')]
        suites: Option<Vec<Suite>>,
        /// graph6 file to sweep instead of the generated corpus.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Graph6,
    Edgelist,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputArg {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Corrected,
    Verbatim,
    Both,
}

#[derive(Args)]
struct ReportArgs {
    /// Comma-separated bound ids or aliases (eq1, ..., eq8, thm1, thm3, thm3_plain, corollary).
    #[arg(long, value_delimiter = ',')]
    bounds: Option<Vec<BoundId>>,
    /// Compute the exact group order and orbits.
    #[arg(long, default_value_t = true, action = ArgAction::Set)]
    exact_aut: bool,
    /// Try every start vertex and tree root, keeping the smallest bound.
    #[arg(long)]
    exhaustive_start: bool,
    /// Assert the graph is a square or 3-connected planar.
    #[arg(long = "assert-class5")]
    assert_class5: bool,
    #[arg(long, value_enum, default_value = "corrected")]
    corollary_mode: ModeArg,
    #[arg(long, value_enum, default_value = "table")]
    output: OutputArg,
}

impl ReportArgs {
    fn modes(&self) -> Vec<CorollaryMode> {
        match self.corollary_mode {
            ModeArg::Corrected => vec![CorollaryMode::Corrected],
            ModeArg::Verbatim => vec![CorollaryMode::Verbatim],
            ModeArg::Both => vec![CorollaryMode::Corrected, CorollaryMode::Verbatim],
        }
    }

    fn options(&self, graph_id: String) -> ReportOptions {
        ReportOptions {
            graph_id,
            bounds: self.bounds.clone(),
            exact_aut: self.exact_aut,
            exhaustive_start: self.exhaustive_start,
            class5_asserted: self.assert_class5,
            corollary_modes: self.modes(),
        }
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_SIZE: u8 = 3;

fn input_error(message: impl ToString) -> Failure {
    Failure { code: EXIT_INPUT, message: message.to_string() }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        let code = if e.is_size_refusal() { EXIT_SIZE } else { EXIT_INPUT };
        Failure { code, message: e.to_string() }
    }
}

impl From<autbound_core::Error> for Failure {
    fn from(e: autbound_core::Error) -> Self {
        use autbound_core::Error::*;
        let code = match e {
            SizeLimit { .. } | TooManyVertices { .. } => EXIT_SIZE,
            _ => EXIT_INPUT,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| input_error(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn render_one(report: &BoundReport, output: OutputArg) -> String {
    match output {
        OutputArg::Table => render::table(report),
        OutputArg::Csv => render::analyze_csv(report, true),
        OutputArg::Json => render::json(report, None) + "\n",
    }
}

fn analyze(input: Option<PathBuf>, format: FormatArg, opts: ReportArgs) -> Result<String, Failure> {
    let text = read_input(input.as_ref())?;
    let format = match format {
        FormatArg::Graph6 => InputFormat::Graph6,
        FormatArg::Edgelist => InputFormat::EdgeList,
    };
    let g = parse_graph(&text, format)?;
    let id = match format {
        InputFormat::Graph6 => text.trim().to_string(),
        InputFormat::EdgeList => input.map_or("stdin".into(), |p| p.display().to_string()),
    };
    let report = compose_report(&g, &opts.options(id))?;
    Ok(render_one(&report, opts.output))
}

fn batch(input: Option<PathBuf>, opts: ReportArgs) -> Result<String, Failure> {
    let text = read_input(input.as_ref())?;
    let lines: Vec<(usize, &str)> =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
    let results: Vec<Result<(String, BoundReport), String>> = lines
        .par_iter()
        .map(|&(line, g6)| {
            let g: Graph = parse_graph6(g6).map_err(|e| format!("line {line}: {e}"))?;
            let report = compose_report(&g, &opts.options(g6.into())).map_err(|e| format!("line {line}: {e}"))?;
            Ok((g6.to_string(), report))
        })
        .collect();

    let labels = render::bound_labels(opts.bounds.as_deref(), &opts.modes());
    let mut out = String::new();
    if opts.output == OutputArg::Csv && !lines.is_empty() {
        out.push_str(&render::batch_csv_header(&labels));
    }
    let stderr = io::stderr();
    for (&(line, _), result) in lines.iter().zip(results) {
        match result {
            Ok((g6, report)) => match opts.output {
                OutputArg::Csv => out.push_str(&render::batch_csv_row(line, &g6, &report, &labels)),
                OutputArg::Json => {
                    out.push_str(&render::json(&report, Some(line)));
                    out.push('\n');
                }
                OutputArg::Table => {
                    out.push_str(&render::table(&report));
                    out.push('\n');
                }
            },
            Err(diagnostic) => {
                let _ = writeln!(stderr.lock(), "{diagnostic}");
            }
        }
    }
    Ok(out)
}

fn run_verify(
    nmax: usize,
    suites: Option<Vec<Suite>>,
    corpus: Option<PathBuf>,
    seed: u64,
) -> Result<(String, bool), Failure> {
    let corpus = match corpus {
        Some(path) => {
            let text = read_input(Some(&path))?;
            let mut graphs = Vec::new();
            for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
                let g = parse_graph6(line.trim())
                    .map_err(|e| input_error(format!("{} line {}: {e}", path.display(), i + 1)))?;
                graphs.push(g);
            }
            Some(graphs)
        }
        None => None,
    };
    let options = VerifyOptions {
        nmax,
        suites: suites.unwrap_or_else(|| Suite::ALL.to_vec()),
        corpus,
        seed,
        ..Default::default()
    };
    let report = verify::run(&options).map_err(|e| match e {
        verify::VerifyError::Nmax(_) => input_error(e),
        verify::VerifyError::Core(core) => core.into(),
    })?;
    Ok((report.render(), report.passed()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { input, format, opts } => analyze(input, format, opts).map(|s| (s, true)),
        Command::Batch { input, opts } => batch(input, opts).map(|s| (s, true)),
        Command::Verify { nmax, suites, corpus, seed } => run_verify(nmax, suites, corpus, seed),
    };
    match result {
        Ok((text, passed)) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            let _ = stdout.flush();
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VIOLATION)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
