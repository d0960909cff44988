use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lscsp::io::instance_to_string;
use lscsp::{Algorithm, Answer, DEFAULT_ORACLE_BUDGET};
use lscsp_cli::bench::{self, BenchParams, Suite};
use lscsp_cli::report::RunReport;
use lscsp_cli::{cmd_classify, cmd_gen, cmd_solve, CliError, GenKind, GenOptions, SolveOptions};

/// Local search for Boolean CSPs: classify languages, solve instances,
/// generate reduction gadgets.
///
/// Exit codes: 0 YES (or success), 1 NO, 2 error.
#[derive(Parser)]
#[command(name = "lscsp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the relations declared in a file.
    Classify {
        path: PathBuf,
        /// Print the JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Decide an instance file.
    Solve(SolveArgs),
    /// Write a reduction gadget as an instance file.
    Gen(GenArgs),
    /// Node counts of the search-tree algorithms against their bound.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    path: PathBuf,
    /// Force an algorithm: ihsb, width2, horn, flipsep or brute.
    #[arg(long)]
    algo: Option<Algorithm>,
    /// Maximum search nodes before giving up.
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    budget: u64,
    /// Also run the exhaustive oracle and compare answers.
    #[arg(long)]
    check_oracle: bool,
    /// Search start variables in order so the witness is canonical.
    #[arg(long)]
    deterministic: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    CliqueVc,
    W1,
    Domset,
    OneInThree,
}

#[derive(Args)]
struct GenArgs {
    kind: Kind,
    /// Edge-list file: vertex count, then one `u v` pair per line.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Vertex the clique must contain.
    #[arg(long, default_value_t = 0)]
    x: usize,
    /// Clique size or dominating-set size.
    #[arg(long)]
    t: Option<usize>,
    /// Source instance over x ∨ y (w1, one-in-three). Random if omitted.
    #[arg(long)]
    source: Option<PathBuf>,
    /// Variables of the random source.
    #[arg(long, default_value_t = 4)]
    vars: usize,
    /// Budget of the random source.
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Non-Horn relation for w1.
    #[arg(long)]
    r1: Option<String>,
    /// Non-flip-separable relation for w1.
    #[arg(long)]
    r2: Option<String>,
    /// Horn relation that is not IHS-B− for domset (default HORN3).
    #[arg(long)]
    relation: Option<String>,
    /// File with extra relation definitions, looked up by name.
    #[arg(long)]
    relations: Option<PathBuf>,
    /// Copy count S for one-in-three (default: the provably safe one).
    #[arg(long)]
    scale: Option<usize>,
    /// Replace x ≠ y constraints by 1-in-3 constraints.
    #[arg(long)]
    eliminate_neq: bool,
    /// Output file; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 6)]
    kmax: usize,
    /// Comma-separated instance sizes.
    #[arg(long, value_delimiter = ',', default_value = "12,24")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the table as CSV to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn fail(e: &CliError) -> ExitCode {
    if e.is_budget() {
        eprintln!("budget exceeded: {e}; raise --budget to search further");
    } else {
        eprintln!("error: {e}");
    }
    ExitCode::from(2)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_report(report: &RunReport, json: bool) {
    if json {
        emit(&(report.to_json() + "\n"));
    } else {
        emit(&report.to_text());
    }
}

fn run_gen(a: GenArgs) -> Result<(), CliError> {
    let kind = match a.kind {
        Kind::CliqueVc => GenKind::CliqueVc,
        Kind::W1 => GenKind::W1,
        Kind::Domset => GenKind::Domset,
        Kind::OneInThree => GenKind::OneInThree,
    };
    let opts = GenOptions {
        graph: a.graph,
        x: a.x,
        t: a.t,
        source: a.source,
        vars: a.vars,
        k: a.k,
        seed: a.seed,
        r1: a.r1,
        r2: a.r2,
        relation: a.relation,
        relations: a.relations,
        scale: a.scale,
        eliminate_neq: a.eliminate_neq,
    };
    let g = cmd_gen(kind, &opts)?;
    let text = instance_to_string(&g.instance, Some(g.metadata));
    match a.out {
        Some(path) => {
            std::fs::write(&path, text)?;
            eprintln!(
                "wrote {} ({} variables, {} constraints, k = {})",
                path.display(),
                g.instance.num_variables(),
                g.instance.formula().constraints.len(),
                g.instance.k()
            );
        }
        None => emit(&text),
    }
    Ok(())
}

fn run_bench(a: BenchArgs) -> Result<bool, CliError> {
    let rows = bench::run_bench(&BenchParams {
        suite: a.suite,
        kmax: a.kmax,
        sizes: a.sizes,
        seed: a.seed,
    })?;
    emit(&bench::to_text(&rows));
    if let Some(path) = a.csv {
        std::fs::write(path, bench::to_csv(&rows)?)?;
    }
    let ok = rows.iter().all(|r| r.within_bound);
    if !ok {
        eprintln!("error: some rows exceed the node bound");
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    match cli.command {
        Command::Classify { path, json } => match cmd_classify(&path, argv) {
            Ok(report) => {
                print_report(&report, json);
                ExitCode::SUCCESS
            }
            Err(e) => fail(&e),
        },
        Command::Solve(a) => {
            let opts = SolveOptions {
                algorithm: a.algo,
                budget: a.budget,
                check_oracle: a.check_oracle,
                deterministic: a.deterministic,
            };
            match cmd_solve(&a.path, &opts, argv) {
                Ok(report) => {
                    print_report(&report, a.json);
                    match report.decision.map(|d| d.answer) {
                        Some(Answer::Yes) => ExitCode::SUCCESS,
                        _ => ExitCode::from(1),
                    }
                }
                Err(e) => fail(&e),
            }
        }
        Command::Gen(a) => match run_gen(a) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => fail(&e),
        },
        Command::Bench(a) => match run_bench(a) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(2),
            Err(e) => fail(&e),
        },
    }
}
