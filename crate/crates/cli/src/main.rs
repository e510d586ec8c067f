//! `staircase` — exact-arithmetic toolkit for staircase tableaux, their
//! insertion bijections, and the ASEP stationary distribution.
//!
//! All output is deterministic and exact (integers and fractions as
//! strings); there is no floating point anywhere. Exit codes: 0 success,
//! 1 a requested check failed, 2 bad usage or malformed input.

use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use staircase_core::ansatz::{stationary_tableaux, LambdaIndexConvention};
use staircase_core::markov::{stationary_exact, transition_matrix};
use staircase_core::poly::{parse_rational, ParamPoint};
use staircase_core::tableau_a::{
    enumerate, ColoredInversionTable, InsertionEvent, LabelSet, StaircaseTableau,
};
use staircase_core::tableau_b::{enumerate_b, HalfTableauB};
use staircase_core::verify;

#[derive(Parser)]
#[command(
    name = "staircase",
    about = "Staircase tableaux, insertion bijections, and exact ASEP stationary distributions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count or list all tableaux of a given size.
    Enumerate(EnumerateArgs),
    /// Weight polynomial of a tableau, as JSON.
    Weight(TableauInput),
    /// Diagonal type of a tableau, as a b/w word.
    Type(TableauInput),
    /// Apply one insertion event to a tableau.
    Insert(InsertArgs),
    /// Undo the last insertion; prints the event and the smaller tableau.
    Uninsert(TableauInput),
    /// Convert a tableau to its colored inversion table (or back).
    Invtable(InvtableArgs),
    /// Exact stationary distribution of the exclusion process.
    Stationary(StationaryArgs),
    /// Run a verification suite and print its JSON report.
    Verify(VerifyArgs),
    /// Echo a tableau in text form, optionally with its q/u filling.
    Render(RenderArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    /// Tableau size n.
    #[arg(long)]
    size: usize,
    /// Restrict labels to this set, e.g. "ad" or "bg".
    #[arg(long)]
    labels: Option<String>,
    /// Print only the number of tableaux.
    #[arg(long)]
    count: bool,
    /// Enumerate type B half tableaux instead.
    #[arg(long = "type-b")]
    type_b: bool,
}

#[derive(Args)]
struct TableauInput {
    /// Input file path, or "-" for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    /// Treat the input as a type B half tableau.
    #[arg(long = "type-b")]
    type_b: bool,
}

#[derive(Args)]
struct InsertArgs {
    #[command(flatten)]
    tableau: TableauInput,
    /// Insertion event: a single letter "a|b|g|d" or a triple "x,y,i".
    #[arg(long)]
    event: String,
}

#[derive(Args)]
struct InvtableArgs {
    /// Input file path, or "-" for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    /// Input is an inversion-table JSON; print the tableau instead.
    #[arg(long = "from-table")]
    from_table: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Tableaux,
    Markov,
    Both,
}

#[derive(Args)]
struct StationaryArgs {
    /// Number of lattice sites n ≥ 1.
    #[arg(long)]
    size: usize,
    #[arg(long)]
    alpha: String,
    #[arg(long)]
    beta: String,
    #[arg(long)]
    gamma: String,
    #[arg(long)]
    delta: String,
    #[arg(long)]
    q: String,
    #[arg(long)]
    u: String,
    /// How to compute: the tableau generating function, the explicit
    /// chain solve, or both (compared entrywise).
    #[arg(long, value_enum, default_value = "both")]
    method: Method,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionFlag {
    /// λ subscript = size of the left-hand-side word.
    LhsSize,
    /// λ subscript = size of the left-hand-side word minus one.
    LhsSizeMinusOne,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run: prop7 | thm6 | thm9 | thm12 | prop13 | cor8 | cor14 |
    /// sys21 | sys41 | oracle | symmetry | product | all.
    target: String,
    /// Largest size each suite covers (enumeration cost grows as 4^n·n!).
    #[arg(long = "max-size", default_value_t = 3)]
    max_size: usize,
    /// λ-index convention for the exploratory type B system.
    #[arg(long = "lambda-convention", value_enum, default_value = "lhs-size")]
    lambda_convention: ConventionFlag,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    tableau: TableauInput,
    /// Show the q/u filling of the empty cells.
    #[arg(long)]
    fill: bool,
}

fn main() -> ExitCode {
    // Restore default SIGPIPE so streaming output dies quietly when the
    // reader closes early, instead of panicking on EPIPE.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| format!("reading stdin: {e}"))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))
    }
}

enum Tableau {
    A(StaircaseTableau),
    B(HalfTableauB),
}

fn read_tableau(input: &TableauInput) -> Result<Tableau, String> {
    let text = read_input(&input.input)?;
    if input.type_b {
        HalfTableauB::parse(&text)
            .map(Tableau::B)
            .map_err(|e| e.to_string())
    } else {
        StaircaseTableau::parse(&text)
            .map(Tableau::A)
            .map_err(|e| e.to_string())
    }
}

fn parse_labels(s: &Option<String>) -> Result<Option<LabelSet>, String> {
    s.as_deref()
        .map(|t| LabelSet::parse(t).map_err(|e| e.to_string()))
        .transpose()
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Enumerate(args) => {
            let filter = parse_labels(&args.labels)?;
            if args.count {
                let count = if args.type_b {
                    enumerate_b(args.size, filter).count()
                } else {
                    enumerate(args.size, filter).count()
                };
                println!("{count}");
            } else {
                let stdout = std::io::stdout().lock();
                let mut out = std::io::BufWriter::new(stdout);
                let mut emit = |text: String| {
                    writeln!(out, "{text}\n").map_err(|e| format!("writing stdout: {e}"))
                };
                if args.type_b {
                    for h in enumerate_b(args.size, filter) {
                        emit(h.render())?;
                    }
                } else {
                    for t in enumerate(args.size, filter) {
                        emit(t.render())?;
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Weight(input) => {
            let w = match read_tableau(&input)? {
                Tableau::A(t) => t.weight(),
                Tableau::B(h) => h.weight(),
            }
            .map_err(|e| e.to_string())?;
            println!("{}", w.to_json());
            Ok(ExitCode::SUCCESS)
        }
        Command::Type(input) => {
            let m = match read_tableau(&input)? {
                Tableau::A(t) => t.type_of(),
                Tableau::B(h) => h.type_of(),
            }
            .map_err(|e| e.to_string())?;
            println!("{m}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Insert(args) => {
            let event = InsertionEvent::parse(&args.event).map_err(|e| e.to_string())?;
            let rendered = match read_tableau(&args.tableau)? {
                Tableau::A(t) => t.insert(&event).map_err(|e| e.to_string())?.render(),
                Tableau::B(h) => h.insert(&event).map_err(|e| e.to_string())?.render(),
            };
            println!("{rendered}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Uninsert(input) => {
            let (event, rendered) = match read_tableau(&input)? {
                Tableau::A(t) => {
                    let (small, e) = t.uninsert().map_err(|e| e.to_string())?;
                    (e, small.render())
                }
                Tableau::B(h) => {
                    let (small, e) = h.uninsert().map_err(|e| e.to_string())?;
                    (e, small.render())
                }
            };
            let out = json!({ "event": event.to_string(), "tableau": rendered });
            println!("{out}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Invtable(args) => {
            let text = read_input(&args.input)?;
            if args.from_table {
                let v: Value =
                    serde_json::from_str(&text).map_err(|e| format!("parsing JSON: {e}"))?;
                let table = ColoredInversionTable::from_json(&v).map_err(|e| e.to_string())?;
                let t = table.to_tableau().map_err(|e| e.to_string())?;
                println!("{}", t.render());
            } else {
                let t = StaircaseTableau::parse(&text).map_err(|e| e.to_string())?;
                let table = t.to_inversion_table().map_err(|e| e.to_string())?;
                println!("{}", table.to_json());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Stationary(args) => {
            if args.size == 0 {
                return Err("--size must be at least 1".into());
            }
            let rat = |name: &str, s: &str| {
                parse_rational(s).map_err(|e| format!("--{name}: {e}"))
            };
            let pt = ParamPoint::six(
                rat("alpha", &args.alpha)?,
                rat("beta", &args.beta)?,
                rat("gamma", &args.gamma)?,
                rat("delta", &args.delta)?,
                rat("q", &args.q)?,
                rat("u", &args.u)?,
            );
            let by_tableaux = || {
                stationary_tableaux(args.size, &pt).map_err(|e| e.to_string())
            };
            let by_markov = || -> Result<_, String> {
                let matrix = transition_matrix(args.size, &pt).map_err(|e| e.to_string())?;
                stationary_exact(&matrix).map_err(|e| e.to_string())
            };
            match args.method {
                Method::Tableaux => {
                    println!("{}", by_tableaux()?.to_json());
                    Ok(ExitCode::SUCCESS)
                }
                Method::Markov => {
                    println!("{}", by_markov()?.to_json());
                    Ok(ExitCode::SUCCESS)
                }
                Method::Both => {
                    let t = by_tableaux()?;
                    let m = by_markov()?;
                    let out = json!({ "markov": m.to_json(), "tableaux": t.to_json() });
                    println!("{out}");
                    if t == m {
                        Ok(ExitCode::SUCCESS)
                    } else {
                        Ok(ExitCode::FAILURE)
                    }
                }
            }
        }
        Command::Verify(args) => {
            let convention = match args.lambda_convention {
                ConventionFlag::LhsSize => LambdaIndexConvention::LhsWordSize,
                ConventionFlag::LhsSizeMinusOne => LambdaIndexConvention::LhsWordSizeMinusOne,
            };
            let Some(reports) = verify::run_target(&args.target, args.max_size, convention)
            else {
                return Err(format!(
                    "unknown verify target '{}'; expected one of {} or all",
                    args.target,
                    verify::ALL_TARGETS.join(", ")
                ));
            };
            let all_passed = reports.iter().all(|r| r.passed());
            if reports.len() == 1 {
                println!("{}", reports[0].to_json());
            } else {
                let array: Vec<Value> = reports.iter().map(|r| r.to_json()).collect();
                println!("{}", Value::Array(array));
            }
            Ok(if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Render(args) => {
            let rendered = match read_tableau(&args.tableau)? {
                Tableau::A(t) => {
                    if args.fill {
                        t.fill().map_err(|e| e.to_string())?.render()
                    } else {
                        t.render()
                    }
                }
                Tableau::B(h) => {
                    if args.fill {
                        h.render_filled().map_err(|e| e.to_string())?
                    } else {
                        h.render()
                    }
                }
            };
            println!("{rendered}");
            Ok(ExitCode::SUCCESS)
        }
    }
}
