mod bundle;
mod fuzz;
mod report;

use std::fs;
use std::io::{self, Read};
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tkw::g2::conjugate_equal;
use tkw::gauss::parse_corpus;
use tkw::gbar::DEFAULT_BUDGET;
use tkw::moves::{resolve_move, MoveSpec};
use tkw::{apply_move, compare, enumerate_moves, phi2, phibar, LinearGaussDiagram};

use bundle::InvariantBundle;

pub const EXIT_EQUAL: u8 = 0;
pub const EXIT_DISTINCT: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_VIOLATION: u8 = 3;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scheme {
    Phi2,
    Phibar,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Phi2 => "phi2",
            Scheme::Phibar => "phibar",
        }
    }
}

/// Invariants of long knots in the full torus from linear Gauss codes.
///
/// INPUT is either a Gauss code such as "O1+ U2- O2- U1+", a path to a
/// `.gauss` file, or `-` for standard input.
#[derive(Debug, Parser)]
#[command(name = "tkw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Chord table, classification and letter previews.
    Parse {
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// The raw letter word of a scheme.
    Word {
        input: String,
        #[arg(long, value_enum, default_value = "phi2")]
        scheme: Scheme,
        #[arg(long)]
        json: bool,
    },
    /// The invariant with its reduced form.
    Invariant {
        input: String,
        #[arg(long, value_enum, default_value = "phi2")]
        scheme: Scheme,
        #[arg(long)]
        json: bool,
    },
    /// Compares the invariants of two diagrams.
    ///
    /// Exit status: 0 equal, 1 distinct, 2 unknown (budget exhausted).
    Compare {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value = "phi2")]
        scheme: Scheme,
        /// Search budget for phibar, in visited words.
        #[arg(long, env = "TKW_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Compare phi2 up to conjugacy (closed knots).
        #[arg(long)]
        closed: bool,
        #[arg(long)]
        json: bool,
    },
    /// Lists the applicable moves, or applies moves and prints the trajectory.
    Moves {
        input: String,
        /// A move such as `R1a:insert@3`, `R2a:delete@c1,c2` or `R3a@c1,c2,c3`.
        #[arg(long = "apply")]
        apply: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// The diagram read against the orientation.
    Reverse { input: String },
    /// Random move walks checking invariance.
    ///
    /// Exit status: 0 pass, 3 violation.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        iters: u64,
        #[arg(long, default_value_t = 10)]
        max_moves: usize,
        #[arg(long, value_enum, default_value = "phi2")]
        scheme: Scheme,
        #[arg(long, env = "TKW_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn load(input: &str) -> Result<LinearGaussDiagram, UsageError> {
    let (text, from_file) = if input == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        (buf, true)
    } else if Path::new(input).is_file() {
        (fs::read_to_string(input)?, true)
    } else {
        (input.to_string(), false)
    };
    if !from_file {
        return Ok(text.parse()?);
    }
    let mut diagrams = parse_corpus(&text).map_err(|e| UsageError(format!("{input}: {e}")))?;
    match diagrams.len() {
        1 => Ok(diagrams.pop().unwrap()),
        n => Err(UsageError(format!(
            "{input}: expected one Gauss code, found {n}"
        ))),
    }
}

fn print_json(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("values serialize")
    );
}

fn run(command: Command) -> Result<u8, UsageError> {
    match command {
        Command::Parse { input, json } => {
            let d = load(&input)?;
            let r = report::ParseReport::new(&d);
            if json {
                print_json(&r.to_json());
            } else {
                print!("{r}");
            }
            Ok(EXIT_EQUAL)
        }
        Command::Word {
            input,
            scheme,
            json,
        } => {
            let d = load(&input)?;
            let word = bundle::raw_word(&d, scheme);
            if json {
                print_json(&json!({ "scheme": scheme.name(), "word": word.to_string() }));
            } else {
                println!("{word}");
            }
            Ok(EXIT_EQUAL)
        }
        Command::Invariant {
            input,
            scheme,
            json,
        } => {
            let d = load(&input)?;
            let b = InvariantBundle::new(&d, scheme);
            if json {
                print_json(&b.to_json());
            } else {
                print!("{b}");
            }
            Ok(EXIT_EQUAL)
        }
        Command::Compare {
            left,
            right,
            scheme,
            budget,
            closed,
            json,
        } => {
            let (l, r) = (load(&left)?, load(&right)?);
            Ok(cmd_compare(&l, &r, scheme, budget, closed, json))
        }
        Command::Moves { input, apply, json } => {
            let d = load(&input)?;
            if apply.is_empty() {
                let moves: Vec<String> =
                    enumerate_moves(&d).iter().map(|m| m.to_string()).collect();
                if json {
                    print_json(&json!(moves));
                } else {
                    for m in moves {
                        println!("{m}");
                    }
                }
                return Ok(EXIT_EQUAL);
            }
            let mut trajectory = vec![d];
            let mut applied = Vec::new();
            for text in &apply {
                let spec: MoveSpec = text.parse()?;
                let current = trajectory.last().unwrap();
                let mv =
                    resolve_move(current, &spec).map_err(|e| UsageError(format!("{text}: {e}")))?;
                let next = apply_move(current, &mv)?;
                applied.push(mv.to_string());
                trajectory.push(next);
            }
            if json {
                let codes: Vec<String> = trajectory.iter().map(|d| d.to_code()).collect();
                print_json(&json!({ "moves": applied, "trajectory": codes }));
            } else {
                for d in &trajectory {
                    println!("{}", d.to_code());
                }
            }
            Ok(EXIT_EQUAL)
        }
        Command::Reverse { input } => {
            println!("{}", load(&input)?.reverse().to_code());
            Ok(EXIT_EQUAL)
        }
        Command::Fuzz {
            seed,
            iters,
            max_moves,
            scheme,
            budget,
            json,
        } => {
            let r = fuzz::run(seed, iters, max_moves, scheme, budget);
            if json {
                print_json(&r.to_json());
            } else {
                print!("{r}");
            }
            Ok(if r.passed() {
                EXIT_EQUAL
            } else {
                EXIT_VIOLATION
            })
        }
    }
}

fn cmd_compare(
    l: &LinearGaussDiagram,
    r: &LinearGaussDiagram,
    scheme: Scheme,
    budget: usize,
    closed: bool,
    json: bool,
) -> u8 {
    match scheme {
        Scheme::Phi2 => {
            let (x, y) = (phi2(l), phi2(r));
            let equal = if closed {
                conjugate_equal(&x, &y)
            } else {
                x == y
            };
            let verdict = if equal { "equal" } else { "distinct" };
            if json {
                print_json(&json!({
                    "scheme": "phi2",
                    "closed": closed,
                    "verdict": verdict,
                    "left": x.to_json(),
                    "right": y.to_json(),
                }));
            } else {
                println!("{verdict}");
                println!("left:  {x}");
                println!("right: {y}");
            }
            if equal {
                EXIT_EQUAL
            } else {
                EXIT_DISTINCT
            }
        }
        Scheme::Phibar => {
            let (x, y) = (phibar(l), phibar(r));
            let verdict = compare(&x, &y, budget);
            if json {
                let mut v = verdict.to_json();
                v["scheme"] = json!("phibar");
                v["left"] = json!(x.to_string());
                v["right"] = json!(y.to_string());
                print_json(&v);
            } else {
                println!("{}", verdict.name());
                println!("left:  {x}");
                println!("right: {y}");
                match &verdict {
                    tkw::GBarVerdict::Equal { path, .. } => {
                        for step in path.rendered() {
                            println!("  {step}");
                        }
                    }
                    tkw::GBarVerdict::Distinct { left, right } => {
                        println!("abelian images {left} and {right}");
                    }
                    tkw::GBarVerdict::Unknown { budget_spent } => {
                        println!("gave up after {budget_spent} words");
                    }
                }
            }
            match verdict {
                tkw::GBarVerdict::Equal { .. } => EXIT_EQUAL,
                tkw::GBarVerdict::Distinct { .. } => EXIT_DISTINCT,
                tkw::GBarVerdict::Unknown { .. } => EXIT_UNKNOWN,
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
