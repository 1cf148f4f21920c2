mod render;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use diagramrep::diagram::{
    compose, enumerate_with_limit, Family, Partition, TwistedElement, DEFAULT_MAX_SIZE,
};
use diagramrep::linear::{linear_compose, parse_rational, phi_linear, LinearCombination};
use diagramrep::rep::{
    mu, phi_ordered, reduced, rho, rho_d, IndexedMatrix, Parity, SubsetOrdering,
};
use diagramrep::semiring::{Integer, Rational, Semiring, SemiringSelector};
use diagramrep::verify::{run_suite, Status, SuiteOptions, SUITES};
use diagramrep::{with_semiring, Error};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "diagramrep",
    version,
    about = "Diagram categories and their matrix representations over semirings"
)]
struct Cli {
    /// Semiring: boolean, nat, int, rational, tropical, mod:2^k. Defaults to
    /// boolean, or rational for `linear`; `verify` uses each suite's own.
    #[arg(long, global = true)]
    semiring: Option<SemiringSelector>,
    /// Subset ordering for matrix labels: binary, parity, evengap.
    #[arg(long, global = true, default_value = "binary")]
    order: SubsetOrdering,
    /// Seed for randomised suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest m + n accepted by enumeration.
    #[arg(long, global = true, env = "DIAGRAMREP_MAX_SIZE", default_value_t = DEFAULT_MAX_SIZE)]
    max_size: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Compose diagrams left to right and report the floating components.
    Compose {
        #[arg(required = true, num_args = 2..)]
        diagrams: Vec<String>,
    },
    /// The zero-one matrix of a diagram.
    Rep { diagram: String },
    /// The odd or even block of the matrix of a Brauer diagram.
    Reduce {
        diagram: String,
        #[arg(long, default_value = "odd")]
        parity: Parity,
    },
    /// The matrix of a Temperley-Lieb diagram on even-gap subsets.
    Mu { diagram: String },
    /// The matrix of a twisted diagram, 2^i times its zero-one matrix.
    Rho {
        diagram: String,
        #[arg(long, default_value_t = 0)]
        twist: u64,
        /// Truncation bound; requires a ring of characteristic 2^(d+1).
        #[arg(long)]
        d: Option<u32>,
    },
    /// Compose linear combinations and print the result and its matrix.
    Linear {
        #[arg(required = true)]
        combinations: Vec<String>,
        #[arg(long, default_value = "2")]
        delta: String,
    },
    /// List or count the diagrams of a hom-set.
    Enumerate {
        family: Family,
        m: usize,
        n: usize,
        #[arg(long)]
        count: bool,
    },
    /// Run verification suites (all by default).
    Verify {
        suites: Vec<String>,
        /// List suite names and exit.
        #[arg(long)]
        list: bool,
    },
    /// Draw a diagram as two rows of block letters.
    Render { diagram: String },
}

/// Error with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GuardExceeded { .. } => 3,
            Error::Inapplicable(_) | Error::WrongFamily(_) | Error::SemiringMismatch { .. } => 4,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read_input(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure {
                code: 2,
                message: format!("cannot read {path}: {e}"),
            }),
        None => Ok(arg.to_string()),
    }
}

fn diagram(arg: &str) -> Result<Partition, Failure> {
    let text = read_input(arg)?;
    if text.trim_start().starts_with('{') && text.contains("\"blocks\"") {
        return serde_json::from_str(&text).map_err(|e| Failure {
            code: 2,
            message: format!("invalid diagram JSON: {e}"),
        });
    }
    Ok(text.parse()?)
}

fn emit_matrix<S: Semiring>(m: &IndexedMatrix<S>, format: Format) -> String {
    match format {
        Format::Text => m.to_text(),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&m.to_json()).expect("serialisable")
        ),
        Format::Csv => m.to_csv(),
    }
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let format = cli.format;
    let semiring = cli.semiring.unwrap_or(SemiringSelector::Boolean);
    let out = match &cli.command {
        Command::Compose { diagrams } => {
            let parsed = diagrams
                .iter()
                .map(|d| diagram(d))
                .collect::<Result<Vec<_>, _>>()?;
            let mut product = parsed[0].clone();
            let mut floats = 0;
            for b in &parsed[1..] {
                let outcome = compose(&product, b)?;
                product = outcome.product;
                floats += outcome.floats;
            }
            match format {
                Format::Json => format!("{}\n", json!({ "product": product, "phi": floats })),
                _ => format!("{product}\nphi={floats}\n"),
            }
        }
        Command::Rep { diagram: d } => {
            let a = diagram(d)?;
            with_semiring!(semiring, |s| emit_matrix(
                &phi_ordered(&a, s, cli.order)?,
                format
            ))
        }
        Command::Reduce { diagram: d, parity } => {
            let a = diagram(d)?;
            with_semiring!(semiring, |s| emit_matrix(&reduced(&a, *parity, s)?, format))
        }
        Command::Mu { diagram: d } => {
            let a = diagram(d)?;
            with_semiring!(semiring, |s| emit_matrix(&mu(&a, s)?, format))
        }
        Command::Rho {
            diagram: d,
            twist,
            d: bound,
        } => {
            let x = TwistedElement::new(*twist, diagram(d)?);
            with_semiring!(semiring, |s| {
                let m = match bound {
                    Some(bound) => rho_d(&x, *bound, s)?,
                    None => rho(&x, s)?,
                };
                emit_matrix(&m, format)
            })
        }
        Command::Linear {
            combinations,
            delta,
        } => {
            let delta = parse_rational(delta)?;
            let parsed = combinations
                .iter()
                .map(|c| Ok(read_input(c)?.parse::<LinearCombination>()?))
                .collect::<Result<Vec<_>, Failure>>()?;
            let mut acc = parsed[0].clone();
            for v in &parsed[1..] {
                acc = linear_compose(&acc, v, &delta)?;
            }
            let matrix = match cli.semiring.unwrap_or(SemiringSelector::Rational) {
                SemiringSelector::Integer => emit_matrix(&phi_linear(&acc, &Integer)?, format),
                SemiringSelector::Rational => emit_matrix(&phi_linear(&acc, &Rational)?, format),
                other => {
                    return Err(Failure {
                        code: 4,
                        message: format!(
                            "linear matrices need --semiring int or rational, not {other}"
                        ),
                    })
                }
            };
            match format {
                Format::Json => {
                    let m: serde_json::Value = serde_json::from_str(&matrix).expect("json");
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&json!({ "combination": acc, "matrix": m }))
                            .unwrap()
                    )
                }
                _ => format!("{acc}\n{matrix}"),
            }
        }
        Command::Enumerate {
            family,
            m,
            n,
            count,
        } => {
            let all = enumerate_with_limit(*family, *m, *n, cli.max_size)?;
            match (format, count) {
                (Format::Json, true) => format!("{}\n", json!({ "count": all.len() })),
                (Format::Json, false) => {
                    format!("{}\n", serde_json::to_string(&all).expect("serialisable"))
                }
                (_, true) => format!("{}\n", all.len()),
                (_, false) => all.iter().fold(String::new(), |mut s, a| {
                    writeln!(s, "{a}").unwrap();
                    s
                }),
            }
        }
        Command::Verify { suites, list } => {
            if *list {
                let mut s = String::new();
                for info in SUITES {
                    writeln!(s, "{:<18} {}", info.name, info.description).unwrap();
                }
                return Ok((s, 0));
            }
            let options = SuiteOptions {
                seed: cli.seed,
                semiring: cli.semiring,
            };
            let names = if suites.is_empty() {
                vec!["all".to_string()]
            } else {
                suites.clone()
            };
            let mut reports = Vec::new();
            for name in &names {
                reports.extend(run_suite(name, &options)?);
            }
            let code = if reports.iter().any(|r| r.status == Status::Fail) {
                1
            } else if reports.iter().any(|r| r.status == Status::Inapplicable) {
                4
            } else {
                0
            };
            let text = match format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&reports).expect("serialisable")
                ),
                _ => reports.iter().map(|r| r.to_text()).collect(),
            };
            return Ok((text, code));
        }
        Command::Render { diagram: d } => render::render(&diagram(d)?),
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: cannot size the worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
