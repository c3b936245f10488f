mod problem;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use dfsets_core::{Bounds, Error};
use serde_json::{json, Value};

use problem::{parse_matrix, Problem, ProblemFile, Query};
use report::{Outcome, Runner};

#[derive(Parser)]
#[command(name = "dfsets", version, about = "Exact Dwyer-Fried sets of abelian covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Recompute with the brute-force oracles and report agreement.
    #[arg(long, global = true)]
    verify: bool,
    /// Largest determinant group expanded into cosets.
    #[arg(long, global = true, default_value_t = Bounds::default().max_det_order)]
    max_det_order: u64,
    /// Largest torsion subgroup scanned for kernel components.
    #[arg(long, global = true, default_value_t = Bounds::default().max_torsion)]
    max_torsion: u64,
    /// Largest polynomial support for partition enumeration.
    #[arg(long, global = true, default_value_t = Bounds::default().max_support)]
    max_support: usize,
    /// Largest vertex count of a simplicial complex.
    #[arg(long, global = true, default_value_t = Bounds::default().max_vertices)]
    max_vertices: usize,
    /// Largest finite group enumerated by brute force.
    #[arg(long, global = true, default_value_t = Bounds::default().max_finite_order)]
    max_finite_order: u64,
    /// Largest number of candidate maps visited by brute force.
    #[arg(long, global = true, default_value_t = Bounds::default().max_enumeration)]
    max_enumeration: u64,
}

impl Common {
    fn bounds(&self) -> Bounds {
        Bounds {
            max_det_order: self.max_det_order,
            max_torsion: self.max_torsion,
            max_support: self.max_support,
            max_vertices: self.max_vertices,
            max_finite_order: self.max_finite_order,
            max_enumeration: self.max_enumeration,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Subgroups Ξ_d of the arrangement.
    Xi {
        file: PathBuf,
        #[arg(long)]
        d: u64,
    },
    /// Dual lattices τ_d.
    Tau {
        file: PathBuf,
        #[arg(long)]
        d: u64,
    },
    /// Counting in Γ(H, A).
    Gamma {
        #[command(subcommand)]
        what: GammaCommand,
    },
    /// Classes of Γ(H, A) over a class of Γ(H, Ā).
    Fiber {
        file: PathBuf,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        nu_bar: String,
    },
    /// Membership of [ν] in Ω_A with witnesses.
    Member {
        file: PathBuf,
        /// A map onto A, or onto Ā for the whole fiber.
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// The complement description of Ω_A.
    Describe { file: PathBuf },
    /// Fiber of q over ν̄ and how much of it lies in Ω_A.
    SigmaProbe {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        nu_bar: String,
    },
    /// Whether Ω_A is pulled back from Ω_Ā.
    Diagnose { file: PathBuf },
    /// Characteristic variety of a toric complex.
    Toric {
        file: PathBuf,
        #[arg(long)]
        i: Option<i64>,
    },
    /// Seifert invariants and V^1 of a Brieskorn manifold.
    Brieskorn { file: PathBuf },
    /// Alexander matrix and minors gcd of a presentation.
    Fox {
        file: PathBuf,
        #[arg(long)]
        codim: Option<usize>,
    },
    /// Every query listed in the file, in order.
    Run { file: PathBuf },
}

#[derive(Subcommand)]
enum GammaCommand {
    /// |Γ(H/Ā, A/Ā)|.
    Count { file: PathBuf },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) | Error::Dimension(_) | Error::Unsupported(_) => 1,
        Error::Bound { .. } => 2,
        Error::Invariant(_) => 3,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Input(_) => "input",
        Error::Dimension(_) => "dimension",
        Error::Unsupported(_) => "unsupported",
        Error::Bound { .. } => "bound",
        Error::Invariant(_) => "invariant",
    }
}

fn error_json(e: &Error) -> Value {
    json!({"error": {"kind": error_kind(e), "message": e.to_string()}})
}

fn load(path: &PathBuf, bounds: &Bounds) -> Result<Problem, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    ProblemFile::parse(&text)?.validate(bounds)
}

fn single(command: Command) -> Result<(PathBuf, Option<Query>), Error> {
    Ok(match command {
        Command::Xi { file, d } => (file, Some(Query::Xi { d })),
        Command::Tau { file, d } => (file, Some(Query::Tau { d })),
        Command::Gamma { what: GammaCommand::Count { file } } => (file, Some(Query::GammaCount)),
        Command::Fiber { file, nu_bar } => (file, Some(Query::Fiber { nu_bar: parse_matrix(&nu_bar)? })),
        Command::Member { file, nu } => (file, Some(Query::Member { nu: parse_matrix(&nu)? })),
        Command::Describe { file } => (file, Some(Query::Describe)),
        Command::SigmaProbe { file, nu_bar } => (file, Some(Query::SigmaProbe { nu_bar: parse_matrix(&nu_bar)? })),
        Command::Diagnose { file } => (file, Some(Query::Diagnose)),
        Command::Toric { file, i } => (file, Some(Query::Toric { i })),
        Command::Brieskorn { file } => (file, Some(Query::Brieskorn)),
        Command::Fox { file, codim } => (file, Some(Query::Fox { codim })),
        Command::Run { file } => (file, None),
    })
}

fn print(json_mode: bool, value: &Value, text: &[String]) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(value).expect("values serialize"));
    } else {
        for line in text {
            println!("{line}");
        }
    }
}

fn fail(json_mode: bool, e: &Error) -> ExitCode {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(&error_json(e)).expect("values serialize"));
    } else {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_code(e))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let json_mode = cli.common.json;
    let bounds = cli.common.bounds();
    let (file, query) = match single(cli.command) {
        Ok(x) => x,
        Err(e) => return fail(json_mode, &e),
    };
    let problem = match load(&file, &bounds) {
        Ok(p) => p,
        Err(e) => return fail(json_mode, &e),
    };
    let runner = Runner {
        problem: &problem,
        bounds,
        verify: cli.common.verify,
    };
    match query {
        Some(q) => match runner.run(&q) {
            Ok(Outcome { json, text, verify_failed }) => {
                print(json_mode, &json, &text);
                ExitCode::from(if verify_failed { 3 } else { 0 })
            }
            Err(e) => fail(json_mode, &e),
        },
        None => {
            let outcomes: Vec<_> = problem.queries.par_iter().map(|q| runner.run(q)).collect();
            let mut results = Vec::new();
            let mut lines = Vec::new();
            let mut code = 0u8;
            for (k, outcome) in outcomes.into_iter().enumerate() {
                lines.push(format!("[{}]", k + 1));
                match outcome {
                    Ok(o) => {
                        if o.verify_failed && code == 0 {
                            code = 3;
                        }
                        results.push(o.json);
                        lines.extend(o.text);
                    }
                    Err(e) => {
                        if code == 0 {
                            code = exit_code(&e);
                        }
                        results.push(error_json(&e));
                        lines.push(format!("error: {e}"));
                    }
                }
            }
            print(json_mode, &json!({"results": results}), &lines);
            ExitCode::from(code)
        }
    }
}
