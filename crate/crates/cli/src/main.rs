mod commands;
mod repl;

use std::io::IsTerminal;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wittlab_core::quadform::SearchConfig;
use wittlab_core::witt_ideal::DEFAULT_BUDGET;
use wittlab_core::{CheckParams, CheckRegistry, Error, FieldTower, Verdict};

use commands::{answer, Input, QueryOptions, Verb};

const EXIT_USAGE: u8 = 1;
const EXIT_FAIL: u8 = 2;
const EXIT_PARTIAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "wittlab",
    version,
    about = "Quadratic forms, Brauer classes and Witt-ideal checks over Laurent towers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Field tower, e.g. "R((t1))((t2))" or "F5((t))"
    #[arg(short = 'f', long = "field", global = true)]
    field: Option<String>,
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum candidates per exhaustive enumeration
    #[arg(long, global = true, env = "WITTLAB_BUDGET")]
    budget: Option<u128>,
    /// Samples per check, or trials for the witness search
    #[arg(long, global = true)]
    samples: Option<usize>,
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Truncation depth of the witness search
    #[arg(long, global = true, default_value_t = 4)]
    depth: u32,
}

#[derive(Args)]
struct ExprArg {
    expr: String,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and print a form or algebra
    Eval(ExprArg),
    /// Anisotropy, dimension and Witt index of a form
    Aniso {
        expr: String,
        /// Also search for an explicit isotropic vector
        #[arg(long)]
        witness: bool,
    },
    /// Witt index and anisotropic part
    Iw(ExprArg),
    /// Whether a form is hyperbolic
    Hyp(ExprArg),
    /// Signature at every ordering
    Sig(ExprArg),
    /// Whether a form is torsion in the Witt ring
    Torsion(ExprArg),
    /// Index of a Brauer class
    Index {
        expr: String,
        /// Index algorithm: ramification or alternating
        #[arg(long, default_value = "ramification")]
        algo: String,
    },
    /// Whether a tensor product of quaternion algebras is a division algebra
    Division(ExprArg),
    /// Trace form of a tensor product of quaternion algebras
    Trace(ExprArg),
    /// Norm form of a quaternion algebra
    Norm(ExprArg),
    /// Run a check by id, `all`, or `list` the available checks
    Suite {
        id: String,
        /// Record wall-clock time in reports
        #[arg(long)]
        timing: bool,
    },
    /// Interactive loop
    Repl,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    ExitCode::from(run(cli))
}

fn run(cli: Cli) -> u8 {
    let g = &cli.global;
    let field = match g.field.as_deref().map(FieldTower::parse).transpose() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let opts = |algo: &str, witness: bool| QueryOptions {
        algo: algo.to_string(),
        witness,
        search: SearchConfig {
            truncation_depth: g.depth,
            trials: g.samples.unwrap_or(SearchConfig::default().trials),
            seed: g.seed,
        },
    };
    let (verb, expr, options) = match &cli.command {
        Command::Eval(a) => (Verb::Eval, &a.expr, opts("", false)),
        Command::Aniso { expr, witness } => (Verb::Aniso, expr, opts("", *witness)),
        Command::Iw(a) => (Verb::Iw, &a.expr, opts("", false)),
        Command::Hyp(a) => (Verb::Hyp, &a.expr, opts("", false)),
        Command::Sig(a) => (Verb::Sig, &a.expr, opts("", false)),
        Command::Torsion(a) => (Verb::Torsion, &a.expr, opts("", false)),
        Command::Index { expr, algo } => (Verb::Index, expr, opts(algo, false)),
        Command::Division(a) => (Verb::Division, &a.expr, opts("", false)),
        Command::Trace(a) => (Verb::Trace, &a.expr, opts("", false)),
        Command::Norm(a) => (Verb::Norm, &a.expr, opts("", false)),
        Command::Suite { id, timing } => return suite(id, field, g, *timing),
        Command::Repl => {
            let field = field.unwrap_or_else(|| FieldTower::parse("C").expect("valid spec"));
            let stdin = std::io::stdin();
            let prompt = stdin.is_terminal();
            return match repl::run(field, &opts("ramification", false), stdin.lock(), std::io::stdout(), prompt) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let Some(field) = field else {
        eprintln!("error: this command needs -f/--field");
        return EXIT_USAGE;
    };
    match answer(verb, &field, &Input::Source(expr), &options) {
        Ok(a) => {
            if g.json {
                println!("{}", serde_json::to_string_pretty(&a.json).expect("serializable"));
            } else {
                println!("{}", a.text);
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::CheckFailed { .. } | Error::EmptySample(_) | Error::WitnessNotFound(_) => EXIT_FAIL,
        Error::BudgetExceeded { .. } => EXIT_PARTIAL,
        _ => EXIT_USAGE,
    }
}

fn suite(id: &str, field: Option<FieldTower>, g: &Global, timing: bool) -> u8 {
    let registry = CheckRegistry::default();
    if id == "list" {
        for check in registry.iter() {
            println!("{:<11} {}", check.id(), check.summary());
        }
        return 0;
    }
    let ids: Vec<&str> = if id == "all" { registry.ids() } else { vec![id] };
    let params = CheckParams {
        field,
        n: g.n,
        samples: g.samples.unwrap_or(CheckParams::default().samples),
        seed: g.seed,
        budget: g.budget.unwrap_or(DEFAULT_BUDGET),
        timing,
    };
    let mut reports = Vec::new();
    let mut codes = Vec::new();
    for id in &ids {
        match registry.run(id, &params) {
            Ok(report) => {
                codes.push(match report.verdict {
                    Verdict::Pass => 0,
                    Verdict::Fail => EXIT_FAIL,
                    Verdict::Partial => EXIT_PARTIAL,
                });
                if g.json {
                    reports.push(report);
                } else {
                    println!("{}", report.summary_line());
                }
            }
            Err(e) => {
                eprintln!("{id}: error: {e}");
                codes.push(error_code(&e));
            }
        }
    }
    if g.json {
        if id == "all" {
            println!("{}", serde_json::to_string_pretty(&reports).expect("serializable"));
        } else if let Some(report) = reports.pop() {
            println!("{}", report.to_json());
        }
    }
    [EXIT_USAGE, EXIT_FAIL, EXIT_PARTIAL].into_iter().find(|c| codes.contains(c)).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_codes() {
        let failed = Error::CheckFailed { check: "thm2".into(), counterexample: "{}".into() };
        assert_eq!(error_code(&failed), EXIT_FAIL);
        assert_eq!(error_code(&Error::EmptySample("so2s".into())), EXIT_FAIL);
        assert_eq!(error_code(&Error::BudgetExceeded { needed: 2, budget: 1 }), EXIT_PARTIAL);
        assert_eq!(error_code(&Error::HypothesisViolated("n".into())), EXIT_USAGE);
    }
}
