//! The `riesz` command line.
//!
//! Exit codes: 0 for success (valid, holds, accepted, entails), 1 for a
//! semantic negative, 2 for usage and I/O errors, 3 when a budget is hit.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bridge::{bal_to_rl, rl_to_bal};
use crate::corpus::standard_library;
use crate::decide::{Budget, DecideError, Decider, Verdict};
use crate::distrib::TermDocumentMatrix;
use crate::fuzzy::{emit_grid, write_grid_csv, TNorm};
use crate::kernel::{check_proof, Proof, TheoremLibrary};
use crate::semantics::{evaluate, random_falsify, SampleConfig, Valuation};
use crate::terms::{parse, parse_schema, Formula, Logic};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "riesz",
    version,
    about = "Riesz Logic and the Logic of Equilibrium"
)]
struct Cli {
    /// Seed for every randomized procedure.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random samples.
    #[arg(long, global = true, default_value_t = 10_000)]
    trials: usize,
    /// Clause and inequality limit for the decision procedure.
    #[arg(long, global = true, default_value_t = 100_000)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FormulaInput {
    /// Formula text.
    #[arg(conflicts_with = "file", required_unless_present = "file")]
    formula: Option<String>,
    /// Read the formula from a file instead.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Read the formula as BAL instead of RL.
    #[arg(long)]
    bal: bool,
    /// Allow metavariables.
    #[arg(long)]
    schema: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical form of a formula.
    Parse(FormulaInput),
    /// Evaluate a formula under a valuation file.
    Eval {
        #[command(flatten)]
        input: FormulaInput,
        /// File of `var = (r1, ..., rn)` lines.
        #[arg(long)]
        valuation: PathBuf,
    },
    /// Decide validity, printing a countermodel if there is one.
    Decide(FormulaInput),
    /// Search randomly for a falsifying valuation.
    Falsify {
        #[command(flatten)]
        input: FormulaInput,
        #[arg(long, default_value_t = 1)]
        dimension: usize,
        #[arg(long, default_value_t = 10)]
        bound: i64,
    },
    /// Check proof scripts.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Preload every proof in this directory.
        #[arg(long)]
        library: Option<PathBuf>,
        /// Start from an empty library instead of the shipped corpus.
        #[arg(long)]
        bare: bool,
        /// Report every line.
        #[arg(long)]
        lines: bool,
    },
    /// Translate between RL and BAL.
    Translate {
        #[arg(long, value_enum)]
        to: Target,
        formula: String,
    },
    /// Fuzzy-logic utilities.
    #[command(subcommand)]
    Fuzzy(FuzzyCommand),
    /// Queries on a term-context count matrix.
    Distrib {
        #[arg(value_enum)]
        op: DistribOp,
        #[arg(long)]
        matrix: PathBuf,
        t1: String,
        t2: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Bal,
    Rl,
}

#[derive(Debug, Subcommand)]
enum FuzzyCommand {
    /// Emit `a,b,value` CSV over the unit square.
    Grid {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Op {
    Tl,
    Tr,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DistribOp {
    Meet,
    Join,
    Entails,
    Cosine,
}

/// Captured result of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

type Run = Result<Outcome, Outcome>;

fn usage(message: impl std::fmt::Display) -> Outcome {
    Outcome::error(EXIT_USAGE, message)
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn decide_failure(e: DecideError) -> Outcome {
    match e {
        DecideError::CoefficientOverflow => usage(e),
        _ => Outcome::error(EXIT_BUDGET, e),
    }
}

impl FormulaInput {
    fn logic(&self) -> Logic {
        if self.bal {
            Logic::Bal
        } else {
            Logic::Rl
        }
    }

    fn formula(&self) -> Result<Formula, Outcome> {
        let text = match (&self.formula, &self.file) {
            (Some(t), _) => t.clone(),
            (None, Some(p)) => read(p)?,
            (None, None) => return Err(usage("no formula given")),
        };
        let parsed = if self.schema {
            parse_schema(&text, self.logic())
        } else {
            parse(&text, self.logic())
        };
        parsed.map_err(usage)
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    dispatch(&cli).unwrap_or_else(|e| e)
}

fn dispatch(cli: &Cli) -> Run {
    match &cli.command {
        Command::Parse(input) => Ok(Outcome::ok(format!("{}\n", input.formula()?))),
        Command::Eval { input, valuation } => {
            let f = input.formula()?;
            let v = Valuation::parse(&read(valuation)?).map_err(usage)?;
            let r = evaluate(&f, &v, input.logic());
            let code = if r.holds { EXIT_OK } else { EXIT_NEGATIVE };
            Ok(Outcome::with_code(
                code,
                format!("{}\nholds: {}\n", r.value, r.holds),
            ))
        }
        Command::Decide(input) => {
            let f = input.formula()?;
            let decider = Decider::new(Budget::uniform(cli.budget));
            let verdict = match input.logic() {
                Logic::Rl => decider.valid(&f),
                Logic::Bal => decider.bal_valid(&f),
            }
            .map_err(decide_failure)?;
            Ok(match verdict {
                Verdict::Valid => Outcome::ok("VALID\n".into()),
                Verdict::CounterExample(v) => {
                    Outcome::with_code(EXIT_NEGATIVE, format!("COUNTEREXAMPLE\n{v}"))
                }
            })
        }
        Command::Falsify {
            input,
            dimension,
            bound,
        } => {
            let mut f = input.formula()?;
            if input.bal {
                f = bal_to_rl(&f).first;
            }
            if *dimension == 0 || *bound < 0 || cli.trials == 0 {
                return Err(usage(
                    "need --dimension >= 1, --bound >= 0 and --trials >= 1",
                ));
            }
            let config = SampleConfig {
                dimension: *dimension,
                bound: *bound,
                seed: cli.seed,
            };
            Ok(match random_falsify(&f, cli.trials, config) {
                None => Outcome::ok("NONE\n".into()),
                Some(v) => Outcome::with_code(EXIT_NEGATIVE, format!("FALSIFIED\n{v}")),
            })
        }
        Command::Check {
            files,
            library,
            bare,
            lines,
        } => check(files, library.as_deref(), *bare, *lines),
        Command::Translate { to, formula } => translate(*to, formula),
        Command::Fuzzy(FuzzyCommand::Grid { op, n }) => {
            let op = match op {
                Op::Tl => TNorm::Lukasiewicz,
                Op::Tr => TNorm::Riesz,
            };
            let rows = emit_grid(op, *n).map_err(usage)?;
            let mut out = Vec::new();
            write_grid_csv(&rows, &mut out).map_err(usage)?;
            Ok(Outcome::ok(
                String::from_utf8(out).expect("csv output is ascii"),
            ))
        }
        Command::Distrib { op, matrix, t1, t2 } => {
            let m = TermDocumentMatrix::from_csv(&read(matrix)?).map_err(usage)?;
            Ok(match op {
                DistribOp::Meet => Outcome::ok(format!("{}\n", m.meet(t1, t2).map_err(usage)?)),
                DistribOp::Join => Outcome::ok(format!("{}\n", m.join(t1, t2).map_err(usage)?)),
                DistribOp::Cosine => Outcome::ok(format!("{}\n", m.cosine(t1, t2).map_err(usage)?)),
                DistribOp::Entails => {
                    let e = m.entails(t1, t2).map_err(usage)?;
                    let code = if e.holds() { EXIT_OK } else { EXIT_NEGATIVE };
                    Outcome::with_code(code, format!("{e}\n"))
                }
            })
        }
    }
}

fn translate(to: Target, text: &str) -> Run {
    match to {
        Target::Bal => {
            let f = parse(text, Logic::Rl).map_err(usage)?;
            Ok(Outcome::ok(format!("{}\n", rl_to_bal(&f).map_err(usage)?)))
        }
        Target::Rl => {
            let f = parse(text, Logic::Bal).map_err(usage)?;
            Ok(Outcome::ok(format!("{}\n", bal_to_rl(&f))))
        }
    }
}

fn check(files: &[PathBuf], dir: Option<&Path>, bare: bool, per_line: bool) -> Run {
    let mut library = if bare {
        TheoremLibrary::new()
    } else {
        standard_library().map_err(usage)?
    };
    if let Some(dir) = dir {
        library.load_dir(dir).map_err(usage)?;
    }
    let mut proofs = Vec::with_capacity(files.len());
    for path in files {
        let proof =
            Proof::parse(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        proofs.push((path, proof));
    }
    let mut out = String::new();
    let mut code = EXIT_OK;
    for (path, proof) in proofs {
        let report = check_proof(&proof, &library);
        if files.len() > 1 {
            write!(out, "{}: ", path.display()).unwrap();
        }
        writeln!(out, "{report}").unwrap();
        if per_line {
            for (label, r) in &report.lines {
                match r {
                    Ok(()) => writeln!(out, "  {label}: ok").unwrap(),
                    Err(e) => writeln!(out, "  {label}: {e}").unwrap(),
                }
            }
        }
        if report.accepted() {
            // later files may cite this one; a name clash only loses that
            let _ = library.register(proof);
        } else {
            code = EXIT_NEGATIVE;
        }
    }
    Ok(Outcome::with_code(code, out))
}
