//! The `qsylv` command line.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::Settings;
use crate::cramer::Form;
use crate::error::Error;
use crate::generate::{consistent, perturbed_inconsistent, Instance};
use crate::golden::run_checks;
use crate::io::{read_json, read_matrix, to_json, write_text, IoError, SolutionFile};
use crate::matrix::QMatrix;
use crate::pinv::{mp_cramer, mp_oracle, penrose_defect, MpMethod, Side};
use crate::random::QRng;
use crate::solvers::{check_consistency, solve, EquationKind, Method, Problem, Slot, Slots, SolveOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 66;

#[derive(Parser, Debug)]
#[command(name = "qsylv", version, about = "Quaternion Sylvester-type matrix equations by determinantal formulas")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Largest matrix order evaluated by full permutation expansion [env: QSYLV_MAX_DET_DIM]
    #[arg(long, global = true)]
    max_det_dim: Option<usize>,
    /// Relative tolerance of the consistency criteria
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Absolute floor of the singular-value rank threshold
    #[arg(long, global = true)]
    rank_floor: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an equation and write {"x1", "x2", "report"}
    Solve(SolveArgs),
    /// Evaluate the solvability criteria of an equation
    Check(CheckArgs),
    /// Moore-Penrose inverse of a matrix
    Mpinv(MpinvArgs),
    /// Row, column or Hermitian determinant of a square matrix
    Det(DetArgs),
    /// Recompute the two worked examples and compare with their published values
    Selftest,
    /// Write a seeded random instance with a planted solution
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct ProblemArgs {
    /// Equation kind
    #[arg(long, value_parser = parse_kind)]
    kind: Option<EquationKind>,
    /// Instance file written by `gen`, instead of the coefficient flags
    #[arg(long, conflicts_with_all = ["a1", "b1", "a2", "b2", "c"])]
    problem: Option<PathBuf>,
    #[arg(long)]
    a1: Option<PathBuf>,
    #[arg(long)]
    b1: Option<PathBuf>,
    #[arg(long)]
    a2: Option<PathBuf>,
    #[arg(long)]
    b2: Option<PathBuf>,
    #[arg(long)]
    c: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    input: ProblemArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
    method: MethodArg,
    /// Column- or row-determinant form of two-sided Cramer terms
    #[arg(long, value_enum, default_value_t = FormArg::Column)]
    form: FormArg,
    /// Solve even when the consistency criteria fail
    #[arg(long)]
    force: bool,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    input: ProblemArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MpinvArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long, value_enum, default_value_t = MpArg::Cramer)]
    method: MpArg,
    /// Gram matrix used by the determinantal formula; the smaller one when absent
    #[arg(long, value_enum)]
    side: Option<SideArg>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DetArgs {
    #[arg(long, value_enum)]
    kind: DetKind,
    /// 1-based row (rdet) or column (cdet) index; ignored by hdet
    #[arg(long, default_value_t = 1)]
    index: usize,
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: EquationKind,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Upper bound of every dimension
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    /// Perturb the right-hand side of a gen-sylvester instance with deficient coefficients
    #[arg(long)]
    inconsistent: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Direct,
    Cramer,
    Both,
    General,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormArg {
    Column,
    Row,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MpArg {
    Cramer,
    Oracle,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DetKind {
    Rdet,
    Cdet,
    Hdet,
}

fn parse_kind(s: &str) -> Result<EquationKind, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = EquationKind::ALL.iter().map(|k| k.name()).collect();
        format!("expected one of: {}", names.join(", "))
    })
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure { code: EXIT_INPUT, message: e.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Inconsistent(_) => EXIT_INCONSISTENT,
            Error::MissingSlot { .. } => EXIT_USAGE,
            _ => EXIT_ERROR,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `argv` (program name first), runs the subcommand and returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("qsylv: {}", f.message);
            f.code
        }
    }
}

fn settings(g: &Global) -> Result<Settings, Failure> {
    let mut s = Settings::from_env();
    if let Some(n) = g.max_det_dim {
        if n == 0 {
            return Err(Failure::usage("--max-det-dim must be at least 1"));
        }
        s = s.with_max_det_dim(n);
    }
    if let Some(t) = g.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::usage("--tol must be positive"));
        }
        s = s.with_tol(t);
    }
    if let Some(f) = g.rank_floor {
        if !(f >= 0.0 && f.is_finite()) {
            return Err(Failure::usage("--rank-floor must be non-negative"));
        }
        s = s.with_rank_floor(f);
    }
    Ok(s)
}

fn dispatch(cli: Cli) -> Outcome {
    let settings = settings(&cli.global)?;
    match cli.command {
        Command::Solve(args) => cmd_solve(args, &settings),
        Command::Check(args) => cmd_check(args, &settings),
        Command::Mpinv(args) => cmd_mpinv(args, &settings),
        Command::Det(args) => cmd_det(args, &settings),
        Command::Selftest => Ok(cmd_selftest(&settings)),
        Command::Gen(args) => cmd_gen(args),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => Ok(write_text(path, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_problem(args: &ProblemArgs) -> Result<Problem, Failure> {
    if let Some(path) = &args.problem {
        let inst: Instance = read_json(path)?;
        if let Some(kind) = args.kind {
            if kind != inst.kind {
                return Err(Failure::usage(format!("--kind {kind} does not match the instance kind {}", inst.kind)));
            }
        }
        return build(inst.kind, inst.slots);
    }
    let kind = args.kind.ok_or_else(|| Failure::usage("--kind is required unless --problem is given"))?;
    let mut slots = Slots::default();
    for (slot, path) in [(Slot::A1, &args.a1), (Slot::B1, &args.b1), (Slot::A2, &args.a2), (Slot::B2, &args.b2), (Slot::C, &args.c)] {
        if let Some(path) = path {
            slots.set(slot, read_matrix(path)?);
        }
    }
    build(kind, slots)
}

fn build(kind: EquationKind, slots: Slots) -> Result<Problem, Failure> {
    for slot in Slot::ALL {
        let needed = kind.slots().contains(&slot);
        if needed != slots.get(slot).is_some() {
            let verb = if needed { "requires" } else { "does not use" };
            return Err(Failure::usage(format!("kind {kind} {verb} --{}", slot.name())));
        }
    }
    Ok(Problem::new(kind, slots)?)
}

fn cmd_solve(args: SolveArgs, settings: &Settings) -> Outcome {
    let problem = load_problem(&args.input)?;
    let method = match args.method {
        MethodArg::Direct => Method::Direct,
        MethodArg::Cramer => Method::Cramer,
        MethodArg::Both => Method::Both,
        MethodArg::General => Method::General,
    };
    let form = match args.form {
        FormArg::Column => Form::Column,
        FormArg::Row => Form::Row,
    };
    let (sol, report) = solve(&problem, SolveOptions { method, form, force: args.force }, settings)?;
    let code = if report.consistent { EXIT_OK } else { EXIT_INCONSISTENT };
    emit(args.out.as_deref(), &to_json(&SolutionFile::new(sol, report)))?;
    Ok(code)
}

fn cmd_check(args: CheckArgs, settings: &Settings) -> Outcome {
    let problem = load_problem(&args.input)?;
    let report = check_consistency(&problem, settings)?;
    emit(args.out.as_deref(), &to_json(&report))?;
    Ok(if report.consistent { EXIT_OK } else { EXIT_INCONSISTENT })
}

#[derive(Serialize)]
struct MpinvOutput {
    pinv: QMatrix,
    method: MpMethod,
    rank: usize,
    penrose_defect: f64,
}

fn cmd_mpinv(args: MpinvArgs, settings: &Settings) -> Outcome {
    let a = read_matrix(&args.matrix)?;
    let r = match args.method {
        MpArg::Cramer => mp_cramer(
            &a,
            args.side.map(|s| match s {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            }),
            settings,
        )?,
        MpArg::Oracle => {
            if args.side.is_some() {
                return Err(Failure::usage("--side applies to --method cramer only"));
            }
            mp_oracle(&a, &settings.rank)
        }
    };
    let defect = penrose_defect(&a, &r.pinv);
    let out = MpinvOutput { pinv: r.pinv, method: r.method, rank: r.rank_used, penrose_defect: defect };
    emit(args.out.as_deref(), &to_json(&out))?;
    Ok(EXIT_OK)
}

fn cmd_det(args: DetArgs, settings: &Settings) -> Outcome {
    let a = read_matrix(&args.matrix)?;
    let value = match args.kind {
        DetKind::Rdet => settings.det.rdet(&a, args.index)?,
        DetKind::Cdet => settings.det.cdet(&a, args.index)?,
        DetKind::Hdet => crate::Quaternion::real(settings.det.hdet(&a, settings.tol)?),
    };
    // Adding zero turns a negative zero into a positive one.
    let parts: Vec<String> = value.to_array().iter().map(|x| format!("{}", x + 0.0)).collect();
    println!("[{}]", parts.join(","));
    Ok(EXIT_OK)
}

fn cmd_selftest(settings: &Settings) -> i32 {
    let checks = run_checks(settings);
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &checks {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        println!("{:<width$}  {verdict}  {}", c.name, c.detail);
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    println!("{passed}/{} checks passed", checks.len());
    if passed == checks.len() {
        EXIT_OK
    } else {
        EXIT_ERROR
    }
}

fn cmd_gen(args: GenArgs) -> Outcome {
    if args.max_dim == 0 {
        return Err(Failure::usage("--max-dim must be at least 1"));
    }
    let mut rng = QRng::new(args.seed);
    let inst = if args.inconsistent {
        if args.kind != EquationKind::GenSylvester {
            return Err(Failure::usage("--inconsistent is available for gen-sylvester only"));
        }
        perturbed_inconsistent(&mut rng, args.max_dim)?
    } else {
        consistent(args.kind, &mut rng, args.max_dim)?
    };
    emit(args.out.as_deref(), &to_json(&inst))?;
    Ok(EXIT_OK)
}
