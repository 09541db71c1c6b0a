use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use slrc::bounds::rate_report;
use slrc::code::RecoveryTable;
use slrc::construct::{code_params, construct_code, CodeLayout};
use slrc::io::{matrix_from_csv_in, matrix_to_csv, DesignSource, MatrixFile};
use slrc::labels::set_string;
use slrc::mds::MdsStyle;
use slrc::simulate::{run_trials, summarize, PatternSize, RepairPlan};
use slrc::verify::{
    check_availability, check_information_locality, check_lemma2, check_sequential_with, max_sequential_t_with, Check,
    DEFAULT_PATTERN_LIMIT,
};
use slrc::worked_example::demo_paper;
use slrc::{Error, Field};

const THREADS_ENV: &str = "SLRC_THREADS";

#[derive(Parser)]
#[command(name = "slrc", version, about = "Sequential locally recoverable codes over GF(q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a parity-check matrix and write it as a matrix file.
    Construct(ConstructArgs),
    /// Exhaustively verify sequential recovery of a matrix file.
    Verify(VerifyArgs),
    /// Seeded erasure and repair trials.
    Simulate(SimulateArgs),
    /// Exact rate against the published rate bounds.
    Bounds(BoundsArgs),
    /// Convert between matrix files and CSV.
    Export(ExportArgs),
    /// Rebuild and verify the worked [16, 6] example over GF(4).
    DemoPaper(DemoArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    delta: usize,
    #[arg(long = "ti", default_value_t = 2)]
    t_i: usize,
    #[arg(long)]
    q: usize,
    /// complete-graph, affine or file:PATH (0/1 CSV or JSON design).
    #[arg(long, default_value = "complete-graph")]
    design: String,
    #[arg(long, default_value = "vandermonde")]
    mds: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Locality; defaults to the file's construction parameters.
    #[arg(long)]
    r: Option<usize>,
    /// Check all patterns up to this size.
    #[arg(long, conflicts_with = "max_t")]
    t: Option<usize>,
    /// Find the largest certified t up to this cap.
    #[arg(long = "max-t")]
    max_t: Option<usize>,
    #[arg(long)]
    report: Option<PathBuf>,
    /// Pattern budget for exhaustive enumeration.
    #[arg(long, default_value_t = DEFAULT_PATTERN_LIMIT)]
    limit: f64,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print one line per repair step.
    #[arg(long)]
    trace: bool,
    /// Erase exactly t coordinates per trial instead of 1..=t.
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    delta: usize,
    #[arg(long = "ti", default_value_t = 2)]
    t_i: usize,
    #[arg(long, default_value = "complete-graph")]
    design: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExportArgs {
    /// Matrix file (.json) or CSV of H (.csv, needs --q).
    #[arg(long = "in")]
    input: PathBuf,
    /// Output path; the extension selects CSV or JSON.
    #[arg(long)]
    out: PathBuf,
    /// Field order for CSV input.
    #[arg(long)]
    q: Option<usize>,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(long)]
    json: bool,
}

enum Failure {
    Verification,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) | Error::Json(_) | Error::Format(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify(a),
        Command::Simulate(a) => simulate(a),
        Command::Bounds(a) => bounds(a),
        Command::Export(a) => export(a),
        Command::DemoPaper(a) => demo(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got '{value}'"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Error> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn construct(a: ConstructArgs) -> Outcome {
    let source: DesignSource = a.design.parse()?;
    let style: MdsStyle = a.mds.parse()?;
    let design = source.load(a.r, a.t_i)?;
    let code = construct_code(design, a.delta, a.q, style)?;
    if let Some(path) = &a.out {
        MatrixFile::from_constructed(&code).write(path)?;
    }
    print_json(&code_params(&code.layout))?;
    Ok(())
}

fn load(path: &Path) -> Result<(MatrixFile, slrc::LinearCode), Error> {
    let file = MatrixFile::read(path)?;
    let code = file.code()?;
    Ok((file, code))
}

fn locality_of(file: &MatrixFile, r: Option<usize>) -> Result<usize, Error> {
    r.or(file.params.map(|p: CodeLayout| p.r))
        .ok_or_else(|| Error::Parameter("--r is required for files without construction parameters".into()))
}

fn verify(a: VerifyArgs) -> Outcome {
    let (file, code) = load(&a.input)?;
    let r = locality_of(&file, a.r)?;
    let table = RecoveryTable::build(&code, r)?;
    let mut checks = Vec::new();
    let mut report = serde_json::Map::new();
    report.insert("n".into(), json!(code.n()));
    report.insert("rank".into(), json!(code.rank()));
    report.insert("dimension".into(), json!(code.dimension()));

    if let Some(cap) = a.max_t {
        let rep = max_sequential_t_with(&table, cap, a.limit);
        println!(
            "t* = {}{}",
            rep.t_star,
            if rep.complete { "" } else { " (lower bound)" }
        );
        report.insert("max_t".into(), serde_json::to_value(&rep).map_err(Error::from)?);
    } else {
        let t =
            a.t.or(file.params.map(|p| p.t_claim()))
                .ok_or_else(|| Error::Parameter("give --t or --max-t".into()))?;
        let rep = check_sequential_with(&table, t, a.limit)?;
        checks.push(Check::new(
            format!("sequential recovery at t = {t}"),
            rep.holds,
            rep.failing_pattern.as_ref().map(|p| set_string(p)),
        ));
        report.insert("sequential".into(), serde_json::to_value(&rep).map_err(Error::from)?);
    }

    if let Some(built) = file.constructed()? {
        if built.layout.r == r {
            let locality = check_information_locality(&built)?;
            checks.extend(locality.checks.iter().cloned());
            let lemma = check_lemma2(&built, &table);
            for s in &lemma.statements {
                checks.push(Check::new(
                    format!("recovery statement {}: {}", s.index, s.description),
                    s.holds,
                    s.failure.as_ref().map(|f| format!("coordinate {}", f[0] + 1)),
                ));
            }
            let availability: Vec<usize> = (0..built.layout.k).map(|i| check_availability(&table, i).0).collect();
            report.insert("availability".into(), json!(availability));
            report.insert("locality".into(), serde_json::to_value(&locality).map_err(Error::from)?);
            report.insert("lemma2".into(), serde_json::to_value(&lemma).map_err(Error::from)?);
        }
    }

    for c in &checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        match &c.witness {
            Some(w) if !c.pass => println!("{status} {} (witness {w})", c.name),
            _ => println!("{status} {}", c.name),
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    report.insert("checks".into(), serde_json::to_value(&checks).map_err(Error::from)?);
    report.insert("pass".into(), json!(pass));
    if let Some(path) = &a.report {
        std::fs::write(path, serde_json::to_string_pretty(&report).map_err(Error::from)? + "\n")
            .map_err(Error::from)?;
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn simulate(a: SimulateArgs) -> Outcome {
    let (file, code) = load(&a.input)?;
    let r = locality_of(&file, a.r)?;
    let table = RecoveryTable::build(&code, r)?;
    let mode = if a.exact {
        PatternSize::Exactly
    } else {
        PatternSize::UpTo
    };
    let results = run_trials(&code, &table, a.t, a.trials, a.seed, mode)?;
    if a.trace {
        for trial in &results {
            println!("trial {} erased {}", trial.index, set_string(&trial.erased));
            match &trial.plan {
                RepairPlan::Complete { schedule } => {
                    for step in &schedule.steps {
                        println!("{}", step.trace_line());
                    }
                }
                RepairPlan::Stuck { partial, residual } => {
                    for step in &partial.steps {
                        println!("{}", step.trace_line());
                    }
                    println!("stuck {}", set_string(residual));
                }
            }
        }
    }
    let stats = summarize(r, a.t.min(code.n()), a.seed, mode, &results);
    print_json(&stats)?;
    Ok(())
}

fn bounds(a: BoundsArgs) -> Outcome {
    let source: DesignSource = a.design.parse()?;
    let design = source.load(a.r, a.t_i)?;
    let layout = CodeLayout::new(a.r, a.delta, a.t_i, design.k, design.b())?;
    let report = rate_report(&layout);
    if a.json {
        print_json(&report)?;
        return Ok(());
    }
    let frac = |x: &slrc::Rational| format!("{}/{}", x.numer(), x.denom());
    let dec = |x: &slrc::Rational| *x.numer() as f64 / *x.denom() as f64;
    println!(
        "r = {}, t = t_i(δ-1) = {}, n = {}, k = {}",
        a.r, report.t, layout.n, layout.k
    );
    println!("{:<28} {:>10} {:>8}", "rate", "exact", "decimal");
    println!(
        "{:<28} {:>10} {:>8.4}",
        "construction k/n",
        frac(&report.exact_rate),
        dec(&report.exact_rate)
    );
    println!(
        "{:<28} {:>10} {:>8.4}",
        "closed form",
        frac(&report.closed_form_rate),
        dec(&report.closed_form_rate)
    );
    for b in &report.bounds {
        let note = b.note.as_deref().map(|n| format!("  ({n})")).unwrap_or_default();
        println!("{:<28} {:>10} {:>8.4}{note}", b.name, frac(&b.value), dec(&b.value));
    }
    for n in &report.notes {
        println!("note: {n}");
    }
    Ok(())
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "csv")
}

fn export(a: ExportArgs) -> Outcome {
    let file = if is_csv(&a.input) {
        let q =
            a.q.ok_or_else(|| Error::Parameter("--q is required for CSV input".into()))?;
        let field = Field::with_order(q)?;
        let text = std::fs::read_to_string(&a.input).map_err(Error::from)?;
        MatrixFile::from_matrix(&field, &matrix_from_csv_in(&field, &text)?)
    } else {
        MatrixFile::read(&a.input)?
    };
    if is_csv(&a.out) {
        let (_, h) = file.decode()?;
        std::fs::write(&a.out, matrix_to_csv(&h)?).map_err(Error::from)?;
    } else {
        file.write(&a.out)?;
    }
    Ok(())
}

fn demo(a: DemoArgs) -> Outcome {
    let report = demo_paper()?;
    if a.json {
        print_json(&report)?;
    } else {
        for c in &report.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            match &c.witness {
                Some(w) => println!("{status} {} ({w})", c.name),
                None => println!("{status} {}", c.name),
            }
        }
        println!(
            "n = {}, k = {}, rank(H) = {}, dimension = {}, t* = {}",
            report.n, report.k, report.rank, report.dimension, report.max_t.t_star
        );
        for n in &report.notes {
            println!("note: {n}");
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
