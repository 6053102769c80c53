use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kasw::decompose::{galois_group_check, galois_group_check_p2, q_solve, reconstruct, reduce_mod_q, GeneratorWord};
use kasw::oracle::{run_all, run_suite, SuiteReport};
use kasw::ramification::{genus_sequence, stability_check, GenusReport, Mode, ModeChoice, TowerSpec, DEFAULT_N_MIN};
use kasw::{Error, Prime, WittVector};

const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECISION: u8 = 3;
const EXIT_INTEGRALITY: u8 = 4;

/// Witt vectors over F_p((T)), classes mod q and genera of Z_p^x-towers.
///
/// Exit codes: 0 success, 1 other error, 2 parse or schema error,
/// 3 precision exhausted, 4 integrality flags raised under --strict.
#[derive(Parser)]
#[command(name = "kasw", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Field {
    /// The prime p.
    #[arg(short = 'p', long = "prime")]
    p: Option<u64>,
    /// Absolute T-adic precision of parsed series.
    #[arg(long, default_value_t = 64)]
    precision: i64,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Tower {
    /// Tower specification file (JSON).
    spec: PathBuf,
    /// Overrides the mode of the specification file.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    PaperLiteral,
    FullRh,
    Both,
}

impl From<ModeArg> for ModeChoice {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::PaperLiteral => ModeChoice::PaperLiteral,
            ModeArg::FullRh => ModeChoice::FullRh,
            ModeArg::Both => ModeChoice::Both,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Canonical generator word of a unit: a Witt vector "(f_0; f_1; ...)",
    /// a generator word in JSON, or a file holding either.
    Decompose {
        input: String,
        #[command(flatten)]
        field: Field,
    },
    /// Solves q(y) = a.
    Solve {
        a: String,
        #[command(flatten)]
        field: Field,
    },
    /// Checks that K(q^-1 a) (or, for p = 2, K(q^-1 a, q^-1 b)) has the full
    /// group of units of Z/p^n as Galois group.
    Galois {
        a: String,
        b: Option<String>,
        #[command(flatten)]
        field: Field,
    },
    /// Genus sequence of a tower.
    Genus {
        #[command(flatten)]
        tower: Tower,
        /// Exit with status 4 when some genus is not an integer.
        #[arg(long)]
        strict: bool,
    },
    /// Quadratic-growth verdict for the genus sequence of a tower.
    Stability {
        #[command(flatten)]
        tower: Tower,
        /// First level included in the fit.
        #[arg(long, default_value_t = DEFAULT_N_MIN)]
        n_min: u32,
    },
    /// Runs oracle suites ("all" or one name).
    Oracle {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Random trials per ghost-map configuration.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Lib(Error),
    Code(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Code(c)) => ExitCode::from(c),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) | Error::InvalidSpec(_) => EXIT_PARSE,
                Error::PrecisionExhausted(_) => EXIT_PRECISION,
                _ => EXIT_OTHER,
            })
        }
    }
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Decompose { input, field } => decompose(&input, &field),
        Cmd::Solve { a, field } => solve(&a, &field),
        Cmd::Galois { a, b, field } => galois(&a, b.as_deref(), &field),
        Cmd::Genus { tower, strict } => genus(&tower, strict),
        Cmd::Stability { tower, n_min } => stability(&tower, n_min),
        Cmd::Oracle { suite, seed, trials, json } => oracle(&suite, seed, trials, json),
    }
}

/// The argument itself, or the contents of the file it names.
fn text_or_file(arg: &str) -> Result<String, Error> {
    let path = Path::new(arg);
    if !arg.trim_start().starts_with('(') && !arg.trim_start().starts_with('{') && path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{arg}: {e}")));
    }
    Ok(arg.to_string())
}

fn prime(field: &Field) -> Result<Prime, Error> {
    let p = field.p.ok_or_else(|| Error::Parse("-p is required for Witt vector input".into()))?;
    Prime::new(p)
}

fn vector(arg: &str, field: &Field) -> Result<WittVector, Error> {
    WittVector::parse(prime(field)?, &text_or_file(arg)?, field.precision)
}

fn emit(v: &Value) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn decompose(input: &str, field: &Field) -> Outcome {
    let text = text_or_file(input)?;
    let word = if text.trim_start().starts_with('{') {
        let w = GeneratorWord::from_json(text.trim())?;
        if field.p.is_some_and(|p| p != w.p.as_u64()) {
            return Err(Error::WrongPrime(format!("word is over {}, -p says {}", w.p, field.p.unwrap())).into());
        }
        reduce_mod_q(&reconstruct(&w, w.natural_length())?, i64::MAX)?
    } else {
        reduce_mod_q(&WittVector::parse(prime(field)?, &text, field.precision)?, field.precision)?
    };
    println!("{}", word.to_json());
    Ok(())
}

/// First level at which `q(y) = a` has no solution.
fn obstruction_level(a: &WittVector, precision: i64) -> Result<usize, Error> {
    for m in 1..=a.len() {
        if q_solve(&a.truncate(m)?, precision)?.is_none() {
            return Ok(m - 1);
        }
    }
    Ok(a.len())
}

fn solve(arg: &str, field: &Field) -> Outcome {
    let a = vector(arg, field)?;
    match q_solve(&a, field.precision)? {
        Some(y) if field.json => emit(&json!({"solvable": true, "y": y.to_string(), "precisions": y.precisions()})),
        Some(y) => println!("y = {y}"),
        None => {
            let level = obstruction_level(&a, field.precision)?;
            if field.json {
                emit(&json!({"solvable": false, "obstruction_level": level}));
            } else {
                println!("unsolvable: obstruction at level {level}");
            }
        }
    }
    Ok(())
}

fn galois(a: &str, b: Option<&str>, field: &Field) -> Outcome {
    let x = vector(a, field)?;
    let verdict = match b {
        None => galois_group_check(&x)?,
        Some(b) => galois_group_check_p2(&x, &vector(b, field)?)?,
    };
    if field.json {
        emit(&json!({ "full_unit_group": verdict }));
    } else {
        println!("{}", if verdict { "full unit group" } else { "proper subgroup or degenerate" });
    }
    Ok(())
}

fn load(tower: &Tower) -> Result<(TowerSpec, Vec<Mode>), Error> {
    let text = std::fs::read_to_string(&tower.spec).map_err(|e| Error::Parse(format!("{}: {e}", tower.spec.display())))?;
    let spec = TowerSpec::from_json(&text)?;
    let choice = tower.mode.map(ModeChoice::from).unwrap_or(spec.mode);
    Ok((spec, choice.modes()))
}

fn mode_key(m: Mode) -> &'static str {
    match m {
        Mode::PaperLiteral => "paper_literal",
        Mode::FullRh => "full_rh",
    }
}

fn keyed(items: Vec<(Mode, Value)>) -> Value {
    if items.len() == 1 {
        return items.into_iter().next().unwrap().1;
    }
    Value::Object(items.into_iter().map(|(m, v)| (mode_key(m).to_string(), v)).collect())
}

fn print_report(r: &GenusReport) {
    println!("mode {}", mode_key(r.mode));
    println!("{:>3}  {:>24}  {:>24}  integral", "n", "g_n", "2g_n - 2");
    for (n, (g, e)) in r.genus_seq.iter().zip(r.euler_seq()).enumerate() {
        println!("{n:>3}  {g:>24}  {e:>24}  {}", if r.integrality_flags[n] { "no" } else { "yes" });
    }
    for d in &r.different_seq {
        let vals: Vec<String> = d.values.iter().map(|v| v.to_string()).collect();
        println!("different at {}{}: {}", d.at, if d.implicit { " (balancing)" } else { "" }, vals.join(", "));
    }
    match &r.stability {
        Some(s) => println!("stable: g_n = ({}) p^2n + ({}) p^n + ({})", s.a, s.b, s.c),
        None => println!("no exact quadratic fit"),
    }
}

fn genus(tower: &Tower, strict: bool) -> Outcome {
    let (spec, modes) = load(tower)?;
    let reports = modes.iter().map(|&m| genus_sequence(&spec, m)).collect::<Result<Vec<_>, _>>()?;
    if tower.json {
        emit(&keyed(reports.iter().map(|r| (r.mode, serde_json::to_value(r).expect("serializable"))).collect()));
    } else {
        for r in &reports {
            print_report(r);
        }
    }
    if strict && reports.iter().any(|r| r.integrality_flags.iter().any(|&f| f)) {
        return Err(Failure::Code(EXIT_INTEGRALITY));
    }
    Ok(())
}

fn stability(tower: &Tower, n_min: u32) -> Outcome {
    let (spec, modes) = load(tower)?;
    let mut out = Vec::new();
    for m in modes {
        let r = genus_sequence(&spec, m)?;
        let s = stability_check(spec.p, &r.genus_seq, &spec.places, n_min)?;
        if !tower.json {
            match &s {
                Some(s) => println!(
                    "{}: g_n = ({}) p^2n + ({}) p^n + ({}); s={:?} m={:?} t={:?}; criterion {}",
                    mode_key(m),
                    s.a,
                    s.b,
                    s.c,
                    s.s,
                    s.m,
                    s.t,
                    if s.criterion_agrees { "agrees" } else { "disagrees" }
                ),
                None => println!("{}: not stable from n = {n_min}", mode_key(m)),
            }
        }
        out.push((m, serde_json::to_value(&s).expect("serializable")));
    }
    if tower.json {
        emit(&keyed(out));
    }
    Ok(())
}

fn oracle(suite: &str, seed: u64, trials: usize, json: bool) -> Outcome {
    if json {
        emit(&json!({ "seed": seed }));
    } else {
        println!("seed {seed}");
    }
    let reports: Vec<SuiteReport> = if suite == "all" { run_all(seed, trials)? } else { vec![run_suite(suite, seed, trials)?] };
    let mut passed = 0;
    for r in &reports {
        for d in &r.divergences {
            println!("{}", d.to_json_line());
        }
        if r.passed() {
            passed += 1;
        }
        if json {
            emit(&json!({"suite": r.name, "checks": r.checks, "passed": r.passed()}));
        } else {
            println!("{} {} ({} checks)", if r.passed() { "PASS" } else { "FAIL" }, r.name, r.checks);
        }
    }
    let verdict = if passed == reports.len() { "PASS" } else { "FAIL" };
    if json {
        emit(&json!({"verdict": verdict, "passed": passed, "suites": reports.len()}));
    } else {
        println!("{verdict} {passed}/{} suites", reports.len());
    }
    if passed == reports.len() {
        Ok(())
    } else {
        Err(Failure::Code(EXIT_OTHER))
    }
}
