//! `starflock` command-line front end.
//!
//! Every command prints one report: JSON (`--format json`, keys sorted, with
//! a top-level `schema`) or plain text. Exit status is 0 on success, 1 when a
//! verification fails and 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use starflock::blocking;
use starflock::catalog::{self, SuiteOptions, SuiteReport, SurveyMode};
use starflock::equiv::{self, Mode, Verdict};
use starflock::flock::{self, Flock, FlockFile};
use starflock::geom::ProjectivePlane;
use starflock::linpoly;
use starflock::{Error, Field};

const SCHEMA: &str = "starflock-report/1";

#[derive(Parser)]
#[command(name = "starflock", version, about = "Flocks of cones, critical cones and Rédei blocking sets over finite fields")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads for parallel surveys (0 = all cores)
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,

    /// Seed of the randomized property checks
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Finite field tables
    #[command(subcommand)]
    Field(FieldCmd),
    /// Flock analysis
    #[command(subcommand)]
    Flock(FlockCmd),
    /// Linearized permutation polynomials
    #[command(subcommand)]
    Linpoly(LinpolyCmd),
    /// Blocking sets
    #[command(subcommand)]
    Blocking(BlockingCmd),
    /// Surveys over families of flocks
    #[command(subcommand)]
    Survey(SurveyCmd),
    /// Run a named verification suite
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(catalog::SUITES))]
        suite: String,
        /// Restrict the suite to one field order (`e` for triad-special)
        #[arg(long)]
        q: Option<u32>,
    },
}

#[derive(Subcommand)]
enum FieldCmd {
    /// Modulus, primitive element and subfields of GF(p^n)
    Info {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        /// Coefficients c_0,..,c_{n-1} of the monic modulus
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u32>>,
    },
}

#[derive(Subcommand)]
enum FlockCmd {
    /// Critical cone class and structure of a flock file
    Classify { file: PathBuf },
    /// Critical cone points, width and class
    Cone { file: PathBuf },
    /// Decide whether two flocks are equivalent under the cone stabilizer
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Use the canonical form instead of invariants (q <= 8)
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Subcommand)]
enum LinpolyCmd {
    /// Number of monic GF(p^e)-linearized permutation polynomials of GF(q)
    Count {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        e: u32,
    },
    /// List the GF(p^e)-linearized permutation polynomials of GF(q)
    Enum {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        monic: bool,
    },
}

#[derive(Subcommand)]
enum BlockingCmd {
    /// Projective triangle of side (q+3)/2, q odd
    Triangle {
        #[arg(long)]
        q: u64,
    },
    /// Projective triad of side (q+2)/2, q even
    Triad {
        #[arg(long)]
        q: u64,
    },
    /// Rédei blocking set of a proper star flock
    FromFlock { file: PathBuf },
}

#[derive(Subcommand)]
enum SurveyCmd {
    /// Every star flock F(t, g(t), 0) over GF(q)
    Star {
        #[arg(long)]
        q: u32,
        /// Only additive g
        #[arg(long)]
        linearized_only: bool,
    },
}

/// Failure before any verification could run.
struct UsageError(String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

struct Outcome {
    result: Value,
    pass: bool,
    text: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn read_flock(path: &Path) -> Result<Flock, UsageError> {
    let raw = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    let file: FlockFile =
        serde_json::from_str(&raw).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    Ok(Flock::from_file(&file)?)
}

fn suite_outcome(r: SuiteReport) -> Outcome {
    let mut text = String::new();
    for c in &r.checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        text.push_str(&format!("{mark} {}", c.description));
        if !c.pass || !(c.expected == Value::Bool(true)) {
            text.push_str(&format!(" (expected {}, got {})", c.expected, c.actual));
        }
        text.push('\n');
    }
    for n in &r.notes {
        text.push_str(&format!("note {n}\n"));
    }
    let failed = r.failures().count();
    text.push_str(&format!("{}: {} checks, {} failed\n", r.suite, r.checks.len(), failed));
    Outcome { pass: r.pass, result: to_value(&r), text }
}

/// Generic `key: value` rendering of a JSON object.
fn plain(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, v) in m {
            out.push_str(&format!("{k}: {v}\n"));
        }
    } else {
        out.push_str(&format!("{v}\n"));
    }
    out
}

fn outcome(result: Value, pass: bool) -> Outcome {
    let text = plain(&result);
    Outcome { result, pass, text }
}

fn field_info(p: u32, n: u32, modulus: Option<Vec<u32>>) -> Result<Outcome, UsageError> {
    let k = Field::new(p, n, modulus.as_deref())?;
    let lam = k.primitive();
    let subfields: Vec<u32> = (1..=n).filter(|e| n.is_multiple_of(*e)).collect();
    let result = json!({
        "p": p,
        "n": n,
        "q": k.q(),
        "modulus": k.modulus(),
        "primitive": lam,
        "primitive_coefficients": k.coefficients(lam),
        "subfield_degrees": subfields,
        "squares": k.nonzero().filter(|&a| k.is_square(a)).count(),
    });
    Ok(outcome(result, true))
}

fn flock_summary(fl: &Flock) -> Value {
    let k = fl.field();
    let plane = ProjectivePlane::new(k);
    let s = flock::critical_cone(fl);
    let class = flock::classify_cone_in(&plane, &s);
    let mut m = Map::new();
    m.insert("field".into(), to_value(&k.spec()));
    m.insert("class".into(), to_value(&class));
    m.insert("linear".into(), to_value(&flock::is_linear(fl)));
    m.insert("star".into(), to_value(&flock::star_analysis(fl)));
    m.insert("bilinear".into(), to_value(&flock::is_bilinear(fl)));
    m.insert("star_form".into(), Value::Bool(fl.is_star_form()));
    if fl.is_star_form() && k.is_permutation(fl.g().iter().copied()) {
        m.insert("directions".into(), to_value(&linpoly::direction_count(k, fl.g()).n));
    }
    Value::Object(m)
}

fn flock_cone(fl: &Flock) -> Value {
    let k = fl.field();
    let plane = ProjectivePlane::new(k);
    let s = flock::critical_cone(fl);
    let w = flock::width_in(&plane, &s);
    json!({
        "field": k.spec(),
        "carrier": s,
        "width": w.min,
        "class": flock::classify_cone_in(&plane, &s),
        "is_flock_of_carrier": flock::is_flock_of(fl, &s),
    })
}

fn flock_equiv(a: &Flock, b: &Flock, exhaustive: bool) -> Result<Outcome, UsageError> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch.into());
    }
    let mode = if exhaustive { Mode::Exhaustive } else { Mode::Fingerprint };
    let verdict = equiv::are_equivalent(a, b, mode)?;
    let mut result = json!({ "mode": mode, "verdict": verdict });
    if exhaustive && verdict == Verdict::Equivalent {
        result["witness"] = to_value(&equiv::find_equivalence(a, b)?);
    }
    Ok(outcome(result, true))
}

fn linpoly_count(q: u64, e: u32) -> Result<Outcome, UsageError> {
    let k = Field::of_order(q)?;
    if e == 0 || k.n() % e != 0 {
        return Err(Error::NotADivisor { e, n: k.n() }.into());
    }
    let s = (k.p() as u64).pow(e);
    let count = linpoly::betti_mathieu_count(s, k.n() / e)?;
    let result = json!({ "q": q, "e": e, "s": s, "k": k.n() / e, "count": count as u64 });
    Ok(Outcome { text: format!("{count}\n"), result, pass: true })
}

fn linpoly_enum(q: u64, e: u32, monic: bool) -> Result<Outcome, UsageError> {
    let k = Field::of_order(q)?;
    let polys = linpoly::enumerate_linearized_perms(&k, e, monic)?;
    let mut result = json!({ "q": q, "e": e, "monic": monic, "count": polys.len(), "polynomials": polys });
    let mut pass = true;
    if monic {
        let expected = linpoly::betti_mathieu_count((k.p() as u64).pow(e), k.n() / e)? as u64;
        pass = expected == polys.len() as u64;
        result["expected"] = json!(expected);
    }
    let mut text = format!("count: {}\n", polys.len());
    for lp in &polys {
        text.push_str(&format!("{:?}\n", lp.coeffs().iter().map(|c| c.0).collect::<Vec<_>>()));
    }
    Ok(Outcome { result, pass, text })
}

fn blocking_config(q: u64, triangle: bool) -> Result<Outcome, UsageError> {
    let k = Field::of_order(q)?;
    let conf = if triangle { blocking::projective_triangle(&k)? } else { blocking::projective_triad(&k)? };
    let report = blocking::is_blocking_set(&k, &conf.set.points);
    let pass = report.blocking && report.is_redei && conf.covered && conf.closure;
    let result = json!({ "configuration": conf, "report": report });
    let text = format!(
        "size: {}\nlines: {}\npoints per line: {:?}\nblocking: {}\nRédei: {}\nclosure: {}\n",
        report.size,
        conf.lines.len(),
        conf.points_per_line,
        report.blocking,
        report.is_redei,
        conf.closure
    );
    Ok(Outcome { result, pass, text })
}

fn blocking_from_flock(fl: &Flock) -> Result<Outcome, UsageError> {
    let normal = if fl.is_star_form() { fl.clone() } else { equiv::normalize_star_form(fl)?.0 };
    let set = blocking::redei_from_star_flock(&normal)?;
    let report = blocking::is_blocking_set(normal.field(), &set.points);
    let n = linpoly::direction_count(normal.field(), normal.g()).n;
    let pass = report.blocking && report.is_redei;
    let result = json!({ "normal_g": normal.g(), "directions": n, "set": set, "report": report });
    let text = format!("size: {}\ndirections: {n}\nblocking: {}\nRédei: {}\n", report.size, report.blocking, report.is_redei);
    Ok(Outcome { result, pass, text })
}

fn run(cli: &Cli) -> Result<Outcome, UsageError> {
    match &cli.command {
        Command::Field(FieldCmd::Info { p, n, modulus }) => field_info(*p, *n, modulus.clone()),
        Command::Flock(FlockCmd::Classify { file }) => Ok(outcome(flock_summary(&read_flock(file)?), true)),
        Command::Flock(FlockCmd::Cone { file }) => Ok(outcome(flock_cone(&read_flock(file)?), true)),
        Command::Flock(FlockCmd::Equiv { a, b, exhaustive }) => flock_equiv(&read_flock(a)?, &read_flock(b)?, *exhaustive),
        Command::Linpoly(LinpolyCmd::Count { q, e }) => linpoly_count(*q, *e),
        Command::Linpoly(LinpolyCmd::Enum { q, e, monic }) => linpoly_enum(*q, *e, *monic),
        Command::Blocking(BlockingCmd::Triangle { q }) => blocking_config(*q, true),
        Command::Blocking(BlockingCmd::Triad { q }) => blocking_config(*q, false),
        Command::Blocking(BlockingCmd::FromFlock { file }) => blocking_from_flock(&read_flock(file)?),
        Command::Survey(SurveyCmd::Star { q, linearized_only }) => {
            let mode = if *linearized_only { SurveyMode::Linearized } else { SurveyMode::Auto };
            Ok(suite_outcome(catalog::survey_star_flocks(*q, mode)?))
        }
        Command::Verify { suite, q } => {
            let opts = SuiteOptions { q: *q, seed: cli.seed };
            Ok(suite_outcome(catalog::run_suite(suite, &opts)?))
        }
    }
}

/// The argument vector without worker-count flags, so reports do not
/// depend on `--jobs`.
fn echo(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--jobs" {
            it.next();
        } else if !a.starts_with("--jobs=") {
            out.push(a.clone());
        }
    }
    out
}

/// Report bytes and exit status of a completed command.
fn render(format: Format, args: &[String], out: Outcome) -> (String, u8) {
    let body = match format {
        Format::Json => {
            let report = json!({
                "schema": SCHEMA,
                "command": echo(args),
                "pass": out.pass,
                "result": out.result,
            });
            serde_json::to_string_pretty(&report).expect("serializable") + "\n"
        }
        Format::Text => format!("{}{}\n", out.text, if out.pass { "PASS" } else { "FAIL" }),
    };
    (body, if out.pass { 0 } else { 1 })
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(out) => {
            let (text, code) = render(cli.format, &args, out);
            print!("{text}");
            ExitCode::from(code)
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
