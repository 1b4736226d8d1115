//! The `kstab` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::algebra::{parse_rational_lenient, rational::to_f64, PiecewiseLinear, Polynomial, Rational};
use crate::io::{parse_input, InputDocument, Resolved};
use crate::registry::{verify_all, verify_entry, CheckOutcome, Registry};
use crate::stability::{
    check_stability, horospherical_norm, j_functional, ke_barycenter, l_functional, sample_uniform_check,
    stability_threshold, DHData, Endpoint, StabilityReport, ThresholdOutcome, ThresholdReport, Verdict,
};
use crate::variety::{Kind, RootFactor, SphericalData};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_STABLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "kstab", version, about = "Exact K-stability verifier for polarized rank-one spherical varieties")]
pub struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Stability verdict for a concrete polarization
    Check(CheckArgs),
    /// Condition polynomial and stability threshold along a polarization ray
    Threshold(ThresholdArgs),
    /// Built-in examples
    Example(ExampleArgs),
    /// Evaluate the stability functionals on a piecewise-linear test function
    Functional(FunctionalArgs),
}

#[derive(Args, Debug)]
pub struct Target {
    /// Input document (JSON file) or registry example name
    pub target: String,
    /// Upper endpoint for a parameterized document, e.g. 1/2
    #[arg(long)]
    pub param: Option<String>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub target: Target,
    /// Also evaluate this many random admissible test functions
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct ThresholdArgs {
    /// Input document or registry name of a polarization ray
    pub target: String,
    /// Width of the final bracket around each root
    #[arg(short, long, default_value = "1/100000")]
    pub precision: String,
    /// Write (s, R(s)) samples over the parameter range as CSV
    #[arg(long)]
    pub emit_curve: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExampleArgs {
    pub name: Option<String>,
    #[arg(long, conflicts_with_all = ["name", "verify_all"])]
    pub list: bool,
    #[arg(long, conflicts_with = "name")]
    pub verify_all: bool,
}

#[derive(Args, Debug)]
pub struct FunctionalArgs {
    #[command(flatten)]
    pub target: Target,
    /// Convex test function as BREAKPOINTS:VALUES, e.g. "0,1/4,1/2:0,0,1"
    #[arg(long)]
    pub g: String,
}

/// A failure that maps to exit code 2.
struct InputFailure(String);

impl<E: std::fmt::Display> From<E> for InputFailure {
    fn from(e: E) -> Self {
        InputFailure(e.to_string())
    }
}

type CmdResult = Result<i32, InputFailure>;

/// Runs the command line with `args` (including the program name), writing
/// to `out` and `err`; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let json = cli.json;
    let result = match cli.command {
        Command::Check(a) => cmd_check(&a, json, out),
        Command::Threshold(a) => cmd_threshold(&a, json, out),
        Command::Example(a) => cmd_example(&a, json, out),
        Command::Functional(a) => cmd_functional(&a, json, out),
    };
    match result {
        Ok(code) => code,
        Err(InputFailure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

/// Registry names take effect only when no file of that name exists.
fn load_target(target: &str) -> Result<InputDocument, InputFailure> {
    let path = Path::new(target);
    if path.is_file() {
        return Ok(parse_input(path)?);
    }
    Ok(Registry::from_env()?.lookup(target)?)
}

fn concrete(target: &Target) -> Result<(InputDocument, SphericalData), InputFailure> {
    let doc = load_target(&target.target)?;
    let data = match (doc.resolve()?, &target.param) {
        (Resolved::Data(d), None) => d,
        (Resolved::Data(_), Some(_)) => {
            return Err(InputFailure(format!("{} is not parameterized; drop --param", target.target)))
        }
        (Resolved::Family(f), Some(p)) => f.instantiate(&parse_rational_lenient(p)?)?,
        (Resolved::Family(f), None) => {
            let (lo, hi) = f.range();
            return Err(InputFailure(format!(
                "{} is a polarization ray; pick a member with --param s, s in ({lo}, {hi})",
                target.target
            )));
        }
    };
    Ok((doc, data))
}

fn emit(out: &mut dyn Write, value: &Value) -> std::io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("JSON values serialize"))
}

fn coeff_list(p: &Polynomial) -> String {
    let c: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
    format!("[{}]", c.join(", "))
}

/// `P` as the product of its pairing factors over the product of the root
/// weights, the shape it is defined in.
fn factored(factors: &[RootFactor]) -> String {
    if factors.is_empty() {
        return "1".into();
    }
    let weights: Rational = factors.iter().map(|f| f.rho_pairing.clone()).product();
    let terms: Vec<String> = factors.iter().map(|f| format!("({})", f.affine())).collect();
    format!("{} / {}", terms.join(""), weights)
}

fn verdict_exit(v: Verdict) -> i32 {
    match v {
        Verdict::Stable => EXIT_OK,
        _ => EXIT_NOT_STABLE,
    }
}

fn cmd_check(args: &CheckArgs, json: bool, out: &mut dyn Write) -> CmdResult {
    let (doc, data) = concrete(&args.target)?;
    let report = check_stability(&data)?;
    let ke = match doc.ke_weight_polynomial() {
        Some(ell) => Some((ke_barycenter(&data, &ell)?, ell)),
        None => None,
    };
    let sampling = match args.samples {
        Some(n) => Some(sample_uniform_check(&data, n, args.seed)?),
        None => None,
    };
    if json {
        let mut value = report.to_json();
        if let Some((integral, ell)) = &ke {
            value["ke_barycenter"] = json!({"weight": ell, "value": integral.to_string(), "positive": integral.is_positive()});
        }
        if let Some(s) = &sampling {
            value["sampling"] = s.to_json();
        }
        emit(out, &value)?;
    } else {
        print_report(out, &report, &data)?;
        if let Some((integral, ell)) = &ke {
            writeln!(out, "barycenter ∫ℓP, ℓ(t) = {ell}: {integral} ({})", if integral.is_positive() { "positive" } else { "not positive" })?;
        }
        if let Some(s) = &sampling {
            writeln!(out, "sampling: {} functions, {} evaluated, {} skipped (zero norm)", s.samples, s.evaluated(), s.skipped)?;
            if let Some(m) = s.min_margin() {
                writeln!(out, "  min L(g)/|g| = {m} ≈ {}", to_f64(&m))?;
            }
            writeln!(out, "  counterexamples: {}", s.counterexamples.len())?;
            for c in s.counterexamples.iter().take(5) {
                writeln!(out, "    g = {}  L(g) = {}", c.g, c.l)?;
            }
            if s.identity_destabilizes() {
                writeln!(out, "  destabilizer: g(t) = t with L(g) = {}", s.identity_futaki)?;
            }
        }
    }
    Ok(verdict_exit(report.verdict))
}

fn print_report(out: &mut dyn Write, report: &StabilityReport, data: &SphericalData) -> std::io::Result<()> {
    writeln!(out, "verdict: {}", report.verdict)?;
    writeln!(out, "kind: {}", report.kind)?;
    writeln!(out, "interval: [{}, {}]", report.lower, report.upper)?;
    writeln!(out, "futaki L(t): {}", report.futaki)?;
    writeln!(out, "reversed L(-t): {}", report.futaki_reversed)?;
    writeln!(out, "a: {}", report.a)?;
    writeln!(out, "active roots: {}", report.restricted_roots)?;
    writeln!(out, "P(t) = {}", factored(&data.root_factors()))?;
    writeln!(out, "     = {}", report.p)?;
    writeln!(out, "     coefficients {}", coeff_list(&report.p))?;
    writeln!(out, "Q(t) = {}", report.q)?;
    writeln!(out, "     coefficients {}", coeff_list(&report.q))
}

fn endpoint_text(e: &Endpoint, digits: usize) -> String {
    match e {
        Endpoint::RangeEnd(r) => r.to_string(),
        Endpoint::Root(root) => format!("{}…", root.decimal(digits)),
    }
}

fn print_threshold(out: &mut dyn Write, report: &ThresholdReport) -> std::io::Result<()> {
    let digits = report.digits();
    let (lo, hi) = &report.range;
    writeln!(out, "R(s) = {}", report.condition_polynomial.display_in("s"))?;
    writeln!(out, "     coefficients {}", coeff_list(&report.condition_polynomial))?;
    writeln!(out, "parameter range: ({lo}, {hi})")?;
    match &report.outcome {
        ThresholdOutcome::Degenerate => writeln!(out, "degenerate: R ≡ 0, the Futaki invariant vanishes for every member")?,
        ThresholdOutcome::StableOnEntireRange => writeln!(out, "stable on ({lo}, {hi})")?,
        ThresholdOutcome::UnstableNearLower => writeln!(out, "R < 0 just above {lo}: unstable near the lower end")?,
        ThresholdOutcome::StableBelow(root) => {
            writeln!(out, "stable for s in ({lo}, s0), s0 ≈ {}", root.decimal(digits))?;
            writeln!(out, "s0 in [{}, {}]", root.low, root.high)?;
        }
    }
    if report.roots.len() > 1 || report.positive_components.len() > 1 {
        for c in &report.positive_components {
            writeln!(out, "R > 0 on ({}, {})", endpoint_text(&c.low, digits), endpoint_text(&c.high, digits))?;
        }
    }
    Ok(())
}

fn write_curve(path: &Path, r: &Polynomial, range: &(Rational, Rational)) -> std::io::Result<()> {
    const STEPS: i64 = 200;
    let mut csv = String::from("s,R\n");
    let width = &range.1 - &range.0;
    for i in 0..=STEPS {
        let s = &range.0 + &width * Rational::new(i.into(), STEPS.into());
        csv.push_str(&format!("{},{}\n", to_f64(&s), to_f64(&r.evaluate(&s))));
    }
    std::fs::write(path, csv)
}

fn cmd_threshold(args: &ThresholdArgs, json: bool, out: &mut dyn Write) -> CmdResult {
    let doc = load_target(&args.target)?;
    let family = match doc.resolve()? {
        Resolved::Family(f) => f,
        Resolved::Data(_) => {
            return Err(InputFailure(format!(
                "{} is a single polarization; threshold needs a ray (interval with \"parameter\", or NAME-family)",
                args.target
            )))
        }
    };
    let precision = parse_rational_lenient(&args.precision)?;
    let report = stability_threshold(&family, &precision)?;
    if let Some(path) = &args.emit_curve {
        write_curve(path, &report.condition_polynomial, &report.range)?;
    }
    if json {
        emit(out, &report.to_json())?;
    } else {
        print_threshold(out, &report)?;
    }
    Ok(EXIT_OK)
}

fn print_outcomes(out: &mut dyn Write, outcomes: &[CheckOutcome]) -> std::io::Result<()> {
    for o in outcomes {
        let mark = if o.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{mark} {} / {}: {} [{}]", o.entry, o.label, o.detail, o.note)?;
    }
    Ok(())
}

fn cmd_example(args: &ExampleArgs, json: bool, out: &mut dyn Write) -> CmdResult {
    let registry = Registry::from_env()?;
    if args.list || (args.name.is_none() && !args.verify_all) {
        if json {
            let list: Vec<Value> = registry
                .entries()
                .iter()
                .map(|e| json!({"name": e.name, "description": e.description, "family": e.document.is_family()}))
                .collect();
            emit(out, &Value::Array(list))?;
        } else {
            for e in registry.entries() {
                writeln!(out, "{:<10} {}", e.name, e.description)?;
            }
        }
        return Ok(EXIT_OK);
    }
    let outcomes = if args.verify_all {
        verify_all(&registry)
    } else {
        let name = args.name.as_deref().expect("name or --verify-all");
        let entry = registry.get(name).ok_or_else(|| {
            InputFailure(format!("unknown example {name:?}; known examples: {}", registry.names().join(", ")))
        })?;
        if !json {
            writeln!(out, "{}: {}", entry.name, entry.description)?;
            writeln!(out, "{}", entry.document.to_json_string())?;
        }
        verify_entry(entry)
    };
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if json {
        emit(
            out,
            &json!({
                "checks": outcomes.iter().map(CheckOutcome::to_json).collect::<Vec<_>>(),
                "passed": outcomes.len() - failed,
                "failed": failed,
            }),
        )?;
    } else {
        print_outcomes(out, &outcomes)?;
        writeln!(out, "{} checks, {} passed, {} failed", outcomes.len(), outcomes.len() - failed, failed)?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_NOT_STABLE })
}

fn cmd_functional(args: &FunctionalArgs, json: bool, out: &mut dyn Write) -> CmdResult {
    let (_, data) = concrete(&args.target)?;
    let g = PiecewiseLinear::parse(&args.g)?;
    if !g.is_convex() {
        return Err(InputFailure(format!("g = {g} is not convex: slopes must be non-decreasing")));
    }
    let dh = DHData::from_data(&data)?;
    let l = l_functional(&g, &dh)?;
    let j = j_functional(&g, &dh.p, &dh.lower, &dh.upper)?;
    let horo = match data.kind() {
        Kind::Horospherical => Some(horospherical_norm(&g, &dh.p, &dh.lower, &dh.upper)?),
        Kind::NonHorospherical => None,
    };
    let norm = horo.clone().unwrap_or_else(|| j.clone());
    let ratio = (!norm.is_zero()).then(|| &l / &norm);
    let admissible = data.kind() == Kind::Horospherical || g.is_non_decreasing();
    if json {
        emit(
            out,
            &json!({
                "g": g.to_string(),
                "L": l.to_string(),
                "J": j.to_string(),
                "horospherical_norm": horo.as_ref().map(|h| h.to_string()),
                "ratio": ratio.as_ref().map(|r| r.to_string()),
                "admissible": admissible,
            }),
        )?;
    } else {
        writeln!(out, "g: {g}")?;
        writeln!(out, "L(g) = {l}")?;
        writeln!(out, "J(g) = {j}")?;
        if let Some(h) = &horo {
            writeln!(out, "inf_c J(g + c t) = {h}")?;
        }
        match &ratio {
            Some(r) => writeln!(out, "L(g)/|g| = {r} ≈ {}", to_f64(r))?,
            None => writeln!(out, "|g| = 0: g is trivial for the stability inequality")?,
        }
        if !admissible {
            writeln!(out, "note: g is decreasing somewhere, so it is not an admissible test function here")?;
        }
    }
    Ok(EXIT_OK)
}
