use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use weylk_core::algebra::{Element, Monomial};
use weylk_core::cocycle::{normalize, BilinearForm, CocycleSpec, SharedForm};
use weylk_core::extension::{format_virasoro_table, virasoro_table};
use weylk_core::numerics::format_rational;
use weylk_core::verify::{parse_element, print_element, run_suite, Config, SuiteOptions, VerificationReport, SUITES};

/// Exact verifier for Lie algebras of generalized differential operators.
#[derive(Parser)]
#[command(name = "weylk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Evaluate a product, a bracket or a cocycle.
    #[command(subcommand)]
    Eval(EvalCommand),
    /// Normalize a cocycle and evaluate it on pairs of elements.
    Normalize(NormalizeArgs),
    /// Print a table.
    #[command(subcommand)]
    Table(TableCommand),
    /// List the available suites.
    Suites,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Sample this many random tuples instead of enumerating the box.
    #[arg(long)]
    samples: Option<usize>,
    /// Restrict the box to the monomials of this expression; repeatable.
    #[arg(long = "case")]
    cases: Vec<String>,
}

#[derive(Args)]
struct Operands {
    #[arg(long)]
    config: PathBuf,
    /// Emit a JSON report instead of plain text.
    #[arg(long)]
    json: bool,
    #[arg(allow_hyphen_values = true)]
    left: String,
    #[arg(allow_hyphen_values = true)]
    right: String,
}

#[derive(Subcommand)]
enum EvalCommand {
    /// Associative product `a⊙b`.
    Mul(Operands),
    /// Commutator `[a, b]`.
    Bracket(Operands),
    /// `ψ(a, b)` for a cocycle given inline, by path, or by the config.
    Cocycle {
        #[arg(long)]
        form: Option<String>,
        #[command(flatten)]
        operands: Operands,
    },
}

#[derive(Args)]
struct NormalizeArgs {
    #[arg(long)]
    config: PathBuf,
    /// Cocycle spec as inline JSON or a path; defaults to the config's.
    #[arg(long)]
    form: Option<String>,
    /// JSON file holding an array of `["expr", "expr"]` pairs.
    #[arg(long)]
    pairs: PathBuf,
}

#[derive(Subcommand)]
enum TableCommand {
    /// `[L_m, L_n]` with its central term for `|m|, |n| ≤ bound`.
    Virasoro {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        bound: i64,
        #[arg(long)]
        json: bool,
    },
}

/// Outcome of a command that ran to completion.
enum Status {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 1 for mathematical failures surfaced as errors, 2 for everything else.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<weylk_core::Error>() {
        Some(weylk_core::Error::NonCocycleInput(_) | weylk_core::Error::SelfCheck(_)) => 1,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Eval(cmd) => eval(cmd),
        Command::Normalize(args) => normalize_pairs(args),
        Command::Table(TableCommand::Virasoro { config, bound, json }) => table(&config, bound, json),
        Command::Suites => {
            out(&SUITES.join("\n"))?;
            Ok(Status::Pass)
        }
    }
}

fn load(path: &Path) -> Result<Config> {
    Config::load(path).with_context(|| format!("loading {}", path.display()))
}

fn verify(args: VerifyArgs) -> Result<Status> {
    if args.workers > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(args.workers)
            .build_global()
            .context("starting worker pool")?;
    }
    let config = load(&args.config)?;
    let opts = SuiteOptions {
        seed: args.seed,
        samples: args.samples,
        cases: args.cases,
        config_label: args.config.display().to_string(),
    };
    let start = Instant::now();
    let report = run_suite(&args.suite, &config, &opts)?;
    let text = report.to_json();
    match &args.out {
        Some(path) => std::fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))?,
        None => out(&text)?,
    }
    eprintln!(
        "{}: {} ({} checked, {} failed) in {:.3}s",
        report.suite,
        if report.passed() { "PASS" } else { "FAIL" },
        report.checked,
        report.failed,
        start.elapsed().as_secs_f64()
    );
    Ok(if report.passed() { Status::Pass } else { Status::Fail })
}

/// Inline JSON when the text starts with `{`, otherwise a path.
fn read_form(text: &str) -> Result<CocycleSpec> {
    let body = if text.trim_start().starts_with('{') {
        text.to_string()
    } else {
        std::fs::read_to_string(text).with_context(|| format!("reading form {text}"))?
    };
    serde_json::from_str(&body).map_err(|e| anyhow!(weylk_core::Error::Config(format!("cocycle spec: {e}"))))
}

fn resolve_form(config: &Config, form: Option<&str>) -> Result<SharedForm> {
    let spec = match form {
        Some(text) => read_form(text)?,
        None => config
            .file
            .cocycle
            .clone()
            .ok_or_else(|| weylk_core::Error::Config("no --form given and the config has no cocycle".into()))?,
    };
    Ok(spec.build(&config.algebra)?)
}

/// Writes a line to stdout; a closed pipe ends the process quietly.
fn out(text: &str) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{text}").and_then(|_| stdout.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        other => Ok(other?),
    }
}

fn emit(report: &VerificationReport, json: bool, text: &str) -> Result<()> {
    if json {
        out(&report.to_json())
    } else {
        out(text)
    }
}

fn eval(cmd: EvalCommand) -> Result<Status> {
    let (name, ops, form) = match cmd {
        EvalCommand::Mul(ops) => ("eval-mul", ops, None),
        EvalCommand::Bracket(ops) => ("eval-bracket", ops, None),
        EvalCommand::Cocycle { form, operands } => ("eval-cocycle", operands, Some(form)),
    };
    let config = load(&ops.config)?;
    let alg = &config.algebra;
    let a = parse_element(&ops.left, alg).with_context(|| format!("parsing {:?}", ops.left))?;
    let b = parse_element(&ops.right, alg).with_context(|| format!("parsing {:?}", ops.right))?;
    let result = match form {
        None if name == "eval-mul" => print_element(&alg.mul(&a, &b)?),
        None => print_element(&alg.bracket(&a, &b)?),
        Some(form) => {
            let psi = resolve_form(&config, form.as_deref())?;
            format_rational(&psi.eval_elements(&a, &b))
        }
    };
    let mut report = VerificationReport::new(name);
    report.config = config.echo();
    report.details = json!({
        "left": print_element(&a),
        "right": print_element(&b),
        "result": result,
    });
    emit(&report, ops.json, &result)?;
    Ok(Status::Pass)
}

fn normalize_pairs(args: NormalizeArgs) -> Result<Status> {
    let config = load(&args.config)?;
    let alg = &config.algebra;
    let tau = config
        .tau
        .clone()
        .ok_or_else(|| weylk_core::Error::InvalidTau("the config needs a valid \"tau\"".into()))?;
    let psi = resolve_form(&config, args.form.as_deref())?;
    let text = std::fs::read_to_string(&args.pairs).with_context(|| format!("reading {}", args.pairs.display()))?;
    let raw: Vec<[String; 2]> = serde_json::from_str(&text)
        .map_err(|e| anyhow!(weylk_core::Error::Config(format!("pairs file: {e}"))))?;
    let pairs = raw
        .iter()
        .map(|[u, v]| Ok((parse_element(u, alg)?, parse_element(v, alg)?)))
        .collect::<weylk_core::Result<Vec<(Element, Element)>>>()?;

    let normalized = normalize(alg, Arc::clone(&psi), tau.clone())?;
    let mut rows = Vec::new();
    for (u, v) in &pairs {
        let bracket = alg.bracket(u, v)?;
        rows.push(json!({
            "u": print_element(u),
            "v": print_element(v),
            "psi": format_rational(&psi.eval_elements(u, v)),
            "f_bracket": format_rational(&normalized.f_element(&bracket)),
            "phi": format_rational(&normalized.eval_elements(u, v)),
        }));
    }
    let mut monos: Vec<Monomial> = pairs
        .iter()
        .flat_map(|(u, v)| u.monomials().chain(v.monomials()).cloned())
        .collect();
    monos.sort();
    monos.dedup();
    let mut report = normalized.check_postconditions(&monos);
    report.suite = "normalize".into();
    report.config = config.echo();
    report.details = json!({ "tau": tau.coeffs(), "pairs": rows });
    out(&report.to_json())?;
    Ok(if report.passed() { Status::Pass } else { Status::Fail })
}

fn table(config: &Path, bound: i64, json: bool) -> Result<Status> {
    if bound < 0 {
        bail!(weylk_core::Error::Config(format!("bound must be nonnegative, got {bound}")));
    }
    let config = load(config)?;
    let rows = virasoro_table(&config.algebra, bound)?;
    let mut report = VerificationReport::new("table-virasoro");
    report.config = config.echo();
    report.details = Value::Array(rows.iter().map(|r| serde_json::to_value(r).expect("row serializes")).collect());
    let text = format_virasoro_table(&rows);
    emit(&report, json, text.trim_end())?;
    Ok(Status::Pass)
}
