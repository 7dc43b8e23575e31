use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use uniprod::report::{sha256_hex, Timing};
use uniprod::schema::{parse_spec, ProblemSpec};
use uniprod::{selftest, CliError, Input, Options, Report};

/// Exact convolution calculus for universal products on dual semigroups.
///
/// Exit status: 0 when every verdict passes, 1 when a verdict fails (the report carries a
/// witness), 2 on input or usage errors. UNIPROD_THREADS caps the worker threads.
#[derive(Parser, Debug)]
#[command(name = "uniprod", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Product of `left` (first factor) and `right` (second factor) on the free product.
    EvalProduct(Common),
    /// Convolution of `left` and `right` on the dual semigroup.
    Convolve(Common),
    /// Convolution exponential of `psi`, at t = 1 or at each of --times.
    Exp(Common),
    /// exp(tψ) on a word (or all words) as polynomials in t.
    ExpPoly(Common),
    /// Trotter approximants against the exact exponential.
    Trotter(Common),
    /// The natural transformation σ on one word of the free product of the factors.
    Sigma(Common),
    /// Restriction, universality and associativity on random functionals (--product all).
    CheckAxioms(Common),
    /// Whether `phi` is a restricted state up to half the degree.
    CheckState(Common),
    /// Whether `psi` is a restricted generating functional up to half the degree.
    CheckGenerator(Common),
    /// exp(tψ) is a restricted state at each time; ψ is sampled when the file has none.
    Schoenberg(Common),
    /// The built-in invariant battery.
    Selftest {
        /// Write the report here instead of standard output.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct Common {
    /// Problem file; without one, the primitive semigroup on a self-adjoint `x` is used.
    spec: Option<PathBuf>,
    /// tensor, free, boolean, monotone, antimonotone, cfree (or `all` where supported).
    #[arg(long)]
    product: Option<String>,
    #[arg(long)]
    degree: Option<usize>,
    /// Comma-separated rationals, e.g. 1/10,1,10.
    #[arg(long, value_delimiter = ',')]
    times: Option<Vec<String>>,
    /// Comma-separated Trotter step counts.
    #[arg(long, value_delimiter = ',')]
    steps: Option<Vec<usize>>,
    #[arg(long)]
    seed: Option<u64>,
    /// Representation dimension for sampled generators.
    #[arg(long)]
    rep_dim: Option<usize>,
    /// Space-separated generator ids, with optional @1/@2 leg suffixes.
    #[arg(long)]
    word: Option<String>,
    /// 1-based component for `sigma`.
    #[arg(long)]
    component: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    max_len: Option<usize>,
    /// Number of sampled generators per product for `schoenberg`.
    #[arg(long)]
    samples: Option<usize>,
    /// Also check the semigroup law in `exp`.
    #[arg(long)]
    laws: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    json_out: Option<PathBuf>,
}

impl Common {
    fn options(&self) -> Options {
        Options {
            product: self.product.clone(),
            degree: self.degree,
            times: self.times.clone(),
            steps: self.steps.clone(),
            seed: self.seed,
            rep_dim: self.rep_dim,
            word: self.word.clone(),
            component: self.component,
            trials: self.trials,
            max_len: self.max_len,
            samples: self.samples,
            laws: self.laws,
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::EvalProduct(_) => "eval-product",
        Command::Convolve(_) => "convolve",
        Command::Exp(_) => "exp",
        Command::ExpPoly(_) => "exp-poly",
        Command::Trotter(_) => "trotter",
        Command::Sigma(_) => "sigma",
        Command::CheckAxioms(_) => "check-axioms",
        Command::CheckState(_) => "check-state",
        Command::CheckGenerator(_) => "check-generator",
        Command::Schoenberg(_) => "schoenberg",
        Command::Selftest { .. } => "selftest",
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(text) = std::env::var("UNIPROD_THREADS") else {
        return Ok(());
    };
    let n: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::input("UNIPROD_THREADS", format!("expected a positive integer, found {text:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::input("UNIPROD_THREADS", e.to_string()))
}

fn load(path: Option<&PathBuf>) -> Result<Input, CliError> {
    let Some(path) = path else {
        return Ok(Input { spec: ProblemSpec::default(), sha256: None });
    };
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { context: path.display().to_string(), source })?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| CliError::input("(document)", e.to_string()))?;
    Ok(Input { spec: parse_spec(&text)?, sha256: Some(sha256_hex(&bytes)) })
}

fn execute(cli: &Cli) -> Result<(Report, Option<PathBuf>), CliError> {
    configure_threads()?;
    let start = Instant::now();
    let (mut report, out) = match &cli.command {
        Command::Selftest { json_out } => (selftest::run()?, json_out.clone()),
        other => {
            let common = match other {
                Command::EvalProduct(c)
                | Command::Convolve(c)
                | Command::Exp(c)
                | Command::ExpPoly(c)
                | Command::Trotter(c)
                | Command::Sigma(c)
                | Command::CheckAxioms(c)
                | Command::CheckState(c)
                | Command::CheckGenerator(c)
                | Command::Schoenberg(c) => c,
                Command::Selftest { .. } => unreachable!("handled above"),
            };
            let input = load(common.spec.as_ref())?;
            (uniprod::run(command_name(other), &input, &common.options())?, common.json_out.clone())
        }
    };
    report.timing = Some(Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 });
    Ok((report, out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, out) = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    match &out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        // a closed pipe (e.g. `| head`) is not an error
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != ErrorKind::BrokenPipe => {
                eprintln!("error: standard output: {e}");
                return ExitCode::from(2);
            }
            _ => {}
        },
    }
    if let Some(failed) = report.verdicts.iter().find(|v| !v.passed) {
        eprintln!("FAIL: {} (witness {})", failed.law, failed.witness.as_ref().map_or("none".into(), |w| w.to_string()));
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
