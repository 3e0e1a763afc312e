//! `orbit-forge`: local-unitary orbit analysis from the command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 `equiv` mismatch.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use orbit_forge::invariants::{fingerprint_with, pattern_invariance_test};
use orbit_forge::{
    builtin_patterns, canonical_3q, catalog_state, classify_stabilizer, count_bounds, evaluate_invariant, family4,
    family4_case_table, lu_equivalent, orbit_report, parse_state, random_state,
    render_case_table, schmidt_2q, Complex64, ContractionPattern, Mode, OptimizerConfig, QubitState, RankPolicy,
};

#[derive(Debug, Parser)]
#[command(name = "orbit-forge", version, about = "Local-unitary orbit analysis of n-qubit states")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Generator basis for orbit computations.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Reduced)]
    mode: ModeArg,

    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Random local unitaries per invariance check.
    #[arg(long, global = true, default_value_t = 1000)]
    trials: usize,

    /// Relative rank tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    rel_tol: f64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Reduced,
    Full,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Reduced => Mode::Reduced,
            ModeArg::Full => Mode::Full,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Orbit dimension, invariant count and stabilizer report.
    Analyze { state: PathBuf },
    /// Built-in invariant fingerprint (plus an optional user pattern).
    Invariants {
        state: PathBuf,
        /// Contraction pattern file to evaluate as well.
        #[arg(long)]
        pattern: Option<PathBuf>,
    },
    /// Compare two states; exits 3 when the fingerprints differ.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        /// Search for explicit local unitaries when fingerprints match.
        #[arg(long)]
        witness: bool,
    },
    /// Schmidt form of a two-qubit state.
    Schmidt { state: PathBuf },
    /// Canonical form of a three-qubit state.
    Canonical3 {
        state: PathBuf,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
    },
    /// Stabilizer algebra, its label and the flip symmetry.
    Classify { state: PathBuf },
    /// Build a e1e1e1 + b e2e2e2 + c e1e1e2 + d e2e1e1 and classify it.
    Family4 {
        /// `re` or `re,im`
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Measured stabilizer dimensions for every special case of the family.
    CaseTable {
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Write a named state.
    Catalog {
        name: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a Haar-random state (seeded by --seed).
    Random {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Lower bounds on the number of invariants.
    Bounds {
        #[arg(long)]
        n: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::Analyze { .. } => "analyze",
            Self::Invariants { .. } => "invariants",
            Self::Equiv { .. } => "equiv",
            Self::Schmidt { .. } => "schmidt",
            Self::Canonical3 { .. } => "canonical3",
            Self::Classify { .. } => "classify",
            Self::Family4 { .. } => "family4",
            Self::CaseTable { .. } => "case-table",
            Self::Catalog { .. } => "catalog",
            Self::Random { .. } => "random",
            Self::Bounds { .. } => "bounds",
        }
    }

    fn inputs(&self) -> Vec<String> {
        let show = |p: &Path| p.display().to_string();
        match self {
            Self::Analyze { state }
            | Self::Schmidt { state }
            | Self::Canonical3 { state, .. }
            | Self::Classify { state } => vec![show(state)],
            Self::Invariants { state, pattern } => std::iter::once(show(state)).chain(pattern.as_deref().map(show)).collect(),
            Self::Equiv { first, second, .. } => vec![show(first), show(second)],
            _ => Vec::new(),
        }
    }
}

/// Effective settings, echoed under `"config"` in JSON output.
#[derive(Debug, Serialize)]
struct RunConfig {
    command: &'static str,
    inputs: Vec<String>,
    seed: u64,
    mode: Mode,
    rel_tol: f64,
    trials: usize,
    output: &'static str,
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<orbit_forge::Error> for Failure {
    fn from(e: orbit_forge::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// What a command produced: a JSON result, its text rendering, and the exit code.
struct Outcome {
    result: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(result: Value, text: String) -> Self {
        Self { result, text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let config = RunConfig {
                    command: cli.command.name(),
                    inputs: cli.command.inputs(),
                    seed: cli.seed,
                    mode: cli.mode.into(),
                    rel_tol: cli.rel_tol,
                    trials: cli.trials,
                    output: "json",
                };
                let doc = json!({ "config": config, "result": out.result });
                println!("{}", serde_json::to_string_pretty(&doc).expect("json output"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load_state(path: &Path) -> Result<QubitState, Failure> {
    let doc = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_state(&doc).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_state(state: &QubitState, output: Option<&Path>) -> Result<Outcome, Failure> {
    let doc = state.to_json();
    match output {
        Some(path) => {
            std::fs::write(path, &doc).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(Outcome::ok(
                json!({ "written": path.display().to_string(), "n": state.n() }),
                format!("wrote {} ({} qubits)\n", path.display(), state.n()),
            ))
        }
        None => {
            let value: Value = serde_json::from_str(&doc).expect("state json");
            Ok(Outcome::ok(value, doc))
        }
    }
}

fn parse_complex(name: &str, text: &str) -> Result<Complex64, Failure> {
    let bad = || Failure::Usage(format!("--{name}: expected `re` or `re,im`, got `{text}`"));
    let mut parts = text.split(',').map(|p| p.trim().parse::<f64>());
    let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match parts.next() {
        Some(v) => v.map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    if !(cli.rel_tol > 0.0 && cli.rel_tol.is_finite()) {
        return Err(Failure::Usage(format!("--rel-tol must be positive, got {}", cli.rel_tol)));
    }
    let policy = RankPolicy::with_rel_tol(cli.rel_tol);
    let mode: Mode = cli.mode.into();
    let optimizer = OptimizerConfig::with_seed(cli.seed);
    match &cli.command {
        Command::Analyze { state } => {
            let psi = load_state(state)?;
            let orbit = orbit_report(&psi, mode, policy)?;
            let stab = classify_stabilizer(&psi, policy)?;
            let text = render::analyze(&orbit, &stab);
            Ok(Outcome::ok(json!({ "orbit": orbit, "stabilizer": stab }), text))
        }
        Command::Invariants { state, pattern } => {
            let psi = load_state(state)?;
            let fp = fingerprint_with(&psi, policy)?;
            let mut deviation: f64 = 0.0;
            for p in builtin_patterns(psi.n())? {
                deviation = deviation.max(pattern_invariance_test(&p, &psi, cli.trials, cli.seed)?);
            }
            let user = match pattern {
                Some(path) => {
                    let doc = std::fs::read_to_string(path)
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    let p = ContractionPattern::from_json(&doc)?;
                    let value = evaluate_invariant(&p, &psi)?;
                    let dev = pattern_invariance_test(&p, &psi, cli.trials, cli.seed)?;
                    Some((p.label().to_string(), value, dev))
                }
                None => None,
            };
            let text = render::invariants(&fp, deviation, cli.trials, user.as_ref());
            let user_json = user.map(|(label, v, dev)| json!({ "label": label, "value": [v.re, v.im], "max_deviation": dev }));
            Ok(Outcome::ok(
                json!({ "fingerprint": fp, "max_deviation": deviation, "pattern": user_json }),
                text,
            ))
        }
        Command::Equiv { first, second, witness } => {
            let a = load_state(first)?;
            let b = load_state(second)?;
            let verdict = lu_equivalent(&a, &b, *witness, optimizer)?;
            let text = render::equiv(&verdict, *witness);
            let code = if verdict.fingerprints_match { 0 } else { 3 };
            Ok(Outcome {
                result: serde_json::to_value(&verdict).expect("verdict json"),
                text,
                code,
            })
        }
        Command::Schmidt { state } => {
            let form = schmidt_2q(&load_state(state)?)?;
            Ok(Outcome::ok(serde_json::to_value(&form).expect("schmidt json"), render::schmidt(&form)))
        }
        Command::Canonical3 { state, restarts } => {
            let config = OptimizerConfig {
                restarts: *restarts,
                ..optimizer
            };
            let form = canonical_3q(&load_state(state)?, config)?;
            Ok(Outcome::ok(serde_json::to_value(&form).expect("canonical json"), render::canonical(&form)))
        }
        Command::Classify { state } => {
            let stab = classify_stabilizer(&load_state(state)?, policy)?;
            Ok(Outcome::ok(serde_json::to_value(&stab).expect("report json"), render::classify(&stab)))
        }
        Command::Family4 { a, b, c, d } => {
            let p = [parse_complex("a", a)?, parse_complex("b", b)?, parse_complex("c", c)?, parse_complex("d", d)?];
            let psi = family4(p[0], p[1], p[2], p[3]);
            if psi.is_zero() {
                return Err(Failure::Input("family4: all parameters are zero".into()));
            }
            let orbit = orbit_report(&psi, mode, policy)?;
            let stab = classify_stabilizer(&psi, policy)?;
            let params: Vec<[f64; 2]> = p.iter().map(|z| [z.re, z.im]).collect();
            let text = render::analyze(&orbit, &stab);
            Ok(Outcome::ok(json!({ "params": params, "orbit": orbit, "stabilizer": stab }), text))
        }
        Command::CaseTable { samples } => {
            let rows = family4_case_table(*samples, cli.seed)?;
            let text = render_case_table(&rows);
            Ok(Outcome::ok(serde_json::to_value(&rows).expect("rows json"), text))
        }
        Command::Catalog { name, params, output } => {
            let psi = catalog_state(name, params)?;
            write_state(&psi, output.as_deref())
        }
        Command::Random { n, output } => {
            let psi = random_state(*n, cli.seed)?;
            write_state(&psi, output.as_deref())
        }
        Command::Bounds { n } => {
            let b = count_bounds(*n)?;
            Ok(Outcome::ok(
                serde_json::to_value(b).expect("bounds json"),
                format!("naive: {}, reduced: {}\n", b.naive, b.reduced),
            ))
        }
    }
}
