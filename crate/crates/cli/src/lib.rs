//! Command-line front end for `chainlab-core`.

pub mod commands;
pub mod error;
pub mod format;
pub mod lab;
pub mod spec;
pub mod verify;

use clap::{Parser, Subcommand};
use chainlab_core::lab::{LabOptions, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOLERANCE};
use serde_json::{json, Value};

pub use error::{CliError, CliResult, ExitCode, EXIT_CODE_HELP};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SCHEMA: &str = "1";

#[derive(Debug, Parser)]
#[command(
    name = "chainlab",
    version,
    about = "Chain groups, fusion rings and spectral projections of finite and compact group actions",
    after_help = concat!(
        "Group specs: D:8 (dihedral, order 8), Q:8 (quaternion, order 8), S:4, A:4 (degree), C:6 or Z:6,\n",
        "  file:group.json ({\"order\",\"mul\",\"names\"}), perm:\"(1 2),(1 2 3)\", products C:2*S:3.\n",
        "System specs: regular:<group>, swap-blocks:k, sign-diag, trivial:<group>:n,\n",
        "  file:system.json or inline {\"generators\": [[[[re,im],...],...]], \"blocks\": [k1,k2]}.\n\n",
        "Exit codes:\n",
        "  0  all checks passed\n",
        "  1  verification mismatch (a computed value differs from the expected one)\n",
        "  2  parse error (command line, group spec, system spec or input file)\n",
        "  3  numerical residual above tolerance\n",
        "  4  theorem-violation certificate\n",
        "  5  closure cap or truncation window exceeded\n",
        "  6  I/O error\n",
        "  7  unsupported request (higher-dimensional Hilbert spaces in finite dimension)"
    )
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit a versioned JSON envelope instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every random sample.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Tolerance (lab default 1e-9, fusion rounding default 1e-6).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Number of random samples for lab checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order, conjugacy classes and center of a group.
    Group { spec: String },
    /// Character table.
    Chartable { spec: String },
    /// Fusion coefficients, optionally for a single pair of irreps.
    Fusion {
        spec: String,
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        pair: Option<Vec<usize>>,
    },
    /// Chain classes, chain group and the pairing with the dual of the center.
    Chain { spec: String },
    /// Truncated chain classes of SU2, SO3, O3 or U2.
    Lie {
        family: String,
        #[arg(long, default_value_t = 10)]
        lmax: u32,
    },
    /// Action of an endomorphism on functions on a finite set.
    CenterAction {
        spec: String,
        /// Size of the finite set.
        #[arg(long)]
        gamma: usize,
        /// Class images as class:cycles, e.g. "1:(1 2)". Unlisted classes act trivially.
        #[arg(long, default_value = "")]
        hom: String,
        /// Multiplicities as irrep:mult, e.g. "0:1,4:1".
        #[arg(long)]
        lambda: String,
        /// Function values, comma separated (default: indicator of the first point).
        #[arg(long)]
        z: Option<String>,
    },
    /// Spectral-lab checks on a matrix dynamical system.
    Lab {
        #[arg(value_enum)]
        check: lab::LabCheck,
        system: String,
    },
    /// Recompute the reference table of chain groups.
    VerifyAll {
        /// Only rows whose id contains this text.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = 10)]
        lmax: u32,
    },
}

/// Outcome of a command: text, JSON payload, and the exit code on failure.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub result: Value,
    pub pass: bool,
    pub failure: ExitCode,
}

impl Report {
    pub fn pass(text: String, result: Value) -> Self {
        Self { text, result, pass: true, failure: ExitCode::Pass }
    }

    pub fn fail(text: String, result: Value, code: ExitCode) -> Self {
        Self { text, result, pass: false, failure: code }
    }

    pub fn from_check(text: String, result: Value, pass: bool, code: ExitCode) -> Self {
        if pass {
            Self::pass(text, result)
        } else {
            Self::fail(text, result, code)
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        if self.pass {
            ExitCode::Pass
        } else {
            self.failure
        }
    }
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Group { .. } => "group".into(),
            Command::Chartable { .. } => "chartable".into(),
            Command::Fusion { .. } => "fusion".into(),
            Command::Chain { .. } => "chain".into(),
            Command::Lie { .. } => "lie".into(),
            Command::CenterAction { .. } => "center-action".into(),
            Command::Lab { check, .. } => format!("lab {}", format!("{check:?}").to_lowercase()),
            Command::VerifyAll { .. } => "verify-all".into(),
        }
    }

    fn input(&self) -> Value {
        match self {
            Command::Group { spec } | Command::Chartable { spec } | Command::Chain { spec } => json!(spec),
            Command::Fusion { spec, pair } => json!({"spec": spec, "pair": pair}),
            Command::Lie { family, lmax } => json!({"family": family, "lmax": lmax}),
            Command::CenterAction { spec, gamma, hom, lambda, z } => {
                json!({"spec": spec, "gamma": gamma, "hom": hom, "lambda": lambda, "z": z})
            }
            Command::Lab { system, .. } => json!(system),
            Command::VerifyAll { only, lmax } => json!({"only": only, "lmax": lmax}),
        }
    }
}

pub fn execute(cli: &Cli) -> CliResult<Report> {
    let lab_options = LabOptions {
        tolerance: cli.tol.unwrap_or(DEFAULT_TOLERANCE),
        samples: cli.samples,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Group { spec } => commands::group(spec),
        Command::Chartable { spec } => commands::chartable(spec),
        Command::Fusion { spec, pair } => commands::fusion(spec, pair.as_ref().map(|p| (p[0], p[1])), cli.tol),
        Command::Chain { spec } => commands::chain(spec),
        Command::Lie { family, lmax } => commands::lie(family, *lmax),
        Command::CenterAction { spec, gamma, hom, lambda, z } => commands::center_action(&commands::CenterActionArgs {
            spec,
            gamma: *gamma,
            hom,
            lambda,
            z: z.as_deref(),
        }),
        Command::Lab { check, system } => lab::run(*check, system, &lab_options),
        Command::VerifyAll { only, lmax } => verify::run(only.as_deref(), *lmax),
    }
}

fn envelope(cli: &Cli, body: Value) -> String {
    let mut value = json!({
        "schema": SCHEMA,
        "command": cli.command.name(),
        "input": cli.command.input(),
        "seed": cli.seed,
        "version": VERSION,
    });
    if let (Value::Object(out), Value::Object(extra)) = (&mut value, body) {
        out.extend(extra);
    }
    serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n"
}

/// Runs a parsed command line; returns (stdout, stderr, exit code).
pub fn run(cli: &Cli) -> (String, String, ExitCode) {
    match execute(cli) {
        Ok(report) => {
            let code = report.exit_code();
            let out = if cli.json {
                envelope(cli, json!({"result": report.result, "pass": report.pass}))
            } else {
                report.text
            };
            (out, String::new(), code)
        }
        Err(e) => {
            let err = format!("error: {e}\n");
            if cli.json {
                let body = json!({"pass": false, "error": e.message, "exit_code": e.code as i32});
                (envelope(cli, body), err, e.code)
            } else {
                (String::new(), err, e.code)
            }
        }
    }
}
