mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cnsatz::textio::{parse_caps, parse_config, OutputMode, SessionConfig};
use cnsatz::Error;

/// Exact grid-polynomial computations over small rings.
///
/// Exit status: 0 when every recorded assertion passes, 1 on input errors,
/// 2 when a hypothesis of the requested operation is not met, 3 when an
/// internal assertion fails.
#[derive(Parser, Debug)]
#[command(name = "cnsatz", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Ring spec, e.g. Z, Q, Z/6, GF(7), GF(9;u^2+1), Z/2*Z/3.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Number of variables; inferred from other inputs when omitted.
    #[arg(long, global = true)]
    nvars: Option<usize>,
    /// Session config file (key = value lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Enumeration caps: points=<N>,fixpoint=<M>,enumeration=<K>.
    #[arg(long, global = true)]
    caps: Option<String>,
    /// Seed echoed into the report.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// json or text.
    #[arg(long, global = true)]
    output: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cylindrical reduction of a polynomial modulo the grid's φ_i.
    Reduce {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Interpolate values on a condition (F) grid.
    Interpolate {
        #[arg(long)]
        grid: Option<String>,
        /// Take the values from this polynomial.
        #[arg(long, conflicts_with = "values")]
        poly: Option<String>,
        /// Comma-separated values in grid scan order (last axis fastest).
        #[arg(long)]
        values: Option<String>,
    },
    /// Recover the top coefficient from values on the grid.
    Coeff {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Find a nonvanishing point on a grid with #X_i = a_i + 1.
    Witness {
        #[arg(long)]
        poly: String,
        /// Exponent a, comma separated.
        #[arg(long)]
        a: String,
        /// Defaults to the first a_i + 1 ring elements per axis.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Certificate for f = Σ q_i φ_i (+ Σ h_j g_j when --ideal is given).
    Certify {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        grid: Option<String>,
        /// Semicolon-separated generators.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Common zeros of an ideal on a grid or point list.
    Variety {
        #[arg(long)]
        ideal: String,
        #[arg(long, conflicts_with = "points")]
        grid: Option<String>,
        #[arg(long)]
        points: Option<String>,
    },
    /// Zariski closure of a finite point set over a finite ring.
    Closure {
        #[arg(long)]
        points: String,
    },
    /// Restricted-variable Chevalley–Warning report.
    Chevalley {
        /// Semicolon-separated system P_1; …; P_r.
        #[arg(long)]
        system: String,
        #[arg(long)]
        grid: Option<String>,
    },
    /// Classify a finite set of ring elements by condition (F) / (D).
    Condition {
        /// Comma-separated elements, optionally in braces.
        #[arg(long)]
        set: String,
    },
    /// Surjectivity and injectivity of evaluation on a point set.
    Evalmap {
        #[arg(long, conflicts_with = "all")]
        points: Option<String>,
        /// Use all of R^n.
        #[arg(long)]
        all: bool,
    },
}

/// Settings merged from the config file and the command line.
pub struct Session {
    pub ring: Option<String>,
    pub nvars: Option<usize>,
    pub grid: Option<String>,
    pub caps: cnsatz::caps::Caps,
    pub output: OutputMode,
    pub seed: Option<u64>,
}

/// Failure carrying its exit status.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::HypothesisViolated(_)
            | Error::FieldRequired(_)
            | Error::DegenerateGrid(_)
            | Error::NotReduced(_)
            | Error::NotVanishing { .. }
            | Error::NoCounterexample => 2,
            Error::Invariant(_) => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

fn session(common: &Common) -> Result<Session, Failure> {
    let cfg = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
            parse_config(&text)?
        }
        None => SessionConfig::default(),
    };
    let caps = match &common.caps {
        Some(s) => parse_caps(s, cfg.caps)?,
        None => cfg.caps,
    };
    let output = match common.output.as_deref() {
        None => cfg.output,
        Some("json") => OutputMode::Json,
        Some("text") => OutputMode::Text,
        Some(other) => return Err(Failure::input(format!("unknown output mode '{other}'"))),
    };
    Ok(Session {
        ring: common.ring.clone().or(cfg.ring),
        nvars: common.nvars.or(cfg.nvars),
        grid: cfg.grid,
        caps,
        output,
        seed: common.seed.or(cfg.seed),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = session(&cli.common).and_then(|s| commands::run(&s, &cli.command));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
