use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Simplify,
    Solve,
    Check,
    Sat,
    OracleCompare,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Simplify => "simplify",
            Mode::Solve => "solve",
            Mode::Check => "check",
            Mode::Sat => "sat",
            Mode::OracleCompare => "oracle-compare",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Nominal unification modulo commutativity.
#[derive(Debug, Parser)]
#[command(name = "nomcu", version)]
pub struct Args {
    /// Problem file, or the problem itself, e.g. `{} |- [a][b]X =? [b][a]X`.
    pub input: Option<String>,

    #[arg(long, value_enum, default_value = "solve")]
    pub mode: Mode,

    /// Nesting bound for combinatory solutions; term depth for the oracle.
    #[arg(long, default_value_t = 3)]
    pub max_depth: usize,

    /// Solutions emitted per successful leaf.
    #[arg(long, default_value_t = 64)]
    pub max_count: usize,

    /// Rewrite commutative applications to suspensions before solving.
    #[arg(long)]
    pub translate: bool,

    #[arg(long)]
    pub json: bool,

    /// File holding a solution `<{ctx}, {X/t, ...}>` to validate.
    #[arg(long, value_name = "FILE")]
    pub check_solution: Option<PathBuf>,

    /// One-in-three clause file.
    #[arg(long, value_name = "FILE")]
    pub sat: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub mode: Mode,
    /// Problem text, absent in sat mode.
    pub problem: Option<String>,
    /// How the problem was given, for the report.
    pub input_label: String,
    pub max_depth: usize,
    pub max_count: usize,
    pub translate: bool,
    pub format: Format,
    pub solution: Option<String>,
    pub clauses: Option<String>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

impl RunConfig {
    pub fn from_args(args: Args) -> Result<RunConfig> {
        if args.max_count == 0 {
            bail!("--max-count must be positive");
        }
        if args.max_depth == 0 && args.mode == Mode::OracleCompare {
            bail!("--max-depth must be positive for oracle-compare");
        }
        let (problem, input_label) = match &args.input {
            Some(s) if Path::new(s).is_file() => (Some(read(Path::new(s))?), s.clone()),
            Some(s) => (Some(s.clone()), s.clone()),
            None => (None, String::new()),
        };
        if problem.is_none() && args.mode != Mode::Sat {
            bail!("mode {} needs a problem", args.mode.name());
        }
        let solution = match (&args.check_solution, args.mode) {
            (Some(p), Mode::Check) => Some(read(p)?),
            (Some(_), m) => bail!("--check-solution is only meaningful in mode check, not {}", m.name()),
            (None, Mode::Check) => bail!("mode check needs --check-solution"),
            (None, _) => None,
        };
        let (clauses, input_label) = match (&args.sat, args.mode) {
            (Some(p), Mode::Sat) => (Some(read(p)?), p.display().to_string()),
            (Some(_), m) => bail!("--sat is only meaningful in mode sat, not {}", m.name()),
            (None, Mode::Sat) => bail!("mode sat needs --sat"),
            (None, _) => (None, input_label),
        };
        Ok(RunConfig {
            mode: args.mode,
            problem,
            input_label,
            max_depth: args.max_depth,
            max_count: args.max_count,
            translate: args.translate,
            format: if args.json { Format::Json } else { Format::Text },
            solution,
            clauses,
        })
    }
}
