use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use liouville::free_series::{DEFAULT_DEGREE_THREE_LETTERS, DEFAULT_DEGREE_TWO_LETTERS};
use liouville::oscillator::{parse_rational, rational_to_f64};
use liouville::{Rational, SchemeId};
use num_traits::{One, Signed};

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "liouville", version, about = "Shadow energies and effective generators of splitting integrators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Goldberg coefficients: closed form against the exact series oracle
    Coeffs {
        /// 2 for log(e^A e^B), 3 for log(e^X1 e^X2 e^X3)
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(2..=3))]
        letters: u8,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Structural identities, log reconstruction and the divergence boundary
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Trajectory with shadow energy and p^2 + q^2 per step
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Stability table across a range of step sizes
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Per-step shadow-energy residuals of both schemes side by side
    Shadow {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    First,
    Second,
}

impl From<SchemeArg> for SchemeId {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::First => SchemeId::FirstOrder,
            SchemeArg::Second => SchemeId::SecondOrder,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value_t = SchemeArg::First)]
    pub scheme: SchemeArg,
    /// Single step size (decimal or fraction, e.g. 2.5 or 5/2)
    #[arg(long = "x", conflicts_with = "x_range", allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Step sizes start:stop:step, inclusive of stop
    #[arg(long = "x-range")]
    pub x_range: Option<String>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub p0: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub q0: String,
    #[arg(long = "max-degree")]
    pub max_degree: Option<usize>,
    /// Exact rational arithmetic for trajectories
    #[arg(long)]
    pub exact: bool,
    /// Relative tolerance for the partial sums of F
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Output file; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// One step size, kept both exactly and as the nearest float.
#[derive(Clone, Debug, PartialEq)]
pub struct XSample {
    pub exact: Rational,
    pub float: f64,
}

impl XSample {
    fn new(exact: Rational) -> Self {
        let float = rational_to_f64(&exact);
        XSample { exact, float }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sub {
    Coeffs { letters: u8 },
    Verify,
    Simulate,
    Sweep,
    Shadow,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub sub: Sub,
    pub xs: Vec<XSample>,
    pub scheme: SchemeId,
    pub n_steps: usize,
    pub max_degree: usize,
    pub out: Option<PathBuf>,
    pub mode: Mode,
    pub rel_tol: f64,
    pub p0: Rational,
    pub q0: Rational,
}

pub const DEFAULT_X_RANGE: &str = "0:3:0.1";
const DEFAULT_STEPS: usize = 100;
const MAX_RANGE_SAMPLES: usize = 1_000_000;

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

/// Inclusive arithmetic progression `start, start + step, ... <= stop`.
pub fn parse_x_range(s: &str) -> Result<Vec<XSample>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, h] = parts.as_slice() else {
        return Err(usage(format!("x-range must be start:stop:step, got {s:?}")));
    };
    let (a, b, h) = (
        parse_rational(a).map_err(usage)?,
        parse_rational(b).map_err(usage)?,
        parse_rational(h).map_err(usage)?,
    );
    if !h.is_positive() {
        return Err(usage("x-range step must be positive"));
    }
    if a > b {
        return Err(usage("x-range is empty: start exceeds stop"));
    }
    let mut out = Vec::new();
    let mut x = a;
    while x <= b {
        if out.len() >= MAX_RANGE_SAMPLES {
            return Err(usage("x-range has too many samples"));
        }
        out.push(XSample::new(x.clone()));
        x += &h;
    }
    Ok(out)
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (sub, c) = match cli.command {
            Command::Coeffs { letters, common } => (Sub::Coeffs { letters }, common),
            Command::Verify { common } => (Sub::Verify, common),
            Command::Simulate { common } => (Sub::Simulate, common),
            Command::Sweep { common } => (Sub::Sweep, common),
            Command::Shadow { common } => (Sub::Shadow, common),
        };
        if !(c.tol > 0.0 && c.tol.is_finite()) {
            return Err(usage("--tol must be a positive number"));
        }
        let single_x = matches!(sub, Sub::Simulate | Sub::Shadow);
        let xs = match (&c.x, &c.x_range) {
            (Some(x), _) => vec![XSample::new(parse_rational(x).map_err(usage)?)],
            (None, Some(r)) if single_x => {
                return Err(usage(format!("{r:?}: this subcommand takes a single --x")));
            }
            (None, Some(r)) => parse_x_range(r)?,
            (None, None) if single_x => vec![XSample::new(Rational::one())],
            (None, None) => parse_x_range(DEFAULT_X_RANGE)?,
        };
        let max_degree = match sub {
            Sub::Coeffs { letters: 2 } => {
                let d = c.max_degree.unwrap_or(DEFAULT_DEGREE_TWO_LETTERS);
                if !(2..=16).contains(&d) {
                    return Err(usage("two-letter --max-degree must lie in 2..=16"));
                }
                d
            }
            Sub::Coeffs { .. } => {
                let d = c.max_degree.unwrap_or(DEFAULT_DEGREE_THREE_LETTERS);
                if !(3..=10).contains(&d) {
                    return Err(usage("three-letter --max-degree must lie in 3..=10"));
                }
                d
            }
            _ => c.max_degree.unwrap_or(DEFAULT_DEGREE_TWO_LETTERS),
        };
        let n_steps = c.steps.unwrap_or(DEFAULT_STEPS);
        if single_x && n_steps == 0 {
            return Err(usage("--steps must be at least 1"));
        }
        let p0 = parse_rational(&c.p0).map_err(usage)?;
        let q0 = parse_rational(&c.q0).map_err(usage)?;
        Ok(RunConfig {
            sub,
            xs,
            scheme: c.scheme.into(),
            n_steps,
            max_degree,
            out: c.out,
            mode: if c.exact { Mode::Exact } else { Mode::Float },
            rel_tol: c.tol,
            p0,
            q0,
        })
    }
}
