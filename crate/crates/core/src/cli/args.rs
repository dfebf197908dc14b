use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "doublepower", version, about = "Thresholds, sign classes and ground states for double-power nonlinearities")]
pub struct Cli {
    /// Print the effective configuration and exit.
    #[arg(long, global = true)]
    pub show_config: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Existence and uniqueness thresholds omega_{p,q} and eta_{p,q}.
    Thresholds(ThresholdsArgs),
    /// Sign class of -a u^p + b u^q - c u^r.
    Classify(ClassifyArgs),
    /// Ground state of the radial problem by shooting on u(0).
    Shoot(ShootArgs),
    /// Threshold table over a (p, q) grid.
    Sweep(SweepArgs),
    /// Run the embedded invariant suite.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ThresholdsArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub p: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub q: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub output: Format,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub p: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub q: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub r: f64,
    /// Half-width of the tangent band on the relative margin.
    #[arg(long, default_value_t = crate::nonlinearity::TANGENT_TOL)]
    pub tangent_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub output: Format,
}

#[derive(Debug, Args)]
pub struct ShootArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub omega: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub p: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub q: f64,
    /// Space dimension.
    #[arg(long, default_value_t = 3)]
    pub n: u32,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub h0: Option<f64>,
    /// Integration horizon [default: 40/sqrt(omega)].
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub alpha_tol: Option<f64>,
    #[arg(long)]
    pub conv_eps: Option<f64>,
    #[arg(long)]
    pub max_bisect: Option<usize>,
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[arg(long)]
    pub probe_points: Option<usize>,
    #[arg(long)]
    pub profile_dr: Option<f64>,
    #[arg(long)]
    pub profile_tol: Option<f64>,
    /// Write the (r, u, du) profile as CSV.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    /// Also scan this many equally spaced heights and count outcome switches.
    #[arg(long)]
    pub scan: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub output: Format,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Range `min:max:count` (inclusive) or a single value.
    #[arg(long, allow_hyphen_values = true)]
    pub p: RangeSpec,
    #[arg(long, allow_hyphen_values = true)]
    pub q: RangeSpec,
    /// `csv` (default) or `json`.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub output: Format,
    /// Write rows here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SelfcheckArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub cases: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub output: Format,
}

/// Inclusive grid `min:max:count`; a bare number is a single point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl RangeSpec {
    /// Grid values; endpoints are reproduced exactly.
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let last = self.count - 1;
        (0..self.count)
            .map(|i| if i == last { self.max } else { self.min + (self.max - self.min) * i as f64 / last as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeError(String);

impl fmt::Display for RangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for RangeError {}

impl FromStr for RangeSpec {
    type Err = RangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |m: &str| RangeError(format!("{m} in range '{s}'"));
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| err("malformed number"));
        let spec = match parts.as_slice() {
            [v] => {
                let v = num(v)?;
                RangeSpec { min: v, max: v, count: 1 }
            }
            [lo, hi, n] => RangeSpec {
                min: num(lo)?,
                max: num(hi)?,
                count: n.trim().parse::<usize>().map_err(|_| err("malformed count"))?,
            },
            _ => return Err(err("expected min:max:count")),
        };
        if !(spec.min.is_finite() && spec.max.is_finite()) {
            return Err(err("non-finite bound"));
        }
        if spec.count == 0 {
            return Err(err("count must be at least 1"));
        }
        if spec.min > spec.max {
            return Err(err("descending range"));
        }
        if spec.count == 1 && spec.min != spec.max {
            return Err(err("count 1 needs min == max"));
        }
        if spec.count > 1 && spec.min == spec.max {
            return Err(err("count > 1 needs min < max"));
        }
        if spec.min <= 1.0 {
            return Err(err("exponents must exceed 1"));
        }
        Ok(spec)
    }
}
