//! Command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code, writing to the given sinks so the whole surface can be driven
//! from tests. The binary is a thin wrapper around it.
//!
//! Exit codes: 0 success, 1 selfcheck failure, 2 invalid parameters,
//! 3 no ground state (`ω ≥ ω_{p,q}`), 4 bracket failure, 5 invariant
//! violation during a sweep.

mod args;
mod commands;
mod selfcheck;
mod sweep;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, Format, RangeSpec};
pub use selfcheck::{run_selfcheck, selfcheck_exit_code, CheckResult};
pub use sweep::{first_violation, read_sweep_csv, sweep_rows, write_sweep_csv, SweepRow, SWEEP_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SELFCHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_EXISTENCE: i32 = 3;
pub const EXIT_BRACKET: i32 = 4;
pub const EXIT_SWEEP_VIOLATION: i32 = 5;

/// Formats a float with 17 significant digits; parsing the text gives back
/// the same bits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Error carrying the exit code it maps to.
#[derive(Debug)]
pub(crate) struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }

    pub fn invalid(message: impl std::fmt::Display) -> Self {
        Self::new(EXIT_INVALID, message.to_string())
    }

    pub fn io(e: std::io::Error) -> Self {
        Self::new(EXIT_INVALID, format!("i/o error: {e}"))
    }
}

/// Runs the CLI with explicit output sinks and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_OK,
                _ => EXIT_INVALID,
            };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match commands::dispatch(cli, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("doublepower").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn fmt17_round_trips() {
        for x in [0.1875, 2.0 / 9.0, 1e-300, 123456.789, std::f64::consts::PI] {
            let s = fmt17(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
            let mantissa = s.split('e').next().unwrap();
            assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17);
        }
    }

    #[test]
    fn thresholds_text() {
        let (code, out, _) = call(&["thresholds", "--p", "3", "--q", "5"]);
        assert_eq!(code, 0);
        assert!(out.contains("omega_crit") && out.contains("0.1875") && out.contains("0.25"), "{out}");
    }

    #[test]
    fn thresholds_invalid() {
        let (code, _, err) = call(&["thresholds", "--p", "3", "--q", "3"]);
        assert_eq!(code, EXIT_INVALID);
        assert!(err.contains("require p < q"), "{err}");
    }

    #[test]
    fn unknown_flag_is_invalid() {
        assert_eq!(call(&["thresholds", "--p", "3", "--bogus", "1"]).0, EXIT_INVALID);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn classify_tangent() {
        let (code, out, _) = call(&["classify", "--a", "0.25", "--b", "1", "--c", "1", "--p", "1", "--q", "2", "--r", "3", "--output", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(v["case"], "b");
        assert_eq!(v["u_star"], 0.5);
    }

    #[test]
    fn classify_bad_order() {
        let (code, _, _) = call(&["classify", "--a", "1", "--b", "1", "--c", "1", "--p", "3", "--q", "2", "--r", "5"]);
        assert_eq!(code, EXIT_INVALID);
    }

    #[test]
    fn shoot_no_existence() {
        let (code, _, err) = call(&["shoot", "--omega", "0.2", "--p", "3", "--q", "5", "--n", "3"]);
        assert_eq!(code, EXIT_NO_EXISTENCE);
        assert!(err.contains("no existence: omega >= omega_crit"), "{err}");
    }

    #[test]
    fn shoot_bracket_failure() {
        // two probes straddle nothing when the horizon is too short to see any event
        let (code, _, _) = call(&["shoot", "--omega", "0.1", "--p", "3", "--q", "5", "--r-max", "0.01"]);
        assert_eq!(code, EXIT_BRACKET);
    }

    #[test]
    fn show_config() {
        let (code, out, _) = call(&["--show-config"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["shooting"]["rel_tol"], 1e-10);
        let (code, out, _) = call(&["shoot", "--omega", "0.25", "--p", "3", "--q", "5", "--rel-tol", "1e-9", "--show-config"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["rel_tol"], 1e-9);
        assert_eq!(v["r_max"], 80.0);
    }

    #[test]
    fn selfcheck_zero_cases_warns() {
        let (code, _, err) = call(&["selfcheck", "--cases", "0"]);
        assert_eq!(code, 0);
        assert!(err.contains("warning"));
    }
}
