use serde::{Deserialize, Serialize};

use super::params::check_triple_exponents;
use super::{NonlinearityError, TriplePowerParams};

/// Half-width of the band on the relative margin inside which a triple is
/// reported as tangent.
pub const TANGENT_TOL: f64 = 1e-9;

/// Sign pattern of `-a·u^p + b·u^q - c·u^r` on `u > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignCase {
    /// `a < a_crit`: the function is positive somewhere.
    PositivePart,
    /// `a = a_crit`: a single double zero at the tangent point.
    Tangent,
    /// `a > a_crit`: negative everywhere.
    StrictlyNegative,
}

impl SignCase {
    /// Letter naming the case: `a`, `b` or `c`.
    pub fn label(self) -> char {
        match self {
            SignCase::PositivePart => 'a',
            SignCase::Tangent => 'b',
            SignCase::StrictlyNegative => 'c',
        }
    }

    /// The case the tilde transform maps this one to.
    pub fn dual(self) -> SignCase {
        match self {
            SignCase::PositivePart => SignCase::StrictlyNegative,
            SignCase::Tangent => SignCase::Tangent,
            SignCase::StrictlyNegative => SignCase::PositivePart,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignClass {
    pub case: SignCase,
    /// `(a - a_crit) / a_crit`.
    pub margin: f64,
}

/// `ln(b·(q-p) / (c·(r-p)))`, the log of the ratio whose powers give both the
/// threshold and the tangent point.
fn log_inner_ratio(b: f64, c: f64, p: f64, q: f64, r: f64) -> f64 {
    let direct = b * (q - p) / (c * (r - p));
    if direct.is_normal() {
        direct.ln()
    } else {
        b.ln() + (q - p).ln() - c.ln() - (r - p).ln()
    }
}

pub(crate) fn ln_threshold(b: f64, c: f64, p: f64, q: f64, r: f64) -> f64 {
    let s = (q - p) / (r - q);
    b.ln() + ((r - q) / (r - p)).ln() + s * log_inner_ratio(b, c, p, q, r)
}

fn check_threshold_args(b: f64, c: f64, p: f64, q: f64, r: f64) -> Result<(), NonlinearityError> {
    if ![b, c, p, q, r].iter().all(|x| x.is_finite()) {
        return Err(NonlinearityError::NonFinite);
    }
    for (name, value) in [("b", b), ("c", c)] {
        if value <= 0.0 {
            return Err(NonlinearityError::NonPositiveCoefficient { name, value });
        }
    }
    check_triple_exponents(p, q, r)
}

/// Critical coefficient `a_crit = b·(r-q)/(r-p)·[b(q-p)/(c(r-p))]^{(q-p)/(r-q)}`,
/// the maximum over `u > 0` of `b·u^{q-p} - c·u^{r-p}`.
///
/// Evaluated in the log domain so large exponent ratios do not overflow
/// before the final exponential.
pub fn triple_threshold(b: f64, c: f64, p: f64, q: f64, r: f64) -> Result<f64, NonlinearityError> {
    check_threshold_args(b, c, p, q, r)?;
    Ok(ln_threshold(b, c, p, q, r).exp())
}

/// Maximiser `u* = [b(q-p)/(c(r-p))]^{1/(r-q)}` of `f(u)/u^p`.
pub fn tangent_point(tp: &TriplePowerParams) -> f64 {
    (log_inner_ratio(tp.b, tp.c, tp.p, tp.q, tp.r) / (tp.r - tp.q)).exp()
}

/// Classifies with the default [`TANGENT_TOL`].
pub fn classify_triple(tp: &TriplePowerParams) -> SignClass {
    classify_triple_with_tol(tp, TANGENT_TOL)
}

pub fn classify_triple_with_tol(tp: &TriplePowerParams, tangent_tol: f64) -> SignClass {
    let ln_crit = ln_threshold(tp.b, tp.c, tp.p, tp.q, tp.r);
    let margin = (tp.a.ln() - ln_crit).exp_m1();
    let case = if margin < -tangent_tol {
        SignCase::PositivePart
    } else if margin > tangent_tol {
        SignCase::StrictlyNegative
    } else {
        SignCase::Tangent
    };
    SignClass { case, margin }
}
