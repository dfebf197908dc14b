//! Double- and triple-power nonlinearities.
//!
//! A double-power nonlinearity is `f(u) = -ω·u + u^p - u^q` with `ω > 0`
//! and `1 < p < q`. Both `f` and its primitive `F` are instances of the
//! triple-power family `-a·u^p + b·u^q - c·u^r`, whose sign on `u > 0` is
//! decided by comparing `a` against a closed-form critical value. The
//! "tilde" operator `g ↦ (u·g')'·g - u·(g')²` maps the family into itself
//! and swaps the "has positive parts" and "strictly negative" cases, which
//! is what ties the existence threshold `ω_{p,q}` to the uniqueness
//! threshold `η_{p,q}`.

mod classify;
mod params;
mod thresholds;
mod tilde;

use thiserror::Error;

pub use classify::{classify_triple, classify_triple_with_tol, tangent_point, triple_threshold, SignCase, SignClass, TANGENT_TOL};
pub use params::{DoublePowerParams, TriplePowerParams};
pub use thresholds::{eta_crit, existence_holds, omega_crit, uniqueness_condition_holds};
pub use tilde::{eval_f_tilde, eval_primitive_tilde, tilde_triple};

use params::check_argument;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NonlinearityError {
    #[error("parameters must be finite")]
    NonFinite,
    #[error("coefficient {name} must be positive, got {value}")]
    NonPositiveCoefficient { name: &'static str, value: f64 },
    #[error("exponent p must exceed 1, got {p}")]
    ExponentBelowOne { p: f64 },
    #[error("exponent p must be positive, got {p}")]
    NonPositiveExponent { p: f64 },
    #[error("require p < q{}: got p={p}, q={q}{}", if r.is_some() { " < r" } else { "" }, r.map(|r| format!(", r={r}")).unwrap_or_default())]
    ExponentOrder { p: f64, q: f64, r: Option<f64> },
    #[error("argument u={u} outside the domain u {}", if *strict { "> 0" } else { ">= 0" })]
    Domain { u: f64, strict: bool },
    #[error("tilde transform needs p + q > 1, got p={p}, q={q}")]
    TildeExponent { p: f64, q: f64 },
    #[error("coefficient underflow or overflow in tilde transform")]
    TildeRange,
}

/// `f(u) = -ω·u + u^p - u^q` for `u ≥ 0`.
pub fn eval_f(dp: &DoublePowerParams, u: f64) -> Result<f64, NonlinearityError> {
    check_argument(u, false)?;
    Ok(dp.as_triple().eval_unchecked(u))
}

/// `F(u) = -(ω/2)·u² + u^{p+1}/(p+1) - u^{q+1}/(q+1)` for `u ≥ 0`.
pub fn eval_primitive(dp: &DoublePowerParams, u: f64) -> Result<f64, NonlinearityError> {
    check_argument(u, false)?;
    Ok(dp.primitive_triple().eval_unchecked(u))
}

impl DoublePowerParams {
    /// Odd extension of `f` to the whole real line, used by the radial ODE
    /// where trial stages may dip below zero right before a crossing.
    pub fn f_odd(&self, u: f64) -> f64 {
        let m = u.abs();
        let v = sum3(-self.omega() * m, m.powf(self.p()), -m.powf(self.q()));
        if u < 0.0 {
            -v
        } else {
            v
        }
    }

    /// Even extension of `F`, the primitive of [`Self::f_odd`].
    pub fn primitive_even(&self, u: f64) -> f64 {
        self.primitive_triple().eval_unchecked(u.abs())
    }
}

/// Neumaier-compensated sum of three terms.
pub(crate) fn sum3(x: f64, y: f64, z: f64) -> f64 {
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for v in [x, y, z] {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(omega: f64, p: f64, q: f64) -> DoublePowerParams {
        DoublePowerParams::new(omega, p, q).unwrap()
    }

    #[test]
    fn f_values() {
        assert_eq!(eval_f(&dp(0.1, 3.0, 5.0), 0.0).unwrap(), 0.0);
        assert!(eval_f(&dp(0.25, 2.0, 3.0), 0.5).unwrap().abs() < 1e-16);
        assert!((eval_f(&dp(0.1, 3.0, 5.0), 1.0).unwrap() + 0.1).abs() < 1e-15);
    }

    #[test]
    fn primitive_values() {
        assert_eq!(eval_primitive(&dp(0.3, 1.5, 7.0), 0.0).unwrap(), 0.0);
        let v = eval_primitive(&dp(0.1, 3.0, 5.0), 1.0).unwrap();
        assert!((v - 1.0 / 30.0).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        let d = dp(0.1, 3.0, 5.0);
        assert!(matches!(eval_f(&d, -1e-3), Err(NonlinearityError::Domain { .. })));
        assert!(eval_f(&d, f64::NAN).is_err());
        assert!(eval_f(&d, f64::INFINITY).is_err());
        assert!(eval_primitive(&d, -2.0).is_err());
    }

    #[test]
    fn param_validation() {
        assert!(DoublePowerParams::new(0.0, 3.0, 5.0).is_err());
        assert!(DoublePowerParams::new(0.1, 1.0, 5.0).is_err());
        assert!(DoublePowerParams::new(0.1, 3.0, 3.0).is_err());
        assert!(TriplePowerParams::new(1.0, 1.0, 1.0, 0.0, 1.0, 2.0).is_err());
        assert!(TriplePowerParams::new(1.0, -1.0, 1.0, 1.0, 2.0, 3.0).is_err());
        assert!(TriplePowerParams::new(1.0, 1.0, 1.0, 3.0, 2.0, 5.0).is_err());
        assert!(TriplePowerParams::new(1.0, 1.0, 1.0, 0.5, 2.0, 5.0).is_ok());
    }

    #[test]
    fn odd_extension_matches_on_positive_axis() {
        let d = dp(0.1, 3.0, 5.0);
        for u in [0.0, 0.3, 0.94, 2.0] {
            assert_eq!(d.f_odd(u), eval_f(&d, u).unwrap());
            assert_eq!(d.f_odd(-u), -d.f_odd(u));
            assert_eq!(d.primitive_even(-u), eval_primitive(&d, u).unwrap());
        }
    }

    #[test]
    fn compensated_sum_recovers_cancelled_bits() {
        assert_eq!(sum3(1e16, 1.0, -1e16), 1.0);
        // exact sum of the three doubles is 2^-55
        assert_eq!(sum3(0.1, 0.2, -0.3), 2f64.powi(-55));
    }
}
