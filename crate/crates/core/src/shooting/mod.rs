//! Radial shooting for ground states of `Δu + f(u) = 0`.
//!
//! Positive radial solutions satisfy
//!
//! ```text
//! u'' + (n-1)/r · u' + f(u) = 0,   u'(0) = 0,   u(r) → 0 as r → ∞.
//! ```
//!
//! For a trial height `α = u(0)` the initial value problem either turns back
//! while still positive (α too small), crosses zero (α too large), or decays
//! onto zero. The ground state sits at the interface between the first two,
//! which is located by bisection on `α`.

mod config;
mod ground_state;
mod scan;
mod trajectory;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::nonlinearity::{DoublePowerParams, NonlinearityError};

pub use config::ShootingConfig;
pub use ground_state::{find_ground_state, largest_zero_of_f, smallest_zero_of_primitive, GroundState, Trial};
pub use scan::{scan_interval, uniqueness_scan, ScanReport};
pub use trajectory::{integrate_trajectory, shoot, InconclusiveReason, OutcomeKind, Trajectory, TrajectoryOutcome};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ShootingError {
    #[error("invalid shooting configuration: {0}")]
    InvalidConfig(String),
    #[error("{what} outside its domain: {value}")]
    Domain { what: &'static str, value: f64 },
    #[error("no existence: omega >= omega_crit ({omega} >= {omega_crit})")]
    NoExistence { omega: f64, omega_crit: f64 },
    #[error("bracket failure: {0}")]
    BracketFailure(String),
    #[error("inconclusive trajectory at alpha={alpha}: {reason}")]
    Inconclusive { alpha: f64, reason: InconclusiveReason },
    #[error(transparent)]
    Nonlinearity(#[from] NonlinearityError),
}

/// A point `(r, u, u_r)` on a radial trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    pub r: f64,
    pub u: f64,
    pub du: f64,
}

impl StateVector {
    pub fn new(r: f64, u: f64, du: f64) -> Self {
        Self { r, u, du }
    }

    pub fn is_valid(&self) -> bool {
        self.r >= 0.0 && self.u.is_finite() && self.du.is_finite()
    }
}

/// Second-order Taylor start off the `(n-1)/r` singularity:
/// `u(h) = α - f(α)h²/(2n)`, `u_r(h) = -f(α)h/n`.
pub fn series_start(dp: &DoublePowerParams, n: u32, alpha: f64, h: f64) -> Result<StateVector, ShootingError> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(ShootingError::Domain { what: "alpha", value: alpha });
    }
    if !(h.is_finite() && h > 0.0 && h < 1.0) {
        return Err(ShootingError::Domain { what: "start offset h", value: h });
    }
    if n == 0 {
        return Err(ShootingError::InvalidConfig("dimension n must be at least 1".into()));
    }
    let fa = dp.f_odd(alpha);
    let n = f64::from(n);
    Ok(StateVector { r: h, u: alpha - fa * h * h / (2.0 * n), du: -fa * h / n })
}

/// Start offset `min(cap, (abs_tol / (|f(α)| + 1))^{1/4})`.
pub fn start_offset(dp: &DoublePowerParams, cfg: &ShootingConfig, alpha: f64) -> f64 {
    let fa = dp.f_odd(alpha).abs();
    cfg.h0.min((cfg.abs_tol / (fa + 1.0)).powf(0.25))
}

/// Lyapunov functional `E = u_r²/2 + F(u)`; non-increasing along
/// trajectories for `n ≥ 2` and conserved for `n = 1`.
pub fn energy(dp: &DoublePowerParams, s: &StateVector) -> f64 {
    0.5 * s.du * s.du + dp.primitive_even(s.u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dp(omega: f64, p: f64, q: f64) -> DoublePowerParams {
        DoublePowerParams::new(omega, p, q).unwrap()
    }

    #[test]
    fn series_start_values() {
        let s = series_start(&dp(0.1, 3.0, 5.0), 3, 1.0, 0.01).unwrap();
        assert!((s.u - (1.0 + 0.1 * 1e-4 / 6.0)).abs() < 1e-15);
        assert!((s.du - 0.1 * 0.01 / 3.0).abs() < 1e-16);
        assert_eq!(s.r, 0.01);

        let eq = series_start(&dp(0.25, 2.0, 3.0), 2, 0.5, 0.1).unwrap();
        assert_eq!((eq.u, eq.du), (0.5, 0.0));

        let tiny = series_start(&dp(0.1, 3.0, 5.0), 3, 0.7, 1e-9).unwrap();
        assert!((tiny.u - 0.7).abs() < 1e-16 && tiny.du.abs() < 1e-9);
    }

    #[test]
    fn series_start_rejects_unsafe_offsets() {
        let d = dp(0.1, 3.0, 5.0);
        assert!(series_start(&d, 3, 1.0, 1.0).is_err());
        assert!(series_start(&d, 3, 1.0, 0.0).is_err());
        assert!(series_start(&d, 3, -1.0, 0.01).is_err());
        assert!(series_start(&d, 0, 1.0, 0.01).is_err());
    }

    #[test]
    fn energy_values() {
        let d = dp(0.1, 3.0, 5.0);
        assert_eq!(energy(&d, &StateVector::new(0.0, 0.0, 0.0)), 0.0);
        let e = energy(&d, &StateVector::new(0.0, 1.0, 0.0));
        assert!((e - 1.0 / 30.0).abs() < 1e-15);
        assert!((energy(&d, &StateVector::new(3.0, 0.0, 0.2)) - 0.02).abs() < 1e-16);
    }

    #[test]
    fn start_offset_is_capped() {
        let cfg = ShootingConfig::default();
        let h = start_offset(&dp(0.1, 3.0, 5.0), &cfg, 0.9);
        assert!(h <= 1e-3 && h > 0.0);
    }
}
