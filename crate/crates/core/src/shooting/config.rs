use serde::{Deserialize, Serialize};

use super::ShootingError;
use crate::nonlinearity::DoublePowerParams;

/// Solver settings for the radial shooting problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShootingConfig {
    /// Space dimension.
    pub n: u32,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Upper bound for the offset from `r = 0` where integration starts.
    pub h0: f64,
    /// Integration horizon; `None` means `40/√ω`.
    pub r_max: Option<f64>,
    /// Target width of the final bracket on `α`.
    pub alpha_tol: f64,
    /// `u` and `|u_r|` below this at the horizon count as decayed.
    pub conv_eps: f64,
    pub max_bisect: usize,
    /// Accepted plus rejected steps allowed per trajectory.
    pub max_steps: usize,
    /// Geometric probe points used to find the initial bracket.
    pub probe_points: usize,
    /// Spacing of the returned ground-state profile.
    pub profile_dr: f64,
    /// The profile is cut where the two bracketing trajectories stop
    /// agreeing to this relative accuracy.
    pub profile_tol: f64,
}

impl Default for ShootingConfig {
    fn default() -> Self {
        Self {
            n: 3,
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            h0: 1e-3,
            r_max: None,
            alpha_tol: 1e-12,
            conv_eps: 1e-8,
            max_bisect: 200,
            max_steps: 200_000,
            probe_points: 32,
            profile_dr: 0.01,
            profile_tol: 1e-6,
        }
    }
}

impl ShootingConfig {
    pub fn with_dimension(n: u32) -> Self {
        Self { n, ..Self::default() }
    }

    pub fn r_max_for(&self, dp: &DoublePowerParams) -> f64 {
        self.r_max.unwrap_or_else(|| 40.0 / dp.omega().sqrt())
    }

    pub fn validate(&self, dp: &DoublePowerParams) -> Result<(), ShootingError> {
        let bad = |msg: &str| Err(ShootingError::InvalidConfig(msg.to_string()));
        if self.n < 1 {
            return bad("n must be at least 1");
        }
        for (name, v) in [
            ("rel_tol", self.rel_tol),
            ("abs_tol", self.abs_tol),
            ("h0", self.h0),
            ("alpha_tol", self.alpha_tol),
            ("conv_eps", self.conv_eps),
            ("profile_dr", self.profile_dr),
            ("profile_tol", self.profile_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return bad(&format!("{name} must be positive and finite, got {v}"));
            }
        }
        if self.h0 >= 1.0 {
            return bad("h0 must be below 1");
        }
        let r_max = self.r_max_for(dp);
        if !(r_max.is_finite() && r_max > self.h0) {
            return bad(&format!("r_max must exceed h0, got {r_max}"));
        }
        if self.probe_points < 2 {
            return bad("probe_points must be at least 2");
        }
        if self.max_steps == 0 {
            return bad("max_steps must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let dp = DoublePowerParams::new(0.1, 3.0, 5.0).unwrap();
        let cfg = ShootingConfig::default();
        cfg.validate(&dp).unwrap();
        assert!((cfg.r_max_for(&dp) - 40.0 / 0.1f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_fields() {
        let dp = DoublePowerParams::new(0.1, 3.0, 5.0).unwrap();
        let base = ShootingConfig::default();
        assert!(ShootingConfig { n: 0, ..base.clone() }.validate(&dp).is_err());
        assert!(ShootingConfig { rel_tol: 0.0, ..base.clone() }.validate(&dp).is_err());
        assert!(ShootingConfig { h0: 2.0, ..base.clone() }.validate(&dp).is_err());
        assert!(ShootingConfig { r_max: Some(1e-4), ..base.clone() }.validate(&dp).is_err());
        assert!(ShootingConfig { abs_tol: f64::NAN, ..base }.validate(&dp).is_err());
    }
}
