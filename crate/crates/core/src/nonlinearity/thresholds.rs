use super::params::check_exponents;
use super::{DoublePowerParams, NonlinearityError};

/// Existence threshold
/// `ω_{p,q} = 2(q-p)/((p+1)(q-1)) · [(p-1)(q+1)/((p+1)(q-1))]^{(p-1)/(q-p)}`.
///
/// The bracketed ratio equals `1 - 2(q-p)/((p+1)(q-1))`, so its logarithm is
/// taken with `ln_1p`.
pub fn omega_crit(p: f64, q: f64) -> Result<f64, NonlinearityError> {
    check_exponents(p, q)?;
    let s = (p - 1.0) / (q - p);
    let denom = (p + 1.0) * (q - 1.0);
    let ln_prefactor = (2.0 * (q - p) / denom).ln();
    let ln_ratio = (-2.0 * (q - p) / denom).ln_1p();
    Ok((ln_prefactor + s * ln_ratio).exp())
}

/// Uniqueness threshold `η_{p,q} = (q-p)/(q-1) · [(p-1)/(q-1)]^{(p-1)/(q-p)}`.
pub fn eta_crit(p: f64, q: f64) -> Result<f64, NonlinearityError> {
    check_exponents(p, q)?;
    let s = (p - 1.0) / (q - p);
    // (p-1)/(q-1) = 1 - (q-p)/(q-1)
    let ln_ratio = (-(q - p) / (q - 1.0)).ln_1p();
    Ok((q - p) / (q - 1.0) * (s * ln_ratio).exp())
}

/// `ω < ω_{p,q}`: the primitive `F` is positive somewhere, so a ground state exists.
pub fn existence_holds(dp: &DoublePowerParams) -> bool {
    omega_crit(dp.p(), dp.q()).map(|w| dp.omega() < w).unwrap_or(false)
}

/// `ω < η_{p,q}`: the tilde of `f` is negative on `u > 0`.
pub fn uniqueness_condition_holds(dp: &DoublePowerParams) -> bool {
    eta_crit(dp.p(), dp.q()).map(|e| dp.omega() < e).unwrap_or(false)
}
