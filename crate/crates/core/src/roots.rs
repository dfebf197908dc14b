//! Bracketing root finding on the real line.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("no sign change on [{lo}, {hi}]: f(lo)={f_lo}, f(hi)={f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("function returned a non-finite value at x={x}")]
    NonFinite { x: f64 },
}

/// Bisection on `[lo, hi]` until the bracket is narrower than `xtol` or no
/// floating-point midpoint remains. Returns the midpoint of the final bracket.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, xtol: f64, max_iter: usize) -> Result<f64, RootError>
where
    F: FnMut(f64) -> f64,
{
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if !f_lo.is_finite() {
        return Err(RootError::NonFinite { x: lo });
    }
    if !f_hi.is_finite() {
        return Err(RootError::NonFinite { x: hi });
    }
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(RootError::NoSignChange { lo, hi, f_lo, f_hi });
    }
    for _ in 0..max_iter {
        let mid = lo + 0.5 * (hi - lo);
        if hi - lo <= xtol || mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if !f_mid.is_finite() {
            return Err(RootError::NonFinite { x: mid });
        }
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + 0.5 * (hi - lo))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt2() {
        let x = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15, 200).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn reversed_bracket_and_exact_roots() {
        assert_eq!(bisect(|x| x - 1.0, 1.0, 3.0, 1e-12, 100).unwrap(), 1.0);
        let x = bisect(|x| x.cos(), 3.0, 0.0, 1e-14, 200).unwrap();
        assert!((x - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn rejects_same_sign() {
        assert!(matches!(bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 50), Err(RootError::NoSignChange { .. })));
        assert!(matches!(bisect(|x| 1.0 / x - 1.0, 0.0, 2.0, 1e-12, 50), Err(RootError::NonFinite { .. })));
    }
}
