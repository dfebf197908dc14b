use super::params::check_argument;
use super::{DoublePowerParams, NonlinearityError, TriplePowerParams};

/// Closed form of `g̃ = (u·g')'·g - u·(g')²` for `g = -a·u^p + b·u^q - c·u^r`:
///
/// ```text
/// g̃ = -ab(q-p)²·u^{q+p-1} + ca(r-p)²·u^{r+p-1} - bc(r-q)²·u^{r+q-1}
/// ```
///
/// The `u^{2p-1}`, `u^{2q-1}` and `u^{2r-1}` contributions cancel exactly.
pub fn tilde_triple(tp: &TriplePowerParams) -> Result<TriplePowerParams, NonlinearityError> {
    let TriplePowerParams { a, b, c, p, q, r } = *tp;
    if p + q <= 1.0 {
        return Err(NonlinearityError::TildeExponent { p, q });
    }
    let out = TriplePowerParams::new(
        a * b * (q - p).powi(2),
        c * a * (r - p).powi(2),
        b * c * (r - q).powi(2),
        q + p - 1.0,
        r + p - 1.0,
        r + q - 1.0,
    );
    out.map_err(|e| match e {
        NonlinearityError::NonPositiveCoefficient { .. } | NonlinearityError::NonFinite => NonlinearityError::TildeRange,
        other => other,
    })
}

/// `f̃(u) = (u·f'(u))'·f(u) - u·f'(u)²` for `u > 0`.
pub fn eval_f_tilde(dp: &DoublePowerParams, u: f64) -> Result<f64, NonlinearityError> {
    check_argument(u, true)?;
    Ok(tilde_triple(&dp.as_triple())?.eval_unchecked(u))
}

/// `F̃(u) = (u·f(u))'·F(u) - u·f(u)²` for `u > 0`, i.e. the tilde of `F`.
pub fn eval_primitive_tilde(dp: &DoublePowerParams, u: f64) -> Result<f64, NonlinearityError> {
    check_argument(u, true)?;
    Ok(tilde_triple(&dp.primitive_triple())?.eval_unchecked(u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(a: f64, b: f64, c: f64, p: f64, q: f64, r: f64) -> TriplePowerParams {
        TriplePowerParams::new(a, b, c, p, q, r).unwrap()
    }

    #[test]
    fn tilde_coefficients() {
        let t = tilde_triple(&tp(1.0, 1.0, 1.0, 1.0, 2.0, 3.0)).unwrap();
        assert_eq!(t.coefficients(), [1.0, 4.0, 1.0]);
        assert_eq!(t.exponents(), [2.0, 3.0, 4.0]);
        let t = tilde_triple(&tp(0.25, 1.0, 1.0, 1.0, 2.0, 3.0)).unwrap();
        assert_eq!(t.coefficients(), [0.25, 1.0, 1.0]);
        assert_eq!(t.exponents(), [2.0, 3.0, 4.0]);
    }

    #[test]
    fn tilde_rejects_small_exponent_sum() {
        let e = tilde_triple(&tp(1.0, 1.0, 1.0, 0.2, 0.5, 3.0)).unwrap_err();
        assert!(matches!(e, NonlinearityError::TildeExponent { .. }));
    }

    #[test]
    fn tilde_values() {
        let d = DoublePowerParams::new(0.1, 3.0, 5.0).unwrap();
        assert!((eval_f_tilde(&d, 1.0).unwrap() + 2.8).abs() < 1e-14);
        assert!(eval_f_tilde(&d, 1e-8).unwrap().abs() < 1e-15);
        let t = DoublePowerParams::new(0.25, 2.0, 3.0).unwrap();
        assert_eq!(eval_f_tilde(&t, 0.5).unwrap(), 0.0);
        // f̃ = -u²(u - 1/2)² for the tangent case
        for u in [0.1, 0.7, 2.0] {
            let expected = -u * u * (u - 0.5) * (u - 0.5);
            assert!((eval_f_tilde(&t, u).unwrap() - expected).abs() < 1e-14 * (1.0 + u.powi(4)));
        }
        assert!(eval_primitive_tilde(&d, 1e-8).unwrap().abs() < 1e-20);
    }

    #[test]
    fn tilde_domain() {
        let d = DoublePowerParams::new(0.1, 3.0, 5.0).unwrap();
        assert!(eval_f_tilde(&d, 0.0).is_err());
        assert!(eval_primitive_tilde(&d, -1.0).is_err());
        assert!(eval_primitive_tilde(&d, f64::NAN).is_err());
    }
}
