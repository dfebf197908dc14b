use serde::{Deserialize, Serialize};

use super::NonlinearityError;

/// Coefficients of the double-power nonlinearity `f(u) = -ω·u + u^p - u^q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoublePowerParams {
    omega: f64,
    p: f64,
    q: f64,
}

impl DoublePowerParams {
    /// Requires `ω > 0` and `1 < p < q`, all finite.
    pub fn new(omega: f64, p: f64, q: f64) -> Result<Self, NonlinearityError> {
        if !(omega.is_finite() && p.is_finite() && q.is_finite()) {
            return Err(NonlinearityError::NonFinite);
        }
        if omega <= 0.0 {
            return Err(NonlinearityError::NonPositiveCoefficient { name: "omega", value: omega });
        }
        check_exponents(p, q)?;
        Ok(Self { omega, p, q })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// `f` written as `-a·u^1 + b·u^p - c·u^q`.
    pub fn as_triple(&self) -> TriplePowerParams {
        TriplePowerParams {
            a: self.omega,
            b: 1.0,
            c: 1.0,
            p: 1.0,
            q: self.p,
            r: self.q,
        }
    }

    /// The primitive `F(u) = ∫₀ᵘ f` written as `-(ω/2)·u² + u^{p+1}/(p+1) - u^{q+1}/(q+1)`.
    pub fn primitive_triple(&self) -> TriplePowerParams {
        TriplePowerParams {
            a: 0.5 * self.omega,
            b: 1.0 / (self.p + 1.0),
            c: 1.0 / (self.q + 1.0),
            p: 2.0,
            q: self.p + 1.0,
            r: self.q + 1.0,
        }
    }
}

/// Validates `1 < p < q` for a double-power exponent pair.
pub(crate) fn check_exponents(p: f64, q: f64) -> Result<(), NonlinearityError> {
    if !(p.is_finite() && q.is_finite()) {
        return Err(NonlinearityError::NonFinite);
    }
    if p <= 1.0 {
        return Err(NonlinearityError::ExponentBelowOne { p });
    }
    if p >= q {
        return Err(NonlinearityError::ExponentOrder { p, q, r: None });
    }
    Ok(())
}

/// Coefficients of the triple-power function `f(u) = -a·u^p + b·u^q - c·u^r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriplePowerParams {
    pub(crate) a: f64,
    pub(crate) b: f64,
    pub(crate) c: f64,
    pub(crate) p: f64,
    pub(crate) q: f64,
    pub(crate) r: f64,
}

impl TriplePowerParams {
    /// Requires `a, b, c > 0` and `0 < p < q < r`, all finite.
    pub fn new(a: f64, b: f64, c: f64, p: f64, q: f64, r: f64) -> Result<Self, NonlinearityError> {
        if ![a, b, c, p, q, r].iter().all(|x| x.is_finite()) {
            return Err(NonlinearityError::NonFinite);
        }
        for (name, value) in [("a", a), ("b", b), ("c", c)] {
            if value <= 0.0 {
                return Err(NonlinearityError::NonPositiveCoefficient { name, value });
            }
        }
        check_triple_exponents(p, q, r)?;
        Ok(Self { a, b, c, p, q, r })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Coefficients `(a, b, c)`.
    pub fn coefficients(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// Exponents `(p, q, r)`.
    pub fn exponents(&self) -> [f64; 3] {
        [self.p, self.q, self.r]
    }

    /// Evaluates `-a·u^p + b·u^q - c·u^r` with compensated summation.
    ///
    /// Defined for `u ≥ 0`; the value at `0` is the continuous extension `0`.
    pub fn eval(&self, u: f64) -> Result<f64, NonlinearityError> {
        check_argument(u, false)?;
        Ok(self.eval_unchecked(u))
    }

    pub(crate) fn eval_unchecked(&self, u: f64) -> f64 {
        if u == 0.0 {
            return 0.0;
        }
        super::sum3(-self.a * u.powf(self.p), self.b * u.powf(self.q), -self.c * u.powf(self.r))
    }
}

pub(crate) fn check_triple_exponents(p: f64, q: f64, r: f64) -> Result<(), NonlinearityError> {
    if p <= 0.0 {
        return Err(NonlinearityError::NonPositiveExponent { p });
    }
    if !(p < q && q < r) {
        return Err(NonlinearityError::ExponentOrder { p, q, r: Some(r) });
    }
    Ok(())
}

/// `u` must be finite and `≥ 0` (or `> 0` when `strict`).
pub(crate) fn check_argument(u: f64, strict: bool) -> Result<(), NonlinearityError> {
    if !u.is_finite() || u < 0.0 || (strict && u == 0.0) {
        return Err(NonlinearityError::Domain { u, strict });
    }
    Ok(())
}
