//! Dormand–Prince 5(4) with the fourth-order continuous extension.
//!
//! Fixed-size state `[f64; N]`. Every accepted step is handed to an
//! observer as a [`DenseStep`], which can be evaluated anywhere inside the
//! step; the observer may stop the integration (event detection lives on
//! the caller's side).

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// difference between the 5th and 4th order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    pub tol: Tolerances,
    pub h_init: Option<f64>,
    pub h_max: f64,
    pub max_steps: usize,
}

/// One accepted step with its interpolation coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseStep<const N: usize> {
    pub t0: f64,
    pub h: f64,
    pub y0: [f64; N],
    pub y1: [f64; N],
    coeff: [[f64; N]; 4],
}

impl<const N: usize> DenseStep<N> {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    /// Continuous extension at `t`; meaningful for `t` in `[t0, t0 + h]`.
    pub fn eval(&self, t: f64) -> [f64; N] {
        let theta = (t - self.t0) / self.h;
        let theta1 = 1.0 - theta;
        let [r2, r3, r4, r5] = &self.coeff;
        std::array::from_fn(|i| self.y0[i] + theta * (r2[i] + theta1 * (r3[i] + theta * (r4[i] + theta1 * r5[i]))))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Continue,
    Stop,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Termination {
    ReachedEnd,
    Stopped,
    StepLimit,
    NonFinite { t: f64 },
    StepUnderflow { t: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary<const N: usize> {
    pub termination: Termination,
    pub t: f64,
    pub y: [f64; N],
    pub accepted: usize,
    pub rejected: usize,
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    std::array::from_fn(|i| y[i] + h * terms.iter().map(|(c, k)| c * k[i]).sum::<f64>())
}

fn error_norm<const N: usize>(err: &[f64; N], y0: &[f64; N], y1: &[f64; N], tol: Tolerances) -> f64 {
    let s: f64 = (0..N)
        .map(|i| {
            let sc = tol.abs + tol.rel * y0[i].abs().max(y1[i].abs());
            (err[i] / sc).powi(2)
        })
        .sum();
    (s / N as f64).sqrt()
}

fn initial_step<const N: usize, F>(rhs: &mut F, t0: f64, y0: &[f64; N], f0: &[f64; N], opts: &Options) -> f64
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let sc: [f64; N] = std::array::from_fn(|i| opts.tol.abs + opts.tol.rel * y0[i].abs());
    let norm = |v: &[f64; N]| ((0..N).map(|i| (v[i] / sc[i]).powi(2)).sum::<f64>() / N as f64).sqrt();
    let d0 = norm(y0);
    let d1 = norm(f0);
    let mut h = if d0 < 1e-10 || d1 < 1e-10 { 1e-6 } else { 0.01 * d0 / d1 };
    h = h.min(opts.h_max);
    let y1 = axpy(y0, h, &[(1.0, f0)]);
    let f1 = rhs(t0 + h, &y1);
    let diff: [f64; N] = std::array::from_fn(|i| f1[i] - f0[i]);
    let d2 = norm(&diff) / h;
    let big = d1.max(d2);
    let h1 = if big <= 1e-15 { (h * 1e-3).max(1e-6) } else { (0.01 / big).powf(0.2) };
    (100.0 * h).min(h1).min(opts.h_max)
}

/// Integrates `y' = rhs(t, y)` from `t0` towards `t_end > t0`.
///
/// The observer sees every accepted step in order and may return
/// [`Control::Stop`].
pub fn integrate<const N: usize, F, O>(mut rhs: F, t0: f64, y0: [f64; N], t_end: f64, opts: &Options, mut observer: O) -> Summary<N>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
    O: FnMut(&DenseStep<N>) -> Control,
{
    let mut t = t0;
    let mut y = y0;
    let mut k1 = rhs(t, &y);
    let mut h = opts.h_init.unwrap_or_else(|| initial_step(&mut rhs, t0, &y0, &k1, opts));
    let mut accepted = 0;
    let mut rejected = 0;
    let mut last_rejected = false;

    let summary = |termination, t: f64, y: &[f64; N], accepted, rejected| Summary { termination, t, y: *y, accepted, rejected };

    loop {
        if t >= t_end {
            return summary(Termination::ReachedEnd, t, &y, accepted, rejected);
        }
        if accepted + rejected >= opts.max_steps {
            return summary(Termination::StepLimit, t, &y, accepted, rejected);
        }
        let mut last = false;
        if t + h >= t_end {
            h = t_end - t;
            last = true;
        }
        if h <= f64::EPSILON * t.abs().max(1.0) * 4.0 {
            return summary(Termination::StepUnderflow { t }, t, &y, accepted, rejected);
        }

        let k2 = rhs(t + C2 * h, &axpy(&y, h, &[(A21, &k1)]));
        let k3 = rhs(t + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = rhs(t + C4 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = rhs(t + C5 * h, &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
        let k6 = rhs(t + h, &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]));
        let y_new = axpy(&y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
        let k7 = rhs(t + h, &y_new);

        let err: [f64; N] = std::array::from_fn(|i| h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]));
        let err_norm = error_norm(&err, &y, &y_new, opts.tol);

        if !err_norm.is_finite() || y_new.iter().any(|v| !v.is_finite()) {
            if h < 1e-12 {
                return summary(Termination::NonFinite { t }, t, &y, accepted, rejected);
            }
            h *= 0.1;
            rejected += 1;
            last_rejected = true;
            continue;
        }

        if err_norm <= 1.0 {
            let ydiff: [f64; N] = std::array::from_fn(|i| y_new[i] - y[i]);
            let bspl: [f64; N] = std::array::from_fn(|i| h * k1[i] - ydiff[i]);
            let step = DenseStep {
                t0: t,
                h,
                y0: y,
                y1: y_new,
                coeff: [
                    ydiff,
                    bspl,
                    std::array::from_fn(|i| ydiff[i] - h * k7[i] - bspl[i]),
                    std::array::from_fn(|i| h * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i])),
                ],
            };
            accepted += 1;
            t = if last { t_end } else { t + h };
            y = y_new;
            k1 = k7;
            if observer(&step) == Control::Stop {
                return summary(Termination::Stopped, t, &y, accepted, rejected);
            }
            let mut fac = (0.9 * err_norm.max(1e-10).powf(-0.2)).clamp(0.2, 10.0);
            if last_rejected {
                fac = fac.min(1.0);
            }
            last_rejected = false;
            h = (h * fac).min(opts.h_max);
        } else {
            rejected += 1;
            last_rejected = true;
            h *= (0.9 * err_norm.powf(-0.2)).max(0.2);
        }
    }
}
