//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use doublepower::nonlinearity::{eval_primitive, DoublePowerParams, TriplePowerParams};
use doublepower::shooting::{energy, GroundState, ShootingConfig, Trajectory};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

/// Maximum of a unimodal `g` on `[lo, hi]` by golden-section search.
pub fn golden_max(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut g1, mut g2) = (g(x1), g(x2));
    while hi - lo > 1e-12 {
        if g1 < g2 {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + inv_phi * (hi - lo);
            g2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - inv_phi * (hi - lo);
            g1 = g(x1);
        }
    }
    g1.max(g2)
}

/// Plain bisection; `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let neg_lo = f(lo) < 0.0;
    assert_ne!(neg_lo, f(hi) < 0.0, "no sign change on [{lo}, {hi}]");
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) == neg_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Smallest positive zero of `F`: scan upward from 0 until `F > 0`, then bisect.
pub fn first_zero_of_primitive(dp: &DoublePowerParams, tol: f64) -> f64 {
    let f = |u: f64| eval_primitive(dp, u).unwrap();
    let mut prev = 1e-6;
    let mut u = prev;
    while f(u) <= 0.0 {
        prev = u;
        u *= 1.001;
        assert!(u < 10.0, "F never becomes positive");
    }
    bisect(f, prev, u, tol)
}

/// Five-point first and second derivatives.
pub fn d1(g: &impl Fn(f64) -> f64, u: f64, h: f64) -> f64 {
    (g(u - 2.0 * h) - 8.0 * g(u - h) + 8.0 * g(u + h) - g(u + 2.0 * h)) / (12.0 * h)
}

pub fn d2(g: &impl Fn(f64) -> f64, u: f64, h: f64) -> f64 {
    (-g(u - 2.0 * h) + 16.0 * g(u - h) - 30.0 * g(u) + 16.0 * g(u + h) - g(u + 2.0 * h)) / (12.0 * h * h)
}

/// `(u·g')'·g - u·g'²` with `g'` and `g''` by finite differences, together
/// with the magnitude scale `|(u·g')'·g| + u·g'²` it is judged against.
pub fn tilde_by_differences(g: impl Fn(f64) -> f64, u: f64) -> (f64, f64) {
    let h = 1e-3 * u;
    let (g0, g1, g2) = (g(u), d1(&g, u, h), d2(&g, u, h));
    let lead = (g1 + u * g2) * g0;
    let tail = u * g1 * g1;
    (lead - tail, lead.abs() + tail)
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

/// `1 < p < q ≤ 20`.
pub fn exponent_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let p = rng.gen_range(1.0..20.0);
    let q = rng.gen_range(p..=20.0);
    if p > 1.0 && q > p {
        (p, q)
    } else {
        exponent_pair(rng)
    }
}

/// Coefficients in `[0.2, 5]`, exponent gaps in `[0.3, 4]`, `p` in `[0.2, 3]`.
pub fn triple_shape(rng: &mut ChaCha8Rng) -> (f64, f64, f64, f64, f64) {
    let b = rng.gen_range(0.2..5.0);
    let c = rng.gen_range(0.2..5.0);
    let p = rng.gen_range(0.2..3.0);
    let q = p + rng.gen_range(0.3..4.0);
    let r = q + rng.gen_range(0.3..4.0);
    (b, c, p, q, r)
}

pub fn triple_value(tp: &TriplePowerParams, u: f64) -> f64 {
    let [a, b, c] = tp.coefficients();
    let [p, q, r] = tp.exponents();
    -a * u.powf(p) + b * u.powf(q) - c * u.powf(r)
}

/// Largest ratio of an energy excursion to its allowance over the accepted
/// steps (`≤ 1` means the dissipation bound holds everywhere).
pub fn energy_excess(dp: &DoublePowerParams, cfg: &ShootingConfig, traj: &Trajectory) -> f64 {
    let es: Vec<f64> = traj.step_states().map(|s| energy(dp, &s)).collect();
    let slack = 10.0 * cfg.abs_tol;
    if cfg.n == 1 {
        let allowed = 1e3 * cfg.rel_tol * es[0].abs() + slack;
        es.iter().map(|e| (e - es[0]).abs() / allowed).fold(0.0, f64::max)
    } else {
        es.windows(2).map(|w| (w[1] - w[0]) / slack).fold(0.0, f64::max)
    }
}

pub fn strictly_decreasing_positive(gs: &GroundState) -> bool {
    gs.profile.iter().all(|s| s.u > 0.0) && gs.profile.windows(2).all(|w| w[1].u < w[0].u)
}

/// Number of profile pairs violating `u(r₂)/u(r₁) ≤ exp(-0.9·√ω·(r₂-r₁))`
/// once `u < 0.1·α`. Consecutive pairs suffice since the log-ratios add.
pub fn tail_violations(dp: &DoublePowerParams, gs: &GroundState) -> usize {
    let k = 0.9 * dp.omega().sqrt();
    let tail: Vec<_> = gs.profile.iter().filter(|s| s.u < 0.1 * gs.alpha).collect();
    tail.windows(2).filter(|w| w[1].u / w[0].u > (-k * (w[1].r - w[0].r)).exp()).count()
}

/// ODE residual `|u'' + (n-1)/r·u' + f(u)| / max(1, |f(u)|)` with `u''`
/// taken as a central difference of the dense `u'` inside each step.
pub fn residual_by_differences(dp: &DoublePowerParams, traj: &Trajectory, r_end: f64) -> f64 {
    let n1 = f64::from(traj.n) - 1.0;
    traj.steps
        .iter()
        .filter(|s| s.t0 + s.h <= r_end)
        .map(|s| {
            let r = s.t0 + 0.5 * s.h;
            let d = s.h / 256.0;
            let upp = (s.eval(r + d)[1] - s.eval(r - d)[1]) / (2.0 * d);
            let y = s.eval(r);
            let f = dp.f_odd(y[0]);
            (upp + n1 / r * y[1] + f).abs() / f.abs().max(1.0)
        })
        .fold(0.0, f64::max)
}
