use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{shoot, OutcomeKind, ShootingConfig, ShootingError, StateVector, Trajectory, TrajectoryOutcome};
use crate::nonlinearity::{existence_holds, omega_crit, DoublePowerParams};
use crate::roots::bisect;

const ROOT_XTOL: f64 = 1e-15;
const CHECKPOINTS: usize = 100;
const UNDERSHOOT_GAP: f64 = 1e-6;
/// Probes closing in on `b₂`, each `1/8` of the previous distance, down to
/// `APPROACH_FLOOR·b₂`. Closer than that the sign of `f(α)` is rounding noise.
const APPROACH_PROBES: i32 = 16;
const APPROACH_FLOOR: f64 = 1e-10;

/// Ground-state approximation produced by bisection on the shooting height.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundState {
    pub alpha: f64,
    /// `(r, u, u_r)` samples from `r = 0`, positive and strictly decreasing.
    pub profile: Vec<StateVector>,
    /// Final `(α_low, α_high)`: turned back at the low end, crossed at the high end.
    pub bracket: (f64, f64),
    /// Largest `|u'' + (n-1)/r·u' + f(u)| / max(1, |f(u)|)` over the
    /// residual checkpoints, with `u''` taken by finite differences of the
    /// dense output.
    pub residual: f64,
    pub checkpoints: usize,
    /// Every height integrated while bracketing and bisecting, in order.
    pub trials: Vec<Trial>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trial {
    pub alpha: f64,
    pub kind: OutcomeKind,
}

/// Largest positive zero `b₂` of `f`, found on `g(u) = f(u)/u = -ω + u^{p-1} - u^{q-1}`.
///
/// `g` increases up to `[(p-1)/(q-1)]^{1/(q-p)}` and decreases after it, so
/// `b₂` exists iff `g` is positive at the peak, and then lies between the
/// peak and `1` (where `g = -ω`). Returns `None` when `f ≤ 0` on `u > 0`.
pub fn largest_zero_of_f(dp: &DoublePowerParams) -> Option<f64> {
    let (w, p, q) = (dp.omega(), dp.p(), dp.q());
    let g = |u: f64| -w + u.powf(p - 1.0) - u.powf(q - 1.0);
    let peak = ((p - 1.0) / (q - 1.0)).powf(1.0 / (q - p));
    if g(peak) <= 0.0 {
        return None;
    }
    bisect(g, peak, 1.0, ROOT_XTOL, 400).ok()
}

/// Smallest positive zero `u_F` of `F`, found on
/// `F(u)/u² = -ω/2 + u^{p-1}/(p+1) - u^{q-1}/(q+1)`, which is unimodal with
/// its peak at `[(p-1)(q+1)/((p+1)(q-1))]^{1/(q-p)}`. Returns `None` when `F ≤ 0`.
pub fn smallest_zero_of_primitive(dp: &DoublePowerParams) -> Option<f64> {
    let (w, p, q) = (dp.omega(), dp.p(), dp.q());
    let h = |u: f64| -0.5 * w + u.powf(p - 1.0) / (p + 1.0) - u.powf(q - 1.0) / (q + 1.0);
    let peak = ((p - 1.0) * (q + 1.0) / ((p + 1.0) * (q - 1.0))).powf(1.0 / (q - p));
    if h(peak) <= 0.0 {
        return None;
    }
    bisect(h, 0.0, peak, ROOT_XTOL, 400).ok()
}

pub(crate) fn existence_bracket(dp: &DoublePowerParams) -> Result<(f64, f64), ShootingError> {
    if !existence_holds(dp) {
        return Err(ShootingError::NoExistence { omega: dp.omega(), omega_crit: omega_crit(dp.p(), dp.q())? });
    }
    let lo = smallest_zero_of_primitive(dp).ok_or_else(|| ShootingError::BracketFailure("primitive has no positive zero".into()))?;
    let hi = largest_zero_of_f(dp).ok_or_else(|| ShootingError::BracketFailure("f has no positive zero".into()))?;
    if lo >= hi {
        return Err(ShootingError::BracketFailure(format!("empty height interval ({lo}, {hi})")));
    }
    Ok((lo, hi))
}

/// Locates the ground state by bisection on `α = u(0)`.
///
/// Probes `cfg.probe_points` heights geometrically spaced inside `(u_F, b₂)`,
/// one just below `u_F` and a few accumulating at `b₂` (where the ground
/// state moves in higher dimensions), takes the first turned-back/crossed
/// neighbour pair as the initial bracket and bisects it down to `alpha_tol`. The returned profile follows the
/// midpoint trajectory for as long as the two bracket trajectories agree to
/// `profile_tol` relative accuracy; beyond that point the shot is dominated
/// by the growing mode and no longer approximates the decaying solution.
pub fn find_ground_state(dp: &DoublePowerParams, cfg: &ShootingConfig) -> Result<GroundState, ShootingError> {
    cfg.validate(dp)?;
    let (u_f, b2) = existence_bracket(dp)?;

    // Below u_F the energy starts negative, so those shots always turn back.
    // The first probe sits there because for n = 1 the ground state is u_F itself.
    let m = cfg.probe_points;
    let ratio = b2 / u_f;
    let mut probes: Vec<f64> = std::iter::once(u_f * (1.0 - UNDERSHOOT_GAP))
        .chain((1..=m).map(|i| u_f * ratio.powf(i as f64 / (m + 1) as f64)))
        .collect();
    let gap = b2 - probes[m];
    probes.extend((1..=APPROACH_PROBES).map(|k| b2 - gap * 8f64.powi(-k)).filter(|&a| b2 - a >= APPROACH_FLOOR * b2));
    let kinds: Vec<OutcomeKind> = probes
        .par_iter()
        .map(|&a| shoot(dp, cfg, a).map(|t| t.outcome.kind()))
        .collect::<Result<_, _>>()?;
    let mut trials: Vec<Trial> = probes.iter().zip(&kinds).map(|(&alpha, &kind)| Trial { alpha, kind }).collect();

    let pair = kinds.windows(2).position(|w| w[0] == OutcomeKind::TurnedBack && w[1] == OutcomeKind::Crossed);
    let Some(pair) = pair else {
        let closest = probes[probes.len() - 1];
        let msg = if kinds.iter().all(|&k| k == OutcomeKind::TurnedBack) {
            format!(
                "every probe up to alpha={closest} turned back; the ground-state height is within {:.1e} of b2={b2}, \
                 closer than double precision shooting resolves (omega near omega_crit)",
                b2 - closest
            )
        } else {
            format!("no turned-back/crossed pair among {} probes in ({u_f}, {b2}): {kinds:?}", probes.len())
        };
        return Err(ShootingError::BracketFailure(msg));
    };
    let (mut lo, mut hi) = (probes[pair], probes[pair + 1]);

    let mut settled = None;
    for _ in 0..cfg.max_bisect {
        let mid = lo + 0.5 * (hi - lo);
        if hi - lo < cfg.alpha_tol || mid <= lo || mid >= hi {
            break;
        }
        let traj = shoot(dp, cfg, mid)?;
        trials.push(Trial { alpha: mid, kind: traj.outcome.kind() });
        match traj.outcome {
            TrajectoryOutcome::TurnedBack { .. } => lo = mid,
            TrajectoryOutcome::Crossed { .. } => hi = mid,
            TrajectoryOutcome::Converged { .. } => {
                settled = Some(mid);
                break;
            }
            TrajectoryOutcome::Inconclusive { reason } => match reason {
                super::InconclusiveReason::Grazing { .. } => {
                    settled = Some(mid);
                    break;
                }
                _ => return Err(ShootingError::Inconclusive { alpha: mid, reason }),
            },
        }
    }

    let alpha = settled.unwrap_or(lo + 0.5 * (hi - lo));
    let mid = shoot(dp, cfg, alpha)?;
    let low = shoot(dp, cfg, lo)?;
    let high = shoot(dp, cfg, hi)?;

    let profile = agreeing_profile(&mid, &low, &high, cfg);
    let r_end = profile.last().map_or(0.0, |s| s.r);
    let (residual, checkpoints) = max_residual(dp, &mid, r_end);

    Ok(GroundState { alpha, profile, bracket: (lo, hi), residual, checkpoints, trials })
}

fn agreeing_profile(mid: &Trajectory, low: &Trajectory, high: &Trajectory, cfg: &ShootingConfig) -> Vec<StateVector> {
    let mut profile = vec![StateVector::new(0.0, mid.alpha, 0.0)];
    for k in 1.. {
        let r = k as f64 * cfg.profile_dr;
        let (Some(s), Some(a), Some(b)) = (mid.state_at(r), low.state_at(r), high.state_at(r)) else { break };
        let prev = profile[profile.len() - 1].u;
        if !(s.u > 0.0 && s.du < 0.0 && s.u < prev) || (a.u - b.u).abs() > cfg.profile_tol * s.u {
            break;
        }
        profile.push(s);
    }
    profile
}

/// Residual of the radial ODE at step midpoints inside `(0, r_end]`, with
/// `u''` from a five-point difference of the dense `u_r` kept inside the step.
fn max_residual(dp: &DoublePowerParams, traj: &Trajectory, r_end: f64) -> (f64, usize) {
    let inside: Vec<_> = traj.steps.iter().filter(|s| s.t1() <= r_end).collect();
    if inside.is_empty() {
        return (0.0, 0);
    }
    let count = inside.len().min(CHECKPOINTS);
    let damping = f64::from(traj.n) - 1.0;
    let mut worst = 0.0_f64;
    for j in 0..count {
        let step = inside[j * inside.len() / count];
        let r = step.t0 + 0.5 * step.h;
        let d = step.h / 8.0;
        let du = |x: f64| step.eval(x)[1];
        let ddu = (-du(r + 2.0 * d) + 8.0 * du(r + d) - 8.0 * du(r - d) + du(r - 2.0 * d)) / (12.0 * d);
        let [u, v] = step.eval(r);
        let f = dp.f_odd(u);
        let res = (ddu + damping / r * v + f).abs() / f.abs().max(1.0);
        worst = worst.max(res);
    }
    (worst, count)
}
