use std::fmt;

use serde::{Deserialize, Serialize};

use super::{series_start, start_offset, ShootingConfig, ShootingError, StateVector};
use crate::nonlinearity::DoublePowerParams;
use crate::ode::{self, Control, DenseStep, Options, Termination, Tolerances};
use crate::roots::bisect;

const MAX_STEP: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InconclusiveReason {
    /// Step budget exhausted before any event or the horizon.
    StepLimit { r: f64 },
    NonFinite { r: f64 },
    StepUnderflow { r: f64 },
    /// `u = 0` and `u_r = 0` located at the same radius.
    Grazing { r: f64 },
    /// Horizon reached without decaying below `conv_eps`.
    HorizonReached { u: f64, du: f64 },
}

impl fmt::Display for InconclusiveReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::StepLimit { r } => write!(f, "step limit reached at r={r}"),
            Self::NonFinite { r } => write!(f, "non-finite state near r={r}"),
            Self::StepUnderflow { r } => write!(f, "step size underflow at r={r}"),
            Self::Grazing { r } => write!(f, "grazing u=0 and u_r=0 at r={r}"),
            Self::HorizonReached { u, du } => write!(f, "horizon reached with u={u}, u_r={du}"),
        }
    }
}

/// How a single shot ended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TrajectoryOutcome {
    /// `u` reached zero with `u_r < 0`: overshoot.
    Crossed { r_cross: f64 },
    /// `u_r` vanished while `u > 0`: undershoot.
    TurnedBack { r_turn: f64, u_at_turn: f64 },
    /// Decayed below `conv_eps` at the horizon.
    Converged { profile: Vec<StateVector> },
    Inconclusive { reason: InconclusiveReason },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OutcomeKind {
    Crossed,
    TurnedBack,
    Converged,
    Inconclusive,
}

impl TrajectoryOutcome {
    pub fn kind(&self) -> OutcomeKind {
        match self {
            Self::Crossed { .. } => OutcomeKind::Crossed,
            Self::TurnedBack { .. } => OutcomeKind::TurnedBack,
            Self::Converged { .. } => OutcomeKind::Converged,
            Self::Inconclusive { .. } => OutcomeKind::Inconclusive,
        }
    }
}

impl fmt::Display for OutcomeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Crossed => "crossed",
            Self::TurnedBack => "turned_back",
            Self::Converged => "converged",
            Self::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

/// A full shot: every accepted integrator step plus the classified outcome.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub alpha: f64,
    pub n: u32,
    pub start: StateVector,
    pub steps: Vec<DenseStep<2>>,
    /// Radius where the shot stops: the event radius or the horizon.
    pub end_r: f64,
    pub outcome: TrajectoryOutcome,
    f_alpha: f64,
}

impl Trajectory {
    /// State at radius `r` in `[0, end_r]`. Radii below the start offset use
    /// the series expansion about the origin.
    pub fn state_at(&self, r: f64) -> Option<StateVector> {
        if !(r >= 0.0 && r <= self.end_r) {
            return None;
        }
        if r < self.start.r || self.steps.is_empty() {
            let n = f64::from(self.n);
            return Some(StateVector::new(r, self.alpha - self.f_alpha * r * r / (2.0 * n), -self.f_alpha * r / n));
        }
        let idx = self.steps.partition_point(|s| s.t0 <= r).saturating_sub(1);
        let y = self.steps[idx].eval(r);
        Some(StateVector::new(r, y[0], y[1]))
    }

    /// The start state followed by the end state of every accepted step.
    pub fn step_states(&self) -> impl Iterator<Item = StateVector> + '_ {
        std::iter::once(self.start).chain(self.steps.iter().map(|s| StateVector::new(s.t1(), s.y1[0], s.y1[1])))
    }

    /// Samples `r = 0, dr, 2dr, …` up to `end_r`.
    pub fn sample(&self, dr: f64) -> Vec<StateVector> {
        let count = (self.end_r / dr).floor() as usize;
        (0..=count).filter_map(|k| self.state_at(k as f64 * dr)).collect()
    }
}

fn locate(step: &DenseStep<2>, component: usize, lo: f64, hi: f64) -> f64 {
    let xtol = 1e-14 * hi.abs().max(1.0);
    bisect(|r| step.eval(r)[component], lo, hi, xtol, 200).unwrap_or(hi)
}

enum Event {
    Cross(f64),
    Turn(f64, f64),
    Graze(f64),
}

fn detect(step: &DenseStep<2>) -> Option<Event> {
    let [u0, d0] = step.y0;
    let [u1, d1] = step.y1;
    let (t0, t1) = (step.t0, step.t1());
    let crossed = u0 > 0.0 && u1 <= 0.0;
    let turned = (d0 < 0.0 && d1 >= 0.0) || (d0 > 0.0 && d1 <= 0.0);
    let r_cross = crossed.then(|| locate(step, 0, t0, t1));
    let r_turn = turned.then(|| locate(step, 1, t0, t1));
    match (r_cross, r_turn) {
        (None, None) => None,
        (Some(rc), None) => Some(Event::Cross(rc)),
        (Some(rc), Some(rt)) => {
            if (rc - rt).abs() <= 1e-10 * rc.max(1.0) {
                Some(Event::Graze(rc))
            } else if rc < rt {
                Some(Event::Cross(rc))
            } else {
                Some(Event::Turn(rt, step.eval(rt)[0]))
            }
        }
        (None, Some(rt)) => {
            let u_turn = step.eval(rt)[0];
            if u_turn > 0.0 {
                Some(Event::Turn(rt, u_turn))
            } else {
                // dipped below zero and came back inside one step
                Some(Event::Cross(locate(step, 0, t0, rt)))
            }
        }
    }
}

/// Integrates the radial ODE from `u(0) = α` and records every step.
pub fn shoot(dp: &DoublePowerParams, cfg: &ShootingConfig, alpha: f64) -> Result<Trajectory, ShootingError> {
    cfg.validate(dp)?;
    let h = start_offset(dp, cfg, alpha);
    let start = series_start(dp, cfg.n, alpha, h)?;
    let r_max = cfg.r_max_for(dp);
    let damping = f64::from(cfg.n) - 1.0;
    let opts = Options {
        tol: Tolerances { rel: cfg.rel_tol, abs: cfg.abs_tol },
        h_init: None,
        h_max: MAX_STEP,
        max_steps: cfg.max_steps,
    };

    let mut steps: Vec<DenseStep<2>> = Vec::new();
    let mut event = None;
    let summary = ode::integrate(
        |r, y: &[f64; 2]| [y[1], -damping / r * y[1] - dp.f_odd(y[0])],
        start.r,
        [start.u, start.du],
        r_max,
        &opts,
        |step| {
            steps.push(step.clone());
            match detect(step) {
                Some(e) => {
                    event = Some(e);
                    Control::Stop
                }
                None => Control::Continue,
            }
        },
    );

    let (outcome, end_r) = match (event, summary.termination) {
        (Some(Event::Cross(r)), _) => (TrajectoryOutcome::Crossed { r_cross: r }, r),
        (Some(Event::Turn(r, u)), _) => (TrajectoryOutcome::TurnedBack { r_turn: r, u_at_turn: u }, r),
        (Some(Event::Graze(r)), _) => (TrajectoryOutcome::Inconclusive { reason: InconclusiveReason::Grazing { r } }, r),
        (None, Termination::ReachedEnd) => {
            let [u, du] = summary.y;
            if u > 0.0 && u < cfg.conv_eps && du.abs() < cfg.conv_eps && du < 0.0 {
                (TrajectoryOutcome::Converged { profile: Vec::new() }, summary.t)
            } else {
                (TrajectoryOutcome::Inconclusive { reason: InconclusiveReason::HorizonReached { u, du } }, summary.t)
            }
        }
        (None, Termination::StepLimit) => (TrajectoryOutcome::Inconclusive { reason: InconclusiveReason::StepLimit { r: summary.t } }, summary.t),
        (None, Termination::NonFinite { t }) => (TrajectoryOutcome::Inconclusive { reason: InconclusiveReason::NonFinite { r: t } }, t),
        (None, Termination::StepUnderflow { t }) => (TrajectoryOutcome::Inconclusive { reason: InconclusiveReason::StepUnderflow { r: t } }, t),
        (None, Termination::Stopped) => unreachable!("observer only stops on events"),
    };

    let mut traj = Trajectory { alpha, n: cfg.n, start, steps, end_r, outcome, f_alpha: dp.f_odd(alpha) };
    if traj.outcome.kind() == OutcomeKind::Converged {
        traj.outcome = TrajectoryOutcome::Converged { profile: traj.sample(cfg.profile_dr) };
    }
    Ok(traj)
}

/// Classifies the shot from height `α`. Fails only on invalid input.
pub fn integrate_trajectory(dp: &DoublePowerParams, cfg: &ShootingConfig, alpha: f64) -> Result<TrajectoryOutcome, ShootingError> {
    shoot(dp, cfg, alpha).map(|t| t.outcome)
}
