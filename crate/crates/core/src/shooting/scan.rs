use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ground_state::{largest_zero_of_f, smallest_zero_of_primitive};
use super::{shoot, OutcomeKind, ShootingConfig, ShootingError};
use crate::nonlinearity::{existence_holds, DoublePowerParams};

/// Outcome of every shot on a uniform height grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    /// Open interval the grid was placed in.
    pub interval: (f64, f64),
    pub grid: Vec<f64>,
    pub outcomes: Vec<OutcomeKind>,
    /// Adjacent turned-back/crossed switches, in either order.
    pub transitions: usize,
}

impl ScanReport {
    pub fn count(&self, kind: OutcomeKind) -> usize {
        self.outcomes.iter().filter(|&&k| k == kind).count()
    }
}

/// Height interval scanned by [`uniqueness_scan`]: `(u_F, b₂)` when a ground
/// state exists, otherwise `(0, b₂)` as long as `f` has a positive part.
pub fn scan_interval(dp: &DoublePowerParams) -> Result<(f64, f64), ShootingError> {
    let b2 = largest_zero_of_f(dp).ok_or_else(|| ShootingError::BracketFailure("f has no positive zero, nothing to scan".into()))?;
    let lo = if existence_holds(dp) { smallest_zero_of_primitive(dp).unwrap_or(0.0) } else { 0.0 };
    Ok((lo, b2))
}

/// Shoots from `grid_size` equally spaced interior heights of
/// [`scan_interval`] and counts outcome switches. Shots run in parallel; the
/// report is assembled in grid order.
pub fn uniqueness_scan(dp: &DoublePowerParams, cfg: &ShootingConfig, grid_size: usize) -> Result<ScanReport, ShootingError> {
    if grid_size == 0 {
        return Err(ShootingError::InvalidConfig("grid_size must be at least 1".into()));
    }
    cfg.validate(dp)?;
    let (lo, hi) = scan_interval(dp)?;
    let step = (hi - lo) / (grid_size + 1) as f64;
    let grid: Vec<f64> = (1..=grid_size).map(|i| lo + step * i as f64).collect();
    let outcomes: Vec<OutcomeKind> = grid
        .par_iter()
        .map(|&a| shoot(dp, cfg, a).map(|t| t.outcome.kind()))
        .collect::<Result<_, _>>()?;
    let transitions = count_transitions(&outcomes);
    Ok(ScanReport { interval: (lo, hi), grid, outcomes, transitions })
}

pub(crate) fn count_transitions(outcomes: &[OutcomeKind]) -> usize {
    use OutcomeKind::{Crossed, TurnedBack};
    outcomes
        .windows(2)
        .filter(|w| matches!((w[0], w[1]), (TurnedBack, Crossed) | (Crossed, TurnedBack)))
        .count()
}
