use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fmt17;
use crate::nonlinearity::{eta_crit, omega_crit, NonlinearityError};

pub const SWEEP_HEADER: [&str; 5] = ["p", "q", "omega_crit", "eta_crit", "gap"];

/// One `(p, q)` cell of the threshold phase diagram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub p: f64,
    pub q: f64,
    pub omega_crit: f64,
    pub eta_crit: f64,
    /// `eta_crit - omega_crit`; positive on every valid cell.
    pub gap: f64,
}

impl SweepRow {
    pub fn compute(p: f64, q: f64) -> Result<Self, NonlinearityError> {
        let omega_crit = omega_crit(p, q)?;
        let eta_crit = eta_crit(p, q)?;
        Ok(Self { p, q, omega_crit, eta_crit, gap: eta_crit - omega_crit })
    }

    /// `0 < omega_crit < eta_crit`.
    pub fn satisfies_invariant(&self) -> bool {
        self.omega_crit > 0.0 && self.gap > 0.0
    }
}

/// First row breaking [`SweepRow::satisfies_invariant`], if any.
pub fn first_violation(rows: &[SweepRow]) -> Option<&SweepRow> {
    rows.iter().find(|r| !r.satisfies_invariant())
}

/// Rows for every `p < q` cell of the grid, in row-major order (`p` outer).
pub fn sweep_rows(ps: &[f64], qs: &[f64]) -> Result<Vec<SweepRow>, NonlinearityError> {
    let cells: Vec<(f64, f64)> = ps.iter().flat_map(|&p| qs.iter().map(move |&q| (p, q))).filter(|(p, q)| p < q).collect();
    cells.par_iter().map(|&(p, q)| SweepRow::compute(p, q)).collect()
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], sink: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        w.write_record([r.p, r.q, r.omega_crit, r.eta_crit, r.gap].map(fmt17))?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_sweep_csv<R: Read>(source: R) -> csv::Result<Vec<SweepRow>> {
    let mut rd = csv::Reader::from_reader(source);
    rd.deserialize().collect()
}
