//! Outcomes of shots on a height grid: below the ground state they turn
//! back, above it they cross zero. One switch is consistent with uniqueness.

use doublepower::nonlinearity::DoublePowerParams;
use doublepower::shooting::{uniqueness_scan, OutcomeKind, ShootingConfig};

fn runs(kinds: &[OutcomeKind]) -> String {
    let mut out = Vec::new();
    let mut i = 0;
    while i < kinds.len() {
        let j = kinds[i..].iter().position(|k| *k != kinds[i]).map_or(kinds.len(), |d| i + d);
        out.push(format!("{}×{}", j - i, kinds[i]));
        i = j;
    }
    out.join(" → ")
}

fn main() {
    let cfg = ShootingConfig::default();
    for omega in [0.05, 0.1, 0.15, 0.2] {
        let dp = DoublePowerParams::new(omega, 3.0, 5.0).unwrap();
        let rep = uniqueness_scan(&dp, &cfg, 200).unwrap();
        println!(
            "omega = {omega:<5} heights in ({:.4}, {:.4}): transitions {}  [{}]",
            rep.interval.0,
            rep.interval.1,
            rep.transitions,
            runs(&rep.outcomes)
        );
    }
}
