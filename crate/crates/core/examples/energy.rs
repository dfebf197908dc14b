//! Energy `E = u'²/2 + F(u)` along shots: conserved on the line, dissipated
//! by the `(n-1)/r·u'` term in higher dimensions.

use doublepower::nonlinearity::DoublePowerParams;
use doublepower::shooting::{energy, shoot, ShootingConfig};

fn main() {
    let dp = DoublePowerParams::new(0.1, 3.0, 5.0).unwrap();
    for (n, alpha) in [(1, 0.6), (1, 0.45), (3, 0.8), (3, 0.93)] {
        let cfg = ShootingConfig::with_dimension(n);
        let traj = shoot(&dp, &cfg, alpha).unwrap();
        let es: Vec<f64> = traj.step_states().map(|s| energy(&dp, &s)).collect();
        let drift = es.iter().map(|e| (e - es[0]).abs()).fold(0.0, f64::max);
        let rise = es.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max);
        println!(
            "n = {n}  alpha = {alpha:<5} {:<12} at r = {:6.3}  E0 = {:+.6e}  E_end = {:+.6e}  max drift {drift:.1e}  max step rise {rise:+.1e}",
            traj.outcome.kind().to_string(),
            traj.end_r,
            es[0],
            es[es.len() - 1],
        );
    }
}
