//! Ground state of `u'' + (n-1)/r·u' - ωu + u³ - u⁵ = 0` by shooting.
//!
//! `cargo run --example ground_state -- [omega] [n] [profile.csv]`

use std::env;

use doublepower::cli::fmt17;
use doublepower::nonlinearity::DoublePowerParams;
use doublepower::shooting::{find_ground_state, largest_zero_of_f, smallest_zero_of_primitive, ShootingConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = env::args().skip(1).collect();
    let omega: f64 = args.first().map_or(Ok(0.1), |s| s.parse())?;
    let n: u32 = args.get(1).map_or(Ok(3), |s| s.parse())?;

    let dp = DoublePowerParams::new(omega, 3.0, 5.0)?;
    let cfg = ShootingConfig::with_dimension(n);
    let gs = find_ground_state(&dp, &cfg)?;

    println!("height window  ({:.9}, {:.9})", smallest_zero_of_primitive(&dp).unwrap(), largest_zero_of_f(&dp).unwrap());
    println!("alpha          {:.15}", gs.alpha);
    println!("bracket width  {:.1e}", gs.bracket.1 - gs.bracket.0);
    println!("residual       {:.2e} over {} checkpoints", gs.residual, gs.checkpoints);
    println!("shots          {}", gs.trials.len());
    let last = gs.profile.last().unwrap();
    println!("profile        {} points, u({:.2}) = {:.3e}", gs.profile.len(), last.r, last.u);

    for s in gs.profile.iter().step_by(gs.profile.len() / 10) {
        println!("  r = {:6.2}  u = {:.6e}  u' = {:+.6e}", s.r, s.u, s.du);
    }

    if let Some(path) = args.get(2) {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["r", "u", "du"])?;
        for s in &gs.profile {
            w.write_record([s.r, s.u, s.du].map(fmt17))?;
        }
        w.flush()?;
        println!("wrote {path}");
    }
    Ok(())
}
