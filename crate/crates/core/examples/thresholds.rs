//! Existence and uniqueness thresholds for a few exponent pairs.
//!
//! A ground state of `Δu - ωu + u^p - u^q = 0` exists iff `ω < omega_crit`;
//! the uniqueness criterion holds iff `ω < eta_crit`.

use doublepower::nonlinearity::{eta_crit, omega_crit};

fn main() {
    println!("{:>5} {:>5} {:>12} {:>12} {:>12}", "p", "q", "omega_crit", "eta_crit", "gap");
    for (p, q) in [(2.0, 3.0), (3.0, 5.0), (1.5, 2.5), (2.0, 7.0), (5.0, 9.0), (1.1, 19.0)] {
        let w = omega_crit(p, q).unwrap();
        let e = eta_crit(p, q).unwrap();
        println!("{p:>5} {q:>5} {w:>12.8} {e:>12.8} {:>12.3e}", e - w);
    }

    match omega_crit(3.0, 3.0) {
        Ok(_) => unreachable!(),
        Err(e) => println!("\n(3, 3): {e}"),
    }
}
