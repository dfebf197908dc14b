//! The tilde transform `g ↦ (u·g')'·g - u·g'²` maps triple powers to triple
//! powers and swaps "has a positive part" with "strictly negative".

use doublepower::nonlinearity::{
    classify_triple, eval_f_tilde, eval_primitive_tilde, tilde_triple, DoublePowerParams, TriplePowerParams,
};

fn show(t: &TriplePowerParams) -> String {
    let ([a, b, c], [p, q, r]) = (t.coefficients(), t.exponents());
    format!("-{a}·u^{p} + {b}·u^{q} - {c}·u^{r}")
}

fn main() {
    for a in [0.1, 0.25, 0.4] {
        let f = TriplePowerParams::new(a, 1.0, 1.0, 1.0, 2.0, 3.0).unwrap();
        let ft = tilde_triple(&f).unwrap();
        println!("f  = {:<32} case {}", show(&f), classify_triple(&f).case.label());
        println!("f~ = {:<32} case {}\n", show(&ft), classify_triple(&ft).case.label());
    }

    // For the double power, F~ < 0 everywhere exactly when a ground state exists.
    let dp = DoublePowerParams::new(0.1, 3.0, 5.0).unwrap();
    for u in [0.1, 0.5, 1.0, 2.0] {
        println!(
            "u = {u:<4} f~ = {:+.6e}  F~ = {:+.6e}",
            eval_f_tilde(&dp, u).unwrap(),
            eval_primitive_tilde(&dp, u).unwrap()
        );
    }
}
