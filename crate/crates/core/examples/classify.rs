//! Sign classes of `-a·u^p + b·u^q - c·u^r` as `a` moves across `a_crit`.

use doublepower::nonlinearity::{classify_triple, tangent_point, triple_threshold, TriplePowerParams};

fn main() {
    let (b, c, p, q, r) = (1.0, 1.0, 1.0, 2.0, 3.0);
    let a_crit = triple_threshold(b, c, p, q, r).unwrap();
    println!("a_crit = {a_crit}");

    for a in [0.1, 0.2, 0.25, 0.25 * (1.0 + 1e-12), 0.3, 1.0] {
        let tp = TriplePowerParams::new(a, b, c, p, q, r).unwrap();
        let class = classify_triple(&tp);
        let u = tangent_point(&tp);
        println!(
            "a = {a:<20} case {} margin {:+.3e}  f(u*={u}) = {:+.3e}",
            class.case.label(),
            class.margin,
            tp.eval(u).unwrap()
        );
    }

    // non-integer exponents and extreme coefficients go through the log domain
    let a_crit = triple_threshold(1e200, 1e-200, 1.0, 1.1, 2.1).unwrap();
    println!("\nthreshold with b = 1e200, c = 1e-200: {a_crit:e}");
}
