use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::nonlinearity::{
    classify_triple, eta_crit, omega_crit, tangent_point, tilde_triple, triple_threshold, DoublePowerParams, SignCase,
    TriplePowerParams,
};
use crate::shooting::{find_ground_state, smallest_zero_of_primitive, ShootingConfig};

/// Margin outside which duality is checked.
const DUALITY_BAND: f64 = 1e-6;
const CONSISTENCY_TOL: f64 = 1e-12;
const COLLOCATION_TOL: f64 = 1e-10;
const ONE_D_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Largest observed error, in the units of `tol`.
    pub worst: f64,
    pub tol: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    result: CheckResult,
}

impl Tally {
    fn new(name: &'static str, tol: f64) -> Self {
        Self { result: CheckResult { name, cases: 0, failures: 0, worst: 0.0, tol } }
    }

    fn record(&mut self, err: f64, ok: bool) {
        self.result.cases += 1;
        if !(ok && err <= self.result.tol) {
            self.result.failures += 1;
        }
        if err.is_nan() {
            self.result.worst = f64::NAN;
        } else {
            self.result.worst = self.result.worst.max(err);
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// `1 < p < q ≤ 20` with `(p-1)/(q-p) ≤ 50`, which keeps the threshold
/// exponent (and so the conditioning of the power) bounded.
fn random_exponent_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let p = rng.gen_range(1.001..19.5);
    let q = rng.gen_range(p + (p - 1.0) / 50.0 + 1e-3..=20.0);
    (p, q)
}

fn random_shape(rng: &mut ChaCha8Rng) -> (f64, f64, f64, f64, f64) {
    let b = 10f64.powf(rng.gen_range(-1.0..1.0));
    let c = 10f64.powf(rng.gen_range(-1.0..1.0));
    let p = rng.gen_range(0.5..3.0);
    let q = p + rng.gen_range(0.2..3.0);
    let r = q + rng.gen_range(0.2..3.0);
    (b, c, p, q, r)
}

fn threshold_consistency(rng: &mut ChaCha8Rng, cases: usize) -> CheckResult {
    let mut t = Tally::new("threshold consistency", CONSISTENCY_TOL);
    for _ in 0..cases {
        let (p, q) = random_exponent_pair(rng);
        let w = omega_crit(p, q).unwrap_or(f64::NAN);
        let e = eta_crit(p, q).unwrap_or(f64::NAN);
        let w2 = 2.0 * triple_threshold(1.0 / (p + 1.0), 1.0 / (q + 1.0), 2.0, p + 1.0, q + 1.0).unwrap_or(f64::NAN);
        let e2 = triple_threshold(1.0, 1.0, 1.0, p, q).unwrap_or(f64::NAN);
        t.record(rel(w2, w).max(rel(e2, e)), 0.0 < w && w < e);
    }
    t.result
}

fn tilde_duality(rng: &mut ChaCha8Rng, cases: usize) -> CheckResult {
    let mut t = Tally::new("tilde duality", 0.0);
    while t.result.cases < cases {
        let (b, c, p, q, r) = random_shape(rng);
        let a = triple_threshold(b, c, p, q, r).unwrap() * rng.gen_range(-2.0f64..2.0).exp();
        let tp = TriplePowerParams::new(a, b, c, p, q, r).unwrap();
        let class = classify_triple(&tp);
        if class.margin.abs() <= DUALITY_BAND {
            continue;
        }
        let ok = tilde_triple(&tp).map(|d| classify_triple(&d).case == class.case.dual()).unwrap_or(false);
        t.record(if ok { 0.0 } else { 1.0 }, ok);
    }
    t.result
}

fn tangency_collocation(rng: &mut ChaCha8Rng, cases: usize) -> CheckResult {
    let mut t = Tally::new("tangency collocation", COLLOCATION_TOL);
    for _ in 0..cases {
        let (b, c, p, q, r) = random_shape(rng);
        let a = triple_threshold(b, c, p, q, r).unwrap();
        let tp = TriplePowerParams::new(a, b, c, p, q, r).unwrap();
        let u = tangent_point(&tp);
        let scale = |g: &TriplePowerParams| {
            let [a, b, c] = g.coefficients();
            let [p, q, r] = g.exponents();
            a * u.powf(p) + b * u.powf(q) + c * u.powf(r)
        };
        let Ok(tilde) = tilde_triple(&tp) else {
            t.record(f64::INFINITY, false);
            continue;
        };
        let err_f = tp.eval(u).map(|v| v.abs() / scale(&tp)).unwrap_or(f64::INFINITY);
        let err_t = tilde.eval(u).map(|v| v.abs() / scale(&tilde)).unwrap_or(f64::INFINITY);
        t.record(err_f.max(err_t), classify_triple(&tp).case == SignCase::Tangent);
    }
    t.result
}

fn one_dimensional_oracle() -> CheckResult {
    let mut t = Tally::new("n=1 ground state = zero of F", ONE_D_TOL);
    let cfg = ShootingConfig::with_dimension(1);
    let mut sets = vec![(0.1, 3.0, 5.0)];
    for (p, q) in [(2.0, 4.0), (1.5, 3.0)] {
        sets.push((0.5 * omega_crit(p, q).unwrap(), p, q));
    }
    for (w, p, q) in sets {
        let dp = DoublePowerParams::new(w, p, q).unwrap();
        let reference = smallest_zero_of_primitive(&dp);
        match (find_ground_state(&dp, &cfg), reference) {
            (Ok(gs), Some(u_f)) => t.record((gs.alpha - u_f).abs(), true),
            _ => t.record(f64::INFINITY, false),
        }
    }
    t.result
}

/// Exit status for a finished suite: 0 when every check passed, 1 otherwise.
pub fn selfcheck_exit_code(results: &[CheckResult]) -> i32 {
    if results.iter().all(CheckResult::passed) {
        super::EXIT_OK
    } else {
        super::EXIT_SELFCHECK_FAILED
    }
}

/// Runs every check; deterministic in `seed`. `cases = 0` runs nothing.
pub fn run_selfcheck(seed: u64, cases: usize) -> Vec<CheckResult> {
    if cases == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        threshold_consistency(&mut rng, cases),
        tilde_duality(&mut rng, cases),
        tangency_collocation(&mut rng, cases),
        one_dimensional_oracle(),
    ]
}
