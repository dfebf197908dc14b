//! Threshold table over a `(p, q)` grid as CSV on stdout, ready for plotting.

use doublepower::cli::{sweep_rows, write_sweep_csv, RangeSpec};

fn main() {
    let ps = "1.25:6:20".parse::<RangeSpec>().unwrap().values();
    let qs = "1.5:10:35".parse::<RangeSpec>().unwrap().values();
    let rows = sweep_rows(&ps, &qs).unwrap();
    let narrowest = rows.iter().min_by(|a, b| (a.gap / a.eta_crit).total_cmp(&(b.gap / b.eta_crit))).unwrap();
    eprintln!("{} cells; narrowest relative gap at p={:.3}, q={:.3}", rows.len(), narrowest.p, narrowest.q);
    write_sweep_csv(&rows, std::io::stdout().lock()).unwrap();
}
