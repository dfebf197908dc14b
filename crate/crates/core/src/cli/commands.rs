use std::fs::File;
use std::io::{BufWriter, Write};

use serde_json::json;

use super::args::{ClassifyArgs, Cli, Command, Format, SelfcheckArgs, ShootArgs, SweepArgs, ThresholdsArgs};
use super::selfcheck::{run_selfcheck, selfcheck_exit_code};
use super::sweep::{first_violation, sweep_rows, write_sweep_csv, SweepRow};
use super::{fmt17, Failure, EXIT_BRACKET, EXIT_INVALID, EXIT_NO_EXISTENCE, EXIT_OK, EXIT_SWEEP_VIOLATION};
use crate::nonlinearity::{classify_triple_with_tol, tangent_point, triple_threshold, DoublePowerParams, SignCase, TriplePowerParams, TANGENT_TOL};
use crate::shooting::{find_ground_state, uniqueness_scan, OutcomeKind, ShootingConfig, ShootingError};

type Out<'a> = &'a mut dyn Write;

pub(crate) fn dispatch(cli: Cli, out: Out, err: Out) -> Result<i32, Failure> {
    let show = cli.show_config;
    match cli.command {
        None if show => show_defaults(out),
        None => Err(Failure::invalid("a subcommand is required (see --help)")),
        Some(Command::Thresholds(a)) => thresholds(a, out),
        Some(Command::Classify(a)) => classify(a, out),
        Some(Command::Shoot(a)) => shoot(a, show, out),
        Some(Command::Sweep(a)) => sweep(a, out),
        Some(Command::Selfcheck(a)) => selfcheck(a, out, err),
    }
}

fn emit_json(out: Out, value: &serde_json::Value) -> Result<(), Failure> {
    writeln!(out, "{value}").map_err(Failure::io)
}

fn emit_table(out: Out, rows: &[(&str, String)]) -> Result<(), Failure> {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}").map_err(Failure::io)?;
    }
    Ok(())
}

fn show_defaults(out: Out) -> Result<i32, Failure> {
    let cfg = ShootingConfig::default();
    let value = json!({
        "shooting": {
            "n": cfg.n,
            "rel_tol": cfg.rel_tol,
            "abs_tol": cfg.abs_tol,
            "h0": cfg.h0,
            "r_max": "40/sqrt(omega)",
            "alpha_tol": cfg.alpha_tol,
            "conv_eps": cfg.conv_eps,
            "max_bisect": cfg.max_bisect,
            "max_steps": cfg.max_steps,
            "probe_points": cfg.probe_points,
            "profile_dr": cfg.profile_dr,
            "profile_tol": cfg.profile_tol,
        },
        "classify": { "tangent_tol": TANGENT_TOL },
        "selfcheck": { "seed": 42, "cases": 1000 },
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("static json")).map_err(Failure::io)?;
    Ok(EXIT_OK)
}

fn thresholds(a: ThresholdsArgs, out: Out) -> Result<i32, Failure> {
    let row = SweepRow::compute(a.p, a.q).map_err(Failure::invalid)?;
    match a.output {
        Format::Json => emit_json(out, &serde_json::to_value(row).expect("plain struct"))?,
        Format::Csv => write_sweep_csv(&[row], out).map_err(Failure::invalid)?,
        Format::Text => emit_table(
            out,
            &[
                ("p", row.p.to_string()),
                ("q", row.q.to_string()),
                ("omega_crit", row.omega_crit.to_string()),
                ("eta_crit", row.eta_crit.to_string()),
                ("gap", row.gap.to_string()),
            ],
        )?,
    }
    Ok(EXIT_OK)
}

fn case_name(case: SignCase) -> &'static str {
    match case {
        SignCase::PositivePart => "positive part",
        SignCase::Tangent => "tangent",
        SignCase::StrictlyNegative => "strictly negative",
    }
}

fn classify(a: ClassifyArgs, out: Out) -> Result<i32, Failure> {
    let tp = TriplePowerParams::new(a.a, a.b, a.c, a.p, a.q, a.r).map_err(Failure::invalid)?;
    if !(a.tangent_tol.is_finite() && a.tangent_tol >= 0.0) {
        return Err(Failure::invalid("tangent-tol must be a finite non-negative number"));
    }
    let class = classify_triple_with_tol(&tp, a.tangent_tol);
    let a_crit = triple_threshold(a.b, a.c, a.p, a.q, a.r).map_err(Failure::invalid)?;
    let u_star = tangent_point(&tp);
    let label = class.case.label().to_string();
    match a.output {
        Format::Json | Format::Csv => emit_json(
            out,
            &json!({ "case": label, "description": case_name(class.case), "a_crit": a_crit, "margin": class.margin, "u_star": u_star }),
        )?,
        Format::Text => emit_table(
            out,
            &[
                ("case", format!("{label} ({})", case_name(class.case))),
                ("a_crit", a_crit.to_string()),
                ("margin", class.margin.to_string()),
                ("u_star", u_star.to_string()),
            ],
        )?,
    }
    Ok(EXIT_OK)
}

fn shooting_config(a: &ShootArgs) -> ShootingConfig {
    let d = ShootingConfig::with_dimension(a.n);
    ShootingConfig {
        n: a.n,
        rel_tol: a.rel_tol.unwrap_or(d.rel_tol),
        abs_tol: a.abs_tol.unwrap_or(d.abs_tol),
        h0: a.h0.unwrap_or(d.h0),
        r_max: a.r_max.or(d.r_max),
        alpha_tol: a.alpha_tol.unwrap_or(d.alpha_tol),
        conv_eps: a.conv_eps.unwrap_or(d.conv_eps),
        max_bisect: a.max_bisect.unwrap_or(d.max_bisect),
        max_steps: a.max_steps.unwrap_or(d.max_steps),
        probe_points: a.probe_points.unwrap_or(d.probe_points),
        profile_dr: a.profile_dr.unwrap_or(d.profile_dr),
        profile_tol: a.profile_tol.unwrap_or(d.profile_tol),
    }
}

fn shooting_failure(e: ShootingError) -> Failure {
    let code = match e {
        ShootingError::NoExistence { .. } => EXIT_NO_EXISTENCE,
        ShootingError::BracketFailure(_) | ShootingError::Inconclusive { .. } => EXIT_BRACKET,
        ShootingError::InvalidConfig(_) | ShootingError::Domain { .. } | ShootingError::Nonlinearity(_) => EXIT_INVALID,
    };
    Failure::new(code, e.to_string())
}

fn shoot(a: ShootArgs, show_config: bool, out: Out) -> Result<i32, Failure> {
    let dp = DoublePowerParams::new(a.omega, a.p, a.q).map_err(Failure::invalid)?;
    let cfg = shooting_config(&a);
    cfg.validate(&dp).map_err(shooting_failure)?;
    if show_config {
        let mut v = serde_json::to_value(&cfg).expect("plain struct");
        v["r_max"] = json!(cfg.r_max_for(&dp));
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("plain json")).map_err(Failure::io)?;
        return Ok(EXIT_OK);
    }

    let gs = find_ground_state(&dp, &cfg).map_err(shooting_failure)?;
    let scan = a.scan.map(|size| uniqueness_scan(&dp, &cfg, size)).transpose().map_err(shooting_failure)?;

    if let Some(path) = &a.profile {
        let file = File::create(path).map_err(Failure::io)?;
        let mut w = csv::Writer::from_writer(BufWriter::new(file));
        w.write_record(["r", "u", "du"]).map_err(Failure::invalid)?;
        for s in &gs.profile {
            w.write_record([s.r, s.u, s.du].map(fmt17)).map_err(Failure::invalid)?;
        }
        w.flush().map_err(Failure::io)?;
    }

    let r_end = gs.profile.last().map_or(0.0, |s| s.r);
    match a.output {
        Format::Json | Format::Csv => {
            let mut v = json!({
                "omega": dp.omega(), "p": dp.p(), "q": dp.q(), "n": cfg.n,
                "alpha": gs.alpha,
                "bracket": [gs.bracket.0, gs.bracket.1],
                "residual": gs.residual,
                "checkpoints": gs.checkpoints,
                "profile_points": gs.profile.len(),
                "r_end": r_end,
                "shots": gs.trials.len(),
            });
            if let Some(rep) = &scan {
                v["scan"] = json!({
                    "grid_size": rep.grid.len(),
                    "interval": [rep.interval.0, rep.interval.1],
                    "transitions": rep.transitions,
                    "turned_back": rep.count(OutcomeKind::TurnedBack),
                    "crossed": rep.count(OutcomeKind::Crossed),
                    "converged": rep.count(OutcomeKind::Converged),
                    "inconclusive": rep.count(OutcomeKind::Inconclusive),
                });
            }
            emit_json(out, &v)?;
        }
        Format::Text => {
            let mut rows = vec![
                ("alpha", gs.alpha.to_string()),
                ("bracket", format!("{} {}", gs.bracket.0, gs.bracket.1)),
                ("residual", format!("{:e}", gs.residual)),
                ("checkpoints", gs.checkpoints.to_string()),
                ("profile_points", gs.profile.len().to_string()),
                ("r_end", r_end.to_string()),
                ("shots", gs.trials.len().to_string()),
            ];
            if let Some(rep) = &scan {
                rows.push(("scan_grid", rep.grid.len().to_string()));
                rows.push(("transitions", rep.transitions.to_string()));
                rows.push(("turned_back", rep.count(OutcomeKind::TurnedBack).to_string()));
                rows.push(("crossed", rep.count(OutcomeKind::Crossed).to_string()));
            }
            emit_table(out, &rows)?;
        }
    }
    Ok(EXIT_OK)
}

fn sweep(a: SweepArgs, out: Out) -> Result<i32, Failure> {
    let rows = sweep_rows(&a.p.values(), &a.q.values()).map_err(Failure::invalid)?;
    if let Some(bad) = first_violation(&rows) {
        return Err(Failure::new(
            EXIT_SWEEP_VIOLATION,
            format!("invariant 0 < omega_crit < eta_crit violated at p={}, q={}: omega_crit={}, eta_crit={}", bad.p, bad.q, bad.omega_crit, bad.eta_crit),
        ));
    }
    let mut sink: Box<dyn Write + '_> = match &a.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(Failure::io)?)),
        None => Box::new(out),
    };
    match a.output {
        Format::Json => {
            for r in &rows {
                writeln!(sink, "{}", serde_json::to_string(r).expect("plain struct")).map_err(Failure::io)?;
            }
        }
        Format::Csv | Format::Text => write_sweep_csv(&rows, &mut sink).map_err(Failure::invalid)?,
    }
    sink.flush().map_err(Failure::io)?;
    Ok(EXIT_OK)
}

fn selfcheck(a: SelfcheckArgs, out: Out, err: Out) -> Result<i32, Failure> {
    if a.cases == 0 {
        writeln!(err, "warning: --cases 0 runs no checks; reporting a vacuous pass").map_err(Failure::io)?;
    }
    let results = run_selfcheck(a.seed, a.cases);
    match a.output {
        Format::Json | Format::Csv => {
            for r in &results {
                let mut v = serde_json::to_value(r).expect("plain struct");
                v["passed"] = json!(r.passed());
                emit_json(out, &v)?;
            }
        }
        Format::Text => {
            writeln!(out, "{:<32} {:>7} {:>8} {:>12} {:>10}  status", "check", "cases", "failures", "worst", "tol").map_err(Failure::io)?;
            for r in &results {
                writeln!(
                    out,
                    "{:<32} {:>7} {:>8} {:>12.3e} {:>10.1e}  {}",
                    r.name,
                    r.cases,
                    r.failures,
                    r.worst,
                    r.tol,
                    if r.passed() { "PASS" } else { "FAIL" }
                )
                .map_err(Failure::io)?;
            }
        }
    }
    Ok(selfcheck_exit_code(&results))
}

