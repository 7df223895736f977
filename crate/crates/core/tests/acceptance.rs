//! One pass/fail line per acceptance criterion.
//!
//! Criterion 4a compares against `(eps^4 + 1) / (8 eps^2)`, which is the
//! torsion functional evaluated with the root-mean-square perimeter
//! approximation rather than the exact ellipse perimeter. With the exact
//! perimeter the two differ by 12% at eps = 1/2, so 4a is expected to fail
//! and is listed in `KNOWN_UNATTAINABLE`; every other line must pass.

mod common;

use common::{j0_first_zero, outer_parallel_area, report_line, zoo};
use hessian_polya::bodies::{make_family, ConvexBody, Family};
use hessian_polya::functionals::{Constants, TheoremReport, Verdict};
use hessian_polya::profile::compute_profile;
use hessian_polya::solver::{self, Problem, SolverConfig};
use hessian_polya::sweep::{evaluate, run_sweep, SweepSpec};
use std::f64::consts::PI;
use std::time::Instant;

const KNOWN_UNATTAINABLE: [&str; 1] = ["4a"];

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn criterion_1() -> Vec<(String, bool)> {
    let disk = ConvexBody::ball(2, 1.0).unwrap();
    let cfg = SolverConfig { h: Some(1.0 / 128.0), companion: false, ..Default::default() };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let start = Instant::now();
    let r = pool.install(|| solver::solve(&disk, 2, Problem::Torsion, &cfg));
    let secs = start.elapsed().as_secs_f64();
    let target = PI * PI / 16.0;
    let ok = match &r {
        Ok(r) => {
            let e = rel(r.value, target);
            report_line("1", e < 0.01 && secs < 120.0, &format!("T2(disk) = {:.6} vs {target:.6}, rel {e:.2e}, {secs:.1} s", r.value))
        }
        Err(e) => report_line("1", false, &format!("solve failed: {e}")),
    };
    vec![("1".into(), ok)]
}

fn criterion_2() -> Vec<(String, bool)> {
    let disk = ConvexBody::ball(2, 1.0).unwrap();
    let cfg = SolverConfig { h: Some(1.0 / 128.0), companion: false, ..Default::default() };
    // -Delta v = 1 on the unit disk: v = (1 - r^2)/4, int v = pi/8
    let t_ref = 2.0 * PI * (0.5 - 0.25) / 4.0;
    let l_ref = j0_first_zero().powi(2);
    let t = solver::solve(&disk, 1, Problem::Torsion, &cfg).map(|r| r.value);
    let l = solver::solve(&disk, 1, Problem::Eigen, &cfg).map(|r| r.value);
    let ok = match (t, l) {
        (Ok(t), Ok(l)) => {
            let (et, el) = (rel(t, t_ref), rel(l, l_ref));
            report_line(
                "2",
                et < 0.005 && el < 0.005,
                &format!("T1 = {t:.6} (rel {et:.2e}), lambda1 = {l:.5} vs {l_ref:.5} (rel {el:.2e})"),
            )
        }
        (t, l) => report_line("2", false, &format!("solve failed: {:?} {:?}", t.err(), l.err())),
    };
    vec![("2".into(), ok)]
}

fn criterion_3() -> Vec<(String, bool)> {
    let lengths: Vec<f64> = (2..=6).map(|i| 0.5f64.powi(i)).collect();
    let members = make_family(&Family::ThinningCylinders { dim: 2, lengths }).unwrap();
    let mut spec = SweepSpec::new(members, vec![1]);
    spec.closed_forms = false;
    spec.eigen = false;
    let out = run_sweep(&spec).unwrap();
    let vals: Vec<f64> = out.rows.iter().filter_map(|r| r.report.as_ref()?.functional_torsion).collect();
    let decreasing = vals.len() == 5 && vals.windows(2).all(|w| w[1] < w[0]);
    let fit = out.summary[0].fit.clone();
    let limit = fit.as_ref().and_then(|f| f.limit);
    let ok = decreasing && limit.is_some_and(|l| rel(l, 1.0 / 6.0) < 0.02);
    let line = report_line(
        "3",
        ok,
        &format!("functional (i) = {:?}, extrapolated limit {:?} vs 1/6", vals.iter().map(|v| format!("{v:.5}")).collect::<Vec<_>>(), limit),
    );
    vec![("3".into(), line)]
}

fn criterion_4() -> Vec<(String, bool)> {
    let mut out = Vec::new();
    // 4a: closed-form torsion with the exact perimeter against the quoted formula
    let eps = [1.0, 0.5, 0.25];
    let members = make_family(&Family::Ellipses { eps: eps.to_vec() }).unwrap();
    let mut worst: f64 = 0.0;
    let mut detail = Vec::new();
    for m in &members {
        let r = evaluate(&m.label, &m.body, 2, &SolverConfig::default(), 257, true, false).unwrap();
        let f = r.functional_torsion.unwrap();
        let e = m.param;
        let quoted = (e.powi(4) + 1.0) / (8.0 * e * e);
        worst = worst.max(rel(f, quoted));
        detail.push(format!("eps {e}: {f:.5} vs {quoted:.5}"));
    }
    out.push((
        "4a".into(),
        report_line("4a", worst < 0.02, &format!("{} (worst rel {worst:.3}; quoted form uses an approximate perimeter)", detail.join(", "))),
    ));

    // 4b: divergence along eps -> 0
    let members = make_family(&Family::Ellipses { eps: vec![1.0, 0.5, 0.25, 0.125] }).unwrap();
    let mut spec = SweepSpec::new(members, vec![2]);
    spec.eigen = false;
    let sweep = run_sweep(&spec).unwrap();
    let fit = sweep.summary[0].fit.clone().unwrap();
    out.push((
        "4b".into(),
        report_line("4b", fit.diverging, &format!("diverging = {}, tail log-log slope {:.3}", fit.diverging, fit.tail_slope)),
    ));

    // 4c: solver at eps = 1/2
    let e = ConvexBody::ellipse(2.0, 0.5).unwrap();
    let cfg = SolverConfig { companion: false, ..Default::default() };
    let ok = match solver::solve(&e, 2, Problem::Torsion, &cfg) {
        Ok(r) => {
            let d = rel(r.value, PI * PI / 16.0);
            report_line("4c", d < 0.02, &format!("solver T2(E_1/2) = {:.6}, rel {d:.2e}", r.value))
        }
        Err(err) => report_line("4c", false, &format!("solve failed: {err}")),
    };
    out.push(("4c".into(), ok));
    out
}

/// Reports for every zoo body: PDE-backed for (2,1), (2,2), (3,1) and
/// bound-only for (3,2), (3,3).
fn zoo_reports() -> Vec<Result<TheoremReport, String>> {
    let cfg = SolverConfig::default();
    let mut reps = Vec::new();
    for (label, body) in zoo() {
        for k in 1..=body.dim() {
            reps.push(evaluate(&label, &body, k, &cfg, 257, false, true).map_err(|e| format!("{label} k={k}: {e}")));
        }
    }
    reps
}

fn criterion_5(reports: &[Result<TheoremReport, String>]) -> Vec<(String, bool)> {
    let bodies = zoo().len();
    let mut failures = Vec::new();
    let (mut pass, mut within) = (0, 0);
    for r in reports {
        match r {
            Ok(rep) => {
                for c in &rep.checks {
                    match c.verdict {
                        Verdict::Pass => pass += 1,
                        Verdict::WithinError => within += 1,
                        Verdict::Fail => failures.push(format!("{} k={} {} slack {:.3e}", rep.body, rep.k, c.name, c.slack)),
                    }
                }
            }
            Err(e) => failures.push(e.clone()),
        }
    }
    let ok = bodies >= 20 && failures.is_empty();
    let line = report_line(
        "5",
        ok,
        &format!(
            "{bodies} bodies, {} reports, {pass} checks pass, {within} within error, failures: {:?}",
            reports.len(),
            failures
        ),
    );
    vec![("5".into(), line)]
}

fn criterion_6(reports: &[Result<TheoremReport, String>]) -> Vec<(String, bool)> {
    let mut bad = Vec::new();
    let mut count = 0;
    for rep in reports.iter().flatten() {
        if let Some(t) = &rep.torsion {
            count += 1;
            if rep.web.certified > 1.02 * t.value {
                bad.push(format!("{} k={}: web {:.5e} vs T {:.5e}", rep.body, rep.k, rep.web.certified, t.value));
            }
        }
    }
    let disk = ConvexBody::ball(2, 1.0).unwrap();
    let w = compute_profile(&disk, 257).unwrap().web_lower_bound(1).unwrap().value;
    // int_{-1}^0 (pi (1+t)^2)^2 dt / (2 W_1) with W_1 = pi
    let w_ref = PI * PI / 5.0 / (2.0 * PI);
    let disk_ok = rel(w, w_ref) < 1e-3 && w <= PI / 8.0;
    let ok = bad.is_empty() && count > 0 && disk_ok;
    vec![(
        "6".into(),
        report_line("6", ok, &format!("{count} PDE-backed pairs, violations {bad:?}; disk web {w:.8} vs pi/10 {w_ref:.8}")),
    )]
}

fn criterion_7() -> Vec<(String, bool)> {
    let cfg = SolverConfig { h: Some(1.0 / 64.0), companion: false, ..Default::default() };
    let bases = [("disk", ConvexBody::ball(2, 1.0).unwrap()), ("square", ConvexBody::cuboid(vec![1.0, 1.0]).unwrap())];
    let mut worst: f64 = 0.0;
    let mut errors = Vec::new();
    for (name, base) in &bases {
        for k in [1, 2] {
            for problem in [Problem::Torsion, Problem::Eigen] {
                let v1 = match solver::solve(base, k, problem, &cfg) {
                    Ok(r) => r.value,
                    Err(e) => {
                        errors.push(format!("{name} k={k}: {e}"));
                        continue;
                    }
                };
                for t in [0.5f64, 2.0] {
                    let expect = match problem {
                        Problem::Torsion => t.powi((k * 4) as i32),
                        Problem::Eigen => t.powi(-2 * k as i32),
                    };
                    match solver::solve(&base.scaled(t).unwrap(), k, problem, &cfg) {
                        Ok(r) => worst = worst.max(rel(r.value / v1, expect)),
                        Err(e) => errors.push(format!("{name} t={t} k={k}: {e}")),
                    }
                }
            }
        }
    }
    let ok = errors.is_empty() && worst < 0.03;
    vec![("7".into(), report_line("7", ok, &format!("worst scaling deviation {worst:.2e} at fixed h = 1/64; errors {errors:?}")))]
}

fn criterion_8() -> Vec<(String, bool)> {
    let polys = make_family(&Family::RandomPolygons { count: 20, points: 15, inner: 0.3, seed: 99 }).unwrap();
    let mut worst: f64 = 0.0;
    for m in &polys {
        let ConvexBody::Polygon(p) = &m.body else { unreachable!() };
        for rho in [0.05, 0.5, 3.0] {
            let direct = outer_parallel_area(p.vertices(), rho);
            let steiner = m.body.steiner_volume(rho).unwrap();
            worst = worst.max(rel(steiner, direct));
        }
    }
    let c21 = Constants::new(2, 1);
    let mut cmax: f64 = 0.0;
    for n in 2..=8 {
        for k in 1..=n {
            let c = Constants::new(n, k);
            cmax = cmax.max(rel(c.c1, c.c1_composed()));
        }
    }
    let consts = [
        (c21.polya_lower, 1.0 / 6.0),
        (c21.c2, 1.0 / 10368.0),
        (Constants::a(2), 1.0 / 3.0),
        (Constants::c_n(2), PI),
        (Constants::a(3), 1.0 / (2.0 * 3f64.sqrt())),
        (c21.eigen_upper, 12.0),
    ];
    let cworst = consts.iter().fold(cmax, |m, (a, b)| m.max((a - b).abs()));
    let ok = worst < 1e-9 && cworst < 1e-12;
    vec![(
        "8".into(),
        report_line("8", ok, &format!("Steiner vs direct offset worst rel {worst:.2e} on 20 polygons; constants worst {cworst:.2e}")),
    )]
}

fn main() {
    let start = Instant::now();
    let mut results = Vec::new();
    results.extend(criterion_1());
    results.extend(criterion_2());
    results.extend(criterion_3());
    results.extend(criterion_4());
    let reports = zoo_reports();
    results.extend(criterion_5(&reports));
    results.extend(criterion_6(&reports));
    results.extend(criterion_7());
    results.extend(criterion_8());

    let unexpected: Vec<&String> =
        results.iter().filter(|(id, ok)| !ok && !KNOWN_UNATTAINABLE.contains(&id.as_str())).map(|(id, _)| id).collect();
    let known: Vec<&String> = results.iter().filter(|(id, ok)| !ok && KNOWN_UNATTAINABLE.contains(&id.as_str())).map(|(id, _)| id).collect();
    println!(
        "acceptance: {} of {} criteria pass; known unattainable failing: {known:?}; unexpected failures: {unexpected:?} ({:.0} s)",
        results.iter().filter(|r| r.1).count(),
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
