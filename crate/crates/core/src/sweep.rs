//! Family sweeps and asymptotic fits of the torsion functional.

use crate::bodies::{ConvexBody, FamilyMember};
use crate::error::{Error, Result};
use crate::functionals::{estimate, fmt, verify, Estimate, TheoremReport, Verdict};
use crate::profile::compute_profile;
use crate::solver::{Problem, SolverConfig};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub members: Vec<FamilyMember>,
    pub ks: Vec<usize>,
    pub solver: SolverConfig,
    pub profile_samples: usize,
    /// Use closed forms where they exist instead of solving.
    pub closed_forms: bool,
    /// Also compute eigenvalues.
    pub eigen: bool,
}

impl SweepSpec {
    pub fn new(members: Vec<FamilyMember>, ks: Vec<usize>) -> Self {
        SweepSpec {
            members,
            ks,
            solver: SolverConfig::default(),
            profile_samples: crate::profile::DEFAULT_SAMPLES,
            closed_forms: true,
            eigen: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub label: String,
    pub param: f64,
    pub k: usize,
    pub report: Option<TheoremReport>,
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Trend {
    Increasing,
    Decreasing,
    Constant,
    Mixed,
}

/// Fit of a sequence of functional values along a family, in row order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Asymptotics {
    pub rows: usize,
    /// Least-squares slope of `log value` against `log param`.
    pub slope: f64,
    /// The same slope through the last two rows only.
    pub tail_slope: f64,
    pub trend: Trend,
    /// Richardson-extrapolated limit; `None` when the sequence does not contract.
    pub limit: Option<f64>,
    /// Estimated convergence order in the parameter.
    pub order: Option<f64>,
    pub diverging: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KSummary {
    pub k: usize,
    pub fit: Option<Asymptotics>,
    pub fit_error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub summary: Vec<KSummary>,
}

impl SweepOutcome {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter_map(|r| r.report.as_ref()).map(|r| r.failures().len()).sum()
    }

    pub fn errors(&self) -> usize {
        self.rows.iter().filter(|r| r.error.is_some()).count()
    }

    pub fn worst(&self) -> Option<Verdict> {
        let v: Vec<Verdict> = self.rows.iter().filter_map(|r| r.report.as_ref()?.worst()).collect();
        if v.contains(&Verdict::Fail) {
            Some(Verdict::Fail)
        } else if v.contains(&Verdict::WithinError) {
            Some(Verdict::WithinError)
        } else if v.is_empty() {
            None
        } else {
            Some(Verdict::Pass)
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("param,{},error\n", TheoremReport::csv_header());
        for r in &self.rows {
            match &r.report {
                Some(rep) => out.push_str(&format!("{},{},\n", fmt(r.param), rep.csv_row())),
                None => {
                    // body, kind, n, k, then empty columns up to the error
                    let blanks = TheoremReport::csv_header().split(',').count() - 4;
                    out.push_str(&format!(
                        "{},{},,,{}{},\"{}\"\n",
                        fmt(r.param),
                        r.label,
                        r.k,
                        ",".repeat(blanks),
                        r.error.as_deref().unwrap_or("").replace('"', "'")
                    ));
                }
            }
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from("k,rows,slope,tail_slope,trend,limit,order,diverging,fit_error\n");
        for s in &self.summary {
            match &s.fit {
                Some(f) => out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},\n",
                    s.k,
                    f.rows,
                    fmt(f.slope),
                    fmt(f.tail_slope),
                    serde_json::to_value(f.trend).unwrap().as_str().unwrap(),
                    f.limit.map(fmt).unwrap_or_default(),
                    f.order.map(fmt).unwrap_or_default(),
                    f.diverging
                )),
                None => out.push_str(&format!("{},,,,,,,,\"{}\"\n", s.k, s.fit_error.as_deref().unwrap_or(""))),
            }
        }
        out
    }
}

/// Torsion and eigenvalue estimates, profile and report for one body.
pub fn evaluate(
    label: &str,
    body: &ConvexBody,
    k: usize,
    cfg: &SolverConfig,
    samples: usize,
    closed_forms: bool,
    eigen: bool,
) -> Result<TheoremReport> {
    let get = |problem| -> Result<Option<Estimate>> {
        if closed_forms {
            estimate(body, k, problem, cfg)
        } else if crate::solver::supported(body.dim(), k) {
            let r = crate::solver::solve(body, k, problem, cfg)?;
            Ok(Some(Estimate {
                value: r.value,
                error: r.error.unwrap_or(0.0),
                source: crate::functionals::Source::Solver,
                warning: r.warning,
            }))
        } else {
            Ok(None)
        }
    };
    let torsion = get(Problem::Torsion)?;
    let eig = if eigen { get(Problem::Eigen)? } else { None };
    let profile = compute_profile(body, samples)?;
    verify(label, body, k, torsion, eig, &profile)
}

/// Evaluates every `(member, k)`; failures are recorded per row and the
/// sweep continues. Rows keep the member order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutcome> {
    if spec.members.is_empty() || spec.ks.is_empty() {
        return Err(Error::InvalidArgument("sweep needs at least one body and one k".into()));
    }
    let jobs: Vec<(&FamilyMember, usize)> =
        spec.members.iter().flat_map(|m| spec.ks.iter().map(move |&k| (m, k))).collect();
    let rows: Vec<SweepRow> = jobs
        .par_iter()
        .map(|(m, k)| {
            let res = if *k > m.body.dim() {
                Err(Error::InvalidArgument(format!("k = {k} exceeds dimension {}", m.body.dim())))
            } else {
                evaluate(&m.label, &m.body, *k, &spec.solver, spec.profile_samples, spec.closed_forms, spec.eigen)
            };
            match res {
                Ok(r) => SweepRow { label: m.label.clone(), param: m.param, k: *k, report: Some(r), error: None },
                Err(e) => SweepRow { label: m.label.clone(), param: m.param, k: *k, report: None, error: Some(e.to_string()) },
            }
        })
        .collect();
    let summary = spec
        .ks
        .iter()
        .map(|&k| {
            let (p, v): (Vec<f64>, Vec<f64>) = rows
                .iter()
                .filter(|r| r.k == k)
                .filter_map(|r| {
                    let rep = r.report.as_ref()?;
                    Some((r.param, rep.functional_torsion.unwrap_or(rep.functional_torsion_web)))
                })
                .unzip();
            match report_asymptotics(&p, &v) {
                Ok(f) => KSummary { k, fit: Some(f), fit_error: None },
                Err(e) => KSummary { k, fit: None, fit_error: Some(e.to_string()) },
            }
        })
        .collect();
    Ok(SweepOutcome { rows, summary })
}

/// Trend, log-log slope and extrapolated limit of `values` along `params`
/// (in the given order, the limit being taken towards the last row).
///
/// The limit assumes `v(p) = L + c p^q`; `q` comes from the last three
/// rows, which also decide whether the sequence contracts at all.
pub fn report_asymptotics(params: &[f64], values: &[f64]) -> Result<Asymptotics> {
    let n = values.len();
    if n < 3 || params.len() != n {
        return Err(Error::InvalidArgument(format!("need at least 3 rows to fit, got {n}")));
    }
    if values.iter().chain(params).any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite value in fit".into()));
    }
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let d: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let flat = |x: f64| x.abs() <= 1e-9 * scale;
    let trend = if d.iter().all(|x| flat(*x)) {
        Trend::Constant
    } else if d.iter().all(|x| *x > 0.0 || flat(*x)) {
        Trend::Increasing
    } else if d.iter().all(|x| *x < 0.0 || flat(*x)) {
        Trend::Decreasing
    } else {
        Trend::Mixed
    };

    let logs: Vec<(f64, f64)> = params
        .iter()
        .zip(values)
        .filter(|(p, v)| **p > 0.0 && **v > 0.0)
        .map(|(p, v)| (p.ln(), v.ln()))
        .collect();
    let slope = if logs.len() >= 2 {
        let m = logs.len() as f64;
        let mx = logs.iter().map(|x| x.0).sum::<f64>() / m;
        let my = logs.iter().map(|x| x.1).sum::<f64>() / m;
        let sxx: f64 = logs.iter().map(|x| (x.0 - mx).powi(2)).sum();
        let sxy: f64 = logs.iter().map(|x| (x.0 - mx) * (x.1 - my)).sum();
        if sxx > 0.0 {
            sxy / sxx
        } else {
            0.0
        }
    } else {
        f64::NAN
    };

    let tail_slope = if logs.len() >= 2 {
        let (a, b) = (logs[logs.len() - 2], logs[logs.len() - 1]);
        if b.0 != a.0 {
            (b.1 - a.1) / (b.0 - a.0)
        } else {
            0.0
        }
    } else {
        f64::NAN
    };
    if trend == Trend::Constant {
        return Ok(Asymptotics { rows: n, slope, tail_slope, trend, limit: Some(values[n - 1]), order: None, diverging: false });
    }
    let (d1, d2) = (d[n - 3], d[n - 2]);
    let rho = d2 / d1;
    let (limit, order, diverging) = if flat(d2) {
        (Some(values[n - 1]), None, false)
    } else if rho >= 1.0 {
        (None, None, true)
    } else if rho <= 0.0 || !rho.is_finite() {
        (None, None, false)
    } else {
        let limit = values[n - 1] + d2 * rho / (1.0 - rho);
        let ratio = params[n - 1] / params[n - 2];
        let order = (ratio > 0.0 && ratio != 1.0).then(|| rho.ln() / ratio.ln());
        (Some(limit), order, false)
    };
    Ok(Asymptotics { rows: n, slope, tail_slope, trend, limit, order, diverging })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_sequence_extrapolates() {
        let p: Vec<f64> = (2..7).map(|i| 0.5f64.powi(i)).collect();
        let v: Vec<f64> = p.iter().map(|x| 1.0 / 6.0 + 0.3 * x * x).collect();
        let a = report_asymptotics(&p, &v).unwrap();
        assert_eq!(a.trend, Trend::Decreasing);
        assert!((a.limit.unwrap() - 1.0 / 6.0).abs() < 1e-14);
        assert!((a.order.unwrap() - 2.0).abs() < 1e-9);
        assert!(!a.diverging);
    }

    #[test]
    fn growth_is_flagged() {
        let p = [1.0, 0.5, 0.25, 0.125];
        let v: Vec<f64> = p.iter().map(|e: &f64| (e.powi(4) + 1.0) / (8.0 * e * e)).collect();
        let a = report_asymptotics(&p, &v).unwrap();
        assert!(a.diverging && a.limit.is_none());
        assert!((a.tail_slope + 2.0).abs() < 0.01, "{}", a.tail_slope);
    }

    #[test]
    fn constant_and_short_sequences() {
        let a = report_asymptotics(&[0.5, 1.0, 2.0], &[0.25, 0.25, 0.25]).unwrap();
        assert_eq!(a.trend, Trend::Constant);
        assert_eq!(a.limit, Some(0.25));
        assert!(a.slope.abs() < 1e-12);
        assert!(report_asymptotics(&[1.0, 2.0], &[1.0, 1.0]).is_err());
    }
}
