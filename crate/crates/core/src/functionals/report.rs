use super::Constants;
use crate::bodies::{ConvexBody, GeometrySummary};
use crate::error::{Error, Result};
use crate::profile::{Profile, WebBound};
use crate::solver::{self, radial_oracle, Problem, SolverConfig};
use crate::special::bessel_first_zero;
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Solver,
    ClosedForm,
    None,
}

impl Source {
    pub fn as_str(&self) -> &'static str {
        match self {
            Source::Solver => "solver",
            Source::ClosedForm => "closed-form",
            Source::None => "none",
        }
    }
}

/// A torsion or eigenvalue with an absolute error bar.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub source: Source,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl Estimate {
    pub fn closed_form(value: f64, error: f64) -> Self {
        Estimate { value, error, source: Source::ClosedForm, warning: None }
    }
}

fn need_quermass(s: &GeometrySummary, i: usize) -> Result<f64> {
    s.quermass.get(i).copied().ok_or_else(|| Error::InvalidArgument(format!("W_{i} not available in dimension {}", s.dim)))
}

/// `T_k W_k P^k / |Omega|^{2k+1}`.
pub fn torsion_functional(s: &GeometrySummary, k: usize, t: f64) -> Result<f64> {
    let wk = need_quermass(s, k)?;
    Ok(t * wk * s.perimeter.powi(k as i32) / s.volume.powi(2 * k as i32 + 1))
}

/// `lambda_k |Omega|^{k+1} / (P^k W_k)`.
pub fn eigen_functional(s: &GeometrySummary, k: usize, lambda: f64) -> Result<f64> {
    let wk = need_quermass(s, k)?;
    Ok(lambda * s.volume.powi(k as i32 + 1) / (s.perimeter.powi(k as i32) * wk))
}

/// `lambda_k |Omega|^{k+2} / (P^{k+1} W_{k-1})`.
pub fn dpg_functional(s: &GeometrySummary, k: usize, lambda: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let w = need_quermass(s, k - 1)?;
    Ok(lambda * s.volume.powi(k as i32 + 2) / (s.perimeter.powi(k as i32 + 1) * w))
}

/// `lambda_k T_k / |Omega|^k`.
pub fn g_functional(t: f64, lambda: f64, volume: f64, k: usize) -> f64 {
    lambda * t / volume.powi(k as i32)
}

/// Minimal width over diameter.
pub fn alpha(s: &GeometrySummary) -> f64 {
    s.min_width / s.diameter
}

/// `P r / |Omega| - 1`.
pub fn beta(s: &GeometrySummary) -> f64 {
    s.perimeter * s.inradius / s.volume - 1.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    /// The slack is smaller than the error bars in absolute value.
    WithinError,
    Fail,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::WithinError => "within-error",
            Verdict::Fail => "fail",
        }
    }
}

/// One inequality `lhs >= rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    /// Propagated error of the slack.
    pub error: f64,
    /// `error` plus the rounding floor.
    pub tolerance: f64,
    pub verdict: Verdict,
    pub near_equality: bool,
}

impl Check {
    pub fn new(name: &'static str, lhs: f64, rhs: f64, error: f64) -> Check {
        let slack = lhs - rhs;
        let scale = lhs.abs().max(rhs.abs());
        let floor = 1e-9 * scale;
        let tolerance = error + floor;
        let verdict = if !slack.is_finite() {
            Verdict::Fail
        } else if slack - error >= -floor {
            Verdict::Pass
        } else if slack >= -tolerance {
            Verdict::WithinError
        } else {
            Verdict::Fail
        };
        Check { name, lhs, rhs, slack, error, tolerance, verdict, near_equality: slack.abs() <= 1e-6 * scale + error }
    }
}

/// Fixed order of the check columns in CSV output.
pub const CHECK_NAMES: [&str; 18] = [
    "polya_torsion_lower",
    "polya_torsion_lower_web",
    "width_remainder",
    "inradius_remainder",
    "polya_eigen_upper",
    "torsion_eigen_product",
    "distance_test_eigen_upper",
    "dpg_ordering",
    "inner_perimeter_decay",
    "inner_volume_at_mean_depth",
    "perimeter_diameter",
    "inradius_width",
    "aleksandrov_fenchel",
    "quermass_log_concavity",
    "quermass_chain",
    "hersch_protter_lower",
    "hersch_protter_upper",
    "web_below_torsion",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub body: String,
    pub kind: &'static str,
    pub n: usize,
    pub k: usize,
    pub geometry: GeometrySummary,
    pub constants: Constants,
    pub torsion: Option<Estimate>,
    pub eigen: Option<Estimate>,
    /// True when no torsion value is available and the web bound stands in.
    pub bound_only: bool,
    pub web: WebBound,
    pub functional_torsion: Option<f64>,
    pub functional_torsion_web: f64,
    pub functional_eigen: Option<f64>,
    pub g: Option<f64>,
    pub dpg: Option<f64>,
    pub alpha: f64,
    pub beta: f64,
    /// The remainder estimates are stated for C^2 bodies; polytopes rely on
    /// approximation.
    pub smooth: bool,
    /// `T P^2 / |Omega|^3` against the known (non-sharp) upper constant, k = 1 only.
    pub torsion_upper_context: Option<(f64, f64)>,
    pub checks: Vec<Check>,
    pub skipped: Vec<String>,
}

impl TheoremReport {
    pub fn worst(&self) -> Option<Verdict> {
        let mut worst = None;
        for c in &self.checks {
            worst = Some(match (worst, c.verdict) {
                (_, Verdict::Fail) | (Some(Verdict::Fail), _) => Verdict::Fail,
                (_, Verdict::WithinError) | (Some(Verdict::WithinError), _) => Verdict::WithinError,
                _ => Verdict::Pass,
            });
        }
        worst
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn csv_header() -> String {
        let mut h = String::from(
            "body,kind,n,k,torsion_source,torsion,torsion_error,eigen_source,eigen,eigen_error,\
             functional_torsion,functional_torsion_web,functional_eigen,g,dpg,alpha,beta,web,web_certified",
        );
        for name in CHECK_NAMES {
            let _ = write!(h, ",{name}_slack,{name}_tolerance,{name}_verdict");
        }
        h
    }

    pub fn csv_row(&self) -> String {
        let est = |e: &Option<Estimate>| match e {
            Some(e) => format!("{},{},{}", e.source.as_str(), fmt(e.value), fmt(e.error)),
            None => "none,,".to_string(),
        };
        let opt = |v: Option<f64>| v.map(fmt).unwrap_or_default();
        let mut row = format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.body,
            self.kind,
            self.n,
            self.k,
            est(&self.torsion),
            est(&self.eigen),
            opt(self.functional_torsion),
            fmt(self.functional_torsion_web),
            opt(self.functional_eigen),
            opt(self.g),
            opt(self.dpg),
            fmt(self.alpha),
            fmt(self.beta),
            fmt(self.web.value),
            fmt(self.web.certified),
        );
        for name in CHECK_NAMES {
            match self.check(name) {
                Some(c) => {
                    let _ = write!(row, ",{},{},{}", fmt(c.slack), fmt(c.tolerance), c.verdict.as_str());
                }
                None => row.push_str(",,,"),
            }
        }
        row
    }
}

/// 17 significant digits.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// Closed-form `T_k` or `lambda_k` where one is known: balls of any size,
/// and ellipses for the Laplacian torsion and both Monge-Ampere problems.
pub fn closed_form(body: &ConvexBody, k: usize, problem: Problem) -> Option<Estimate> {
    match body {
        ConvexBody::Ball { dim, radius } => {
            let v = radial_oracle(*dim, k, problem).ok()?;
            let (value, rel) = match problem {
                Problem::Torsion => (v * radius.powi((k * (dim + 2)) as i32), 1e-12),
                Problem::Eigen => (v * radius.powi(-2 * k as i32), if k == 1 { 1e-12 } else { 1e-8 }),
            };
            Some(Estimate::closed_form(value, rel * value))
        }
        ConvexBody::Cuboid { sides } => match (k, problem) {
            (1, Problem::Eigen) => Some(Estimate::closed_form(PI * PI * sides.iter().map(|s| 1.0 / (s * s)).sum::<f64>(), 0.0)),
            (1, Problem::Torsion) if sides.len() == 2 => {
                let v = rectangle_torsion(sides[0], sides[1]);
                Some(Estimate::closed_form(v, 1e-14 * v))
            }
            _ => None,
        },
        ConvexBody::Ellipse { a, b } => {
            let ab = a * b;
            match (k, problem) {
                // u = c (x^2/a^2 + y^2/b^2 - 1) with Delta u = 2, and T_1 = int(-u) / 2
                (1, Problem::Torsion) => {
                    let c = a * a * b * b / (a * a + b * b);
                    Some(Estimate::closed_form(c * PI * ab / 4.0, 0.0))
                }
                // affine invariance of det D^2 under x -> diag(a, b) x
                (2, Problem::Torsion) => Some(Estimate::closed_form(ab.powi(4) * PI * PI / 16.0, 0.0)),
                (2, Problem::Eigen) => {
                    let v = radial_oracle(2, 2, Problem::Eigen).ok()? / (ab * ab);
                    Some(Estimate::closed_form(v, 1e-8 * v))
                }
                _ => None,
            }
        }
        _ => None,
    }
}

/// `int v` for `-Delta v = 1` on an `a x b` rectangle, by the Fourier series
/// in the long direction.
pub fn rectangle_torsion(a: f64, b: f64) -> f64 {
    let (long, short) = if a >= b { (a, b) } else { (b, a) };
    let mut sum = 0.0;
    let mut m = 1.0;
    loop {
        let term = (m * PI * long / (2.0 * short)).tanh() / m.powi(5);
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
        m += 2.0;
    }
    long * short.powi(3) / 12.0 * (1.0 - 192.0 * short / (PI.powi(5) * long) * sum)
}

/// Closed form when available, otherwise a PDE solve when `(n, k)` is
/// supported, otherwise `None`.
pub fn estimate(body: &ConvexBody, k: usize, problem: Problem, cfg: &SolverConfig) -> Result<Option<Estimate>> {
    if let Some(e) = closed_form(body, k, problem) {
        return Ok(Some(e));
    }
    if !solver::supported(body.dim(), k) {
        return Ok(None);
    }
    let r = solver::solve(body, k, problem, cfg)?;
    Ok(Some(Estimate { value: r.value, error: r.error.unwrap_or(0.0), source: Source::Solver, warning: r.warning }))
}

/// Evaluates every inequality applicable to `(body, k)`.
pub fn verify(
    label: &str,
    body: &ConvexBody,
    k: usize,
    torsion: Option<Estimate>,
    eigen: Option<Estimate>,
    profile: &Profile,
) -> Result<TheoremReport> {
    let n = body.dim();
    if k < 1 || k > n {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..={n}")));
    }
    if profile.dim != n {
        return Err(Error::DimensionMismatch { expected: n, got: profile.dim });
    }
    let s = body.summary()?;
    let c = Constants::new(n, k);
    let web = profile.web_lower_bound(k)?;
    let mut checks = Vec::new();
    let mut skipped = Vec::new();

    // functional (i): scale of T in the functional
    let t_scale = need_quermass(&s, k)? * s.perimeter.powi(k as i32) / s.volume.powi(2 * k as i32 + 1);
    let f_web = web.value * t_scale;
    let f_web_err = web.error * t_scale;
    let f_t = torsion.as_ref().map(|t| (t.value * t_scale, t.error * t_scale));

    if let Some((f, e)) = f_t {
        checks.push(Check::new("polya_torsion_lower", f, c.polya_lower, e));
    } else {
        skipped.push("polya_torsion_lower: no torsion value".into());
    }
    checks.push(Check::new("polya_torsion_lower_web", f_web, c.polya_lower, f_web_err));

    // the remainder estimates use the torsion when known and the web
    // integral otherwise (their proofs run through the web integral)
    let (f, fe) = f_t.unwrap_or((f_web, f_web_err));
    let a = alpha(&s);
    let b = beta(&s);
    checks.push(Check::new("width_remainder", f - c.polya_lower, c.c1 * a, fe));
    let b_pos = b.max(0.0);
    checks.push(Check::new("inradius_remainder", f - c.polya_lower, c.c2 * b_pos.powf((2 * k + 1) as f64 / k as f64), fe));

    let mut f_eig = None;
    let mut g = None;
    let mut dpg = None;
    if let Some(l) = &eigen {
        let fe_scale = s.volume.powi(k as i32 + 1) / (s.perimeter.powi(k as i32) * need_quermass(&s, k)?);
        let fi = l.value * fe_scale;
        f_eig = Some(fi);
        checks.push(Check::new("polya_eigen_upper", c.eigen_upper, fi, l.error * fe_scale));
        let d = dpg_functional(&s, k, l.value)?;
        let de = d * l.error / l.value;
        dpg = Some(d);
        checks.push(Check::new("distance_test_eigen_upper", c.dpg_upper, d, de));
        // both sides are proportional to lambda, so its error only scales the slack
        let ord = fi / n as f64 - d;
        checks.push(Check::new("dpg_ordering", fi / n as f64, d, ord.abs() * l.error / l.value));
        if let Some(t) = &torsion {
            let gv = g_functional(t.value, l.value, s.volume, k);
            g = Some(gv);
            checks.push(Check::new("torsion_eigen_product", c.g_bound, gv, gv * (t.error / t.value + l.error / l.value)));
        } else {
            skipped.push("torsion_eigen_product: no torsion value".into());
        }
        if k == 1 {
            let lr2 = l.value * s.inradius * s.inradius;
            let le = l.error * s.inradius * s.inradius;
            checks.push(Check::new("hersch_protter_lower", lr2, PI * PI / 4.0, le));
            let ball = bessel_first_zero(n as f64 / 2.0 - 1.0).powi(2);
            checks.push(Check::new("hersch_protter_upper", ball, lr2, le));
        }
    } else {
        skipped.push("eigenvalue checks: no eigenvalue".into());
    }

    checks.push(Check::new("inner_perimeter_decay", 0.0, profile.check_amato_tonto(), 0.0));
    let ags = profile.check_ags_lemma()?;
    let ags_rhs = s.volume * b / (6.0 * n as f64);
    checks.push(Check::new("inner_volume_at_mean_depth", ags + ags_rhs, ags_rhs, 0.0));

    let omega = crate::special::unit_ball_volume(n);
    checks.push(Check::new(
        "perimeter_diameter",
        n as f64 * omega * (s.diameter / 2.0).powi(n as i32 - 1),
        s.perimeter,
        0.0,
    ));
    checks.push(Check::new("inradius_width", s.inradius, c.a * s.min_width, 0.0));

    // (W_j / omega)^{1/(n-j)} nondecreasing in j; report the tightest pair
    let w = &s.quermass;
    let norm: Vec<f64> = (0..n).map(|j| (w[j] / omega).powf(1.0 / (n - j) as f64)).collect();
    let af = (1..n)
        .map(|j| (norm[j], norm[j - 1]))
        .min_by(|x, y| (x.0 / x.1).total_cmp(&(y.0 / y.1)))
        .expect("n >= 2");
    checks.push(Check::new("aleksandrov_fenchel", af.0, af.1, 0.0));
    let lc = (1..n)
        .map(|i| (w[i] * w[i], w[i + 1] * w[i - 1]))
        .min_by(|x, y| (x.0 / x.1).total_cmp(&(y.0 / y.1)))
        .expect("n >= 2");
    checks.push(Check::new("quermass_log_concavity", lc.0, lc.1, 0.0));
    if k >= 2 {
        checks.push(Check::new("quermass_chain", w[1] * w[k - 1], s.volume * w[k], 0.0));
    }

    if let Some(t) = &torsion {
        // the web bound is exact only up to the level-set factor
        checks.push(Check::new("web_below_torsion", t.value + t.error, web.certified, web.error / web.level_set_factor));
    }

    let torsion_upper_context = match (&torsion, k) {
        (Some(t), 1) => Some((
            t.value * s.perimeter.powi(2) / s.volume.powi(3),
            Constants::torsion_upper_context(n),
        )),
        _ => None,
    };

    Ok(TheoremReport {
        body: label.to_string(),
        kind: body.kind(),
        n,
        k,
        constants: c,
        bound_only: torsion.is_none(),
        functional_torsion: f_t.map(|x| x.0),
        functional_torsion_web: f_web,
        functional_eigen: f_eig,
        g,
        dpg,
        alpha: a,
        beta: b,
        smooth: body.is_smooth(),
        torsion_upper_context,
        web,
        geometry: s,
        torsion,
        eigen,
        checks,
        skipped,
    })
}
