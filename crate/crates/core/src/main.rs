use clap::{Args, Parser, Subcommand, ValueEnum};
use hessian_polya::bodies::{load_bodies, make_family, ConvexBody, Family, FamilyMember};
use hessian_polya::functionals::{fmt, TheoremReport, Verdict};
use hessian_polya::profile::{compute_profile_with, Sampling, DEFAULT_SAMPLES};
use hessian_polya::solver::{self, Problem, SolverConfig};
use hessian_polya::sweep::{evaluate, run_sweep, SweepSpec};
use hessian_polya::Error;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "hessian-polya", version, about = "Polya-type inequalities for k-Hessian torsion and eigenvalues")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Geometry summary of every body in a file.
    Geom {
        #[arg(long)]
        body: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Volume and perimeter profile of the inner parallel bodies.
    Profile {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = SamplingArg::Chebyshev)]
        sampling: SamplingArg,
        #[command(flatten)]
        out: OutArgs,
    },
    /// One torsion or eigenvalue solve.
    Solve {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, default_value = "1")]
        k: usize,
        #[arg(long, value_enum, default_value_t = ProblemArg::Torsion)]
        problem: ProblemArg,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Inequality report for every body in a file.
    Verify {
        #[arg(long)]
        body: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        k: Vec<usize>,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Reports along a family of bodies plus asymptotic fits.
    Sweep {
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Bodies for `scaled-copies` (first body) or a plain file sweep.
        #[arg(long)]
        body: Option<PathBuf>,
        /// `a:b:steps[:log]`
        #[arg(long)]
        param: Option<String>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        k: Vec<usize>,
        /// Dimension of thinning cylinders.
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Number of random polygons.
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Sample points per random polygon.
        #[arg(long, default_value_t = 12)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        solver: SolverArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct OutArgs {
    /// Directory for output files; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    /// JSON file with solver settings; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Solve even where a closed form is known.
    #[arg(long)]
    solver_only: bool,
    /// Skip eigenvalues.
    #[arg(long)]
    no_eigen: bool,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig, Error> {
        let mut cfg = match &self.config {
            Some(p) => serde_json::from_str(&std::fs::read_to_string(p)?)?,
            None => SolverConfig::default(),
        };
        if self.h.is_some() {
            cfg.h = self.h;
        }
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err(Error::InvalidArgument(format!("tolerance must be positive, got {t}")));
            }
            cfg.tol = t;
        }
        Ok(cfg)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SamplingArg {
    Uniform,
    Chebyshev,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Torsion,
    Eigen,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    ThinningCylinders,
    Ellipses,
    RegularPolygons,
    RandomPolygons,
    ScaledCopies,
}

/// Failure with the exit code it maps to.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::RefinementNeeded(_) | Error::ProfileInvariant(_) | Error::NonConvergence(_) => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        };
        Fail(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(EXIT_USAGE, msg.into())
}

fn parse_param(s: &str) -> Result<Vec<f64>, Fail> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || usage(format!("--param expects a:b:steps[:log], got {s:?}"));
    if !(3..=4).contains(&parts.len()) {
        return Err(bad());
    }
    let a: f64 = parts[0].parse().map_err(|_| bad())?;
    let b: f64 = parts[1].parse().map_err(|_| bad())?;
    let steps: usize = parts[2].parse().map_err(|_| bad())?;
    let log = match parts.get(3) {
        None => false,
        Some(&"log") => true,
        Some(_) => return Err(bad()),
    };
    if steps == 0 || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    if log && !(a > 0.0 && b > 0.0) {
        return Err(usage("logarithmic grids need positive end points"));
    }
    let span = (steps.max(2) - 1) as f64;
    let ratio = (b / a).powf(1.0 / span);
    Ok((0..steps)
        .map(|i| if log { a * ratio.powi(i as i32) } else { a + i as f64 / span * (b - a) })
        .collect())
}

fn labelled_bodies(path: &Path) -> Result<Vec<(String, ConvexBody)>, Fail> {
    let bodies = load_bodies(path)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("body").to_string();
    let single = bodies.len() == 1;
    Ok(bodies
        .into_iter()
        .enumerate()
        .map(|(i, b)| (if single { stem.clone() } else { format!("{stem}_{i}") }, b))
        .collect())
}

fn emit(out: &OutArgs, name: &str, json: &str, csv: &str) -> Result<(), Fail> {
    let (text, ext) = match out.format {
        Format::Json => (json, "json"),
        Format::Csv => (csv, "csv"),
    };
    match &out.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(Error::from)?;
            std::fs::write(dir.join(format!("{name}.{ext}")), text).map_err(Error::from)?;
        }
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
        }
    }
    Ok(())
}

fn write_manifest(out: &OutArgs, failures: &[serde_json::Value]) -> Result<(), Fail> {
    if failures.is_empty() {
        return Ok(());
    }
    let text = serde_json::to_string_pretty(failures).expect("manifest serializes");
    match &out.out {
        Some(dir) => std::fs::write(dir.join("failures.json"), text).map_err(Error::from)?,
        None => eprintln!("{text}"),
    }
    Ok(())
}

fn geom(body: &Path, out: &OutArgs) -> Result<u8, Fail> {
    let bodies = labelled_bodies(body)?;
    let mut rows = Vec::new();
    let mut json = Vec::new();
    let n_max = bodies.iter().map(|(_, b)| b.dim()).max().unwrap_or(2);
    let mut csv = String::from("body,kind,dim,volume,perimeter,inradius,diameter,min_width,min_width_lower");
    for i in 0..=n_max {
        csv.push_str(&format!(",W{i}"));
    }
    csv.push('\n');
    for (label, b) in &bodies {
        let s = b.summary()?;
        let mut row = format!(
            "{label},{},{},{},{},{},{},{},{}",
            b.kind(),
            s.dim,
            fmt(s.volume),
            fmt(s.perimeter),
            fmt(s.inradius),
            fmt(s.diameter),
            fmt(s.min_width),
            fmt(s.min_width_lower)
        );
        for i in 0..=n_max {
            row.push(',');
            if let Some(w) = s.quermass.get(i) {
                row.push_str(&fmt(*w));
            }
        }
        rows.push(row);
        json.push(serde_json::json!({"body": label, "kind": b.kind(), "summary": s}));
    }
    csv.push_str(&rows.join("\n"));
    csv.push('\n');
    emit(out, "geometry", &serde_json::to_string_pretty(&json).unwrap(), &csv)?;
    Ok(0)
}

fn profile(body: &Path, samples: usize, sampling: SamplingArg, out: &OutArgs) -> Result<u8, Fail> {
    let sampling = match sampling {
        SamplingArg::Uniform => Sampling::Uniform,
        SamplingArg::Chebyshev => Sampling::Chebyshev,
    };
    let bodies = labelled_bodies(body)?;
    let mut json = Vec::new();
    let mut csv = String::from("body,t,mu,P\n");
    for (label, b) in &bodies {
        let p = compute_profile_with(b, samples, sampling)?;
        let webs: Vec<_> = (1..=b.dim()).filter_map(|k| p.web_lower_bound(k).ok()).collect();
        for i in 0..p.t.len() {
            csv.push_str(&format!("{label},{},{},{}\n", fmt(p.t[i]), fmt(p.mu[i]), fmt(p.perimeter[i])));
        }
        json.push(serde_json::json!({
            "body": label,
            "inradius": p.inradius,
            "breakpoints": p.breakpoints,
            "volume_defect": p.volume_defect,
            "web_bounds": webs,
            "t": p.t,
            "mu": p.mu,
            "perimeter": p.perimeter,
        }));
    }
    emit(out, "profile", &serde_json::to_string_pretty(&json).unwrap(), &csv)?;
    Ok(0)
}

fn solve(body: &Path, k: usize, problem: ProblemArg, args: &SolverArgs, out: &OutArgs) -> Result<u8, Fail> {
    let cfg = args.config()?;
    let problem = match problem {
        ProblemArg::Torsion => Problem::Torsion,
        ProblemArg::Eigen => Problem::Eigen,
    };
    let mut json = Vec::new();
    let mut csv = String::from("body,problem,k,value,rayleigh,residual,iterations,h,error,warning\n");
    for (label, b) in labelled_bodies(body)? {
        let r = solver::solve(&b, k, problem, &cfg)?;
        if let Some(warning) = &r.warning {
            eprintln!("{label}: {warning}");
        }
        csv.push_str(&format!(
            "{label},{},{k},{},{},{},{},{},{},\"{}\"\n",
            if problem == Problem::Torsion { "torsion" } else { "eigen" },
            fmt(r.value),
            fmt(r.rayleigh),
            fmt(r.residual),
            r.iterations,
            fmt(r.h),
            r.error.map(fmt).unwrap_or_default(),
            r.warning.clone().unwrap_or_default()
        ));
        if let Some(dir) = &out.out {
            std::fs::create_dir_all(dir).map_err(Error::from)?;
            std::fs::write(dir.join(format!("{label}_field.csv")), r.field_csv()).map_err(Error::from)?;
        }
        json.push(serde_json::json!({
            "body": label,
            "k": k,
            "value": r.value,
            "rayleigh": r.rayleigh,
            "residual": r.residual,
            "iterations": r.iterations,
            "h": r.h,
            "error": r.error,
            "warning": r.warning,
        }));
    }
    emit(out, "solve", &serde_json::to_string_pretty(&json).unwrap(), &csv)?;
    Ok(0)
}

fn failure_entries(r: &TheoremReport) -> Vec<serde_json::Value> {
    r.failures()
        .into_iter()
        .map(|c| serde_json::json!({"body": r.body, "k": r.k, "check": c.name, "slack": c.slack, "tolerance": c.tolerance}))
        .collect()
}

fn verify(body: &Path, ks: &[usize], args: &SolverArgs, out: &OutArgs) -> Result<u8, Fail> {
    let cfg = args.config()?;
    let mut reports = Vec::new();
    for (label, b) in labelled_bodies(body)? {
        for &k in ks {
            if k < 1 || k > b.dim() {
                return Err(usage(format!("k = {k} outside 1..={} for {label}", b.dim())));
            }
            reports.push(evaluate(&label, &b, k, &cfg, args.samples, !args.solver_only, !args.no_eigen)?);
        }
    }
    let mut csv = TheoremReport::csv_header();
    csv.push('\n');
    for r in &reports {
        csv.push_str(&r.csv_row());
        csv.push('\n');
    }
    emit(out, "reports", &serde_json::to_string_pretty(&reports).unwrap(), &csv)?;
    let failures: Vec<_> = reports.iter().flat_map(failure_entries).collect();
    write_manifest(out, &failures)?;
    Ok(if failures.is_empty() { 0 } else { EXIT_VIOLATION })
}

#[allow(clippy::too_many_arguments)]
fn sweep(
    family: Option<FamilyArg>,
    body: Option<&Path>,
    param: Option<&str>,
    ks: Vec<usize>,
    dim: usize,
    count: usize,
    points: usize,
    seed: u64,
    args: &SolverArgs,
    out: &OutArgs,
) -> Result<u8, Fail> {
    let values = param.map(parse_param).transpose()?;
    let need = |what: &str| values.clone().ok_or_else(|| usage(format!("{what} needs --param")));
    let members: Vec<FamilyMember> = match family {
        Some(FamilyArg::ThinningCylinders) => make_family(&Family::ThinningCylinders { dim, lengths: need("thinning-cylinders")? })?,
        Some(FamilyArg::Ellipses) => make_family(&Family::Ellipses { eps: need("ellipses")? })?,
        Some(FamilyArg::RegularPolygons) => {
            let sides = need("regular-polygons")?.into_iter().map(|v| v.round().max(0.0) as usize).collect();
            make_family(&Family::RegularPolygons { sides, circumradius: 1.0 })?
        }
        Some(FamilyArg::RandomPolygons) => make_family(&Family::RandomPolygons { count, points, inner: 0.5, seed })?,
        Some(FamilyArg::ScaledCopies) => {
            let path = body.ok_or_else(|| usage("scaled-copies needs --body"))?;
            let (_, base) = labelled_bodies(path)?.into_iter().next().ok_or_else(|| usage("empty body file"))?;
            make_family(&Family::Scaled { base, factors: need("scaled-copies")? })?
        }
        None => {
            let path = body.ok_or_else(|| usage("sweep needs --family or --body"))?;
            labelled_bodies(path)?
                .into_iter()
                .enumerate()
                .map(|(i, (label, body))| FamilyMember { label, param: i as f64, body })
                .collect()
        }
    };
    let mut spec = SweepSpec::new(members, ks);
    spec.solver = args.config()?;
    spec.profile_samples = args.samples;
    spec.closed_forms = !args.solver_only;
    spec.eigen = !args.no_eigen;
    let outcome = run_sweep(&spec)?;

    let json = serde_json::to_string_pretty(&outcome).unwrap();
    let csv = outcome.to_csv();
    emit(out, "sweep", &json, &csv)?;
    if out.out.is_some() {
        let summary = match out.format {
            Format::Json => serde_json::to_string_pretty(&outcome.summary).unwrap(),
            Format::Csv => outcome.summary_csv(),
        };
        emit(out, "asymptotics", &summary, &summary)?;
    } else {
        eprint!("{}", outcome.summary_csv());
    }
    let mut failures: Vec<_> = outcome.rows.iter().filter_map(|r| r.report.as_ref()).flat_map(failure_entries).collect();
    failures.extend(
        outcome
            .rows
            .iter()
            .filter_map(|r| r.error.as_ref().map(|e| serde_json::json!({"body": r.label, "k": r.k, "error": e}))),
    );
    write_manifest(out, &failures)?;
    Ok(if outcome.worst() == Some(Verdict::Fail) {
        EXIT_VIOLATION
    } else if outcome.rows.iter().all(|r| r.report.is_none()) {
        EXIT_NUMERICAL
    } else {
        0
    })
}

fn run(cli: Cli) -> Result<u8, Fail> {
    match cli.cmd {
        Cmd::Geom { body, out } => geom(&body, &out),
        Cmd::Profile { body, samples, sampling, out } => profile(&body, samples, sampling, &out),
        Cmd::Solve { body, k, problem, solver, out } => solve(&body, k, problem, &solver, &out),
        Cmd::Verify { body, k, solver, out } => verify(&body, &k, &solver, &out),
        Cmd::Sweep { family, body, param, k, dim, count, points, seed, solver, out } => sweep(
            family,
            body.as_deref(),
            param.as_deref(),
            k,
            dim,
            count,
            points,
            seed,
            &solver,
            &out,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
