//! Finite-difference solvers for the k-Hessian torsion and eigenvalue
//! problems: the cut-cell Laplacian for `k = 1` (n = 2, 3) and the monotone
//! Monge-Ampere scheme for `k = n = 2`.

pub mod grid;
pub mod laplace;
pub mod linalg;
pub mod monge_ampere;
pub mod radial;
pub mod rayleigh;

pub use grid::{Grid, Neighbor};
pub use laplace::{solve_eigen_laplace, solve_torsion_laplace};
pub use monge_ampere::{solve_eigen_monge_ampere, solve_torsion_monge_ampere};
pub use radial::radial_oracle;
pub use rayleigh::{distance_field, rayleigh_eigen, rayleigh_torsion, web_field};

use crate::bodies::ConvexBody;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Torsion,
    Eigen,
}

/// Solver settings; every field has a default so a JSON block may set any
/// subset of them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Grid spacing; `None` picks `inradius / cells_per_inradius`.
    pub h: Option<f64>,
    pub cells_per_inradius: f64,
    /// Relative residual for linear and nonlinear solves.
    pub tol: f64,
    pub eigen_tol_laplace: f64,
    pub eigen_tol_ma: f64,
    /// Monge-Ampere stencil width (1 or 2).
    pub stencil_width: usize,
    pub max_iter: usize,
    pub newton_max: usize,
    pub fixed_point_max: usize,
    pub eigen_max: usize,
    /// Estimate the discretization error from a second, coarser solve.
    pub companion: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            h: None,
            cells_per_inradius: 16.0,
            tol: 1e-10,
            eigen_tol_laplace: 1e-8,
            eigen_tol_ma: 1e-6,
            stencil_width: 1,
            max_iter: 20_000,
            newton_max: 60,
            fixed_point_max: 200_000,
            eigen_max: 500,
            companion: true,
        }
    }
}

impl SolverConfig {
    pub fn spacing(&self, body: &ConvexBody) -> Result<f64> {
        match self.h {
            Some(h) => Ok(h),
            None => Ok(body.inradius()? / self.cells_per_inradius),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub problem: Problem,
    pub k: usize,
    /// `T_k` or `lambda_k`.
    pub value: f64,
    /// The same quantity from the discrete Rayleigh ratio of the solution.
    pub rayleigh: f64,
    pub residual: f64,
    pub iterations: usize,
    pub h: f64,
    pub converged: bool,
    /// Discretization error estimated from a coarser companion solve.
    pub error: Option<f64>,
    pub warning: Option<String>,
    /// Nodal values on the interior nodes (zero on the boundary).
    pub u: Vec<f64>,
    pub grid: Grid,
}

impl SolveResult {
    /// CSV with columns `x,y[,z],u`.
    pub fn field_csv(&self) -> String {
        let dim = self.grid.dim();
        let mut out = String::from(if dim == 2 { "x,y,u\n" } else { "x,y,z,u\n" });
        for i in 0..self.grid.len() {
            for c in self.grid.point(i) {
                let _ = write!(out, "{c:.17e},");
            }
            let _ = writeln!(out, "{:.17e}", self.u[i]);
        }
        out
    }
}

/// Whether a PDE solver exists for `(n, k)`.
pub fn supported(n: usize, k: usize) -> bool {
    matches!((n, k), (2, 1) | (3, 1) | (2, 2))
}

/// Solves on a prepared grid, dispatching on `(n, k)`.
pub fn solve_on_grid(grid: &Grid, k: usize, problem: Problem, cfg: &SolverConfig) -> Result<SolveResult> {
    match (grid.dim(), k, problem) {
        (2 | 3, 1, Problem::Torsion) => solve_torsion_laplace(grid, cfg),
        (2 | 3, 1, Problem::Eigen) => solve_eigen_laplace(grid, cfg),
        (2, 2, Problem::Torsion) => solve_torsion_monge_ampere(grid, cfg),
        (2, 2, Problem::Eigen) => solve_eigen_monge_ampere(grid, cfg),
        (n, k, _) => Err(Error::Unsupported(format!("no PDE solver for (n, k) = ({n}, {k})"))),
    }
}

/// Solves at spacing `h` and, if enabled, at a coarser companion spacing
/// `h_c = min(2h, r/4)`; the error is `|v_h - v_c| h / (h_c - h)`.
pub fn solve(body: &ConvexBody, k: usize, problem: Problem, cfg: &SolverConfig) -> Result<SolveResult> {
    if !supported(body.dim(), k) {
        return Err(Error::Unsupported(format!("no PDE solver for (n, k) = ({}, {k})", body.dim())));
    }
    let h = cfg.spacing(body)?;
    let r = body.inradius()?;
    if h > r / 4.0 * (1.0 + 1e-12) {
        return Err(Error::RefinementNeeded(format!("spacing {h} exceeds r/4 = {}", r / 4.0)));
    }
    let grid = Grid::build(body, h)?;
    let mut result = solve_on_grid(&grid, k, problem, cfg)?;
    if cfg.companion {
        let hc = (2.0 * h).min(r / 4.0);
        if hc > 1.2 * h {
            let coarse = solve_on_grid(&Grid::build(body, hc)?, k, problem, cfg)?;
            result.error = Some((result.value - coarse.value).abs() * h / (hc - h));
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_from_partial_json() {
        let c: SolverConfig = serde_json::from_str(r#"{"h": 0.01, "stencil_width": 2}"#).unwrap();
        assert_eq!(c.h, Some(0.01));
        assert_eq!(c.stencil_width, 2);
        assert_eq!(c.tol, SolverConfig::default().tol);
        assert!(serde_json::from_str::<SolverConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn unsupported_pairs_are_errors() {
        let ball = ConvexBody::ball(3, 1.0).unwrap();
        for k in [2, 3] {
            assert!(matches!(
                solve(&ball, k, Problem::Torsion, &SolverConfig::default()),
                Err(Error::Unsupported(_))
            ));
        }
    }

    #[test]
    fn field_export_has_header_and_rows() {
        let body = ConvexBody::cuboid(vec![1.0, 1.0]).unwrap();
        let cfg = SolverConfig { h: Some(0.125), companion: false, ..Default::default() };
        let r = solve(&body, 1, Problem::Torsion, &cfg).unwrap();
        let csv = r.field_csv();
        assert!(csv.starts_with("x,y,u\n"));
        assert_eq!(csv.lines().count(), 50);
        let coarse = SolverConfig { h: Some(0.25), ..cfg };
        assert!(matches!(solve(&body, 1, Problem::Torsion, &coarse), Err(Error::RefinementNeeded(_))));
    }
}
