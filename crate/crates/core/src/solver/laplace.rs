//! Shortley-Weller cut-cell Laplacian: torsion (`Delta u = n`) and the first
//! Dirichlet eigenvalue.

use super::grid::{Grid, Neighbor};
use super::linalg::{bicgstab, dot, Csr};
use super::{Problem, SolveResult, SolverConfig};
use crate::error::{Error, Result};
use rayon::prelude::*;

/// The matrix of `-Delta_h` on interior nodes (boundary values zero).
pub fn operator(grid: &Grid) -> Csr {
    let dim = grid.dim();
    let rows: Vec<Vec<(usize, f64)>> = (0..grid.len())
        .into_par_iter()
        .with_min_len(1024)
        .map(|i| {
            let mut row = Vec::with_capacity(2 * dim + 1);
            let mut diag = 0.0;
            for a in 0..dim {
                let mut off = [0i64; 3];
                off[a] = 1;
                let plus = grid.neighbor(i, off);
                off[a] = -1;
                let minus = grid.neighbor(i, off);
                let (dp, dm) = (plus.distance(), minus.distance());
                diag += 2.0 / (dp * dm);
                if let Neighbor::Interior(j, _) = plus {
                    row.push((j, -2.0 / (dp * (dp + dm))));
                }
                if let Neighbor::Interior(j, _) = minus {
                    row.push((j, -2.0 / (dm * (dp + dm))));
                }
            }
            row.push((i, diag));
            row
        })
        .collect();
    Csr::from_rows(rows)
}

pub fn solve_torsion_laplace(grid: &Grid, cfg: &SolverConfig) -> Result<SolveResult> {
    let n = grid.dim();
    let a = operator(grid);
    let rhs = vec![n as f64; grid.len()];
    let mut w = vec![0.0; grid.len()];
    let out = bicgstab(&a, &rhs, &mut w, cfg.tol, cfg.max_iter);
    if !out.converged {
        return Err(Error::NonConvergence(format!(
            "torsion linear solve stopped at relative residual {:.3e} after {} iterations",
            out.relative_residual, out.iterations
        )));
    }
    let u: Vec<f64> = w.iter().map(|v| -v).collect();
    if u.iter().any(|v| *v >= 0.0) {
        return Err(Error::NonConvergence("discrete maximum principle violated".into()));
    }
    let int = grid.integrate(&w);
    let value = int / n as f64;
    let mut aw = vec![0.0; grid.len()];
    a.matvec(&w, &mut aw);
    let energy = grid.integrate(&w.iter().zip(&aw).map(|(x, y)| x * y).collect::<Vec<_>>());
    Ok(SolveResult {
        problem: Problem::Torsion,
        k: 1,
        value,
        rayleigh: int * int / energy,
        residual: out.relative_residual,
        iterations: out.iterations,
        h: grid.h(),
        converged: true,
        error: None,
        warning: None,
        u,
        grid: grid.clone(),
    })
}

pub fn solve_eigen_laplace(grid: &Grid, cfg: &SolverConfig) -> Result<SolveResult> {
    let a = operator(grid);
    let n = grid.len();
    // start from the torsion function, which is close to the ground state
    let mut w = vec![0.0; n];
    let ones = vec![1.0; n];
    bicgstab(&a, &ones, &mut w, cfg.tol, cfg.max_iter);
    let mut lambda = f64::NAN;
    let mut aw = vec![0.0; n];
    for it in 1..=cfg.eigen_max {
        let scale = 1.0 / dot(&w, &w).sqrt();
        w.iter_mut().for_each(|v| *v *= scale);
        let b = w.clone();
        let mut next: Vec<f64> = if lambda.is_finite() { w.iter().map(|v| v / lambda).collect() } else { w.clone() };
        let out = bicgstab(&a, &b, &mut next, cfg.tol, cfg.max_iter);
        if !out.converged {
            return Err(Error::NonConvergence(format!(
                "inverse iteration linear solve stalled at {:.3e}",
                out.relative_residual
            )));
        }
        w = next;
        a.matvec(&w, &mut aw);
        let new_lambda = dot(&w, &aw) / dot(&w, &w);
        let change = (new_lambda - lambda).abs() / new_lambda;
        lambda = new_lambda;
        if change <= cfg.eigen_tol_laplace {
            if w.iter().any(|v| *v <= 0.0) {
                return Err(Error::NonConvergence("eigenfunction changes sign".into()));
            }
            let resid = aw.iter().zip(&w).map(|(x, y)| (x - lambda * y).powi(2)).sum::<f64>().sqrt()
                / (lambda * dot(&w, &w).sqrt());
            let m = w.iter().copied().fold(0.0, f64::max);
            let u: Vec<f64> = w.iter().map(|v| -v / m).collect();
            return Ok(SolveResult {
                problem: Problem::Eigen,
                k: 1,
                value: lambda,
                rayleigh: lambda,
                residual: resid,
                iterations: it,
                h: grid.h(),
                converged: true,
                error: None,
                warning: None,
                u,
                grid: grid.clone(),
            });
        }
    }
    Err(Error::NonConvergence(format!("inverse iteration did not settle in {} steps", cfg.eigen_max)))
}
