//! Monotone wide-stencil Monge-Ampere solver in the plane.
//!
//! `det D^2 u` is discretized as the minimum over orthogonal direction pairs
//! `(v1, v2)` of `max(D_v1 u, 0) * max(D_v2 u, 0)`, where `D_v` is the
//! (possibly cut) centered second difference along `v`. Written as
//! `D_v u = alpha (beta - u)` with `alpha = 2/(d+ d-)` and
//! `beta = (d- u+ + d+ u-)/(d+ + d-)`, the scheme is monotone.

use super::grid::{Grid, Neighbor};
use super::linalg::{bicgstab, Csr};
use super::{laplace, Problem, SolveResult, SolverConfig};
use crate::error::{Error, Result};
use rayon::prelude::*;

const NONE: u32 = u32::MAX;

/// Direction pairs for stencil width 1 and the extra pairs of width 2.
const PAIRS_WIDTH1: [([i64; 2], [i64; 2]); 2] = [([1, 0], [0, 1]), ([1, 1], [1, -1])];
const PAIRS_WIDTH2: [([i64; 2], [i64; 2]); 2] = [([2, 1], [-1, 2]), ([1, 2], [-2, 1])];

#[derive(Clone, Copy, Debug)]
struct Arm {
    plus: u32,
    dp: f64,
    minus: u32,
    dm: f64,
}

impl Arm {
    fn new(grid: &Grid, i: usize, v: [i64; 2]) -> Arm {
        let pick = |nb: Neighbor| match nb {
            Neighbor::Interior(j, d) => (j as u32, d),
            Neighbor::Boundary(d) => (NONE, d),
        };
        let (plus, dp) = pick(grid.neighbor(i, [v[0], v[1], 0]));
        let (minus, dm) = pick(grid.neighbor(i, [-v[0], -v[1], 0]));
        Arm { plus, dp, minus, dm }
    }

    #[inline]
    fn alpha(&self) -> f64 {
        2.0 / (self.dp * self.dm)
    }

    #[inline]
    fn beta(&self, u: &[f64]) -> f64 {
        let up = if self.plus == NONE { 0.0 } else { u[self.plus as usize] };
        let um = if self.minus == NONE { 0.0 } else { u[self.minus as usize] };
        (self.dm * up + self.dp * um) / (self.dp + self.dm)
    }

    #[inline]
    fn second(&self, u: &[f64], ui: f64) -> f64 {
        self.alpha() * (self.beta(u) - ui)
    }
}

/// Precomputed wide stencil: for every node, two arms per direction pair.
pub struct Stencil {
    pairs: usize,
    arms: Vec<Arm>,
}

impl Stencil {
    pub fn new(grid: &Grid, width: usize) -> Result<Stencil> {
        if grid.dim() != 2 {
            return Err(Error::Unsupported("the Monge-Ampere solver is two-dimensional".into()));
        }
        let mut dirs: Vec<([i64; 2], [i64; 2])> = PAIRS_WIDTH1.to_vec();
        match width {
            1 => {}
            2 => dirs.extend_from_slice(&PAIRS_WIDTH2),
            w => return Err(Error::InvalidArgument(format!("stencil width must be 1 or 2, got {w}"))),
        }
        let pairs = dirs.len();
        let arms: Vec<Arm> = (0..grid.len())
            .into_par_iter()
            .with_min_len(512)
            .flat_map_iter(|i| {
                dirs.iter().flat_map(move |(a, b)| [Arm::new(grid, i, *a), Arm::new(grid, i, *b)]).collect::<Vec<_>>()
            })
            .collect();
        Ok(Stencil { pairs, arms })
    }

    fn node_arms(&self, i: usize) -> &[Arm] {
        &self.arms[2 * self.pairs * i..2 * self.pairs * (i + 1)]
    }

    /// Discrete Monge-Ampere operator at node `i` with the active pair.
    fn eval_node(&self, u: &[f64], i: usize) -> (f64, usize) {
        let arms = self.node_arms(i);
        let mut best = f64::INFINITY;
        let mut active = 0;
        for p in 0..self.pairs {
            let d1 = arms[2 * p].second(u, u[i]).max(0.0);
            let d2 = arms[2 * p + 1].second(u, u[i]).max(0.0);
            if d1 * d2 < best {
                best = d1 * d2;
                active = p;
            }
        }
        (best, active)
    }

    /// `max(D1,d) max(D2,d) + min(D1,d) + min(D2,d) - 2d` minimized over pairs:
    /// equal to the scheme wherever both differences exceed `d`, monotone,
    /// and with a unit slope in `D` below `d` so that Newton can leave
    /// nonconvex states.
    fn eval_node_reg(&self, u: &[f64], i: usize, d: f64) -> (f64, usize) {
        let arms = self.node_arms(i);
        let mut best = f64::INFINITY;
        let mut active = 0;
        for p in 0..self.pairs {
            let d1 = arms[2 * p].second(u, u[i]);
            let d2 = arms[2 * p + 1].second(u, u[i]);
            let v = d1.max(d) * d2.max(d) + d1.min(d) + d2.min(d) - 2.0 * d;
            if v < best {
                best = v;
                active = p;
            }
        }
        (best, active)
    }

    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        (0..u.len()).into_par_iter().with_min_len(1024).map(|i| self.eval_node(u, i).0).collect()
    }

    /// Smallest directional second difference over all stencil directions.
    pub fn min_second_difference(&self, u: &[f64]) -> f64 {
        (0..u.len())
            .map(|i| self.node_arms(i).iter().map(|a| a.second(u, u[i])).fold(f64::INFINITY, f64::min))
            .fold(f64::INFINITY, f64::min)
    }

    fn residual(&self, u: &[f64], f: &[f64], reg: f64) -> Vec<f64> {
        (0..u.len()).into_par_iter().with_min_len(1024).map(|i| self.eval_node_reg(u, i, reg).0 - f[i]).collect()
    }

    /// Negated Newton Jacobian (positive diagonal) of the residual.
    fn jacobian(&self, u: &[f64], reg: f64) -> Csr {
        let rows: Vec<Vec<(usize, f64)>> = (0..u.len())
            .into_par_iter()
            .with_min_len(1024)
            .map(|i| {
                let (_, p) = self.eval_node_reg(u, i, reg);
                let arms = self.node_arms(i);
                let (a1, a2) = (arms[2 * p], arms[2 * p + 1]);
                let (d1, d2) = (a1.second(u, u[i]), a2.second(u, u[i]));
                // weight of each arm: the other factor, or 1 below the threshold
                let w1 = if d1 >= reg { d2.max(reg) } else { 1.0 };
                let w2 = if d2 >= reg { d1.max(reg) } else { 1.0 };
                let mut row = Vec::with_capacity(5);
                let mut push = |arm: &Arm, w: f64| {
                    let al = arm.alpha();
                    row.push((i, w * al));
                    let s = arm.dp + arm.dm;
                    if arm.plus != NONE {
                        row.push((arm.plus as usize, -w * al * arm.dm / s));
                    }
                    if arm.minus != NONE {
                        row.push((arm.minus as usize, -w * al * arm.dp / s));
                    }
                };
                push(&a1, w1);
                push(&a2, w2);
                row
            })
            .collect();
        Csr::from_rows(rows)
    }

    /// One Gauss-Seidel sweep of the monotone scheme; returns the largest
    /// update.
    fn gauss_seidel_sweep(&self, u: &mut [f64], f: &[f64]) -> f64 {
        let mut change: f64 = 0.0;
        for i in 0..u.len() {
            let arms = self.node_arms(i);
            // each pair product decreases in u_i, so the minimum over pairs
            // reaches f at the smallest root
            let mut best = f64::INFINITY;
            for p in 0..self.pairs {
                let (a1, a2) = (arms[2 * p], arms[2 * p + 1]);
                let (b1, b2) = (a1.beta(u), a2.beta(u));
                let c = f[i] / (a1.alpha() * a2.alpha());
                let v = 0.5 * (b1 + b2) - (0.25 * (b1 - b2).powi(2) + c).sqrt();
                best = best.min(v);
            }
            change = change.max((best - u[i]).abs());
            u[i] = best;
        }
        change
    }
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Outcome of one nonlinear solve `MA(u) = f`.
struct Inner {
    residual: f64,
    iterations: usize,
    fallback: bool,
}

/// Solves `MA_h(u) = f` in place: damped Newton on the regularized residual
/// with backtracking on its squared norm, then Gauss-Seidel on the monotone
/// scheme if Newton stalls.
fn solve_ma(st: &Stencil, u: &mut Vec<f64>, f: &[f64], cfg: &SolverConfig) -> Result<Inner> {
    let fscale = max_abs(f).max(1e-300);
    let target = cfg.tol * fscale;
    let reg = 1e-6 * fscale.sqrt();
    let mut res = st.residual(u, f, reg);
    if res.iter().zip(f).any(|(r, fi)| r + fi <= 0.0) {
        // degenerate nodes give a singular Jacobian; a few monotone sweeps
        // make every node strictly convex
        for _ in 0..4 {
            st.gauss_seidel_sweep(u, f);
        }
        res = st.residual(u, f, reg);
    }
    let l2 = |r: &[f64]| r.iter().map(|x| x * x).sum::<f64>();
    let mut rnorm = max_abs(&res);
    let mut merit = l2(&res);
    let mut iterations = 0;
    while rnorm > target && iterations < cfg.newton_max {
        iterations += 1;
        let jac = st.jacobian(u, reg);
        let mut delta = vec![0.0; u.len()];
        let lin = bicgstab(&jac, &res, &mut delta, 1e-12, cfg.max_iter);
        if !lin.converged && lin.relative_residual > 1e-4 {
            break;
        }
        // accept on the l2 merit: a few degenerate nodes can pin the max norm
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..=40 {
            let trial: Vec<f64> = u.iter().zip(&delta).map(|(a, d)| a + step * d).collect();
            let tres = st.residual(&trial, f, reg);
            let tm = l2(&tres);
            if tm < merit {
                *u = trial;
                rnorm = max_abs(&tres);
                res = tres;
                merit = tm;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if rnorm <= target {
        return Ok(Inner { residual: rnorm / fscale, iterations, fallback: false });
    }
    // fixed-point fallback
    for sweep in 1..=cfg.fixed_point_max {
        st.gauss_seidel_sweep(u, f);
        if sweep % 10 == 0 {
            rnorm = max_abs(&st.residual(u, f, reg));
            if rnorm <= target {
                return Ok(Inner { residual: rnorm / fscale, iterations: iterations + sweep, fallback: true });
            }
        }
    }
    Err(Error::NonConvergence(format!(
        "Monge-Ampere solve: Newton and fixed-point both failed, residual {:.3e}",
        rnorm / fscale
    )))
}

/// Initial guess from `Delta u0 = 2 sqrt(f)`.
fn laplace_guess(grid: &Grid, f: &[f64], cfg: &SolverConfig) -> Vec<f64> {
    let a = laplace::operator(grid);
    let rhs: Vec<f64> = f.iter().map(|v| 2.0 * v.max(0.0).sqrt()).collect();
    let mut w = vec![0.0; grid.len()];
    bicgstab(&a, &rhs, &mut w, 1e-10, cfg.max_iter);
    w.into_iter().map(|v| -v).collect()
}

pub fn solve_torsion_monge_ampere(grid: &Grid, cfg: &SolverConfig) -> Result<SolveResult> {
    let st = Stencil::new(grid, cfg.stencil_width)?;
    let f = vec![1.0; grid.len()];
    let mut u = laplace_guess(grid, &f, cfg);
    let inner = solve_ma(&st, &mut u, &f, cfg)?;
    if u.iter().any(|v| *v >= 0.0) {
        return Err(Error::NonConvergence("Monge-Ampere torsion solution is not negative".into()));
    }
    let conv = st.min_second_difference(&u);
    let w: Vec<f64> = u.iter().map(|v| -v).collect();
    let int = grid.integrate(&w);
    let ma = st.apply(&u);
    let energy = grid.integrate(&w.iter().zip(&ma).map(|(a, b)| a * b).collect::<Vec<_>>());
    let warning = (conv < -1e-8).then(|| format!("solution not discretely convex: {conv:.3e}"));
    Ok(SolveResult {
        problem: Problem::Torsion,
        k: 2,
        value: int * int,
        rayleigh: int.powi(3) / energy,
        residual: inner.residual,
        iterations: inner.iterations,
        h: grid.h(),
        converged: true,
        error: None,
        warning: warning.or(inner.fallback.then(|| "fixed-point fallback used".to_string())),
        u,
        grid: grid.clone(),
    })
}

/// Nonlinear inverse iteration for `det D^2 u = lambda (-u)^2`.
pub fn solve_eigen_monge_ampere(grid: &Grid, cfg: &SolverConfig) -> Result<SolveResult> {
    let st = Stencil::new(grid, cfg.stencil_width)?;
    let ones = vec![1.0; grid.len()];
    let mut v = laplace_guess(grid, &ones, cfg);
    solve_ma(&st, &mut v, &ones, cfg)?;
    let mut lambda = f64::NAN;
    let mut fallback = false;
    let mut last_res;
    for it in 1..=cfg.eigen_max {
        let m = max_abs(&v);
        let u: Vec<f64> = v.iter().map(|x| x / m).collect();
        let f: Vec<f64> = u.iter().map(|x| x * x).collect();
        // warm start: v scales like u / sqrt(lambda)
        let mut next: Vec<f64> =
            if lambda.is_finite() { u.iter().map(|x| x / lambda.sqrt()).collect() } else { v.clone() };
        let inner = solve_ma(&st, &mut next, &f, cfg)?;
        fallback |= inner.fallback;
        last_res = inner.residual;
        let vmax = max_abs(&next);
        let new_lambda = 1.0 / (vmax * vmax);
        let change = (new_lambda - lambda).abs() / new_lambda;
        lambda = new_lambda;
        v = next;
        if change <= cfg.eigen_tol_ma {
            let u: Vec<f64> = v.iter().map(|x| x / vmax).collect();
            if u.iter().any(|x| *x >= 0.0) {
                return Err(Error::NonConvergence("Monge-Ampere eigenfunction is not negative".into()));
            }
            let ma = st.apply(&u);
            let num = grid.integrate(&u.iter().zip(&ma).map(|(a, b)| -a * b).collect::<Vec<_>>());
            let den = grid.integrate(&u.iter().map(|a| (-a).powi(3)).collect::<Vec<_>>());
            let rayleigh = num / den;
            let mut warning = fallback.then(|| "fixed-point fallback used".to_string());
            if (rayleigh - lambda).abs() > 0.02 * lambda {
                warning = Some(format!(
                    "homogeneity and Rayleigh estimates differ by more than 2% ({lambda:.6} vs {rayleigh:.6}); refine the grid"
                ));
            }
            return Ok(SolveResult {
                problem: Problem::Eigen,
                k: 2,
                value: lambda,
                rayleigh,
                residual: last_res,
                iterations: it.max(1),
                h: grid.h(),
                converged: true,
                error: None,
                warning,
                u,
                grid: grid.clone(),
            });
        }
    }
    Err(Error::NonConvergence(format!("nonlinear inverse iteration did not settle in {} steps", cfg.eigen_max)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::ConvexBody;
    use std::f64::consts::PI;

    #[test]
    fn operator_exact_on_convex_quadratic() {
        let body = ConvexBody::ellipse(2.0, 0.5).unwrap();
        let g = Grid::build(&body, 1.0 / 16.0).unwrap();
        let st = Stencil::new(&g, 1).unwrap();
        // u = (ab/2)(x^2/a^2 + y^2/b^2 - 1) has det D^2 u = 1 and vanishes on the boundary
        let u: Vec<f64> = (0..g.len())
            .map(|i| {
                let x = g.point(i);
                0.5 * (x[0] * x[0] / 4.0 + x[1] * x[1] / 0.25 - 1.0)
            })
            .collect();
        for v in st.apply(&u) {
            assert!((v - 1.0).abs() < 1e-9, "{v}");
        }
    }

    #[test]
    fn gauss_seidel_and_newton_agree() {
        let body = ConvexBody::cuboid(vec![1.0, 1.0]).unwrap();
        let g = Grid::build(&body, 1.0 / 12.0).unwrap();
        let st = Stencil::new(&g, 1).unwrap();
        let f = vec![1.0; g.len()];
        let cfg = SolverConfig::default();
        let mut a = laplace_guess(&g, &f, &cfg);
        solve_ma(&st, &mut a, &f, &cfg).unwrap();
        let mut b = vec![0.0; g.len()];
        for _ in 0..20000 {
            if st.gauss_seidel_sweep(&mut b, &f) < 1e-14 {
                break;
            }
        }
        for i in 0..g.len() {
            assert!((a[i] - b[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn disk_torsion() {
        let g = Grid::build(&ConvexBody::ball(2, 1.0).unwrap(), 1.0 / 32.0).unwrap();
        let r = solve_torsion_monge_ampere(&g, &SolverConfig::default()).unwrap();
        assert!((r.value - PI * PI / 16.0).abs() < 0.03 * PI * PI / 16.0, "{}", r.value);
        assert!(r.warning.is_none(), "{:?}", r.warning);
    }
}
