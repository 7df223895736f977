//! Reference values on the unit ball: closed-form torsion, Bessel roots for
//! the Laplacian and radial shooting for general k-Hessian eigenvalues.

use super::Problem;
use crate::error::{Error, Result};
use crate::special::{bessel_first_zero, binomial, unit_ball_volume};

/// `T_k` or `lambda_k` of the unit ball in `R^n`.
pub fn radial_oracle(n: usize, k: usize, problem: Problem) -> Result<f64> {
    if n < 2 || k < 1 || k > n {
        return Err(Error::Unsupported(format!("no radial reference for (n, k) = ({n}, {k})")));
    }
    match problem {
        // u = (|x|^2 - 1)/2 has identity Hessian, so S_k(D^2 u) = C(n,k)
        Problem::Torsion => Ok((unit_ball_volume(n) / (n as f64 + 2.0)).powi(k as i32) / binomial(n, k)),
        Problem::Eigen if k == 1 => Ok(bessel_first_zero(n as f64 / 2.0 - 1.0).powi(2)),
        Problem::Eigen => shoot_eigenvalue(n, k),
    }
}

/// Right-hand side of the radial k-Hessian eigen-equation with `lambda = 1`:
/// `C(n-1,k-1) u'' (u'/r)^{k-1} + C(n-1,k) (u'/r)^k = (-u)^k`.
fn rhs(n: usize, k: usize, r: f64, y: [f64; 2]) -> [f64; 2] {
    let (u, du) = (y[0], y[1]);
    let q = du / r;
    let a = binomial(n - 1, k - 1);
    let b = binomial(n - 1, k);
    let ddu = ((-u).max(0.0).powi(k as i32) - b * q.powi(k as i32)) / (a * q.powi(k as i32 - 1));
    [du, ddu]
}

fn rk4(n: usize, k: usize, r: f64, y: [f64; 2], h: f64) -> [f64; 2] {
    let add = |y: [f64; 2], s: f64, k: [f64; 2]| [y[0] + s * k[0], y[1] + s * k[1]];
    let k1 = rhs(n, k, r, y);
    let k2 = rhs(n, k, r + 0.5 * h, add(y, 0.5 * h, k1));
    let k3 = rhs(n, k, r + 0.5 * h, add(y, 0.5 * h, k2));
    let k4 = rhs(n, k, r + h, add(y, h, k3));
    [
        y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

/// Integrates from `u(0) = -1`, `u'(0) = 0` with `lambda = 1` until `u`
/// vanishes at `R`; by homogeneity `lambda_k(B_1) = R^{2k}`.
fn shoot_eigenvalue(n: usize, k: usize) -> Result<f64> {
    // near the origin u ~ -1 + c r^2 / 2 with C(n,k) c^k = 1
    let c = (1.0 / binomial(n, k)).powf(1.0 / k as f64);
    let r0 = 1e-6;
    let mut r = r0;
    let mut y = [-1.0 + 0.5 * c * r0 * r0, c * r0];
    let h = 1e-4;
    for _ in 0..10_000_000 {
        let next = rk4(n, k, r, y, h);
        if next[0] >= 0.0 {
            // bisect the last step for the zero crossing
            let (mut lo, mut hi) = (0.0, h);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if rk4(n, k, r, y, mid)[0] >= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let radius = r + 0.5 * (lo + hi);
            return Ok(radius.powi(2 * k as i32));
        }
        if !next[0].is_finite() {
            break;
        }
        r += h;
        y = next;
    }
    Err(Error::NonConvergence("radial shooting never reached u = 0".into()))
}
