//! Rayleigh ratios of admissible test functions, evaluated with the same
//! discrete operators as the solvers.

use super::grid::Grid;
use super::laplace;
use super::monge_ampere::Stencil;
use crate::error::{Error, Result};
use crate::profile::Profile;

fn check_sign(phi: &[f64]) -> Result<()> {
    if phi.iter().any(|v| *v > 0.0) {
        return Err(Error::InvalidArgument("test function must be nonpositive".into()));
    }
    Ok(())
}

/// `int (-phi) S_k(D^2 phi)` and the discrete-convexity margin.
fn energy(grid: &Grid, phi: &[f64], k: usize, stencil_width: usize) -> Result<f64> {
    check_sign(phi)?;
    let s = match (grid.dim(), k) {
        (_, 1) => {
            let a = laplace::operator(grid);
            let mut out = vec![0.0; phi.len()];
            a.matvec(phi, &mut out);
            out.iter().map(|v| -v).collect::<Vec<_>>()
        }
        (2, 2) => {
            let st = Stencil::new(grid, stencil_width)?;
            let scale = phi.iter().fold(0.0f64, |m, v| m.max(v.abs())) / (grid.h() * grid.h());
            if st.min_second_difference(phi) < -1e-8 * scale.max(1.0) {
                return Err(Error::InvalidArgument("test function is not discretely convex".into()));
            }
            st.apply(phi)
        }
        (n, k) => return Err(Error::Unsupported(format!("no discrete S_k for (n, k) = ({n}, {k})"))),
    };
    Ok(grid.integrate(&phi.iter().zip(&s).map(|(p, v)| -p * v).collect::<Vec<_>>()))
}

/// `(int -phi)^{k+1} / int (-phi) S_k(D^2 phi)`, a lower bound for `T_k`.
pub fn rayleigh_torsion(grid: &Grid, phi: &[f64], k: usize, stencil_width: usize) -> Result<f64> {
    let e = energy(grid, phi, k, stencil_width)?;
    let m = grid.integrate(&phi.iter().map(|v| -v).collect::<Vec<_>>());
    Ok(m.powi(k as i32 + 1) / e)
}

/// `int (-phi) S_k(D^2 phi) / int (-phi)^{k+1}`, an upper bound for `lambda_k`.
pub fn rayleigh_eigen(grid: &Grid, phi: &[f64], k: usize, stencil_width: usize) -> Result<f64> {
    let e = energy(grid, phi, k, stencil_width)?;
    let d = grid.integrate(&phi.iter().map(|v| (-v).powi(k as i32 + 1)).collect::<Vec<_>>());
    Ok(e / d)
}

/// `-dist(x, boundary)` on the grid nodes.
pub fn distance_field(grid: &Grid) -> Vec<f64> {
    (0..grid.len()).map(|i| -grid.body().boundary_distance(&grid.point(i)).max(0.0)).collect()
}

/// The web function `-G(dist(x, boundary))` with `G' = mu(-d)^{1/k}`, which
/// maximizes the Rayleigh ratio among functions of the distance.
pub fn web_field(grid: &Grid, profile: &Profile, k: usize) -> Vec<f64> {
    let (depths, g) = profile.web_generator(k);
    (0..grid.len())
        .map(|i| {
            let d = grid.body().boundary_distance(&grid.point(i)).clamp(0.0, *depths.last().unwrap());
            let j = depths.partition_point(|x| *x < d).clamp(1, depths.len() - 1);
            let (d0, d1) = (depths[j - 1], depths[j]);
            let w = if d1 > d0 { (d - d0) / (d1 - d0) } else { 0.0 };
            -(g[j - 1] + w * (g[j] - g[j - 1]))
        })
        .collect()
}
