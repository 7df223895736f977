//! Masked Cartesian lattice over the bounding box of a body.

use crate::bodies::ConvexBody;
use crate::error::{Error, Result};
use rayon::prelude::*;

/// Nodes closer than `THETA_MIN * h` to the boundary along an axis are
/// treated as boundary nodes (u = 0).
pub const THETA_MIN: f64 = 1e-3;

const OUTSIDE: u32 = u32::MAX;

/// Result of stepping from an interior node by a lattice offset.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Neighbor {
    /// Interior node index and Euclidean distance.
    Interior(usize, f64),
    /// The boundary is hit (or a boundary node reached) at this distance.
    Boundary(f64),
}

impl Neighbor {
    pub fn distance(&self) -> f64 {
        match *self {
            Neighbor::Interior(_, d) | Neighbor::Boundary(d) => d,
        }
    }

    pub fn value(&self, u: &[f64]) -> f64 {
        match *self {
            Neighbor::Interior(j, _) => u[j],
            Neighbor::Boundary(_) => 0.0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Grid {
    body: ConvexBody,
    dim: usize,
    h: f64,
    origin: Vec<f64>,
    shape: Vec<usize>,
    lattice: Vec<u32>,
    nodes: Vec<[i64; 3]>,
}

impl Grid {
    /// Builds the lattice `origin + h * m` with the origin at the lower corner
    /// of the bounding box. Requires `h <= r / 2`; solves ask for `r / 4`.
    pub fn build(body: &ConvexBody, h: f64) -> Result<Grid> {
        let dim = body.dim();
        if dim > 3 {
            return Err(Error::Unsupported(format!("grids are limited to dimension 2 and 3, got {dim}")));
        }
        let r = body.inradius()?;
        if !(h > 0.0) || h > r / 2.0 * (1.0 + 1e-12) {
            return Err(Error::RefinementNeeded(format!("spacing {h} exceeds r/2 = {}", r / 2.0)));
        }
        let (lo, hi) = body.bounding_box();
        let shape: Vec<usize> = (0..dim).map(|i| ((hi[i] - lo[i]) / h).floor() as usize + 1).collect();
        let total: usize = shape.iter().product();
        if total > u32::MAX as usize / 2 {
            return Err(Error::InvalidArgument("grid too large".into()));
        }
        let strides = strides(&shape);
        let inside: Vec<bool> = (0..total)
            .into_par_iter()
            .with_min_len(4096)
            .map(|lin| {
                let m = unflatten(lin, &strides, dim);
                let x: Vec<f64> = (0..dim).map(|i| lo[i] + h * m[i] as f64).collect();
                if !body.contains(&x) {
                    return false;
                }
                let mut d = vec![0.0; dim];
                for i in 0..dim {
                    for s in [1.0, -1.0] {
                        d[i] = s;
                        if body.ray_param(&x, &d) < THETA_MIN * h {
                            return false;
                        }
                    }
                    d[i] = 0.0;
                }
                true
            })
            .collect();
        let mut lattice = vec![OUTSIDE; total];
        let mut nodes = Vec::new();
        for (lin, ok) in inside.iter().enumerate() {
            if *ok {
                lattice[lin] = nodes.len() as u32;
                nodes.push(unflatten(lin, &strides, dim));
            }
        }
        if nodes.is_empty() {
            return Err(Error::RefinementNeeded("grid has no interior node".into()));
        }
        Ok(Grid { body: body.clone(), dim, h, origin: lo, shape, lattice, nodes })
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Lattice multi-index of an interior node.
    pub fn index(&self, i: usize) -> [i64; 3] {
        self.nodes[i]
    }

    pub fn point(&self, i: usize) -> Vec<f64> {
        (0..self.dim).map(|a| self.origin[a] + self.h * self.nodes[i][a] as f64).collect()
    }

    fn lookup(&self, m: [i64; 3]) -> Option<usize> {
        let mut lin = 0usize;
        let mut stride = 1usize;
        for a in (0..self.dim).rev() {
            if m[a] < 0 || m[a] as usize >= self.shape[a] {
                return None;
            }
            lin += m[a] as usize * stride;
            stride *= self.shape[a];
        }
        match self.lattice[lin] {
            OUTSIDE => None,
            j => Some(j as usize),
        }
    }

    /// Steps from node `i` by the integer offset `off`. Boundary distances are
    /// exact ray intersections, floored at `THETA_MIN` of the step length.
    pub fn neighbor(&self, i: usize, off: [i64; 3]) -> Neighbor {
        let len = self.h * (0..self.dim).map(|a| (off[a] * off[a]) as f64).sum::<f64>().sqrt();
        let mut m = self.nodes[i];
        for a in 0..self.dim {
            m[a] += off[a];
        }
        if let Some(j) = self.lookup(m) {
            return Neighbor::Interior(j, len);
        }
        let x = self.point(i);
        let d: Vec<f64> = (0..self.dim).map(|a| self.h * off[a] as f64).collect();
        let tau = self.body.ray_param(&x, &d).min(1.0);
        Neighbor::Boundary((tau * len).max(THETA_MIN * len))
    }

    /// Midpoint-rule integral `h^n sum_i values[i]`.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        values.iter().sum::<f64>() * self.h.powi(self.dim as i32)
    }

    /// Per-axis cut fractions `(theta_plus, theta_minus)` of a node.
    pub fn cut_fractions(&self, i: usize) -> Vec<(f64, f64)> {
        (0..self.dim)
            .map(|a| {
                let mut off = [0i64; 3];
                off[a] = 1;
                let p = self.neighbor(i, off).distance() / self.h;
                off[a] = -1;
                let q = self.neighbor(i, off).distance() / self.h;
                (p, q)
            })
            .collect()
    }
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for a in (0..shape.len().saturating_sub(1)).rev() {
        s[a] = s[a + 1] * shape[a + 1];
    }
    s
}

fn unflatten(mut lin: usize, strides: &[usize], dim: usize) -> [i64; 3] {
    let mut m = [0i64; 3];
    for a in 0..dim {
        m[a] = (lin / strides[a]) as i64;
        lin %= strides[a];
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn disk_node_count() {
        let g = Grid::build(&ConvexBody::ball(2, 1.0).unwrap(), 0.125).unwrap();
        let expect = PI / (0.125f64 * 0.125);
        assert!(((g.len() as f64) - expect).abs() < 0.1 * expect, "{}", g.len());
    }

    #[test]
    fn unit_square_is_aligned() {
        let g = Grid::build(&ConvexBody::cuboid(vec![1.0, 1.0]).unwrap(), 0.25).unwrap();
        assert_eq!(g.len(), 9);
        for i in 0..g.len() {
            for (p, q) in g.cut_fractions(i) {
                assert!((p - 1.0).abs() < 1e-12 && (q - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn thin_rectangle_nodes_inside() {
        let body = ConvexBody::cuboid(vec![4.0, 0.25]).unwrap();
        let g = Grid::build(&body, 1.0 / 64.0).unwrap();
        assert_eq!(g.len(), 255 * 15);
        assert!((0..g.len()).all(|i| body.contains(&g.point(i))));
    }

    #[test]
    fn cut_fractions_are_exact_on_disk() {
        let body = ConvexBody::ball(2, 1.0).unwrap();
        let g = Grid::build(&body, 0.1).unwrap();
        for i in 0..g.len() {
            let x = g.point(i);
            for (a, (p, _)) in g.cut_fractions(i).into_iter().enumerate() {
                assert!(p > 0.0 && p <= 1.0);
                if p < 1.0 {
                    let mut y = x.clone();
                    y[a] += p * 0.1;
                    assert!((y[0].hypot(y[1]) - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn too_coarse_is_rejected() {
        assert!(Grid::build(&ConvexBody::ball(2, 1.0).unwrap(), 0.6).is_err());
    }
}
