//! Convex bodies and their exact geometric quantities.

mod family;
mod polygon;
mod polytope;
mod spec;

pub use family::{make_family, Family, FamilyMember};
pub use polygon::{halfplane_intersection, Halfplane, Point2, Polygon};
pub use polytope::{Edge, Facet, Halfspace, Point3, Polytope};
pub use spec::{load_bodies, parse_bodies, BodySpec, HalfspaceSpec};

use crate::error::{Error, Result};
use crate::special::{binomial, elementary_symmetric, ellipse_perimeter, unit_ball_volume};
use serde::Serialize;

/// Highest ambient dimension accepted for boxes, balls and prisms.
pub const MAX_DIM: usize = 8;

/// A convex body. Boxes, balls, ellipses and prisms are centered at the
/// origin; a prism extends its base along the last axis over `[-l/2, l/2]`.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvexBody {
    Polygon(Polygon),
    Polytope(Polytope),
    Cuboid { sides: Vec<f64> },
    Ball { dim: usize, radius: f64 },
    Ellipse { a: f64, b: f64 },
    Prism { base: Box<ConvexBody>, height: f64 },
}

/// Unit vector in the ambient space of a body.
#[derive(Clone, Debug, PartialEq)]
pub struct Direction(Vec<f64>);

impl Direction {
    pub fn new(v: Vec<f64>) -> Result<Self> {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidArgument("direction must be a nonzero finite vector".into()));
        }
        Ok(Direction(v.into_iter().map(|x| x / n).collect()))
    }

    pub fn axis(dim: usize, i: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Direction(v)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeometrySummary {
    pub dim: usize,
    pub volume: f64,
    pub perimeter: f64,
    pub inradius: f64,
    pub diameter: f64,
    pub min_width: f64,
    /// Certified lower bound for the minimal width; equals `min_width`
    /// except for general 3D polytopes.
    pub min_width_lower: f64,
    pub quermass: Vec<f64>,
}

fn positive(v: f64, what: &str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidBody(format!("{what} must be positive and finite, got {v}")))
    }
}

impl ConvexBody {
    pub fn polygon(vertices: Vec<Point2>) -> Result<Self> {
        Ok(ConvexBody::Polygon(Polygon::new(vertices)?))
    }

    pub fn cuboid(sides: Vec<f64>) -> Result<Self> {
        if sides.len() < 2 || sides.len() > MAX_DIM {
            return Err(Error::InvalidBody(format!("box dimension {} not in 2..={MAX_DIM}", sides.len())));
        }
        for &s in &sides {
            positive(s, "box side")?;
        }
        Ok(ConvexBody::Cuboid { sides })
    }

    pub fn ball(dim: usize, radius: f64) -> Result<Self> {
        if !(2..=MAX_DIM).contains(&dim) {
            return Err(Error::InvalidBody(format!("ball dimension {dim} not in 2..={MAX_DIM}")));
        }
        positive(radius, "ball radius")?;
        Ok(ConvexBody::Ball { dim, radius })
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        positive(a, "semi-axis a")?;
        positive(b, "semi-axis b")?;
        Ok(ConvexBody::Ellipse { a, b })
    }

    pub fn prism(base: ConvexBody, height: f64) -> Result<Self> {
        positive(height, "prism height")?;
        if base.dim() + 1 > MAX_DIM {
            return Err(Error::InvalidBody("prism dimension too large".into()));
        }
        Ok(ConvexBody::Prism { base: Box::new(base), height })
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Polygon(_) | ConvexBody::Ellipse { .. } => 2,
            ConvexBody::Polytope(_) => 3,
            ConvexBody::Cuboid { sides } => sides.len(),
            ConvexBody::Ball { dim, .. } => *dim,
            ConvexBody::Prism { base, .. } => base.dim() + 1,
        }
    }

    /// Short class name used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            ConvexBody::Polygon(_) => "polygon",
            ConvexBody::Polytope(_) => "polytope3d",
            ConvexBody::Cuboid { .. } => "box",
            ConvexBody::Ball { .. } => "ball",
            ConvexBody::Ellipse { .. } => "ellipse",
            ConvexBody::Prism { .. } => "prism",
        }
    }

    /// Whether the boundary is of class C² (only balls and ellipses here).
    pub fn is_smooth(&self) -> bool {
        matches!(self, ConvexBody::Ball { .. } | ConvexBody::Ellipse { .. })
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got });
        }
        Ok(())
    }

    pub fn support(&self, u: &Direction) -> Result<f64> {
        self.check_dim(u.dim())?;
        Ok(self.support_vec(u.as_slice()))
    }

    /// Support function of an arbitrary (not necessarily unit) vector; it is
    /// positively homogeneous of degree one.
    pub fn support_vec(&self, u: &[f64]) -> f64 {
        match self {
            ConvexBody::Polygon(p) => p.support([u[0], u[1]]),
            ConvexBody::Polytope(p) => p.support([u[0], u[1], u[2]]),
            ConvexBody::Cuboid { sides } => sides.iter().zip(u).map(|(a, x)| 0.5 * a * x.abs()).sum(),
            ConvexBody::Ball { radius, .. } => radius * u.iter().map(|x| x * x).sum::<f64>().sqrt(),
            ConvexBody::Ellipse { a, b } => ((a * u[0]).powi(2) + (b * u[1]).powi(2)).sqrt(),
            ConvexBody::Prism { base, height } => {
                let n = u.len();
                base.support_vec(&u[..n - 1]) + 0.5 * height * u[n - 1].abs()
            }
        }
    }

    pub fn width(&self, u: &Direction) -> Result<f64> {
        self.check_dim(u.dim())?;
        let neg: Vec<f64> = u.as_slice().iter().map(|x| -x).collect();
        Ok(self.support_vec(u.as_slice()) + self.support_vec(&neg))
    }

    pub fn min_width(&self) -> f64 {
        match self {
            ConvexBody::Polygon(p) => p.min_width(),
            ConvexBody::Polytope(p) => p.min_width_candidate(),
            ConvexBody::Cuboid { sides } => sides.iter().copied().fold(f64::INFINITY, f64::min),
            ConvexBody::Ball { radius, .. } => 2.0 * radius,
            ConvexBody::Ellipse { a, b } => 2.0 * a.min(*b),
            ConvexBody::Prism { base, height } => base.min_width().min(*height),
        }
    }

    /// Certified lower bound on the minimal width.
    pub fn min_width_lower(&self) -> f64 {
        match self {
            ConvexBody::Polytope(p) => p.min_width_lower_envelope(20_000).min(p.min_width_candidate()),
            ConvexBody::Prism { base, height } => base.min_width_lower().min(*height),
            _ => self.min_width(),
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            ConvexBody::Polygon(p) => p.diameter(),
            ConvexBody::Polytope(p) => p.diameter(),
            ConvexBody::Cuboid { sides } => sides.iter().map(|a| a * a).sum::<f64>().sqrt(),
            ConvexBody::Ball { radius, .. } => 2.0 * radius,
            ConvexBody::Ellipse { a, b } => 2.0 * a.max(*b),
            ConvexBody::Prism { base, height } => base.diameter().hypot(*height),
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            ConvexBody::Polygon(p) => p.area(),
            ConvexBody::Polytope(p) => p.volume(),
            ConvexBody::Cuboid { sides } => sides.iter().product(),
            ConvexBody::Ball { dim, radius } => unit_ball_volume(*dim) * radius.powi(*dim as i32),
            ConvexBody::Ellipse { a, b } => std::f64::consts::PI * a * b,
            ConvexBody::Prism { base, height } => base.volume() * height,
        }
    }

    /// Surface measure of the boundary.
    pub fn perimeter(&self) -> f64 {
        match self {
            ConvexBody::Polygon(p) => p.perimeter(),
            ConvexBody::Polytope(p) => p.surface_area(),
            ConvexBody::Cuboid { sides } => {
                let n = sides.len();
                2.0 * (0..n).map(|i| sides.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, a)| a).product::<f64>()).sum::<f64>()
            }
            ConvexBody::Ball { dim, radius } => {
                *dim as f64 * unit_ball_volume(*dim) * radius.powi(*dim as i32 - 1)
            }
            ConvexBody::Ellipse { a, b } => ellipse_perimeter(*a, *b),
            ConvexBody::Prism { base, height } => 2.0 * base.volume() + height * base.perimeter(),
        }
    }

    pub fn inradius(&self) -> Result<f64> {
        Ok(match self {
            ConvexBody::Polygon(p) => p.inradius()?,
            ConvexBody::Polytope(p) => p.inradius()?,
            ConvexBody::Cuboid { sides } => 0.5 * sides.iter().copied().fold(f64::INFINITY, f64::min),
            ConvexBody::Ball { radius, .. } => *radius,
            ConvexBody::Ellipse { a, b } => a.min(*b),
            ConvexBody::Prism { base, height } => base.inradius()?.min(0.5 * height),
        })
    }

    /// Center of a largest inscribed ball.
    pub fn incenter(&self) -> Result<Vec<f64>> {
        Ok(match self {
            ConvexBody::Polygon(p) => p.incircle()?.0.to_vec(),
            ConvexBody::Polytope(p) => p.insphere()?.0.to_vec(),
            ConvexBody::Prism { base, .. } => {
                let mut c = base.incenter()?;
                c.push(0.0);
                c
            }
            _ => vec![0.0; self.dim()],
        })
    }

    /// Intrinsic volumes `V_0..V_n`, related to the quermassintegrals by
    /// `C(n,i) W_i = omega_i V_{n-i}`.
    pub fn intrinsic_volumes(&self) -> Result<Vec<f64>> {
        match self {
            ConvexBody::Cuboid { sides } => {
                Ok((0..=sides.len()).map(|j| elementary_symmetric(sides, j)).collect())
            }
            ConvexBody::Prism { base, height } => {
                let vb = base.intrinsic_volumes()?;
                let n = vb.len();
                Ok((0..=n)
                    .map(|j| {
                        let own = if j < n { vb[j] } else { 0.0 };
                        let lower = if j > 0 { vb[j - 1] } else { 0.0 };
                        own + height * lower
                    })
                    .collect())
            }
            _ => {
                let w = self.quermassintegrals()?;
                let n = w.len() - 1;
                Ok((0..=n).map(|j| binomial(n, n - j) * w[n - j] / unit_ball_volume(n - j)).collect())
            }
        }
    }

    /// Quermassintegrals `W_0..W_n` from exact class formulas.
    pub fn quermassintegrals(&self) -> Result<Vec<f64>> {
        let pi = std::f64::consts::PI;
        match self {
            ConvexBody::Polygon(p) => Ok(vec![p.area(), 0.5 * p.perimeter(), pi]),
            ConvexBody::Ellipse { .. } => Ok(vec![self.volume(), 0.5 * self.perimeter(), pi]),
            ConvexBody::Polytope(p) => Ok(vec![
                p.volume(),
                p.surface_area() / 3.0,
                p.mean_curvature_integral() / 3.0,
                4.0 * pi / 3.0,
            ]),
            ConvexBody::Cuboid { sides } => {
                let n = sides.len();
                Ok((0..=n)
                    .map(|i| elementary_symmetric(sides, n - i) * unit_ball_volume(i) / binomial(n, i))
                    .collect())
            }
            ConvexBody::Ball { dim, radius } => {
                Ok((0..=*dim).map(|i| unit_ball_volume(*dim) * radius.powi((dim - i) as i32)).collect())
            }
            ConvexBody::Prism { .. } => {
                let v = self.intrinsic_volumes()?;
                let n = v.len() - 1;
                Ok((0..=n).map(|i| unit_ball_volume(i) * v[n - i] / binomial(n, i)).collect())
            }
        }
    }

    /// `|Omega + rho B| = sum_i C(n,i) W_i rho^i`.
    pub fn steiner_volume(&self, rho: f64) -> Result<f64> {
        if !(rho >= 0.0) {
            return Err(Error::InvalidArgument(format!("Steiner radius must be >= 0, got {rho}")));
        }
        let w = self.quermassintegrals()?;
        let n = w.len() - 1;
        Ok((0..=n).map(|i| binomial(n, i) * w[i] * rho.powi(i as i32)).sum())
    }

    pub fn summary(&self) -> Result<GeometrySummary> {
        Ok(GeometrySummary {
            dim: self.dim(),
            volume: self.volume(),
            perimeter: self.perimeter(),
            inradius: self.inradius()?,
            diameter: self.diameter(),
            min_width: self.min_width(),
            min_width_lower: self.min_width_lower(),
            quermass: self.quermassintegrals()?,
        })
    }

    /// Dilation `t Omega` about the origin.
    pub fn scaled(&self, t: f64) -> Result<ConvexBody> {
        positive(t, "scale factor")?;
        Ok(match self {
            ConvexBody::Polygon(p) => ConvexBody::Polygon(p.scaled(t)),
            ConvexBody::Polytope(p) => ConvexBody::Polytope(p.scaled(t)),
            ConvexBody::Cuboid { sides } => ConvexBody::Cuboid { sides: sides.iter().map(|a| a * t).collect() },
            ConvexBody::Ball { dim, radius } => ConvexBody::Ball { dim: *dim, radius: radius * t },
            ConvexBody::Ellipse { a, b } => ConvexBody::Ellipse { a: a * t, b: b * t },
            ConvexBody::Prism { base, height } => {
                ConvexBody::Prism { base: Box::new(base.scaled(t)?), height: height * t }
            }
        })
    }

    /// Strict interior membership.
    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            ConvexBody::Polygon(p) => p.contains([x[0], x[1]]),
            ConvexBody::Polytope(p) => p.contains([x[0], x[1], x[2]]),
            ConvexBody::Cuboid { sides } => sides.iter().zip(x).all(|(a, v)| v.abs() < 0.5 * a),
            ConvexBody::Ball { radius, .. } => x.iter().map(|v| v * v).sum::<f64>() < radius * radius,
            ConvexBody::Ellipse { a, b } => (x[0] / a).powi(2) + (x[1] / b).powi(2) < 1.0,
            ConvexBody::Prism { base, height } => {
                let n = x.len();
                x[n - 1].abs() < 0.5 * height && base.contains(&x[..n - 1])
            }
        }
    }

    /// Euclidean distance from an interior point to the boundary (negative or
    /// zero outside, where only the sign is meaningful for polytopal bodies).
    pub fn boundary_distance(&self, x: &[f64]) -> f64 {
        match self {
            ConvexBody::Polygon(p) => p.boundary_distance([x[0], x[1]]),
            ConvexBody::Polytope(p) => p.boundary_distance([x[0], x[1], x[2]]),
            ConvexBody::Cuboid { sides } => {
                sides.iter().zip(x).map(|(a, v)| 0.5 * a - v.abs()).fold(f64::INFINITY, f64::min)
            }
            ConvexBody::Ball { radius, .. } => radius - x.iter().map(|v| v * v).sum::<f64>().sqrt(),
            ConvexBody::Ellipse { a, b } => ellipse_interior_distance(*a, *b, x[0], x[1]),
            ConvexBody::Prism { base, height } => {
                let n = x.len();
                base.boundary_distance(&x[..n - 1]).min(0.5 * height - x[n - 1].abs())
            }
        }
    }

    /// Largest `tau >= 0` with `x + tau d` in the closed body, for interior
    /// `x` and nonzero `d`.
    pub fn ray_param(&self, x: &[f64], d: &[f64]) -> f64 {
        match self {
            ConvexBody::Polygon(p) => p.ray_param([x[0], x[1]], [d[0], d[1]]),
            ConvexBody::Polytope(p) => p.ray_param([x[0], x[1], x[2]], [d[0], d[1], d[2]]),
            ConvexBody::Cuboid { sides } => {
                let mut tau = f64::INFINITY;
                for ((a, xi), di) in sides.iter().zip(x).zip(d) {
                    if *di > 0.0 {
                        tau = tau.min((0.5 * a - xi) / di);
                    } else if *di < 0.0 {
                        tau = tau.min((-0.5 * a - xi) / di);
                    }
                }
                tau
            }
            ConvexBody::Ball { radius, .. } => {
                let dd: f64 = d.iter().map(|v| v * v).sum();
                let xd: f64 = x.iter().zip(d).map(|(a, b)| a * b).sum();
                let xx: f64 = x.iter().map(|v| v * v).sum();
                quadratic_exit(dd, xd, xx - radius * radius)
            }
            ConvexBody::Ellipse { a, b } => {
                let (ia, ib) = (1.0 / (a * a), 1.0 / (b * b));
                let dd = d[0] * d[0] * ia + d[1] * d[1] * ib;
                let xd = x[0] * d[0] * ia + x[1] * d[1] * ib;
                let xx = x[0] * x[0] * ia + x[1] * x[1] * ib;
                quadratic_exit(dd, xd, xx - 1.0)
            }
            ConvexBody::Prism { base, height } => {
                let n = x.len();
                let mut tau = if d[..n - 1].iter().any(|v| *v != 0.0) {
                    base.ray_param(&x[..n - 1], &d[..n - 1])
                } else {
                    f64::INFINITY
                };
                if d[n - 1] > 0.0 {
                    tau = tau.min((0.5 * height - x[n - 1]) / d[n - 1]);
                } else if d[n - 1] < 0.0 {
                    tau = tau.min((-0.5 * height - x[n - 1]) / d[n - 1]);
                }
                tau
            }
        }
    }

    /// Axis-aligned bounding box `(lo, hi)`.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.dim();
        let mut lo = vec![0.0; n];
        let mut hi = vec![0.0; n];
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            hi[i] = self.support_vec(&e);
            e[i] = -1.0;
            lo[i] = -self.support_vec(&e);
        }
        (lo, hi)
    }

    /// Halfspace description `a_i·x <= b_i` with unit normals, for polytopal
    /// bodies.
    pub fn halfspaces(&self) -> Result<Vec<(Vec<f64>, f64)>> {
        match self {
            ConvexBody::Polygon(p) => Ok(p.halfplanes().into_iter().map(|h| (h.normal.to_vec(), h.offset)).collect()),
            ConvexBody::Polytope(p) => Ok(p.halfspaces().into_iter().map(|h| (h.normal.to_vec(), h.offset)).collect()),
            ConvexBody::Cuboid { sides } => {
                let n = sides.len();
                let mut out = Vec::with_capacity(2 * n);
                for (i, a) in sides.iter().enumerate() {
                    for s in [1.0, -1.0] {
                        let mut e = vec![0.0; n];
                        e[i] = s;
                        out.push((e, 0.5 * a));
                    }
                }
                Ok(out)
            }
            ConvexBody::Prism { base, height } => {
                let n = self.dim();
                let mut out: Vec<(Vec<f64>, f64)> = base
                    .halfspaces()?
                    .into_iter()
                    .map(|(mut a, b)| {
                        a.push(0.0);
                        (a, b)
                    })
                    .collect();
                for s in [1.0, -1.0] {
                    let mut e = vec![0.0; n];
                    e[n - 1] = s;
                    out.push((e, 0.5 * height));
                }
                Ok(out)
            }
            _ => Err(Error::Unsupported(format!("{} has no halfspace description", self.kind()))),
        }
    }
}

/// Positive root of `dd tau^2 + 2 xd tau + c = 0` with `c < 0`.
fn quadratic_exit(dd: f64, xd: f64, c: f64) -> f64 {
    if dd <= 0.0 {
        return f64::INFINITY;
    }
    let disc = (xd * xd - dd * c).max(0.0).sqrt();
    // stable form of (-xd + disc) / dd
    if xd <= 0.0 {
        (-xd + disc) / dd
    } else {
        -c / (xd + disc)
    }
}

/// Distance from a point inside the ellipse `x²/a² + y²/b² < 1` to its
/// boundary, by bisection on the Lagrange parameter of the closest point.
fn ellipse_interior_distance(a: f64, b: f64, x: f64, y: f64) -> f64 {
    // reflect into the first quadrant with e0 >= e1
    let (e0, e1, y0, y1) = if a >= b { (a, b, x.abs(), y.abs()) } else { (b, a, y.abs(), x.abs()) };
    if (x / a).powi(2) + (y / b).powi(2) >= 1.0 {
        return -0.0;
    }
    if e0 == e1 {
        return e0 - y0.hypot(y1);
    }
    if y1 > 0.0 {
        if y0 > 0.0 {
            let f = |t: f64| (e0 * y0 / (t + e0 * e0)).powi(2) + (e1 * y1 / (t + e1 * e1)).powi(2) - 1.0;
            let mut lo = -e1 * e1 + e1 * y1;
            let mut hi = 0.0;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                if f(mid) > 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let t = 0.5 * (lo + hi);
            let x0 = e0 * e0 * y0 / (t + e0 * e0);
            let x1 = e1 * e1 * y1 / (t + e1 * e1);
            (x0 - y0).hypot(x1 - y1)
        } else {
            e1 - y1
        }
    } else {
        let num = e0 * y0;
        let den = e0 * e0 - e1 * e1;
        if num < den {
            let xde0 = num / den;
            let x0 = e0 * xde0;
            let x1 = e1 * (1.0 - xde0 * xde0).max(0.0).sqrt();
            (x0 - y0).hypot(x1)
        } else {
            e0 - y0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn support_examples() {
        let disk = ConvexBody::ball(2, 1.0).unwrap();
        assert!(close(disk.support(&Direction::axis(2, 0)).unwrap(), 1.0, 1e-15));
        let sq = ConvexBody::cuboid(vec![2.0, 2.0]).unwrap();
        assert!(close(sq.support(&Direction::axis(2, 0)).unwrap(), 1.0, 1e-15));
        let unit = ConvexBody::polygon(vec![[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]]).unwrap();
        let diag = Direction::new(vec![1.0, 1.0]).unwrap();
        assert!(close(unit.support(&diag).unwrap(), 0.5f64.sqrt(), 1e-15));
        assert!(matches!(disk.support(&Direction::axis(3, 0)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn width_diameter_inradius_examples() {
        assert_eq!(ConvexBody::ball(2, 1.0).unwrap().min_width(), 2.0);
        assert_eq!(ConvexBody::cuboid(vec![1.0, 4.0]).unwrap().min_width(), 1.0);
        let tri = ConvexBody::Polygon(Polygon::regular(3, 1.0 / 3f64.sqrt()).unwrap());
        assert!(close(tri.min_width(), 3f64.sqrt() / 2.0, 1e-12));
        assert!(close(tri.inradius().unwrap(), 3f64.sqrt() / 6.0, 1e-12));
        assert!(close(ConvexBody::cuboid(vec![3.0, 4.0]).unwrap().diameter(), 5.0, 1e-15));
        let hex = ConvexBody::Polygon(Polygon::regular(6, 1.0).unwrap());
        assert!(close(hex.diameter(), 2.0, 1e-12));
        assert_eq!(ConvexBody::cuboid(vec![1.0, 4.0]).unwrap().inradius().unwrap(), 0.5);
        assert_eq!(ConvexBody::ball(3, 2.0).unwrap().inradius().unwrap(), 2.0);
    }

    #[test]
    fn measures_and_quermassintegrals() {
        let disk = ConvexBody::ball(2, 1.0).unwrap();
        assert!(close(disk.volume(), PI, 1e-15) && close(disk.perimeter(), 2.0 * PI, 1e-15));
        for w in disk.quermassintegrals().unwrap() {
            assert!(close(w, PI, 1e-15));
        }
        assert!(close(ConvexBody::ellipse(1.0, 1.0).unwrap().perimeter(), 2.0 * PI, 1e-12));
        let e = ConvexBody::ellipse(4.0, 0.25).unwrap();
        let w = e.quermassintegrals().unwrap();
        assert!(close(w[0], PI, 1e-15) && close(w[2], PI, 1e-15));

        let cube = ConvexBody::cuboid(vec![1.0; 3]).unwrap();
        assert!(close(cube.volume(), 1.0, 1e-15) && close(cube.perimeter(), 6.0, 1e-15));
        let wc = cube.quermassintegrals().unwrap();
        let poly = Polytope::cuboid([-0.5; 3], [0.5; 3]).unwrap();
        let wp = ConvexBody::Polytope(poly).quermassintegrals().unwrap();
        let expected = [1.0, 2.0, PI, 4.0 * PI / 3.0];
        for i in 0..4 {
            assert!(close(wc[i], expected[i], 1e-12), "box W{i} = {}", wc[i]);
            assert!(close(wp[i], expected[i], 1e-12), "polytope W{i} = {}", wp[i]);
        }
    }

    #[test]
    fn prism_over_box_matches_box() {
        for sides in [vec![1.0, 2.0, 3.0], vec![0.5, 0.25, 4.0, 1.5]] {
            let n = sides.len();
            let direct = ConvexBody::cuboid(sides.clone()).unwrap();
            let prism =
                ConvexBody::prism(ConvexBody::cuboid(sides[..n - 1].to_vec()).unwrap(), sides[n - 1]).unwrap();
            let a = direct.quermassintegrals().unwrap();
            let b = prism.quermassintegrals().unwrap();
            for i in 0..=n {
                assert!(close(a[i], b[i], 1e-12), "W{i}: {} vs {}", a[i], b[i]);
            }
            assert!(close(prism.perimeter(), direct.perimeter(), 1e-12));
            assert!(close(prism.diameter(), direct.diameter(), 1e-12));
        }
    }

    #[test]
    fn steiner_examples() {
        let disk = ConvexBody::ball(2, 1.0).unwrap();
        assert!(close(disk.steiner_volume(1.0).unwrap(), 4.0 * PI, 1e-14));
        let sq = ConvexBody::cuboid(vec![1.0, 1.0]).unwrap();
        assert!(close(sq.steiner_volume(1.0).unwrap(), 5.0 + PI, 1e-14));
        assert!(close(sq.steiner_volume(0.0).unwrap(), 1.0, 1e-15));
        assert!(sq.steiner_volume(-1.0).is_err());
    }

    #[test]
    fn ellipse_distance_matches_sampling() {
        let (a, b) = (2.0, 0.7);
        let e = ConvexBody::ellipse(a, b).unwrap();
        let m = 200_000;
        for p in [[0.3, 0.2], [1.5, 0.0], [0.2, 0.0], [0.0, 0.5], [-1.1, -0.3], [1.9, 0.05]] {
            let brute = (0..m)
                .map(|i| {
                    let th = 2.0 * PI * i as f64 / m as f64;
                    (a * th.cos() - p[0]).hypot(b * th.sin() - p[1])
                })
                .fold(f64::INFINITY, f64::min);
            let d = e.boundary_distance(&p);
            assert!((d - brute).abs() < 1e-6, "{p:?}: {d} vs {brute}");
        }
    }

    #[test]
    fn ray_params_hit_boundary() {
        let bodies = [
            ConvexBody::ball(2, 1.3).unwrap(),
            ConvexBody::ellipse(2.0, 0.5).unwrap(),
            ConvexBody::cuboid(vec![1.0, 3.0]).unwrap(),
            ConvexBody::Polygon(Polygon::regular(7, 1.0).unwrap()),
        ];
        for body in &bodies {
            for d in [[1.0, 0.0], [0.0, -1.0], [0.6, 0.8]] {
                let x = [0.1, -0.05];
                let tau = body.ray_param(&x, &d);
                let y = [x[0] + tau * d[0], x[1] + tau * d[1]];
                assert!(body.boundary_distance(&y).abs() < 1e-9, "{}", body.kind());
            }
        }
    }

    #[test]
    fn scaling_laws() {
        let body = ConvexBody::prism(ConvexBody::Polygon(Polygon::regular(5, 1.0).unwrap()), 0.7).unwrap();
        let t = 1.7;
        let s = body.scaled(t).unwrap();
        let w0 = body.quermassintegrals().unwrap();
        let w1 = s.quermassintegrals().unwrap();
        for i in 0..=3 {
            assert!(close(w1[i], w0[i] * t.powi(3 - i as i32), 1e-12));
        }
        assert!(close(s.inradius().unwrap(), t * body.inradius().unwrap(), 1e-12));
        assert!(close(s.min_width(), t * body.min_width(), 1e-12));
    }
}
