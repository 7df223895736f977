//! Convex polytopes in three dimensions with both vertex and facet
//! descriptions kept consistent.

use crate::error::{Error, Result};
use crate::lp;

pub type Point3 = [f64; 3];

pub(crate) fn sub3(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn dot3(a: Point3, b: Point3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross3(a: Point3, b: Point3) -> Point3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn norm3(a: Point3) -> f64 {
    dot3(a, a).sqrt()
}

/// Closed halfspace `normal·x <= offset`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Halfspace {
    pub normal: Point3,
    pub offset: f64,
}

/// A facet: unit outward normal, offset, and its vertex indices ordered
/// counterclockwise when seen from outside.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    pub normal: Point3,
    pub offset: f64,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polytope {
    vertices: Vec<Point3>,
    facets: Vec<Facet>,
}

/// Edge with its length and the exterior dihedral angle (angle between the
/// outward normals of the two incident facets).
#[derive(Clone, Copy, Debug)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub length: f64,
    pub exterior_angle: f64,
}

impl Polytope {
    /// Convex hull of a point set. Facets are found by testing every
    /// non-collinear triple, which is fine for the small polytopes used here.
    pub fn from_vertices(points: &[Point3]) -> Result<Self> {
        if points.len() < 4 {
            return Err(Error::InvalidBody("polytope needs at least 4 points".into()));
        }
        if points.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidBody("non-finite polytope vertex".into()));
        }
        let scale = points
            .iter()
            .flat_map(|a| points.iter().map(move |b| norm3(sub3(*a, *b))))
            .fold(0.0, f64::max);
        let tol = 1e-10 * scale;
        let n = points.len();
        let mut planes: Vec<Halfspace> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let nrm = cross3(sub3(points[j], points[i]), sub3(points[k], points[i]));
                    let len = norm3(nrm);
                    if len <= 1e-12 * scale * scale {
                        continue;
                    }
                    let mut u = [nrm[0] / len, nrm[1] / len, nrm[2] / len];
                    let mut c = dot3(u, points[i]);
                    let above = points.iter().any(|p| dot3(u, *p) > c + tol);
                    let below = points.iter().any(|p| dot3(u, *p) < c - tol);
                    if above && below {
                        continue;
                    }
                    if above {
                        u = [-u[0], -u[1], -u[2]];
                        c = -c;
                    }
                    let dup = planes.iter().any(|h| {
                        norm3(sub3(h.normal, u)) < 1e-9 && (h.offset - c).abs() < tol
                    });
                    if !dup {
                        planes.push(Halfspace { normal: u, offset: c });
                    }
                }
            }
        }
        if planes.len() < 4 {
            return Err(Error::InvalidBody("points are coplanar".into()));
        }
        // facet polygons: 2D hulls of the points on each plane
        let mut verts: Vec<Point3> = Vec::new();
        let mut facets = Vec::with_capacity(planes.len());
        for h in &planes {
            let on: Vec<Point3> =
                points.iter().copied().filter(|p| (dot3(h.normal, *p) - h.offset).abs() <= tol).collect();
            let ordered = planar_hull(&on, h.normal, tol);
            if ordered.len() < 3 {
                return Err(Error::InvalidBody("facet supported by fewer than 3 vertices".into()));
            }
            let mut idx = Vec::with_capacity(ordered.len());
            for p in ordered {
                let pos = verts.iter().position(|q| norm3(sub3(*q, p)) <= tol);
                idx.push(match pos {
                    Some(k) => k,
                    None => {
                        verts.push(p);
                        verts.len() - 1
                    }
                });
            }
            facets.push(Facet { normal: h.normal, offset: h.offset, vertices: idx });
        }
        let poly = Polytope { vertices: verts, facets };
        poly.validate()?;
        Ok(poly)
    }

    /// Bounded intersection of halfspaces; vertices are enumerated from all
    /// plane triples.
    pub fn from_halfspaces(halfspaces: &[Halfspace]) -> Result<Self> {
        let hs: Vec<Halfspace> = halfspaces
            .iter()
            .map(|h| {
                let l = norm3(h.normal);
                Halfspace { normal: [h.normal[0] / l, h.normal[1] / l, h.normal[2] / l], offset: h.offset / l }
            })
            .collect();
        if hs.iter().any(|h| !h.offset.is_finite() || h.normal.iter().any(|v| !v.is_finite())) {
            return Err(Error::InvalidBody("degenerate halfspace".into()));
        }
        let pts = vertex_enumeration(&hs);
        if pts.len() < 4 {
            return Err(Error::InvalidBody("halfspace intersection is empty or degenerate".into()));
        }
        Polytope::from_vertices(&pts)
    }

    /// Axis-aligned box `[lo, hi]` as a polytope.
    pub fn cuboid(lo: Point3, hi: Point3) -> Result<Self> {
        let mut pts = Vec::with_capacity(8);
        for mask in 0..8 {
            pts.push([
                if mask & 1 == 0 { lo[0] } else { hi[0] },
                if mask & 2 == 0 { lo[1] } else { hi[1] },
                if mask & 4 == 0 { lo[2] } else { hi[2] },
            ]);
        }
        Polytope::from_vertices(&pts)
    }

    fn validate(&self) -> Result<()> {
        let scale = self.diameter();
        for (vi, v) in self.vertices.iter().enumerate() {
            for f in &self.facets {
                if dot3(f.normal, *v) > f.offset + 1e-9 * scale {
                    return Err(Error::InvalidBody(format!("vertex {vi} violates a facet")));
                }
            }
        }
        if self.inradius()? < 1e-9 * scale {
            return Err(Error::InvalidBody("polytope has (nearly) empty interior".into()));
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn halfspaces(&self) -> Vec<Halfspace> {
        self.facets.iter().map(|f| Halfspace { normal: f.normal, offset: f.offset }).collect()
    }

    pub fn facet_area(&self, f: &Facet) -> f64 {
        let p0 = self.vertices[f.vertices[0]];
        let mut acc = [0.0; 3];
        for w in f.vertices.windows(2).skip(1) {
            let c = cross3(sub3(self.vertices[w[0]], p0), sub3(self.vertices[w[1]], p0));
            acc = [acc[0] + c[0], acc[1] + c[1], acc[2] + c[2]];
        }
        0.5 * dot3(acc, f.normal)
    }

    pub fn surface_area(&self) -> f64 {
        self.facets.iter().map(|f| self.facet_area(f)).sum()
    }

    pub fn volume(&self) -> f64 {
        self.facets.iter().map(|f| f.offset * self.facet_area(f)).sum::<f64>() / 3.0
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut map: std::collections::BTreeMap<(usize, usize), Vec<usize>> = Default::default();
        for (fi, f) in self.facets.iter().enumerate() {
            let m = f.vertices.len();
            for i in 0..m {
                let a = f.vertices[i];
                let b = f.vertices[(i + 1) % m];
                map.entry((a.min(b), a.max(b))).or_default().push(fi);
            }
        }
        map.into_iter()
            .filter(|(_, fs)| fs.len() == 2)
            .map(|((a, b), fs)| {
                let c = dot3(self.facets[fs[0]].normal, self.facets[fs[1]].normal).clamp(-1.0, 1.0);
                Edge {
                    a,
                    b,
                    length: norm3(sub3(self.vertices[a], self.vertices[b])),
                    exterior_angle: c.acos(),
                }
            })
            .collect()
    }

    /// Integral of mean curvature `(1/2) sum_e |e| * exterior_angle(e)`.
    pub fn mean_curvature_integral(&self) -> f64 {
        0.5 * self.edges().iter().map(|e| e.length * e.exterior_angle).sum::<f64>()
    }

    pub fn support(&self, u: Point3) -> f64 {
        self.vertices.iter().map(|&v| dot3(v, u)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn width(&self, u: Point3) -> f64 {
        self.support(u) + self.support([-u[0], -u[1], -u[2]])
    }

    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut best: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max(norm3(sub3(v[i], v[j])));
            }
        }
        best
    }

    /// Candidate minimum width over facet normals and edge-pair directions,
    /// refined by a shrinking pattern search on the sphere.
    pub fn min_width_candidate(&self) -> f64 {
        let mut best = f64::INFINITY;
        let mut best_dir = [0.0, 0.0, 1.0];
        let consider = |u: Point3, best: &mut f64, best_dir: &mut Point3| {
            let l = norm3(u);
            if l < 1e-12 {
                return;
            }
            let u = [u[0] / l, u[1] / l, u[2] / l];
            let w = self.width(u);
            if w < *best {
                *best = w;
                *best_dir = u;
            }
        };
        for f in &self.facets {
            consider(f.normal, &mut best, &mut best_dir);
        }
        let edges = self.edges();
        for (i, e1) in edges.iter().enumerate() {
            let d1 = sub3(self.vertices[e1.b], self.vertices[e1.a]);
            for e2 in &edges[i + 1..] {
                let d2 = sub3(self.vertices[e2.b], self.vertices[e2.a]);
                consider(cross3(d1, d2), &mut best, &mut best_dir);
            }
        }
        let mut step = 0.05;
        while step > 1e-9 {
            let mut improved = false;
            let (t1, t2) = tangent_basis(best_dir);
            for (a, b) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
                let u = [
                    best_dir[0] + step * (a * t1[0] + b * t2[0]),
                    best_dir[1] + step * (a * t1[1] + b * t2[1]),
                    best_dir[2] + step * (a * t1[2] + b * t2[2]),
                ];
                let before = best;
                consider(u, &mut best, &mut best_dir);
                improved |= best < before;
            }
            if !improved {
                step *= 0.5;
            }
        }
        best
    }

    /// Lower envelope for the minimal width from a spherical sample: the width
    /// function is Lipschitz with constant `2 * max|v|` (vertices measured from
    /// the vertex centroid), so `min_sample - L * covering_radius` is a
    /// certified lower bound.
    pub fn min_width_lower_envelope(&self, samples: usize) -> f64 {
        let c = self.centroid_of_vertices();
        let radius = self.vertices.iter().map(|v| norm3(sub3(*v, c))).fold(0.0, f64::max);
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        let mut min_sample = f64::INFINITY;
        for i in 0..samples {
            let z = 1.0 - (i as f64 + 0.5) * 2.0 / samples as f64;
            let rho = (1.0 - z * z).sqrt();
            let th = golden * i as f64;
            min_sample = min_sample.min(self.width([rho * th.cos(), rho * th.sin(), z]));
        }
        // Fibonacci lattice covering radius is below 2 / sqrt(samples)
        let covering = 2.0 / (samples as f64).sqrt();
        (min_sample - 2.0 * radius * covering).max(0.0)
    }

    pub fn centroid_of_vertices(&self) -> Point3 {
        let n = self.vertices.len() as f64;
        let s = self.vertices.iter().fold([0.0; 3], |a, v| [a[0] + v[0], a[1] + v[1], a[2] + v[2]]);
        [s[0] / n, s[1] / n, s[2] / n]
    }

    pub fn insphere(&self) -> Result<(Point3, f64)> {
        let normals: Vec<Vec<f64>> = self.facets.iter().map(|f| f.normal.to_vec()).collect();
        let offsets: Vec<f64> = self.facets.iter().map(|f| f.offset).collect();
        let (c, r) = lp::chebyshev_center(&normals, &offsets, &self.centroid_of_vertices())?;
        Ok(([c[0], c[1], c[2]], r))
    }

    pub fn inradius(&self) -> Result<f64> {
        self.insphere().map(|(_, r)| r)
    }

    pub fn contains(&self, x: Point3) -> bool {
        self.facets.iter().all(|f| dot3(f.normal, x) < f.offset)
    }

    pub fn boundary_distance(&self, x: Point3) -> f64 {
        self.facets.iter().map(|f| f.offset - dot3(f.normal, x)).fold(f64::INFINITY, f64::min)
    }

    pub fn ray_param(&self, x: Point3, d: Point3) -> f64 {
        let mut tau = f64::INFINITY;
        for f in &self.facets {
            let nd = dot3(f.normal, d);
            if nd > 0.0 {
                tau = tau.min((f.offset - dot3(f.normal, x)) / nd);
            }
        }
        tau
    }

    pub fn scaled(&self, t: f64) -> Polytope {
        Polytope {
            vertices: self.vertices.iter().map(|v| [t * v[0], t * v[1], t * v[2]]).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet { normal: f.normal, offset: t * f.offset, vertices: f.vertices.clone() })
                .collect(),
        }
    }

    /// Inner parallel body at depth `s`: all facets moved inward by `s`.
    pub fn inner_offset(&self, s: f64) -> Option<Polytope> {
        let hs: Vec<Halfspace> =
            self.facets.iter().map(|f| Halfspace { normal: f.normal, offset: f.offset - s }).collect();
        let pts = vertex_enumeration(&hs);
        if pts.len() < 4 {
            return None;
        }
        let p = Polytope::from_vertices(&pts).ok()?;
        let d = self.diameter();
        if p.volume() <= 1e-14 * d * d * d {
            return None;
        }
        Some(p)
    }
}

fn tangent_basis(u: Point3) -> (Point3, Point3) {
    let a = if u[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let t1 = cross3(u, a);
    let l = norm3(t1);
    let t1 = [t1[0] / l, t1[1] / l, t1[2] / l];
    (t1, cross3(u, t1))
}

fn vertex_enumeration(hs: &[Halfspace]) -> Vec<Point3> {
    let m = hs.len();
    let scale = hs.iter().map(|h| h.offset.abs()).fold(0.0, f64::max).max(1e-300);
    let mut pts: Vec<Point3> = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let (a, b, c) = (hs[i].normal, hs[j].normal, hs[k].normal);
                let bc = cross3(b, c);
                let det = dot3(a, bc);
                if det.abs() < 1e-12 {
                    continue;
                }
                let ca = cross3(c, a);
                let ab = cross3(a, b);
                let p = [
                    (hs[i].offset * bc[0] + hs[j].offset * ca[0] + hs[k].offset * ab[0]) / det,
                    (hs[i].offset * bc[1] + hs[j].offset * ca[1] + hs[k].offset * ab[1]) / det,
                    (hs[i].offset * bc[2] + hs[j].offset * ca[2] + hs[k].offset * ab[2]) / det,
                ];
                if hs.iter().all(|h| dot3(h.normal, p) <= h.offset + 1e-10 * scale)
                    && !pts.iter().any(|q| norm3(sub3(*q, p)) <= 1e-10 * scale)
                {
                    pts.push(p);
                }
            }
        }
    }
    pts
}

/// Counterclockwise (around `normal`) convex hull of coplanar points.
fn planar_hull(points: &[Point3], normal: Point3, tol: f64) -> Vec<Point3> {
    if points.len() < 3 {
        return points.to_vec();
    }
    let (t1, t2) = tangent_basis(normal);
    let mut pts: Vec<(f64, f64, Point3)> =
        points.iter().map(|p| (dot3(*p, t1), dot3(*p, t2), *p)).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let cr = |o: &(f64, f64, Point3), a: &(f64, f64, Point3), b: &(f64, f64, Point3)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(f64, f64, Point3)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let seq: Vec<_> = if pass == 0 { pts.clone() } else { pts.iter().rev().cloned().collect() };
        for p in seq {
            while hull.len() >= start + 2 && cr(&hull[hull.len() - 2], &hull[hull.len() - 1], &p) <= tol * tol {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    // (t1, t2, normal) is right-handed, so counterclockwise in (t1, t2) is
    // counterclockwise seen from outside
    hull.into_iter().map(|(_, _, p)| p).collect()
}
