//! Convex polygons in the plane, stored as counterclockwise vertex lists.

use crate::error::{Error, Result};
use crate::lp;

pub type Point2 = [f64; 2];

fn sub(a: Point2, b: Point2) -> Point2 {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(a: Point2, b: Point2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn dot(a: Point2, b: Point2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

fn norm(a: Point2) -> f64 {
    a[0].hypot(a[1])
}

/// Closed halfplane `normal·x <= offset` with a unit normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Halfplane {
    pub normal: Point2,
    pub offset: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Point2>,
}

impl Polygon {
    /// Validates a counterclockwise convex vertex list. Collinear vertices are
    /// dropped; repeated vertices, clockwise or self-overlapping input and
    /// degenerate (zero-area) polygons are rejected.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidBody("polygon needs at least 3 vertices".into()));
        }
        if vertices.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidBody("non-finite polygon vertex".into()));
        }
        let scale = vertices
            .iter()
            .flat_map(|a| vertices.iter().map(move |b| norm(sub(*a, *b))))
            .fold(0.0, f64::max);
        if scale == 0.0 {
            return Err(Error::InvalidBody("all polygon vertices coincide".into()));
        }
        let n = vertices.len();
        for i in 0..n {
            for j in i + 1..n {
                if norm(sub(vertices[i], vertices[j])) <= 1e-12 * scale {
                    return Err(Error::InvalidBody(format!("repeated vertex at index {j}")));
                }
            }
        }
        let mut kept = Vec::with_capacity(n);
        let mut turning = 0.0;
        for i in 0..n {
            let prev = vertices[(i + n - 1) % n];
            let cur = vertices[i];
            let next = vertices[(i + 1) % n];
            let e0 = sub(cur, prev);
            let e1 = sub(next, cur);
            let c = cross(e0, e1);
            if c < -1e-12 * norm(e0) * norm(e1) {
                return Err(Error::InvalidBody(format!("polygon not convex/counterclockwise at vertex {i}")));
            }
            turning += c.atan2(dot(e0, e1));
            if c > 1e-12 * norm(e0) * norm(e1) {
                kept.push(cur);
            }
        }
        if (turning - 2.0 * std::f64::consts::PI).abs() > 1e-6 {
            return Err(Error::InvalidBody("polygon winds more than once".into()));
        }
        if kept.len() < 3 {
            return Err(Error::InvalidBody("polygon is degenerate".into()));
        }
        let poly = Polygon { vertices: kept };
        let r = poly.inradius()?;
        if r < 1e-9 * poly.diameter() {
            return Err(Error::InvalidBody("polygon has (nearly) empty interior".into()));
        }
        Ok(poly)
    }

    /// Convex hull (Andrew's monotone chain) of an arbitrary point cloud.
    pub fn convex_hull(points: &[Point2]) -> Result<Self> {
        let mut pts: Vec<Point2> = points.to_vec();
        pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::InvalidBody("hull needs at least 3 distinct points".into()));
        }
        let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
        for pass in 0..2 {
            let start = hull.len();
            let iter: Box<dyn Iterator<Item = &Point2>> =
                if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
            for &p in iter {
                while hull.len() >= start + 2
                    && cross(sub(hull[hull.len() - 1], hull[hull.len() - 2]), sub(p, hull[hull.len() - 1])) <= 0.0
                {
                    hull.pop();
                }
                hull.push(p);
            }
            hull.pop();
        }
        Polygon::new(hull)
    }

    /// Regular `sides`-gon with the given circumradius, centered at the origin,
    /// with a vertex on the positive x-axis.
    pub fn regular(sides: usize, circumradius: f64) -> Result<Self> {
        if sides < 3 || !(circumradius > 0.0) {
            return Err(Error::InvalidArgument("regular polygon needs N >= 3 and R > 0".into()));
        }
        let verts = (0..sides)
            .map(|i| {
                let th = 2.0 * std::f64::consts::PI * i as f64 / sides as f64;
                [circumradius * th.cos(), circumradius * th.sin()]
            })
            .collect();
        Polygon::new(verts)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    fn edge(&self, i: usize) -> (Point2, Point2) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        0.5 * (0..n).map(|i| cross(self.vertices[i], self.vertices[(i + 1) % n])).sum::<f64>()
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.vertices.len()).map(|i| {
            let (a, b) = self.edge(i);
            norm(sub(b, a))
        }).sum()
    }

    /// Edge halfplanes in counterclockwise order (edge `i` runs from vertex
    /// `i` to vertex `i+1`).
    pub fn halfplanes(&self) -> Vec<Halfplane> {
        (0..self.vertices.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                let e = sub(b, a);
                let len = norm(e);
                let normal = [e[1] / len, -e[0] / len];
                Halfplane { normal, offset: dot(normal, a) }
            })
            .collect()
    }

    /// Support function for an arbitrary (not necessarily unit) vector.
    pub fn support(&self, u: Point2) -> f64 {
        self.vertices.iter().map(|&v| dot(v, u)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Minimal width by rotating calipers over the edge normals.
    pub fn min_width(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        let mut j = 1;
        let mut best = f64::INFINITY;
        for i in 0..n {
            let (p, q) = self.edge(i);
            let e = sub(q, p);
            let mut guard = 0;
            while cross(e, sub(v[(j + 1) % n], p)) > cross(e, sub(v[j], p)) && guard < n {
                j = (j + 1) % n;
                guard += 1;
            }
            best = best.min(cross(e, sub(v[j], p)) / norm(e));
        }
        best
    }

    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut best: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max(norm(sub(v[i], v[j])));
            }
        }
        best
    }

    pub fn centroid_of_vertices(&self) -> Point2 {
        let n = self.vertices.len() as f64;
        let s = self.vertices.iter().fold([0.0, 0.0], |acc, v| [acc[0] + v[0], acc[1] + v[1]]);
        [s[0] / n, s[1] / n]
    }

    /// Inradius and incenter via the Chebyshev-center linear program.
    pub fn incircle(&self) -> Result<(Point2, f64)> {
        let hp = self.halfplanes();
        let normals: Vec<Vec<f64>> = hp.iter().map(|h| h.normal.to_vec()).collect();
        let offsets: Vec<f64> = hp.iter().map(|h| h.offset).collect();
        let hint = self.centroid_of_vertices();
        let (c, r) = lp::chebyshev_center(&normals, &offsets, &hint)?;
        Ok(([c[0], c[1]], r))
    }

    pub fn inradius(&self) -> Result<f64> {
        self.incircle().map(|(_, r)| r)
    }

    pub fn contains(&self, x: Point2) -> bool {
        self.halfplanes().iter().all(|h| dot(h.normal, x) < h.offset)
    }

    /// Distance from `x` to the boundary (positive inside, the most violated
    /// constraint's negative distance outside).
    pub fn boundary_distance(&self, x: Point2) -> f64 {
        self.halfplanes()
            .iter()
            .map(|h| h.offset - dot(h.normal, x))
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest `tau` with `x + tau d` in the polygon (`x` interior).
    pub fn ray_param(&self, x: Point2, d: Point2) -> f64 {
        let mut tau = f64::INFINITY;
        for h in self.halfplanes() {
            let nd = dot(h.normal, d);
            if nd > 0.0 {
                tau = tau.min((h.offset - dot(h.normal, x)) / nd);
            }
        }
        tau
    }

    pub fn scaled(&self, t: f64) -> Polygon {
        Polygon { vertices: self.vertices.iter().map(|v| [t * v[0], t * v[1]]).collect() }
    }

    /// Interior angle at every vertex.
    pub fn interior_angles(&self) -> Vec<f64> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let prev = self.vertices[(i + n - 1) % n];
                let cur = self.vertices[i];
                let next = self.vertices[(i + 1) % n];
                let e0 = sub(cur, prev);
                let e1 = sub(next, cur);
                std::f64::consts::PI - cross(e0, e1).atan2(dot(e0, e1))
            })
            .collect()
    }

    /// Inner parallel body at depth `s >= 0`: every edge moved inward by `s`.
    /// `None` once the result has (numerically) empty interior.
    pub fn inner_offset(&self, s: f64) -> Option<Polygon> {
        let planes: Vec<Halfplane> = self
            .halfplanes()
            .into_iter()
            .map(|h| Halfplane { normal: h.normal, offset: h.offset - s })
            .collect();
        let scale = self.diameter();
        let verts = halfplane_intersection(&planes, scale)?;
        let poly = Polygon { vertices: verts };
        if poly.area() <= 1e-14 * scale * scale {
            return None;
        }
        Some(poly)
    }

    /// Depths at which the inward offset changes combinatorial type (an edge
    /// shrinks to a point), ending with the collapse depth, which equals the
    /// inradius. These are the event times of the straight skeleton.
    pub fn skeleton_events(&self) -> Vec<f64> {
        let mut events = Vec::new();
        let mut depth = 0.0;
        let mut current = self.clone();
        let scale = self.diameter();
        loop {
            let angles = current.interior_angles();
            let n = current.vertices.len();
            let mut next = f64::INFINITY;
            for i in 0..n {
                let (a, b) = current.edge(i);
                let len = norm(sub(b, a));
                let rate = 1.0 / (0.5 * angles[i]).tan() + 1.0 / (0.5 * angles[(i + 1) % n]).tan();
                if rate > 0.0 {
                    next = next.min(len / rate);
                }
            }
            if !next.is_finite() {
                break;
            }
            depth += next;
            match self.inner_offset(depth) {
                Some(p) if p.vertices.len() >= 3 && p.area() > 1e-12 * scale * scale => {
                    events.push(depth);
                    current = p;
                }
                _ => {
                    events.push(depth);
                    break;
                }
            }
            if events.len() > 4 * self.vertices.len() + 4 {
                break;
            }
        }
        events
    }
}

/// Intersection of halfplanes known to be bounded; returns the vertices in
/// counterclockwise order or `None` when the intersection is (numerically)
/// empty or degenerate.
pub fn halfplane_intersection(planes: &[Halfplane], scale: f64) -> Option<Vec<Point2>> {
    let eps = 1e-13 * scale.max(1e-300);
    // direction of the boundary line, interior on its left
    let angle = |h: &Halfplane| (h.normal[0]).atan2(-h.normal[1]);
    let mut sorted: Vec<Halfplane> = planes.to_vec();
    sorted.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
    let mut dedup: Vec<Halfplane> = Vec::with_capacity(sorted.len());
    for h in sorted {
        if let Some(last) = dedup.last_mut() {
            if (angle(last) - angle(&h)).abs() < 1e-14 {
                if h.offset < last.offset {
                    *last = h;
                }
                continue;
            }
        }
        dedup.push(h);
    }
    let intersect = |a: &Halfplane, b: &Halfplane| -> Option<Point2> {
        let det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0];
        if det.abs() < 1e-15 {
            return None;
        }
        Some([
            (a.offset * b.normal[1] - b.offset * a.normal[1]) / det,
            (a.normal[0] * b.offset - b.normal[0] * a.offset) / det,
        ])
    };
    let outside = |h: &Halfplane, p: Point2| dot(h.normal, p) > h.offset + eps;

    let mut dq: std::collections::VecDeque<Halfplane> = std::collections::VecDeque::new();
    for h in dedup {
        while dq.len() >= 2 {
            let p = intersect(&dq[dq.len() - 2], &dq[dq.len() - 1])?;
            if outside(&h, p) {
                dq.pop_back();
            } else {
                break;
            }
        }
        while dq.len() >= 2 {
            let p = intersect(&dq[0], &dq[1])?;
            if outside(&h, p) {
                dq.pop_front();
            } else {
                break;
            }
        }
        dq.push_back(h);
    }
    while dq.len() >= 3 {
        let p = intersect(&dq[dq.len() - 2], &dq[dq.len() - 1])?;
        if outside(&dq[0], p) {
            dq.pop_back();
        } else {
            break;
        }
    }
    while dq.len() >= 3 {
        let p = intersect(&dq[0], &dq[1])?;
        if outside(&dq[dq.len() - 1], p) {
            dq.pop_front();
        } else {
            break;
        }
    }
    if dq.len() < 3 {
        return None;
    }
    let m = dq.len();
    let mut verts: Vec<Point2> = Vec::with_capacity(m);
    for i in 0..m {
        let p = intersect(&dq[i], &dq[(i + 1) % m])?;
        if verts.last().map_or(true, |&q| norm(sub(p, q)) > 1e-12 * scale) {
            verts.push(p);
        }
    }
    while verts.len() > 1 && norm(sub(verts[0], *verts.last().unwrap())) <= 1e-12 * scale {
        verts.pop();
    }
    if verts.len() < 3 {
        return None;
    }
    Some(verts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> Polygon {
        Polygon::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap()
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Polygon::new(vec![[0.0, 0.0], [1.0, 0.0]]).is_err());
        // clockwise
        assert!(Polygon::new(vec![[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]]).is_err());
        // repeated vertex
        assert!(Polygon::new(vec![[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).is_err());
        // non-convex
        assert!(Polygon::new(vec![[0.0, 0.0], [2.0, 0.0], [1.0, 0.2], [1.0, 1.0]]).is_err());
        // pentagram winds twice
        let star: Vec<Point2> = (0..5)
            .map(|i| {
                let th = 4.0 * std::f64::consts::PI * i as f64 / 5.0;
                [th.cos(), th.sin()]
            })
            .collect();
        assert!(Polygon::new(star).is_err());
    }

    #[test]
    fn collinear_vertices_are_dropped() {
        let p = Polygon::new(vec![[0.0, 0.0], [0.5, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn square_measures() {
        let s = unit_square();
        assert_eq!(s.area(), 1.0);
        assert_eq!(s.perimeter(), 4.0);
        assert!((s.min_width() - 1.0).abs() < 1e-15);
        assert!((s.diameter() - 2f64.sqrt()).abs() < 1e-15);
        assert!((s.inradius().unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn hull_of_cloud() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.5, 0.5], [1.0, 1.0], [0.0, 1.0], [0.2, 0.7]];
        let h = Polygon::convex_hull(&pts).unwrap();
        assert_eq!(h.vertices().len(), 4);
        assert!((h.area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn inner_offset_of_square() {
        let s = unit_square();
        let inner = s.inner_offset(0.25).unwrap();
        assert!((inner.area() - 0.25).abs() < 1e-14);
        assert!((inner.perimeter() - 2.0).abs() < 1e-14);
        assert!(s.inner_offset(0.5).is_none());
    }

    #[test]
    fn skeleton_of_rectangle_and_triangle() {
        let r = Polygon::new(vec![[0.0, 0.0], [4.0, 0.0], [4.0, 1.0], [0.0, 1.0]]).unwrap();
        let ev = r.skeleton_events();
        assert_eq!(ev.len(), 1);
        assert!((ev[0] - 0.5).abs() < 1e-12);
        let t = Polygon::new(vec![[0.0, 0.0], [1.0, 0.0], [0.5, 3f64.sqrt() / 2.0]]).unwrap();
        let ev = t.skeleton_events();
        assert!((ev.last().unwrap() - 3f64.sqrt() / 6.0).abs() < 1e-12);
    }

    #[test]
    fn skeleton_events_of_irregular_pentagon() {
        let p = Polygon::new(vec![[0.0, 0.0], [3.0, 0.0], [3.4, 0.8], [1.5, 2.0], [-0.3, 1.0]]).unwrap();
        let ev = p.skeleton_events();
        assert!(ev.len() >= 2, "{ev:?}");
        assert!(ev.windows(2).all(|w| w[0] < w[1]));
        assert!((ev.last().unwrap() - p.inradius().unwrap()).abs() < 1e-9);
        // between events the vertex count drops by at least one
        let before = p.inner_offset(0.5 * ev[0]).unwrap().vertices().len();
        let after = p.inner_offset(0.5 * (ev[0] + ev[1])).unwrap().vertices().len();
        assert!(after < before);
    }
}
