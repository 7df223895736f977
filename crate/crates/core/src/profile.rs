//! Inner parallel bodies, the volume and perimeter profiles `mu(t)`, `P(t)`
//! on `[-r, 0]`, and the web-function lower bound for the k-torsion.

use crate::bodies::{halfplane_intersection, ConvexBody, Halfplane, Polygon, Polytope};
use crate::error::{Error, Result};
use crate::special::{binomial, unit_ball_volume};
use serde::Serialize;
use std::fmt::Write as _;

/// Vertex count of the polygon standing in for an ellipse.
pub const ELLIPSE_POLYGON_SIDES: usize = 512;

/// Default number of profile samples.
pub const DEFAULT_SAMPLES: usize = 257;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampling {
    Uniform,
    Chebyshev,
}

/// Polygon circumscribed about the ellipse, with edges tangent at outward
/// normal angles `2 pi j / sides`. With `sides` divisible by 4 the axis
/// normals are included, so the inradius is exactly `min(a, b)`.
pub fn ellipse_polygon(a: f64, b: f64, sides: usize) -> Result<Polygon> {
    let planes: Vec<Halfplane> = (0..sides)
        .map(|j| {
            let th = std::f64::consts::TAU * j as f64 / sides as f64;
            let (s, c) = th.sin_cos();
            Halfplane { normal: [c, s], offset: ((a * c).powi(2) + (b * s).powi(2)).sqrt() }
        })
        .collect();
    let verts = halfplane_intersection(&planes, 2.0 * a.max(b))
        .ok_or_else(|| Error::InvalidBody("ellipse polygon is degenerate".into()))?;
    Polygon::new(verts)
}

/// Evaluates `mu` and `P` of inner parallel bodies without materializing
/// them where closed forms exist.
#[derive(Clone, Debug)]
enum Section {
    Ball { dim: usize, radius: f64 },
    Cuboid { sides: Vec<f64> },
    Polygon(Polygon),
    Polytope(Polytope),
    Prism { base: Box<Section>, height: f64, base_inradius: f64 },
}

impl Section {
    fn of(body: &ConvexBody) -> Result<Section> {
        Ok(match body {
            ConvexBody::Ball { dim, radius } => Section::Ball { dim: *dim, radius: *radius },
            ConvexBody::Cuboid { sides } => Section::Cuboid { sides: sides.clone() },
            ConvexBody::Polygon(p) => Section::Polygon(p.clone()),
            ConvexBody::Ellipse { a, b } => Section::Polygon(ellipse_polygon(*a, *b, ELLIPSE_POLYGON_SIDES)?),
            ConvexBody::Polytope(p) => Section::Polytope(p.clone()),
            ConvexBody::Prism { base, height } => Section::Prism {
                base: Box::new(Section::of(base)?),
                height: *height,
                base_inradius: base.inradius()?,
            },
        })
    }

    /// `(mu, P)` at depth `s >= 0`; `None` when the inner body is empty.
    fn eval(&self, s: f64) -> Option<(f64, f64)> {
        match self {
            Section::Ball { dim, radius } => {
                let r = radius - s;
                if r <= 0.0 {
                    return None;
                }
                let w = unit_ball_volume(*dim);
                Some((w * r.powi(*dim as i32), *dim as f64 * w * r.powi(*dim as i32 - 1)))
            }
            Section::Cuboid { sides } => {
                let a: Vec<f64> = sides.iter().map(|x| x - 2.0 * s).collect();
                if a.iter().any(|x| *x <= 0.0) {
                    return None;
                }
                let vol: f64 = a.iter().product();
                let per = 2.0
                    * (0..a.len())
                        .map(|i| a.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, x)| x).product::<f64>())
                        .sum::<f64>();
                Some((vol, per))
            }
            Section::Polygon(p) => p.inner_offset(s).map(|q| (q.area(), q.perimeter())),
            Section::Polytope(p) => p.inner_offset(s).map(|q| (q.volume(), q.surface_area())),
            Section::Prism { base, height, .. } => {
                let l = height - 2.0 * s;
                if l <= 0.0 {
                    return None;
                }
                let (mb, pb) = base.eval(s)?;
                Some((mb * l, 2.0 * mb + l * pb))
            }
        }
    }

    /// Depths in `(0, r)` where `mu` stops being a single polynomial.
    fn breakpoints(&self, r: f64) -> Vec<f64> {
        let mut out = match self {
            Section::Polygon(p) => p.skeleton_events(),
            Section::Prism { base, height, base_inradius } => {
                let mut b = base.breakpoints(*base_inradius);
                b.push(0.5 * height);
                b
            }
            _ => Vec::new(),
        };
        out.retain(|s| *s > 0.0 && *s < r);
        out
    }
}

/// Inner parallel body `Omega_t` for `-r <= t <= 0`. Returns `Ok(None)` for
/// the empty body at `t = -r`. Ellipses return the offset of their
/// circumscribed 512-gon.
pub fn inner_body(body: &ConvexBody, t: f64) -> Result<Option<ConvexBody>> {
    let r = body.inradius()?;
    if !(t <= 0.0 && t >= -r) {
        return Err(Error::InvalidArgument(format!("offset {t} outside [-{r}, 0]")));
    }
    if t == -r {
        return Ok(None);
    }
    let s = -t;
    Ok(match body {
        ConvexBody::Ball { dim, radius } => Some(ConvexBody::Ball { dim: *dim, radius: radius - s }),
        ConvexBody::Cuboid { sides } => Some(ConvexBody::Cuboid { sides: sides.iter().map(|a| a - 2.0 * s).collect() }),
        ConvexBody::Polygon(p) => p.inner_offset(s).map(ConvexBody::Polygon),
        ConvexBody::Ellipse { a, b } => {
            ellipse_polygon(*a, *b, ELLIPSE_POLYGON_SIDES)?.inner_offset(s).map(ConvexBody::Polygon)
        }
        ConvexBody::Polytope(p) => p.inner_offset(s).map(ConvexBody::Polytope),
        ConvexBody::Prism { base, height } => match inner_body(base, t)? {
            Some(b) => Some(ConvexBody::Prism { base: Box::new(b), height: height - 2.0 * s }),
            None => None,
        },
    })
}

/// Clenshaw-Curtis weights on `[-1, 1]` for the nodes `cos(j pi / n)`,
/// `n` even.
fn clenshaw_curtis_weights(n: usize) -> Vec<f64> {
    let nf = n as f64;
    let mut w = vec![0.0; n + 1];
    w[0] = 1.0 / (nf * nf - 1.0);
    w[n] = w[0];
    for (j, wj) in w.iter_mut().enumerate().take(n).skip(1) {
        let th = std::f64::consts::PI * j as f64 / nf;
        let mut v = 1.0;
        for k in 1..n / 2 {
            v -= 2.0 * (2.0 * k as f64 * th).cos() / (4.0 * (k * k) as f64 - 1.0);
        }
        v -= (nf * th).cos() / (nf * nf - 1.0);
        *wj = 2.0 * v / nf;
    }
    w
}

fn simpson_weights(n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..=n).map(|j| if j % 2 == 1 { 4.0 } else { 2.0 }).collect();
    w[0] = 1.0;
    w[n] = 1.0;
    w.iter().map(|x| x / (3.0 * n as f64)).collect()
}

/// One quadrature panel: node index range `[start, start + n]` of the global
/// sample arrays, with fine weights for `n` intervals and coarse weights on
/// every other node.
#[derive(Clone, Debug)]
struct Panel {
    start: usize,
    fine: Vec<f64>,
    coarse: Vec<f64>,
}

/// Volume and perimeter profiles of the inner parallel bodies.
#[derive(Clone, Debug)]
pub struct Profile {
    pub dim: usize,
    pub inradius: f64,
    /// Quermassintegrals of the body itself.
    pub quermass: Vec<f64>,
    pub sampling: Sampling,
    /// Increasing offsets from `-r` to `0`.
    pub t: Vec<f64>,
    pub mu: Vec<f64>,
    pub perimeter: Vec<f64>,
    /// Offsets where the profile is only piecewise smooth.
    pub breakpoints: Vec<f64>,
    /// Relative gap between `mu(0)` and the body volume (nonzero only for
    /// ellipses, which are sampled through a polygon).
    pub volume_defect: f64,
    panels: Vec<Panel>,
    section: Section,
}

/// Value of an integral with the difference to its nested coarse estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

/// Result of the web-function lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WebBound {
    pub k: usize,
    /// `k [ int mu^{1+1/k} / (n W_k)^{1/k} ]^k`.
    pub value: f64,
    /// Propagated quadrature error of `value`.
    pub error: f64,
    /// `C(n-1, k-1)`: the level-set integral of a web function carries this
    /// factor, which the closed form above drops. It is 1 whenever `k = 1`
    /// or `k = n`.
    pub level_set_factor: f64,
    /// `value / level_set_factor`, a lower bound for every `k`.
    pub certified: f64,
}

pub fn compute_profile(body: &ConvexBody, m: usize) -> Result<Profile> {
    compute_profile_with(body, m, Sampling::Chebyshev)
}

pub fn compute_profile_with(body: &ConvexBody, m: usize, sampling: Sampling) -> Result<Profile> {
    if m < 16 {
        return Err(Error::InvalidArgument(format!("profile needs at least 16 samples, got {m}")));
    }
    let section = Section::of(body)?;
    let r = body.inradius()?;
    let n = body.dim();

    // panel boundaries in depth s = -t, merged when closer than 4r/m
    let min_gap = 4.0 * r / m as f64;
    let mut cuts = vec![0.0];
    let mut raw = section.breakpoints(r);
    raw.sort_by(f64::total_cmp);
    for s in raw {
        if s - cuts[cuts.len() - 1] >= min_gap && r - s >= min_gap {
            cuts.push(s);
        }
    }
    cuts.push(r);
    // convert to increasing t
    let mut edges: Vec<f64> = cuts.iter().rev().map(|s| -s).collect();
    edges[0] = -r;
    *edges.last_mut().unwrap() = 0.0;

    let intervals = m - 1;
    let mut t = vec![-r];
    let mut panels = Vec::new();
    for w in edges.windows(2) {
        let (a, b) = (w[0], w[1]);
        let quarter = ((intervals as f64) * (b - a) / (4.0 * r)).round().max(1.0) as usize;
        let nint = 4 * quarter;
        let start = t.len() - 1;
        for j in 1..=nint {
            let x = match sampling {
                Sampling::Uniform => j as f64 / nint as f64,
                Sampling::Chebyshev => 0.5 * (1.0 - (std::f64::consts::PI * j as f64 / nint as f64).cos()),
            };
            t.push(if j == nint { b } else { a + (b - a) * x });
        }
        let (fine, coarse) = match sampling {
            Sampling::Uniform => (simpson_weights(nint), simpson_weights(nint / 2)),
            Sampling::Chebyshev => (clenshaw_curtis_weights(nint), clenshaw_curtis_weights(nint / 2)),
        };
        let half = 0.5 * (b - a);
        let scale = |v: Vec<f64>| -> Vec<f64> {
            match sampling {
                Sampling::Uniform => v.into_iter().map(|x| x * (b - a)).collect(),
                Sampling::Chebyshev => v.into_iter().map(|x| x * half).collect(),
            }
        };
        panels.push(Panel { start, fine: scale(fine), coarse: scale(coarse) });
    }

    let mut mu = Vec::with_capacity(t.len());
    let mut per = Vec::with_capacity(t.len());
    let mut missing = Vec::new();
    for (i, &ti) in t.iter().enumerate() {
        let s = if i == 0 { r * (1.0 - 1e-10) } else { -ti };
        match section.eval(s) {
            Some((v, p)) => {
                mu.push(if i == 0 { 0.0 } else { v });
                per.push(p);
            }
            None => {
                mu.push(0.0);
                per.push(f64::NAN);
                missing.push(i);
            }
        }
    }
    // inner bodies too thin to resolve just above the collapse: extend
    // P^{1/(n-1)} linearly from the right (an upper estimate by concavity)
    let e = 1.0 / (n as f64 - 1.0);
    for &i in missing.iter().rev() {
        let j = (i + 1..t.len()).find(|&j| per[j].is_finite() && per.get(j + 1).is_some_and(|p| p.is_finite()));
        let Some(j) = j else {
            return Err(Error::ProfileInvariant(format!("inner body empty at t = {}", t[i])));
        };
        let (f1, f2) = (per[j].powf(e), per[j + 1].powf(e));
        let slope = (f2 - f1) / (t[j + 1] - t[j]);
        per[i] = (f1 + slope * (t[i] - t[j])).max(0.0).powf(1.0 / e);
        if i > 0 {
            mu[i] = 0.0;
        }
    }

    // the endpoint value is the limit from the right
    if per.len() > 2 && per[1].is_finite() && per[2].is_finite() {
        let (f1, f2) = (per[1].powf(e), per[2].powf(e));
        let slope = (f2 - f1) / (t[2] - t[1]);
        per[0] = (f1 + slope * (t[0] - t[1])).max(0.0).powf(1.0 / e);
    }

    let volume = body.volume();
    let mu_end = *mu.last().unwrap();
    let volume_defect = (mu_end - volume).abs() / volume;
    let profile = Profile {
        dim: n,
        inradius: r,
        quermass: body.quermassintegrals()?,
        sampling,
        breakpoints: edges[1..edges.len() - 1].to_vec(),
        t,
        mu,
        perimeter: per,
        volume_defect,
        panels,
        section,
    };
    let tol = if matches!(body, ConvexBody::Ellipse { .. }) { 1e-9 + 2.0 * volume_defect } else { 1e-9 };
    if volume_defect > tol {
        return Err(Error::ProfileInvariant(format!("mu(0) = {mu_end} differs from volume {volume}")));
    }
    profile.check_invariants()?;
    Ok(profile)
}

impl Profile {
    /// `|Omega|` as seen by the profile, i.e. `mu(0)`.
    pub fn volume(&self) -> f64 {
        *self.mu.last().unwrap()
    }

    /// `P(Omega)` as seen by the profile, i.e. `P(0)`.
    pub fn surface(&self) -> f64 {
        *self.perimeter.last().unwrap()
    }

    /// Evaluates `(mu(t), P(t))` directly rather than by interpolation.
    pub fn eval(&self, t: f64) -> Result<(f64, f64)> {
        if !(t <= 0.0 && t >= -self.inradius) {
            return Err(Error::InvalidArgument(format!("offset {t} outside [-{}, 0]", self.inradius)));
        }
        Ok(self.section.eval(-t).unwrap_or((0.0, 0.0)))
    }

    fn check_invariants(&self) -> Result<()> {
        let n = self.t.len();
        let vol = self.volume();
        let surf = self.surface();
        let r = self.inradius;
        let e = 1.0 / (self.dim as f64 - 1.0);
        if self.mu[0] > 1e-6 * vol {
            return Err(Error::ProfileInvariant("mu(-r) is not negligible".into()));
        }
        for i in 1..n {
            if self.mu[i] < self.mu[i - 1] - 1e-12 * vol {
                return Err(Error::ProfileInvariant(format!("mu decreases at t = {}", self.t[i])));
            }
            if self.perimeter[i] < self.perimeter[i - 1] - 1e-9 * surf {
                return Err(Error::ProfileInvariant(format!("P decreases at t = {}", self.t[i])));
            }
        }
        let pe: Vec<f64> = self.perimeter.iter().map(|p| p.powf(e)).collect();
        for i in 1..n - 1 {
            let (a, b, c) = (self.t[i - 1], self.t[i], self.t[i + 1]);
            let dd = |f: &[f64]| {
                ((f[i + 1] - f[i]) / (c - b) - (f[i] - f[i - 1]) / (b - a)) / (c - a)
            };
            // divided differences amplify rounding by ~eps * f / h^2
            let h2 = (b - a).min(c - b).powi(2);
            if dd(&self.mu) < -1e-8 * vol / (r * r) - 1e-13 * vol / h2 {
                return Err(Error::ProfileInvariant(format!("mu not convex at t = {b}")));
            }
            if dd(&pe) > 1e-8 * pe[n - 1] / (r * r) + 1e-13 * pe[n - 1] / h2 {
                return Err(Error::ProfileInvariant(format!("P^(1/(n-1)) not concave at t = {b}")));
            }
        }
        Ok(())
    }

    /// Integrates `f(t, mu, P)` over `[-r, 0]` panel by panel; the error is
    /// the gap to the nested rule on every other node.
    pub fn integrate(&self, f: impl Fn(f64, f64, f64) -> f64) -> Quadrature {
        let vals: Vec<f64> = (0..self.t.len()).map(|i| f(self.t[i], self.mu[i], self.perimeter[i])).collect();
        let mut fine = 0.0;
        let mut coarse = 0.0;
        for p in &self.panels {
            fine += p.fine.iter().enumerate().map(|(j, w)| w * vals[p.start + j]).sum::<f64>();
            coarse += p.coarse.iter().enumerate().map(|(j, w)| w * vals[p.start + 2 * j]).sum::<f64>();
        }
        Quadrature { value: fine, error: (fine - coarse).abs() }
    }

    /// Web-function lower bound for the k-torsion.
    pub fn web_lower_bound(&self, k: usize) -> Result<WebBound> {
        let n = self.dim;
        if k < 1 || k > n {
            return Err(Error::InvalidArgument(format!("k = {k} outside 1..={n}")));
        }
        let kf = k as f64;
        let q = self.integrate(|_, mu, _| mu.powf(1.0 + 1.0 / kf));
        if q.error > 0.01 * q.value {
            return Err(Error::RefinementNeeded(format!(
                "web-bound quadrature error {:.3e} exceeds 1% of {:.3e}",
                q.error, q.value
            )));
        }
        let nwk = n as f64 * self.quermass[k];
        let value = kf * (q.value / nwk.powf(1.0 / kf)).powi(k as i32);
        let factor = binomial(n - 1, k - 1);
        Ok(WebBound {
            k,
            value,
            error: value * kf * q.error / q.value,
            level_set_factor: factor,
            certified: value / factor,
        })
    }

    /// Maximum signed violation of `P(t) <= P(Omega) - c_n (|Omega| - mu(t)) / P(Omega)^{1/(n-1)}`
    /// over the samples (nonpositive when the inequality holds).
    pub fn check_amato_tonto(&self) -> f64 {
        let n = self.dim;
        let cn = crate::functionals::Constants::c_n(n);
        let vol = self.volume();
        let surf = self.surface();
        let denom = surf.powf(1.0 / (n as f64 - 1.0));
        self.mu
            .iter()
            .zip(&self.perimeter)
            .map(|(mu, p)| p - (surf - cn * (vol - mu) / denom))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `mu(-|Omega|/P) - |Omega| beta / (6n)` with `beta = P r / |Omega| - 1`.
    pub fn check_ags_lemma(&self) -> Result<f64> {
        let vol = self.volume();
        let surf = self.surface();
        let depth = vol / surf;
        if depth > self.inradius * (1.0 + 1e-12) {
            return Err(Error::ProfileInvariant(format!(
                "|Omega|/P = {depth} exceeds the inradius {}",
                self.inradius
            )));
        }
        let (mu, _) = self.eval(-depth.min(self.inradius))?;
        let beta = surf * self.inradius / vol - 1.0;
        Ok(mu - vol * beta / (6.0 * self.dim as f64))
    }

    /// `G(d) = int_0^d mu(-s)^{1/k} ds` on the sample offsets, so that
    /// `-G(dist(x, boundary))` is the optimal web function. Returned as
    /// `(depths, G)` with increasing depths.
    pub fn web_generator(&self, k: usize) -> (Vec<f64>, Vec<f64>) {
        let e = 1.0 / k as f64;
        let depths: Vec<f64> = self.t.iter().rev().map(|t| -t).collect();
        let vals: Vec<f64> = self.mu.iter().rev().map(|m| m.powf(e)).collect();
        let mut g = vec![0.0; depths.len()];
        for i in 1..depths.len() {
            g[i] = g[i - 1] + 0.5 * (vals[i] + vals[i - 1]) * (depths[i] - depths[i - 1]);
        }
        (depths, g)
    }

    /// CSV with columns `t,mu,P`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,mu,P\n");
        for i in 0..self.t.len() {
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", self.t[i], self.mu[i], self.perimeter[i]);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn cc_weights_integrate_polynomials() {
        for n in [4, 8, 16] {
            let w = clenshaw_curtis_weights(n);
            let sum: f64 = w.iter().sum();
            assert!((sum - 2.0).abs() < 1e-14);
            let x4: f64 = w
                .iter()
                .enumerate()
                .map(|(j, w)| w * (PI * j as f64 / n as f64).cos().powi(4))
                .sum();
            assert!((x4 - 0.4).abs() < 1e-14);
        }
    }

    #[test]
    fn disk_profile_is_exact() {
        let disk = ConvexBody::ball(2, 1.0).unwrap();
        let p = compute_profile(&disk, 64).unwrap();
        for i in 1..p.t.len() {
            let s = 1.0 + p.t[i];
            assert!((p.mu[i] - PI * s * s).abs() < 1e-13);
            assert!((p.perimeter[i] - 2.0 * PI * s).abs() < 1e-13);
        }
        let w = p.web_lower_bound(1).unwrap();
        assert!((w.value - PI / 10.0).abs() < 1e-12, "{}", w.value);
        let w2 = p.web_lower_bound(2).unwrap();
        assert!((w2.value - PI * PI / 16.0).abs() < 1e-12, "{}", w2.value);
    }

    #[test]
    fn square_and_rectangle_profiles() {
        let sq = ConvexBody::cuboid(vec![1.0, 1.0]).unwrap();
        let p = compute_profile(&sq, 33).unwrap();
        let (mu, per) = p.eval(-0.25).unwrap();
        assert!((mu - 0.25).abs() < 1e-15 && (per - 2.0).abs() < 1e-15);
        assert!((p.web_lower_bound(1).unwrap().value - 0.025).abs() < 1e-13);
        assert!((p.check_ags_lemma().unwrap() - 1.0 / 6.0).abs() < 1e-13);
        assert!(p.check_amato_tonto() <= 1e-12);

        let rect = ConvexBody::cuboid(vec![4.0, 0.25]).unwrap();
        let q = compute_profile(&rect, 33).unwrap();
        let (mu, _) = q.eval(-1.0 / 16.0).unwrap();
        assert!((mu - 0.484375).abs() < 1e-15);
        assert!(q.check_amato_tonto() <= 1e-8);
    }

    #[test]
    fn polygon_profile_matches_box() {
        let rect = ConvexBody::polygon(vec![[-2.0, -0.5], [2.0, -0.5], [2.0, 0.5], [-2.0, 0.5]]).unwrap();
        let boxed = ConvexBody::cuboid(vec![4.0, 1.0]).unwrap();
        let a = compute_profile(&rect, 65).unwrap();
        let b = compute_profile(&boxed, 65).unwrap();
        let la = a.web_lower_bound(1).unwrap().value;
        let lb = b.web_lower_bound(1).unwrap().value;
        assert!((la - lb).abs() < 1e-12 * lb);
        // the profile endpoint keeps the limiting perimeter 2 (L - l)
        assert!((a.perimeter[0] - 6.0).abs() < 1e-6);
    }

    #[test]
    fn pentagon_inner_body_vertices_at_depth() {
        let body = ConvexBody::polygon(vec![[0.0, 0.0], [3.0, 0.2], [3.5, 2.0], [1.2, 3.1], [-0.4, 1.6]]).unwrap();
        let r = body.inradius().unwrap();
        let ConvexBody::Polygon(inner) = inner_body(&body, -r / 2.0).unwrap().unwrap() else { panic!() };
        for v in inner.vertices() {
            assert!((body.boundary_distance(v) - r / 2.0).abs() < 1e-8);
        }
        assert!(inner_body(&body, -r).unwrap().is_none());
        assert!(inner_body(&body, 0.1).is_err());
    }

    #[test]
    fn profile_sampling_modes_agree() {
        let body = ConvexBody::polygon(vec![[0.0, 0.0], [3.0, 0.2], [3.5, 2.0], [1.2, 3.1], [-0.4, 1.6]]).unwrap();
        let a = compute_profile_with(&body, 257, Sampling::Chebyshev).unwrap().web_lower_bound(1).unwrap();
        let b = compute_profile_with(&body, 257, Sampling::Uniform).unwrap().web_lower_bound(1).unwrap();
        assert!((a.value - b.value).abs() < 1e-9 * a.value, "{} {}", a.value, b.value);
    }

    #[test]
    fn ellipse_profile_via_polygon() {
        let e = ConvexBody::ellipse(2.0, 0.5).unwrap();
        let p = compute_profile(&e, 257).unwrap();
        assert!(p.volume_defect < 1e-4);
        assert!((p.inradius - 0.5).abs() < 1e-15);
        let w = p.web_lower_bound(2).unwrap();
        assert!(w.value < PI * PI / 16.0);
    }

    #[test]
    fn prism_and_polytope_profiles() {
        let prism = ConvexBody::prism(ConvexBody::cuboid(vec![1.0, 2.0]).unwrap(), 3.0).unwrap();
        let boxed = ConvexBody::cuboid(vec![1.0, 2.0, 3.0]).unwrap();
        let a = compute_profile(&prism, 65).unwrap();
        let b = compute_profile(&boxed, 65).unwrap();
        for k in 1..=3 {
            let (x, y) = (a.web_lower_bound(k).unwrap().value, b.web_lower_bound(k).unwrap().value);
            assert!((x - y).abs() < 1e-12 * y);
        }
        let cube = ConvexBody::Polytope(Polytope::cuboid([-0.5; 3], [0.5; 3]).unwrap());
        let c = compute_profile(&cube, 65).unwrap();
        let d = compute_profile(&ConvexBody::cuboid(vec![1.0; 3]).unwrap(), 65).unwrap();
        let (x, y) = (c.web_lower_bound(1).unwrap().value, d.web_lower_bound(1).unwrap().value);
        assert!((x - y).abs() < 1e-10 * y);
    }
}
