#![allow(dead_code)]

use hessian_polya::bodies::{make_family, ConvexBody, Family, Polygon};
use std::f64::consts::PI;

/// The reference set of bodies: disk, square, rectangles, regular polygons,
/// seeded random polygons, the unit cube, boxes and prisms.
pub fn zoo() -> Vec<(String, ConvexBody)> {
    let mut z: Vec<(String, ConvexBody)> = vec![
        ("disk".into(), ConvexBody::ball(2, 1.0).unwrap()),
        ("square".into(), ConvexBody::cuboid(vec![1.0, 1.0]).unwrap()),
        ("rect_2x05".into(), ConvexBody::cuboid(vec![2.0, 0.5]).unwrap()),
        ("rect_3x1".into(), ConvexBody::cuboid(vec![3.0, 1.0]).unwrap()),
    ];
    for n in [3, 5, 6, 8] {
        z.push((format!("ngon{n}"), ConvexBody::Polygon(Polygon::regular(n, 1.0).unwrap())));
    }
    let random = make_family(&Family::RandomPolygons { count: 10, points: 12, inner: 0.5, seed: 2024 }).unwrap();
    z.extend(random.into_iter().map(|m| (m.label, m.body)));
    z.push(("cube".into(), ConvexBody::cuboid(vec![1.0, 1.0, 1.0]).unwrap()));
    for sides in [[2.0, 1.0, 0.5], [1.0, 1.0, 0.25], [3.0, 1.0, 1.0]] {
        z.push((format!("box_{}x{}x{}", sides[0], sides[1], sides[2]), ConvexBody::cuboid(sides.to_vec()).unwrap()));
    }
    let tri = ConvexBody::Polygon(Polygon::regular(3, 1.0).unwrap());
    z.push(("prism_tri".into(), ConvexBody::prism(tri, 1.0).unwrap()));
    let hex = ConvexBody::Polygon(Polygon::regular(6, 1.0).unwrap());
    z.push(("prism_hex".into(), ConvexBody::prism(hex, 0.5).unwrap()));
    z
}

/// Bessel `J_0` by its power series, good to rounding for `x < 6`.
fn bessel_j0(x: f64) -> f64 {
    let q = -x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..60 {
        term *= q / (m as f64 * m as f64);
        sum += term;
    }
    sum
}

/// First positive zero of `J_0` by bisection on `[2, 3]`.
pub fn j0_first_zero() -> f64 {
    let (mut a, mut b) = (2.0, 3.0);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if bessel_j0(a) * bessel_j0(m) <= 0.0 {
            b = m;
        } else {
            a = m;
        }
    }
    0.5 * (a + b)
}

/// `int v` for `-Delta v = 1` on an `a x b` rectangle from the double sine
/// series, truncated at `terms` odd modes per direction.
pub fn rectangle_torsion_double_series(a: f64, b: f64, terms: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..terms {
        let m = (2 * i + 1) as f64;
        for j in 0..terms {
            let n = (2 * j + 1) as f64;
            s += 1.0 / (m * m * n * n * (m * m / (a * a) + n * n / (b * b)));
        }
    }
    64.0 * a * b / PI.powi(6) * s
}

/// Area of `P + rho B` by Green's theorem along its boundary: translated
/// edges and circular arcs around the vertices.
pub fn outer_parallel_area(vertices: &[[f64; 2]], rho: f64) -> f64 {
    let n = vertices.len();
    let normal = |i: usize| {
        let (p, q) = (vertices[i], vertices[(i + 1) % n]);
        let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
        let l = (dx * dx + dy * dy).sqrt();
        [dy / l, -dx / l]
    };
    let mut twice = 0.0;
    for i in 0..n {
        let nv = normal(i);
        let p = vertices[i];
        let q = vertices[(i + 1) % n];
        let p1 = [p[0] + rho * nv[0], p[1] + rho * nv[1]];
        let q1 = [q[0] + rho * nv[0], q[1] + rho * nv[1]];
        twice += p1[0] * q1[1] - q1[0] * p1[1];
        // arc around q from this edge's normal to the next one
        let nn = normal((i + 1) % n);
        let a0 = nv[1].atan2(nv[0]);
        let mut a1 = nn[1].atan2(nn[0]);
        while a1 < a0 {
            a1 += 2.0 * PI;
        }
        // int (x dy - y dx) over the arc c + rho (cos t, sin t)
        let (c, d) = (q[0], q[1]);
        twice += rho * (c * (a1.sin() - a0.sin()) + d * (a0.cos() - a1.cos())) + rho * rho * (a1 - a0);
    }
    0.5 * twice
}

/// Prints one acceptance line and returns whether it passed.
pub fn report_line(id: &str, pass: bool, detail: &str) -> bool {
    println!("criterion {id}: {} {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}
