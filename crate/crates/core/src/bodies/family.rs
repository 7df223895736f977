//! Parametrized families of bodies used in sweeps.

use super::{ConvexBody, Polygon};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `l^{-1/(n-1)} C x [-l/2, l/2]` with `C` the unit cube of dimension
    /// `n - 1`, so every member has unit volume.
    ThinningCylinders { dim: usize, lengths: Vec<f64> },
    /// Ellipses with semi-axes `1/eps` and `eps` (area pi).
    Ellipses { eps: Vec<f64> },
    RegularPolygons { sides: Vec<usize>, circumradius: f64 },
    /// Convex hulls of `points` uniform samples from the annulus
    /// `inner <= |x| <= 1`.
    RandomPolygons { count: usize, points: usize, inner: f64, seed: u64 },
    Scaled { base: ConvexBody, factors: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyMember {
    pub label: String,
    /// The family parameter (length, eps, side count, sample index or scale).
    pub param: f64,
    pub body: ConvexBody,
}

fn bad<T>(msg: String) -> Result<T> {
    Err(Error::InvalidArgument(msg))
}

pub fn make_family(family: &Family) -> Result<Vec<FamilyMember>> {
    match family {
        Family::ThinningCylinders { dim, lengths } => {
            if *dim < 2 {
                return bad(format!("thinning cylinders need dimension >= 2, got {dim}"));
            }
            lengths
                .iter()
                .map(|&l| {
                    if !(l > 0.0) {
                        return bad(format!("cylinder length must be positive, got {l}"));
                    }
                    let mut sides = vec![l.powf(-1.0 / (*dim as f64 - 1.0)); dim - 1];
                    sides.push(l);
                    Ok(FamilyMember { label: format!("cylinder_l{l}"), param: l, body: ConvexBody::cuboid(sides)? })
                })
                .collect()
        }
        Family::Ellipses { eps } => eps
            .iter()
            .map(|&e| {
                if !(e > 0.0) {
                    return bad(format!("ellipse parameter must be positive, got {e}"));
                }
                let body = if e == 1.0 { ConvexBody::ball(2, 1.0)? } else { ConvexBody::ellipse(1.0 / e, e)? };
                Ok(FamilyMember { label: format!("ellipse_eps{e}"), param: e, body })
            })
            .collect(),
        Family::RegularPolygons { sides, circumradius } => sides
            .iter()
            .map(|&n| {
                if n < 3 {
                    return bad(format!("regular polygon needs >= 3 sides, got {n}"));
                }
                Ok(FamilyMember {
                    label: format!("ngon{n}"),
                    param: n as f64,
                    body: ConvexBody::Polygon(Polygon::regular(n, *circumradius)?),
                })
            })
            .collect(),
        Family::RandomPolygons { count, points, inner, seed } => {
            if *points < 3 || !(0.0..1.0).contains(inner) {
                return bad("random polygons need >= 3 points and 0 <= inner < 1".into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut out = Vec::with_capacity(*count);
            for i in 0..*count {
                let pts: Vec<[f64; 2]> = (0..*points)
                    .map(|_| {
                        let r = rng.gen_range(inner * inner..=1.0f64).sqrt();
                        let th = rng.gen_range(0.0..std::f64::consts::TAU);
                        [r * th.cos(), r * th.sin()]
                    })
                    .collect();
                let body = ConvexBody::Polygon(Polygon::convex_hull(&pts)?);
                out.push(FamilyMember { label: format!("random{seed}_{i}"), param: i as f64, body });
            }
            Ok(out)
        }
        Family::Scaled { base, factors } => factors
            .iter()
            .map(|&t| Ok(FamilyMember { label: format!("scaled_t{t}"), param: t, body: base.scaled(t)? }))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thinning_rectangle_has_unit_area() {
        let f = make_family(&Family::ThinningCylinders { dim: 2, lengths: vec![0.25] }).unwrap();
        assert_eq!(f[0].body, ConvexBody::cuboid(vec![4.0, 0.25]).unwrap());
        let g = make_family(&Family::ThinningCylinders { dim: 3, lengths: vec![0.1, 3.0] }).unwrap();
        for m in g {
            assert!((m.body.volume() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ellipse_and_scale_members() {
        let f = make_family(&Family::Ellipses { eps: vec![1.0, 0.5] }).unwrap();
        assert_eq!(f[0].body, ConvexBody::ball(2, 1.0).unwrap());
        assert_eq!(f[1].body, ConvexBody::ellipse(2.0, 0.5).unwrap());
        let s = make_family(&Family::Scaled { base: ConvexBody::ball(2, 1.0).unwrap(), factors: vec![2.0] }).unwrap();
        assert_eq!(s[0].body, ConvexBody::ball(2, 2.0).unwrap());
    }

    #[test]
    fn random_polygons_are_reproducible() {
        let spec = Family::RandomPolygons { count: 5, points: 10, inner: 0.5, seed: 7 };
        assert_eq!(make_family(&spec).unwrap(), make_family(&spec).unwrap());
        let other = Family::RandomPolygons { count: 5, points: 10, inner: 0.5, seed: 8 };
        assert_ne!(make_family(&spec).unwrap(), make_family(&other).unwrap());
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(make_family(&Family::Ellipses { eps: vec![0.0] }).is_err());
        assert!(make_family(&Family::RegularPolygons { sides: vec![2], circumradius: 1.0 }).is_err());
        assert!(make_family(&Family::ThinningCylinders { dim: 2, lengths: vec![-1.0] }).is_err());
    }
}
