//! JSON body descriptions.

use super::{ConvexBody, Halfspace, Polytope};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfspaceSpec {
    pub normal: [f64; 3],
    pub offset: f64,
}

/// A body as written in a JSON file, e.g. `{"type": "ellipse", "a": 2, "b": 0.5}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodySpec {
    Box {
        sides: Vec<f64>,
    },
    Ball {
        dim: usize,
        radius: f64,
    },
    Ellipse {
        a: f64,
        b: f64,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    Polytope3d {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vertices: Option<Vec<[f64; 3]>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        halfspaces: Option<Vec<HalfspaceSpec>>,
    },
    Prism {
        base: Box<BodySpec>,
        height: f64,
    },
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FileContents {
    One(BodySpec),
    Many { bodies: Vec<BodySpec> },
}

impl BodySpec {
    pub fn build(&self) -> Result<ConvexBody> {
        match self {
            BodySpec::Box { sides } => ConvexBody::cuboid(sides.clone()),
            BodySpec::Ball { dim, radius } => ConvexBody::ball(*dim, *radius),
            BodySpec::Ellipse { a, b } => ConvexBody::ellipse(*a, *b),
            BodySpec::Polygon { vertices } => ConvexBody::polygon(vertices.clone()),
            BodySpec::Polytope3d { vertices, halfspaces } => match (vertices, halfspaces) {
                (Some(v), None) => Ok(ConvexBody::Polytope(Polytope::from_vertices(v)?)),
                (None, Some(h)) => {
                    let hs: Vec<Halfspace> =
                        h.iter().map(|h| Halfspace { normal: h.normal, offset: h.offset }).collect();
                    Ok(ConvexBody::Polytope(Polytope::from_halfspaces(&hs)?))
                }
                _ => Err(Error::InvalidBody("polytope3d needs exactly one of vertices or halfspaces".into())),
            },
            BodySpec::Prism { base, height } => ConvexBody::prism(base.build()?, *height),
        }
    }

    pub fn from_body(body: &ConvexBody) -> BodySpec {
        match body {
            ConvexBody::Polygon(p) => BodySpec::Polygon { vertices: p.vertices().to_vec() },
            ConvexBody::Polytope(p) => BodySpec::Polytope3d { vertices: Some(p.vertices().to_vec()), halfspaces: None },
            ConvexBody::Cuboid { sides } => BodySpec::Box { sides: sides.clone() },
            ConvexBody::Ball { dim, radius } => BodySpec::Ball { dim: *dim, radius: *radius },
            ConvexBody::Ellipse { a, b } => BodySpec::Ellipse { a: *a, b: *b },
            ConvexBody::Prism { base, height } => {
                BodySpec::Prism { base: Box::new(BodySpec::from_body(base)), height: *height }
            }
        }
    }
}

/// Parses either a single body object or `{"bodies": [...]}`.
pub fn parse_bodies(text: &str) -> Result<Vec<ConvexBody>> {
    let contents: FileContents = serde_json::from_str(text)?;
    match contents {
        FileContents::One(b) => Ok(vec![b.build()?]),
        FileContents::Many { bodies } => bodies.iter().map(BodySpec::build).collect(),
    }
}

pub fn load_bodies(path: &Path) -> Result<Vec<ConvexBody>> {
    parse_bodies(&std::fs::read_to_string(path)?)
}
