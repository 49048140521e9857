//! JSON body specifications and the runtime body representation.

use serde::{Deserialize, Serialize};

use super::grid::fibonacci_sphere;
use super::polytope::{build_polytope, Polytope};
use super::revolution::RevolutionBody;
use super::{GeometryError, Vec3};

/// Wire format for describing a body. Balls, ellipsoids and cap bodies are
/// discretized into polytopes at a caller-chosen resolution; revolution
/// profiles are kept as revolution bodies. Axes are normalized on input.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BodySpec {
    Polytope { dim: usize, vertices: Vec<Vec<f64>> },
    Ball { dim: usize },
    Ellipsoid { dim: usize, semi_axes: Vec<f64> },
    Revolution { dim: usize, axis: Vec<f64>, profile: Vec<[f64; 2]> },
    CapBall { dim: usize, eps: f64 },
}

/// A concrete body: either an exact polytope or a sampled revolution body.
#[derive(Debug, Clone)]
pub enum Body {
    Polytope(Polytope),
    Revolution(RevolutionBody),
}

impl Body {
    pub fn dim(&self) -> usize {
        match self {
            Body::Polytope(k) => k.dim(),
            Body::Revolution(r) => r.dim(),
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            Body::Polytope(k) => k.volume(),
            Body::Revolution(r) => r.volume(),
        }
    }

    pub fn support(&self, x: &Vec3) -> f64 {
        match self {
            Body::Polytope(k) => k.support(x),
            Body::Revolution(r) => r.support(x),
        }
    }

    pub fn radial(&self, v: &Vec3) -> Result<f64, GeometryError> {
        match self {
            Body::Polytope(k) => k.radial(v),
            Body::Revolution(r) => r.radial(v),
        }
    }

    /// Radial function of the polar body, 1 / h(v).
    pub fn polar_radial(&self, v: &Vec3) -> Result<f64, GeometryError> {
        let h = self.support(v);
        if h <= 0.0 {
            return Err(GeometryError::OriginNotInterior);
        }
        Ok(1.0 / h)
    }

    pub fn section_measure(&self, v: &Vec3, t: f64) -> f64 {
        match self {
            Body::Polytope(k) => k.section_measure(v, t),
            Body::Revolution(r) => r.section_measure(v, t),
        }
    }

    pub fn as_polytope(&self) -> Option<&Polytope> {
        match self {
            Body::Polytope(k) => Some(k),
            _ => None,
        }
    }
}

fn vec_from(coords: &[f64], dim: usize) -> Result<Vec3, GeometryError> {
    if coords.len() != dim {
        return Err(GeometryError::InvalidSpec(format!(
            "expected {dim} coordinates, got {}",
            coords.len()
        )));
    }
    Ok(Vec3::new(coords[0], coords[1], if dim == 3 { coords[2] } else { 0.0 }))
}

/// Vertices of a ball discretization: a regular polygon in the plane, a
/// Fibonacci point hull in space.
pub fn ball_points(dim: usize, resolution: usize) -> Vec<Vec3> {
    match dim {
        2 => (0..resolution)
            .map(|j| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / resolution as f64;
                Vec3::new(theta.cos(), theta.sin(), 0.0)
            })
            .collect(),
        _ => fibonacci_sphere(resolution),
    }
}

impl BodySpec {
    pub fn dim(&self) -> usize {
        match *self {
            BodySpec::Polytope { dim, .. }
            | BodySpec::Ball { dim }
            | BodySpec::Ellipsoid { dim, .. }
            | BodySpec::Revolution { dim, .. }
            | BodySpec::CapBall { dim, .. } => dim,
        }
    }

    /// Build the concrete body, discretizing round shapes with
    /// `resolution` boundary points.
    pub fn build(&self, resolution: usize) -> Result<Body, GeometryError> {
        match self {
            BodySpec::Polytope { dim, vertices } => {
                let pts: Vec<Vec3> = vertices
                    .iter()
                    .map(|v| vec_from(v, *dim))
                    .collect::<Result<_, _>>()?;
                Ok(Body::Polytope(build_polytope(*dim, &pts)?))
            }
            BodySpec::Ball { dim } => {
                Ok(Body::Polytope(build_polytope(*dim, &ball_points(*dim, resolution))?))
            }
            BodySpec::Ellipsoid { dim, semi_axes } => {
                if semi_axes.len() != *dim || semi_axes.iter().any(|&a| a <= 0.0) {
                    return Err(GeometryError::InvalidSpec("bad semi-axes".into()));
                }
                let pts: Vec<Vec3> = ball_points(*dim, resolution)
                    .into_iter()
                    .map(|p| {
                        Vec3::new(
                            semi_axes[0] * p.x,
                            semi_axes[1] * p.y,
                            if *dim == 3 { semi_axes[2] * p.z } else { 0.0 },
                        )
                    })
                    .collect();
                Ok(Body::Polytope(build_polytope(*dim, &pts)?))
            }
            BodySpec::Revolution { dim, axis, profile } => {
                let axis = vec_from(axis, *dim)?;
                let heights: Vec<f64> = profile.iter().map(|p| p[0]).collect();
                let radii: Vec<f64> = profile.iter().map(|p| p[1]).collect();
                Ok(Body::Revolution(RevolutionBody::new(*dim, axis, heights, radii)?))
            }
            BodySpec::CapBall { dim, eps } => {
                if *eps < 0.0 {
                    return Err(GeometryError::InvalidSpec("cap parameter must be >= 0".into()));
                }
                let mut pts = ball_points(*dim, resolution);
                let pole = if *dim == 3 { Vec3::z() } else { Vec3::y() };
                pts.push(pole * (1.0 + eps));
                pts.push(-pole * (1.0 + eps));
                Ok(Body::Polytope(build_polytope(*dim, &pts)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_build_ball() {
        let spec: BodySpec = serde_json::from_str(r#"{"type":"ball","dim":2}"#).unwrap();
        let body = spec.build(256).unwrap();
        assert!((body.volume() - std::f64::consts::PI).abs() < 1e-3);
    }

    #[test]
    fn parse_polytope_spec() {
        let spec: BodySpec = serde_json::from_str(
            r#"{"type":"polytope","dim":2,"vertices":[[1,1],[-1,1],[-1,-1],[1,-1]]}"#,
        )
        .unwrap();
        let body = spec.build(0).unwrap();
        assert!((body.volume() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn parse_cap_ball() {
        let spec: BodySpec =
            serde_json::from_str(r#"{"type":"cap_ball","dim":2,"eps":0.2}"#).unwrap();
        let body = spec.build(128).unwrap();
        assert!((body.support(&Vec3::y()) - 1.2).abs() < 1e-12);
        assert!((body.support(&Vec3::x()) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn parse_revolution_normalizes_axis() {
        let spec: BodySpec = serde_json::from_str(
            r#"{"type":"revolution","dim":3,"axis":[0,0,2],"profile":[[-1,0],[0,1],[1,0]]}"#,
        )
        .unwrap();
        match spec.build(0).unwrap() {
            Body::Revolution(r) => assert!((r.axis().norm() - 1.0).abs() < 1e-12),
            _ => panic!("expected revolution body"),
        }
    }

    #[test]
    fn ellipsoid_volume() {
        let spec: BodySpec =
            serde_json::from_str(r#"{"type":"ellipsoid","dim":3,"semi_axes":[1,1,2]}"#).unwrap();
        let body = spec.build(2000).unwrap();
        let expect = 2.0 * 4.0 * std::f64::consts::PI / 3.0;
        assert!((body.volume() - expect).abs() < 0.02 * expect);
    }
}
