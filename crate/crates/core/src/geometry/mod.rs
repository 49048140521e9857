//! Exact and quadrature-based primitives for convex bodies.
//!
//! Vectors are always stored as [`Vec3`]; planar bodies keep the third
//! coordinate at zero. This avoids generic dimension plumbing while the
//! 2D and 3D algorithms (hulls, sections, grids) stay separate where they
//! genuinely differ.

pub mod body;
pub mod grid;
pub mod moments;
pub mod polytope;
pub mod revolution;

pub use body::{Body, BodySpec};
pub use grid::{volume_from_radial, SphericalGrid};
pub use polytope::{build_polytope, halfspace_intersection, FacetData, Polytope};
pub use revolution::RevolutionBody;

use nalgebra::Vector3;
use thiserror::Error;

pub type Vec3 = Vector3<f64>;

/// Margin used for "origin strictly interior" checks on facet supports.
/// Radial and polar operations divide by supports, so a positive floor
/// is required.
pub const ORIGIN_MARGIN: f64 = 1e-9;

/// Coplanarity tolerance for merging hull facets.
pub const COPLANAR_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("input points are affinely dependent; hull is not full-dimensional")]
    DegenerateInput,
    #[error("origin is not strictly interior to the body")]
    OriginNotInterior,
    #[error("radial oracle returned a nonpositive value")]
    NonpositiveRadial,
    #[error("second-moment matrix is numerically singular")]
    SingularMoments,
    #[error("body is degenerate: {0}")]
    DegenerateBody(String),
    #[error("invalid body specification: {0}")]
    InvalidSpec(String),
}

/// Two unit vectors spanning the orthogonal complement of `v` (which must
/// be nonzero). For planar work pass a vector with zero third coordinate;
/// the first basis vector then lies in the plane.
pub fn orthonormal_complement(v: &Vec3) -> (Vec3, Vec3) {
    let u = v.normalize();
    // Pick the coordinate axis least aligned with u as the seed.
    let seed = if u.x.abs() <= u.y.abs() && u.x.abs() <= u.z.abs() {
        Vec3::x()
    } else if u.y.abs() <= u.z.abs() {
        Vec3::y()
    } else {
        Vec3::z()
    };
    let e1 = (seed - u * seed.dot(&u)).normalize();
    let e2 = u.cross(&e1);
    (e1, e2)
}

/// Counterclockwise rotation by 90 degrees in the plane.
pub fn rot90(v: &Vec3) -> Vec3 {
    Vec3::new(-v.y, v.x, 0.0)
}

/// Volume of the unit ball in the given dimension (dimensions 0..=3).
pub fn unit_ball_volume(dim: usize) -> f64 {
    match dim {
        0 => 1.0,
        1 => 2.0,
        2 => std::f64::consts::PI,
        3 => 4.0 * std::f64::consts::PI / 3.0,
        _ => unreachable!("only dimensions up to 3 are supported"),
    }
}
