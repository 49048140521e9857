//! Orlicz projection bodies: the admissible function class, cone volume
//! measures, support functions, polar star bodies and the scalar
//! convexity-deficit bounds.

mod lemmas;
mod phi;
mod projection;

pub use lemmas::{convexity_deficit, opposite_sign_deficit_bound, second_order_deficit_bound};
pub use phi::{PhiFunction, PhiSpec};
pub use projection::{
    classical_projection_support, cone_volume_measure, linfty_polar, lp_support, orlicz_support,
    polar_membership, polar_radial_orlicz, polar_volume, volume_ratio, ConeVolumeMeasure,
    OrliczPolarStar, PolarVolume,
};

use thiserror::Error;

use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrliczError {
    #[error("origin is not strictly interior to the body")]
    OriginNotInterior,
    #[error("membership functional stays below one; direction is unbounded")]
    UnboundedDirection,
    #[error("invalid Orlicz function: {0}")]
    InvalidPhi(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
