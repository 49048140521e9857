//! Numerical convex geometry in dimensions 2 and 3.
//!
//! The crate is organized around a few exact primitives (polytopes with
//! derived facet data, bodies of revolution given by a concave radius
//! profile) and quadrature on the sphere. On top of those it builds:
//!
//! * classical, L_p and Orlicz projection bodies and their polars,
//! * Steiner symmetrization, Schwarz rounding and spin normalization,
//! * affine-invariant distance functionals (Banach-Mazur distance to the
//!   ball for axially symmetric bodies, ellipsoidal deviation),
//! * an experiment driver that checks the Petty and Orlicz-Petty
//!   projection inequalities, their equality cases, and the scaling of
//!   the deficit for cap bodies.
//!
//! All bodies are immutable after construction and every operation is a
//! pure function of its inputs; reductions run in a fixed order so results
//! are deterministic for a fixed seed and grid resolution.

pub mod experiments;
pub mod geometry;
pub mod metrics;
pub mod orlicz;
pub mod symmetrize;

pub use geometry::{
    body::{Body, BodySpec},
    grid::{volume_from_radial, SphericalGrid},
    moments::{ellipsoid_moment_check, make_isotropic, moments, MomentData},
    polytope::{build_polytope, halfspace_intersection, FacetData, Polytope},
    revolution::RevolutionBody,
    GeometryError, Vec3,
};
pub use metrics::{
    bm_distance_to_ball_axial, el_deviation_axial, star_inclusion, steiner_symmetral_of_star,
    DistanceReport, MetricsError,
};
pub use orlicz::{
    classical_projection_support, cone_volume_measure, convexity_deficit, opposite_sign_deficit_bound,
    second_order_deficit_bound, linfty_polar, lp_support, orlicz_support, polar_membership,
    polar_radial_orlicz, polar_volume, volume_ratio, ConeVolumeMeasure, OrliczError,
    OrliczPolarStar, PhiFunction, PhiSpec,
};
pub use symmetrize::{schwarz_round, spin_normalize, steiner_2d, steiner_3d, SymmetrizeError};
