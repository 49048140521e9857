//! Classical, L_p and Orlicz projection bodies of polytopes, and their
//! polars as star bodies.
//!
//! For a polytope the surface area measure is atomic (one atom per facet),
//! so every support-function integral reduces to a finite sum and the
//! Orlicz support becomes a one-dimensional monotone root find.

use rayon::prelude::*;

use super::phi::PhiFunction;
use super::OrliczError;
use crate::geometry::grid::SphericalGrid;
use crate::geometry::polytope::{halfspace_intersection, Polytope};
use crate::geometry::Vec3;

/// Bisection tolerance (relative) for the scale root finds.
const ROOT_REL_TOL: f64 = 1e-10;

/// The cone volume measure of a polytope with interior origin: one atom
/// per facet with mass support * area / (n V), a probability measure.
#[derive(Debug, Clone)]
pub struct ConeVolumeMeasure {
    pub atoms: Vec<(Vec3, f64)>,
    pub total_mass: f64,
}

pub fn cone_volume_measure(k: &Polytope) -> Result<ConeVolumeMeasure, OrliczError> {
    if !k.contains_origin_interior() {
        return Err(OrliczError::OriginNotInterior);
    }
    let nv = k.dim() as f64 * k.volume();
    let atoms: Vec<(Vec3, f64)> =
        k.facets().iter().map(|f| (f.normal, f.support * f.area / nv)).collect();
    let total_mass = atoms.iter().map(|a| a.1).sum();
    Ok(ConeVolumeMeasure { atoms, total_mass })
}

/// Support function of the classical projection body: half the atomic sum
/// of |x . normal| * area. Equals ||x|| times the shadow measure of the
/// body orthogonal to x.
pub fn classical_projection_support(k: &Polytope, x: &Vec3) -> f64 {
    0.5 * k.facets().iter().map(|f| (x.dot(&f.normal)).abs() * f.area).sum::<f64>()
}

/// Support function of the L_p projection body:
/// h^p = (nV)^{-1} sum |x . u_i|^p h_i^{1-p} a_i.
pub fn lp_support(k: &Polytope, p: f64, x: &Vec3) -> Result<f64, OrliczError> {
    if p.is_nan() || p < 1.0 {
        return Err(OrliczError::InvalidPhi("p must be >= 1".into()));
    }
    if !k.contains_origin_interior() {
        return Err(OrliczError::OriginNotInterior);
    }
    let nv = k.dim() as f64 * k.volume();
    let sum: f64 = k
        .facets()
        .iter()
        .map(|f| x.dot(&f.normal).abs().powf(p) * f.support.powf(1.0 - p) * f.area)
        .sum();
    Ok((sum / nv).powf(1.0 / p))
}

/// Support function of the Orlicz projection body: the unique lambda > 0
/// with sum phi(x . u_i / (lambda h_i)) h_i a_i = n V, found by bracketing
/// and bisection (the sum is nonincreasing in lambda). Returns zero for
/// x = 0 without a root find.
pub fn orlicz_support(k: &Polytope, phi: &PhiFunction, x: &Vec3) -> Result<f64, OrliczError> {
    if !k.contains_origin_interior() {
        return Err(OrliczError::OriginNotInterior);
    }
    if x.norm() == 0.0 {
        return Ok(0.0);
    }
    let nv = k.dim() as f64 * k.volume();
    let weighted = |lambda: f64| -> f64 {
        k.facets()
            .iter()
            .map(|f| phi.eval(x.dot(&f.normal) / (lambda * f.support)) * f.support * f.area)
            .sum()
    };
    // Scale seed: the largest normalized height of the atoms.
    let seed = k
        .facets()
        .iter()
        .map(|f| x.dot(&f.normal).abs() / f.support)
        .fold(0.0_f64, f64::max)
        .max(1e-300);
    let mut hi = seed;
    let mut grow = 0;
    while weighted(hi) > nv {
        hi *= 2.0;
        grow += 1;
        if grow > 200 {
            return Err(OrliczError::UnboundedDirection);
        }
    }
    let mut lo = hi / 2.0;
    let mut shrink = 0;
    while weighted(lo) <= nv {
        hi = lo;
        lo /= 2.0;
        shrink += 1;
        if shrink > 2000 {
            // The level is not crossed; phi vanishes along this direction.
            return Ok(0.0);
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if weighted(mid) > nv {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= ROOT_REL_TOL * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The polar Orlicz projection body as a star body: x belongs to it if and
/// only if the membership functional
/// G(x) = sum phi(x . w_i / h_i) m_i (masses from the cone volume measure)
/// is at most one. G is convex with G(0) = 0, so the set is star-shaped
/// about the origin and radial values are monotone root finds.
#[derive(Debug, Clone)]
pub struct OrliczPolarStar {
    dim: usize,
    atoms: Vec<(Vec3, f64, f64)>, // (normal, support, mass)
    phi: PhiFunction,
    r_seed: f64,
}

impl OrliczPolarStar {
    pub fn new(k: &Polytope, phi: PhiFunction) -> Result<Self, OrliczError> {
        let cone = cone_volume_measure(k)?;
        let atoms: Vec<(Vec3, f64, f64)> = k
            .facets()
            .iter()
            .zip(cone.atoms.iter())
            .map(|(f, &(_, m))| (f.normal, f.support, m))
            .collect();
        let h_min = k.facets().iter().map(|f| f.support).fold(f64::INFINITY, f64::min);
        let r_seed = 2.0 * phi.c_phi() * (k.dim() as f64).sqrt() / h_min;
        Ok(Self { dim: k.dim(), atoms, phi, r_seed })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn phi(&self) -> &PhiFunction {
        &self.phi
    }

    /// Initial probe radius for bracketing searches against the star.
    pub fn radius_probe(&self) -> f64 {
        self.r_seed
    }

    /// The membership functional G.
    pub fn membership_functional(&self, x: &Vec3) -> f64 {
        self.atoms.iter().map(|(w, h, m)| self.phi.eval(x.dot(w) / h) * m).sum()
    }

    /// Membership with the functional value reported.
    pub fn contains(&self, x: &Vec3) -> (bool, f64) {
        let g = self.membership_functional(x);
        (g <= 1.0 + 1e-12, g)
    }

    /// The unique rho > 0 with G(rho v) = 1, by bracket doubling and
    /// bisection. Fails with `UnboundedDirection` when G stays below one
    /// after 60 doublings of the probe radius.
    pub fn radial(&self, v: &Vec3) -> Result<f64, OrliczError> {
        let mut hi = self.r_seed;
        let mut grow = 0;
        while self.membership_functional(&(v * hi)) <= 1.0 {
            hi *= 2.0;
            grow += 1;
            if grow > 60 {
                return Err(OrliczError::UnboundedDirection);
            }
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.membership_functional(&(v * mid)) <= 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= ROOT_REL_TOL * hi {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Membership in the polar Orlicz projection body, with the value of the
/// membership functional.
pub fn polar_membership(
    k: &Polytope,
    phi: &PhiFunction,
    x: &Vec3,
) -> Result<(bool, f64), OrliczError> {
    Ok(OrliczPolarStar::new(k, phi.clone())?.contains(x))
}

/// Radial function of the polar Orlicz projection body in direction `v`.
pub fn polar_radial_orlicz(k: &Polytope, phi: &PhiFunction, v: &Vec3) -> Result<f64, OrliczError> {
    OrliczPolarStar::new(k, phi.clone())?.radial(v)
}

/// A quadrature volume together with the grid resolution it was computed
/// at.
#[derive(Debug, Clone, Copy)]
pub struct PolarVolume {
    pub value: f64,
    pub grid_resolution: usize,
}

/// Volume of the polar Orlicz projection body by radial quadrature over
/// the full grid (the polar need not be o-symmetric, so no antipodal
/// shortcut is taken).
pub fn polar_volume(
    k: &Polytope,
    phi: &PhiFunction,
    grid: &SphericalGrid,
) -> Result<PolarVolume, OrliczError> {
    let star = OrliczPolarStar::new(k, phi.clone())?;
    let n = star.dim as i32;
    let values: Vec<f64> = grid
        .directions()
        .par_iter()
        .map(|v| star.radial(v))
        .collect::<Result<Vec<f64>, OrliczError>>()?;
    let sum: f64 = values.iter().map(|r| r.powi(n)).sum();
    Ok(PolarVolume { value: grid.weight() * sum / n as f64, grid_resolution: grid.resolution() })
}

/// The affine-invariant volume ratio V(polar projection body) / V(K).
pub fn volume_ratio(
    k: &Polytope,
    phi: &PhiFunction,
    grid: &SphericalGrid,
) -> Result<f64, OrliczError> {
    Ok(polar_volume(k, phi, grid)?.value / k.volume())
}

/// The limiting polar projection body for p -> infinity: K intersected
/// with -K, computed exactly as a halfspace intersection.
pub fn linfty_polar(k: &Polytope) -> Result<Polytope, OrliczError> {
    if !k.contains_origin_interior() {
        return Err(OrliczError::OriginNotInterior);
    }
    let mut constraints: Vec<(Vec3, f64)> =
        k.facets().iter().map(|f| (f.normal, f.support)).collect();
    constraints.extend(k.facets().iter().map(|f| (-f.normal, f.support)));
    halfspace_intersection(k.dim(), &constraints).map_err(OrliczError::Geometry)
}
