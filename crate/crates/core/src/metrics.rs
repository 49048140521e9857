//! Affine-invariant distance functionals and star-body inclusion tests.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::grid::SphericalGrid;
use crate::geometry::polytope::Polytope;
use crate::geometry::revolution::RevolutionBody;
use crate::geometry::{GeometryError, Vec3};
use crate::orlicz::{OrliczError, OrliczPolarStar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricsError {
    #[error("degenerate body: {0}")]
    DegenerateBody(String),
    #[error("chord search failed; star body is not usable as a convex body")]
    NonConvexStar,
    #[error(transparent)]
    Oracle(#[from] OrliczError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    CoaxialScan,
    RadialRatio,
}

/// Inner witness ellipsoid of a sandwich E in K in lambda E.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessEllipsoid {
    pub semi_axes: Vec<f64>,
    pub axis: Vec<f64>,
}

/// A certified distance value: `value` is on the log scale, and the
/// witness satisfies E in K in e^value E up to the scan tolerance.
///
/// The coaxial scan restricts the ellipsoid family to the axis of
/// rotation, which is where the minimum sits for o-symmetric axially
/// symmetric bodies; the value is reported as that family's minimum.
#[derive(Debug, Clone, Serialize)]
pub struct DistanceReport {
    pub value: f64,
    pub witness_inner: WitnessEllipsoid,
    pub witness_outer_scale: f64,
    pub method: DistanceMethod,
}

const SCAN_ANGLES: usize = 1024;
const SCAN_SEEDS: usize = 64;
const LOG_ASPECT_RANGE: f64 = 3.0;

/// Banach-Mazur distance to the ball of an o-symmetric body of revolution,
/// minimized over coaxial o-symmetric ellipsoids by a seeded golden-section
/// scan of the log aspect ratio.
pub fn bm_distance_to_ball_axial(k: &RevolutionBody) -> Result<DistanceReport, MetricsError> {
    coaxial_scan(k)
}

/// Ellipsoidal deviation: the same o-centered coaxial scan, capped at one.
pub fn el_deviation_axial(k: &RevolutionBody) -> Result<DistanceReport, MetricsError> {
    let mut report = coaxial_scan(k)?;
    if report.value > 1.0 {
        report.value = 1.0;
        report.witness_outer_scale = report.value.exp();
    }
    Ok(report)
}

fn coaxial_scan(k: &RevolutionBody) -> Result<DistanceReport, MetricsError> {
    if !k.is_origin_symmetric() {
        return Err(MetricsError::DegenerateBody(
            "coaxial scan needs an o-symmetric body of revolution".into(),
        ));
    }
    if k.equator_radius() <= 1e-12 || k.h_max() <= 1e-12 {
        return Err(MetricsError::DegenerateBody("zero equator or height".into()));
    }
    // Body radials per angle are independent of the ellipsoid aspect;
    // evaluate them once. Angle 0 points along the axis.
    let angles: Vec<f64> = (0..=SCAN_ANGLES)
        .map(|j| std::f64::consts::FRAC_PI_2 * j as f64 / SCAN_ANGLES as f64)
        .collect();
    let rho_k: Vec<f64> = angles
        .iter()
        .map(|&psi| k.profile_radial(psi.cos(), psi.sin()))
        .collect::<Result<Vec<f64>, GeometryError>>()?;

    // log(max ratio / min ratio) against the coaxial ellipsoid with axial
    // semi-axis q and unit equator.
    let objective = |log_q: f64| -> (f64, f64) {
        let q = log_q.exp();
        let mut min_ratio = f64::INFINITY;
        let mut max_ratio = f64::NEG_INFINITY;
        for (j, &psi) in angles.iter().enumerate() {
            let (c, s) = (psi.cos(), psi.sin());
            let rho_e = 1.0 / (c * c / (q * q) + s * s).sqrt();
            let ratio = rho_k[j] / rho_e;
            min_ratio = min_ratio.min(ratio);
            max_ratio = max_ratio.max(ratio);
        }
        ((max_ratio / min_ratio).ln(), min_ratio)
    };

    let mut best_seed = 0.0;
    let mut best_val = f64::INFINITY;
    for i in 0..SCAN_SEEDS {
        let lq = -LOG_ASPECT_RANGE
            + 2.0 * LOG_ASPECT_RANGE * i as f64 / (SCAN_SEEDS - 1) as f64;
        let (v, _) = objective(lq);
        if v < best_val {
            best_val = v;
            best_seed = lq;
        }
    }
    let step = 2.0 * LOG_ASPECT_RANGE / (SCAN_SEEDS - 1) as f64;
    let (mut lo, mut hi) = (best_seed - step, best_seed + step);
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, _) = objective(x1);
    let (mut f2, _) = objective(x2);
    while hi - lo > 1e-6 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = objective(x1).0;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = objective(x2).0;
        }
    }
    let log_q = 0.5 * (lo + hi);
    let (value, min_ratio) = objective(log_q);
    let value = value.max(0.0);
    let q = log_q.exp();
    let semi_axes = if k.dim() == 3 {
        vec![min_ratio, min_ratio, min_ratio * q]
    } else {
        vec![min_ratio, min_ratio * q]
    };
    Ok(DistanceReport {
        value,
        witness_inner: WitnessEllipsoid {
            semi_axes,
            axis: k.axis().iter().cloned().take(k.dim()).collect(),
        },
        witness_outer_scale: value.exp(),
        method: DistanceMethod::CoaxialScan,
    })
}

/// Crude upper bound on the distance to the ball from concentric balls:
/// log of the ratio of the extreme radial values over the grid.
pub fn radial_ratio_to_ball(
    k: &Polytope,
    grid: &SphericalGrid,
) -> Result<DistanceReport, MetricsError> {
    let mut min_r = f64::INFINITY;
    let mut max_r = f64::NEG_INFINITY;
    for v in grid.directions() {
        let r = k.radial(v)?;
        min_r = min_r.min(r);
        max_r = max_r.max(r);
    }
    Ok(DistanceReport {
        value: (max_r / min_r).ln().max(0.0),
        witness_inner: WitnessEllipsoid {
            semi_axes: vec![min_r; k.dim()],
            axis: vec![0.0; k.dim()],
        },
        witness_outer_scale: max_r / min_r,
        method: DistanceMethod::RadialRatio,
    })
}

/// Result of a pointwise radial dominance test.
#[derive(Debug, Clone)]
pub struct InclusionReport {
    pub holds: bool,
    pub worst_violation: f64,
    pub worst_direction: Vec3,
}

/// Check rho_a <= rho_b + tol on every grid direction. The worst margin
/// rho_a - rho_b and its direction are reported (negative margin = slack).
pub fn star_inclusion<FA, FB>(
    rho_a: FA,
    rho_b: FB,
    grid: &SphericalGrid,
    tol: f64,
) -> Result<InclusionReport, MetricsError>
where
    FA: Fn(&Vec3) -> Result<f64, MetricsError> + Sync,
    FB: Fn(&Vec3) -> Result<f64, MetricsError> + Sync,
{
    let margins: Vec<f64> = grid
        .directions()
        .par_iter()
        .map(|v| Ok(rho_a(v)? - rho_b(v)?))
        .collect::<Result<Vec<f64>, MetricsError>>()?;
    let mut worst = f64::NEG_INFINITY;
    let mut worst_dir = grid.directions()[0];
    for (v, &m) in grid.directions().iter().zip(&margins) {
        if m > worst {
            worst = m;
            worst_dir = *v;
        }
    }
    Ok(InclusionReport { holds: worst <= tol, worst_violation: worst, worst_direction: worst_dir })
}

/// Steiner symmetral of a convex star body given through its membership
/// functional: chords parallel to `v` are recentred on v-perp. Chord
/// endpoints are found by ray root finds against the functional on demand,
/// at exactly the base points the queried directions require.
pub fn steiner_symmetral_of_star<'a>(star: &'a OrliczPolarStar, v: &Vec3) -> StarSymmetral<'a> {
    StarSymmetral { star, v: v.normalize() }
}

pub struct StarSymmetral<'a> {
    star: &'a OrliczPolarStar,
    v: Vec3,
}

impl StarSymmetral<'_> {
    /// Radial function of the symmetral in direction `w`.
    pub fn radial(&self, w: &Vec3) -> Result<f64, MetricsError> {
        let w = w.normalize();
        let wv = w.dot(&self.v);
        let y = w - self.v * wv;

        if y.norm() <= 1e-14 {
            // Along the symmetrization axis the radial value is the half
            // chord over the origin.
            return self
                .half_chord(&Vec3::zeros())?
                .ok_or(MetricsError::NonConvexStar);
        }
        if self.half_chord(&Vec3::zeros())?.is_none() {
            return Err(MetricsError::NonConvexStar);
        }

        // A point rho w = (rho y, rho wv) lies in the symmetral iff the
        // chord over base rho y exists and has half length >= rho |wv|.
        let inside = |rho: f64| -> Result<bool, MetricsError> {
            Ok(match self.half_chord(&(y * rho))? {
                Some(c) => rho * wv.abs() <= c,
                None => false,
            })
        };
        let mut hi = self.star.radius_probe();
        let mut grow = 0;
        while inside(hi)? {
            hi *= 2.0;
            grow += 1;
            if grow > 60 {
                return Err(MetricsError::Oracle(OrliczError::UnboundedDirection));
            }
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if inside(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-9 * hi {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Half chord length of the star along { base + t v }, or None when the
    /// line misses the body.
    fn half_chord(&self, base: &Vec3) -> Result<Option<f64>, MetricsError> {
        let q = |t: f64| self.star.membership_functional(&(base + self.v * t));

        // Find an interior parameter. The functional is convex along the
        // line, so a ternary search homes in on the minimum; almost always
        // the very first probe is already inside.
        let mut reach = self.star.radius_probe();
        let mut grow = 0;
        while q(reach) <= 1.0 || q(-reach) <= 1.0 {
            reach *= 2.0;
            grow += 1;
            if grow > 60 {
                return Err(MetricsError::Oracle(OrliczError::UnboundedDirection));
            }
        }
        let mut t_in = None;
        if q(0.0) <= 1.0 - 1e-12 {
            t_in = Some(0.0);
        } else {
            let (mut a, mut b) = (-reach, reach);
            for _ in 0..200 {
                let m1 = a + (b - a) / 3.0;
                let m2 = b - (b - a) / 3.0;
                let (q1, q2) = (q(m1), q(m2));
                if q1 <= 1.0 - 1e-12 {
                    t_in = Some(m1);
                    break;
                }
                if q2 <= 1.0 - 1e-12 {
                    t_in = Some(m2);
                    break;
                }
                if q1 <= q2 {
                    b = m2;
                } else {
                    a = m1;
                }
                if b - a <= 1e-13 * reach {
                    let mid = 0.5 * (a + b);
                    if q(mid) <= 1.0 {
                        t_in = Some(mid);
                    }
                    break;
                }
            }
        }
        let Some(t0) = t_in else {
            return Ok(None);
        };

        let upper = bisect_level(&q, t0, reach);
        let lower = -bisect_level(&|t: f64| q(-t), -t0, reach);
        Ok(Some((upper - lower) / 2.0))
    }
}

/// Largest t in [start, limit] with q(t) <= 1, for q nondecreasing past the
/// level crossing.
fn bisect_level(q: &impl Fn(f64) -> f64, start: f64, limit: f64) -> f64 {
    let (mut lo, mut hi) = (start, limit);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if q(mid) <= 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * limit.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::body::ball_points;
    use crate::geometry::polytope::build_polytope;
    use crate::orlicz::PhiFunction;

    #[test]
    fn ellipsoid_has_distance_zero() {
        let e = RevolutionBody::coaxial_ellipsoid(3, Vec3::z(), 1.0, 2.0, 4001).unwrap();
        let report = bm_distance_to_ball_axial(&e).unwrap();
        assert!(report.value < 1e-6, "value = {}", report.value);
    }

    #[test]
    fn spun_square_distance_to_disk() {
        // The square as a planar revolution body: its distance to the disk
        // is at most ln sqrt(2) (disk in square in sqrt(2) disk).
        let c = RevolutionBody::from_profile_fn(2, Vec3::y(), 1.0, 1001, |_| 1.0).unwrap();
        let report = bm_distance_to_ball_axial(&c).unwrap();
        assert!(report.value <= 0.5 * 2.0_f64.ln() + 1e-3, "value = {}", report.value);
        assert!(report.value > 0.05);
    }

    #[test]
    fn witness_certifies_sandwich() {
        let body = RevolutionBody::from_profile_fn(3, Vec3::z(), 1.2, 1001, |t| {
            (1.0 - (t / 1.2) * (t / 1.2)).max(0.0).sqrt() * (1.0 + 0.1 * (t / 1.2).cos())
        });
        let body = match body {
            Ok(b) => b,
            // Profile must be concave; fall back to an ellipsoid-like body.
            Err(_) => RevolutionBody::coaxial_ellipsoid(3, Vec3::z(), 1.1, 0.8, 1001).unwrap(),
        };
        let report = bm_distance_to_ball_axial(&body).unwrap();
        let (eq, ax) = (report.witness_inner.semi_axes[0], *report.witness_inner.semi_axes.last().unwrap());
        let outer = report.witness_outer_scale;
        for j in 0..512 {
            let psi = std::f64::consts::FRAC_PI_2 * j as f64 / 511.0;
            let (c, s) = (psi.cos(), psi.sin());
            let rho_e = 1.0 / ((c / ax) * (c / ax) + (s / eq) * (s / eq)).sqrt();
            let rho_k = body.profile_radial(c, s).unwrap();
            assert!(rho_e <= rho_k * (1.0 + 1e-6), "inner witness fails at {psi}");
            assert!(rho_k <= outer * rho_e * (1.0 + 1e-6), "outer witness fails at {psi}");
        }
    }

    #[test]
    fn scale_invariance() {
        let e = RevolutionBody::from_profile_fn(3, Vec3::z(), 1.0, 801, |t| {
            (1.0 - t * t).max(0.0).sqrt().min(0.8)
        })
        .unwrap();
        let scaled = e.scaled(3.0, 3.0).unwrap();
        let a = bm_distance_to_ball_axial(&e).unwrap().value;
        let b = bm_distance_to_ball_axial(&scaled).unwrap().value;
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn el_deviation_matches_bm_for_symmetric_bodies() {
        let body = RevolutionBody::from_profile_fn(2, Vec3::y(), 1.0, 801, |_| 1.0).unwrap();
        let bm = bm_distance_to_ball_axial(&body).unwrap().value;
        let el = el_deviation_axial(&body).unwrap().value;
        assert!((bm - el).abs() < 1e-6);
    }

    #[test]
    fn inclusion_detects_scaling() {
        let grid = SphericalGrid::new(2, 256);
        let a = |v: &Vec3| Ok(0.9 * (1.0 + 0.2 * v.x.abs()));
        let b = |v: &Vec3| Ok(1.0 + 0.2 * v.x.abs());
        let rep = star_inclusion(a, b, &grid, 1e-9).unwrap();
        assert!(rep.holds);
        assert!(rep.worst_violation < 0.0);
        let rep2 = star_inclusion(b, a, &grid, 1e-9).unwrap();
        assert!(!rep2.holds);
    }

    #[test]
    fn symmetral_of_symmetric_star_is_identity() {
        let k = build_polytope(2, &ball_points(2, 64)).unwrap();
        let star = OrliczPolarStar::new(&k, PhiFunction::power(2.0).unwrap()).unwrap();
        let v = Vec3::new(0.3, 1.0, 0.0).normalize();
        let sym = steiner_symmetral_of_star(&star, &v);
        for j in 0..32 {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / 32.0;
            let w = Vec3::new(theta.cos(), theta.sin(), 0.0);
            let a = sym.radial(&w).unwrap();
            let b = star.radial(&w).unwrap();
            assert!((a - b).abs() < 1e-6 * b, "direction {j}: {a} vs {b}");
        }
    }

    #[test]
    fn symmetral_is_reflection_symmetric() {
        // A lopsided phi makes the polar star asymmetric; its symmetral
        // must still be even in the v coordinate.
        let k = build_polytope(
            2,
            &[
                Vec3::new(1.2, 0.4, 0.0),
                Vec3::new(-0.5, 1.0, 0.0),
                Vec3::new(-1.0, -0.6, 0.0),
                Vec3::new(0.7, -0.9, 0.0),
            ],
        )
        .unwrap();
        let phi = PhiFunction::asymmetric_power(2.0, 3.0, 0.6).unwrap();
        let star = OrliczPolarStar::new(&k, phi).unwrap();
        let v = Vec3::new(1.0, 0.2, 0.0).normalize();
        let sym = steiner_symmetral_of_star(&star, &v);
        for j in 0..16 {
            let theta = 2.0 * std::f64::consts::PI * (j as f64 + 0.4) / 16.0;
            let w = Vec3::new(theta.cos(), theta.sin(), 0.0);
            let mirrored = w - v * (2.0 * w.dot(&v));
            let a = sym.radial(&w).unwrap();
            let b = sym.radial(&mirrored).unwrap();
            assert!((a - b).abs() < 1e-6 * b, "direction {j}: {a} vs {b}");
        }
    }
}
