//! Exact volume moments and the isotropic normalization.

use nalgebra::{Matrix2, Matrix3};

use super::polytope::Polytope;
use super::{unit_ball_volume, GeometryError, Vec3};

/// Centroid, second moments and the isotropic constant of a body.
///
/// `second_moment` is taken about the centroid; for a body in isotropic
/// position it equals `isotropic_constant` times the identity.
#[derive(Debug, Clone)]
pub struct MomentData {
    pub centroid: Vec3,
    pub second_moment: Matrix3<f64>,
    pub volume: f64,
    pub isotropic_constant: Option<f64>,
}

/// Exact centroid and second-moment matrix by fanning the polytope into
/// simplices from an interior point and applying the closed-form simplex
/// moment formulas.
pub fn moments(k: &Polytope) -> MomentData {
    let n = k.dim();
    let apex = k.interior_point();
    let mut volume = 0.0;
    let mut first = Vec3::zeros();
    let mut second = Matrix3::zeros();
    for f in k.facets() {
        for simplex in &f.simplices {
            let mut verts: Vec<Vec3> = vec![apex];
            verts.extend(simplex.iter().map(|&i| k.vertices()[i]));
            let (v, m1, m2) = simplex_moments(n, &verts);
            volume += v;
            first += m1;
            second += m2;
        }
    }
    let centroid = first / volume;
    // Shift raw second moments to the centroid.
    let centered = second - (centroid * centroid.transpose()) * volume;
    MomentData { centroid, second_moment: centered, volume, isotropic_constant: None }
}

/// Volume, integral of x, and integral of x x^T over one simplex given as
/// n+1 vertices in dimension n.
fn simplex_moments(n: usize, verts: &[Vec3]) -> (f64, Vec3, Matrix3<f64>) {
    debug_assert_eq!(verts.len(), n + 1);
    let vol = match n {
        2 => {
            let a = verts[1] - verts[0];
            let b = verts[2] - verts[0];
            (a.x * b.y - a.y * b.x).abs() / 2.0
        }
        _ => {
            let a = verts[1] - verts[0];
            let b = verts[2] - verts[0];
            let c = verts[3] - verts[0];
            a.dot(&b.cross(&c)).abs() / 6.0
        }
    };
    let s: Vec3 = verts.iter().sum();
    let first = s * (vol / (n + 1) as f64);
    let mut sum_outer = Matrix3::zeros();
    for v in verts {
        sum_outer += v * v.transpose();
    }
    let second = (sum_outer + s * s.transpose()) * (vol / ((n + 1) * (n + 2)) as f64);
    (vol, first, second)
}

/// Affine image of `k` in isotropic position: volume one, centroid at the
/// origin, second-moment matrix a multiple of the identity. Returns the
/// normalized body together with its moment data (isotropic constant
/// included).
pub fn make_isotropic(k: &Polytope) -> Result<(Polytope, MomentData), GeometryError> {
    let n = k.dim();
    let md = moments(k);
    let (inv_sqrt, det) = inverse_sqrt(n, &md.second_moment)?;
    // Volume after whitening, then the dilation that normalizes it to one.
    let v1 = md.volume / det.sqrt();
    let s = v1.powf(-1.0 / n as f64);
    let a = inv_sqrt * s;
    let mapped: Vec<Vec3> = k.vertices().iter().map(|v| a * (v - md.centroid)).collect();
    let iso = super::polytope::build_polytope(n, &mapped)?;
    let mut iso_md = moments(&iso);
    let l = (0..n).map(|i| iso_md.second_moment[(i, i)]).sum::<f64>() / n as f64;
    iso_md.isotropic_constant = Some(l);
    Ok((iso, iso_md))
}

/// Symmetric inverse square root of the top-left n x n block, with its
/// determinant. Fails when the eigenvalue spread exceeds 1e12.
fn inverse_sqrt(n: usize, m: &Matrix3<f64>) -> Result<(Matrix3<f64>, f64), GeometryError> {
    if n == 2 {
        let block = Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let eig = block.symmetric_eigen();
        check_spectrum(eig.eigenvalues.as_slice())?;
        let mut out = Matrix3::identity();
        let det = eig.eigenvalues.iter().product();
        let q = eig.eigenvectors;
        let mut block_inv = Matrix2::zeros();
        for i in 0..2 {
            let col = q.column(i);
            block_inv += col * col.transpose() / eig.eigenvalues[i].sqrt();
        }
        for r in 0..2 {
            for c in 0..2 {
                out[(r, c)] = block_inv[(r, c)];
            }
        }
        Ok((out, det))
    } else {
        let eig = m.symmetric_eigen();
        check_spectrum(eig.eigenvalues.as_slice())?;
        let det = eig.eigenvalues.iter().product();
        let q = eig.eigenvectors;
        let mut out = Matrix3::zeros();
        for i in 0..3 {
            let col = q.column(i);
            out += col * col.transpose() / eig.eigenvalues[i].sqrt();
        }
        Ok((out, det))
    }
}

fn check_spectrum(eigs: &[f64]) -> Result<(), GeometryError> {
    let max = eigs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
    if min.is_nan() || min <= 0.0 || max / min > 1e12 {
        return Err(GeometryError::SingularMoments);
    }
    Ok(())
}

/// Isotropic constant of the unit-volume ball: kappa_n^(-2/n) / (n + 2).
pub fn ball_isotropic_constant(n: usize) -> f64 {
    unit_ball_volume(n).powf(-2.0 / n as f64) / (n + 2) as f64
}

/// Both sides of the second-moment identity for an o-symmetric ellipsoid
/// with the given semi-axes, evaluated in direction `w`.
///
/// The left side is the closed-form moment integral. The right side is
/// h_E(w)^2 V(E)^((n+2)/n) L_ball, normalized by (kappa_n / V(E))^(2/n) so
/// that the identity is exact at every volume; the unnormalized form holds
/// only for ellipsoids of volume kappa_n.
pub fn ellipsoid_moment_check(semi_axes: &[f64], w: &Vec3) -> (f64, f64) {
    let n = semi_axes.len();
    assert!(n == 2 || n == 3);
    assert!(semi_axes.iter().all(|&a| a > 0.0));
    let kappa = unit_ball_volume(n);
    let wn = w.normalize();
    let prod: f64 = semi_axes.iter().product();
    // diag(a) w, padded with zero in the plane case.
    let tw = Vec3::new(
        semi_axes[0] * wn.x,
        semi_axes[1] * wn.y,
        if n == 3 { semi_axes[2] * wn.z } else { 0.0 },
    );
    let lhs = kappa * prod * tw.norm_squared() / (n + 2) as f64;
    let support = tw.norm();
    let volume = kappa * prod;
    let rhs = support * support
        * volume.powf((n + 2) as f64 / n as f64)
        * ball_isotropic_constant(n)
        * (kappa / volume).powf(2.0 / n as f64);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::polytope::build_polytope;
    use approx::assert_relative_eq;

    fn centered_cube(half: f64) -> Polytope {
        let mut pts = Vec::new();
        for &x in &[-half, half] {
            for &y in &[-half, half] {
                for &z in &[-half, half] {
                    pts.push(Vec3::new(x, y, z));
                }
            }
        }
        build_polytope(3, &pts).unwrap()
    }

    #[test]
    fn unit_cube_moments() {
        // Oracle: per-axis 1D integral of x^2 over [-1/2, 1/2] is 1/12.
        let k = centered_cube(0.5);
        let md = moments(&k);
        assert_relative_eq!(md.volume, 1.0, max_relative = 1e-12);
        assert!(md.centroid.norm() < 1e-12);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 / 12.0 } else { 0.0 };
                assert_relative_eq!(md.second_moment[(i, j)], expect, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn square_moments() {
        // Oracle: integral of x^2 over [-1,1]^2 is 4/3 per axis.
        let k = build_polytope(
            2,
            &[
                Vec3::new(1.0, 1.0, 0.0),
                Vec3::new(-1.0, 1.0, 0.0),
                Vec3::new(-1.0, -1.0, 0.0),
                Vec3::new(1.0, -1.0, 0.0),
            ],
        )
        .unwrap();
        let md = moments(&k);
        assert_relative_eq!(md.second_moment[(0, 0)], 4.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(md.second_moment[(1, 1)], 4.0 / 3.0, max_relative = 1e-12);
        assert!(md.second_moment[(0, 1)].abs() < 1e-12);
    }

    #[test]
    fn translation_moves_centroid_only() {
        let k = centered_cube(0.5);
        let t = Vec3::new(0.3, -0.7, 0.2);
        let kt = k.translate(&t).unwrap();
        let (a, b) = (moments(&k), moments(&kt));
        assert!((b.centroid - a.centroid - t).norm() < 1e-12);
        assert!((b.second_moment - a.second_moment).norm() < 1e-12);
    }

    #[test]
    fn isotropic_cube() {
        let k = centered_cube(1.0);
        let (iso, md) = make_isotropic(&k).unwrap();
        assert_relative_eq!(iso.volume(), 1.0, max_relative = 1e-9);
        let l = md.isotropic_constant.unwrap();
        assert_relative_eq!(l, 1.0 / 12.0, max_relative = 1e-9);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { l } else { 0.0 };
                assert!((md.second_moment[(i, j)] - expect).abs() <= 1e-9 * l);
            }
        }
    }

    #[test]
    fn isotropic_idempotent() {
        let k = build_polytope(
            2,
            &[
                Vec3::new(2.0, 0.5, 0.0),
                Vec3::new(-1.0, 1.5, 0.0),
                Vec3::new(-2.0, -0.5, 0.0),
                Vec3::new(1.0, -1.5, 0.0),
                Vec3::new(0.5, -2.0, 0.0),
            ],
        )
        .unwrap();
        let (iso1, md1) = make_isotropic(&k).unwrap();
        let (_iso2, md2) = make_isotropic(&iso1).unwrap();
        let (l1, l2) = (md1.isotropic_constant.unwrap(), md2.isotropic_constant.unwrap());
        assert!((l1 - l2).abs() < 1e-9 * l1);
    }

    #[test]
    fn ellipsoid_moment_unit_cases() {
        // Disk: moment is pi/4 by the polar-coordinate integral.
        let (lhs, rhs) = ellipsoid_moment_check(&[1.0, 1.0], &Vec3::x());
        assert_relative_eq!(lhs, std::f64::consts::PI / 4.0, max_relative = 1e-12);
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
        // Unit ball: kappa_3 / 5.
        let (l3, r3) = ellipsoid_moment_check(&[1.0, 1.0, 1.0], &Vec3::new(0.3, -0.5, 1.0));
        assert_relative_eq!(l3, 4.0 * std::f64::consts::PI / 15.0, max_relative = 1e-12);
        assert_relative_eq!(l3, r3, max_relative = 1e-12);
        // Stretched disk (change of variables oracle).
        let (l2, r2) = ellipsoid_moment_check(&[2.0, 1.0], &Vec3::x());
        assert_relative_eq!(l2, 2.0 * std::f64::consts::PI, max_relative = 1e-12);
        assert_relative_eq!(l2, r2, max_relative = 1e-9);
    }
}
