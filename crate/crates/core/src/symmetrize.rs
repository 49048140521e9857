//! Steiner symmetrization, Schwarz rounding and spin normalization.

use rayon::prelude::*;
use thiserror::Error;

use crate::geometry::polytope::{build_polytope, Polytope};
use crate::geometry::revolution::RevolutionBody;
use crate::geometry::{
    orthonormal_complement, rot90, unit_ball_volume, Body, GeometryError, Vec3,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SymmetrizeError {
    #[error("no grid point landed in the interior of the projection; grid too coarse")]
    EmptyProjection,
    #[error("degenerate body: {0}")]
    DegenerateBody(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Exact Steiner symmetral of a polygon with respect to the hyperplane
/// orthogonal to `v`: every chord parallel to `v` is recentred on v-perp.
/// Area is preserved exactly (up to floating point).
pub fn steiner_2d(k: &Polytope, v: &Vec3) -> Result<Polytope, SymmetrizeError> {
    assert_eq!(k.dim(), 2, "steiner_2d expects a polygon");
    let v = v.normalize();
    let e = rot90(&v);
    let scale = k.vertices().iter().map(|p| p.amax()).fold(1e-30, f64::max);
    let tol = 1e-12 * scale;

    // Breakpoints: projections of the vertices onto the base axis.
    let mut ys: Vec<f64> = k.vertices().iter().map(|p| p.dot(&e)).collect();
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ys.dedup_by(|a, b| (*a - *b).abs() <= tol);

    let mut points: Vec<Vec3> = Vec::with_capacity(2 * ys.len());
    for &y in &ys {
        let (lo, hi) = chord_range(k, &e, &v, y, tol)
            .ok_or_else(|| SymmetrizeError::DegenerateBody("empty chord at breakpoint".into()))?;
        let half = (hi - lo) / 2.0;
        points.push(e * y + v * half);
        points.push(e * y - v * half);
    }
    Ok(build_polytope(2, &points)?)
}

/// Chord of the polygon along { y e + t v : t real }, as an interval in t.
fn chord_range(k: &Polytope, e: &Vec3, v: &Vec3, y: f64, tol: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let verts = k.vertices();
    let m = verts.len();
    for i in 0..m {
        let (a, b) = (verts[i], verts[(i + 1) % m]);
        let (da, db) = (a.dot(e) - y, b.dot(e) - y);
        if da.abs() <= tol {
            let t = a.dot(v);
            lo = lo.min(t);
            hi = hi.max(t);
        }
        if (da > tol && db < -tol) || (da < -tol && db > tol) {
            let s = da / (da - db);
            let t = a.dot(v) + (b.dot(v) - a.dot(v)) * s;
            lo = lo.min(t);
            hi = hi.max(t);
        }
    }
    if lo.is_finite() && hi >= lo {
        Some((lo, hi))
    } else {
        None
    }
}

/// Approximate Steiner symmetral of a 3-polytope: chords are sampled on a
/// grid_res x grid_res grid over the projection, recentred exactly (each
/// chord is an exact line-polytope intersection), and the hull of the
/// recentred endpoints is returned. This is an inner approximation whose
/// volume deficit vanishes as the grid is refined.
pub fn steiner_3d(k: &Polytope, v: &Vec3, grid_res: usize) -> Result<Polytope, SymmetrizeError> {
    assert_eq!(k.dim(), 3, "steiner_3d expects a 3-polytope");
    assert!(grid_res >= 2);
    let v = v.normalize();
    let (e1, e2) = orthonormal_complement(&v);
    let (mut x0, mut x1, mut y0, mut y1) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in k.vertices() {
        let (a, b) = (p.dot(&e1), p.dot(&e2));
        x0 = x0.min(a);
        x1 = x1.max(a);
        y0 = y0.min(b);
        y1 = y1.max(b);
    }
    let rows: Vec<Vec<Vec3>> = (0..grid_res)
        .into_par_iter()
        .map(|i| {
            let mut pts = Vec::new();
            let a = x0 + (x1 - x0) * (i as f64 + 0.5) / grid_res as f64;
            for j in 0..grid_res {
                let b = y0 + (y1 - y0) * (j as f64 + 0.5) / grid_res as f64;
                let base = e1 * a + e2 * b;
                if let Some((lo, hi)) = k.line_chord(&base, &v) {
                    if hi > lo {
                        let half = (hi - lo) / 2.0;
                        pts.push(base + v * half);
                        pts.push(base - v * half);
                    }
                }
            }
            pts
        })
        .collect();
    let mut points: Vec<Vec3> = rows.into_iter().flatten().collect();
    if points.is_empty() {
        return Err(SymmetrizeError::EmptyProjection);
    }
    // Chords through the projected vertices pin the exact footprint of the
    // symmetral; without them the hull misses a half-cell boundary strip
    // and converges only linearly.
    for p in k.vertices() {
        let base = p - v * p.dot(&v);
        if let Some((lo, hi)) = k.line_chord(&base, &v) {
            if hi >= lo {
                let half = (hi - lo) / 2.0;
                points.push(base + v * half);
                points.push(base - v * half);
            }
        }
    }
    Ok(build_polytope(3, &points)?)
}

/// Schwarz rounding with respect to `v`: every section orthogonal to `v`
/// is replaced by a centered ball of the same (n-1)-measure, producing a
/// body of revolution around `v`.
///
/// o-symmetric input keeps its center; other bodies are recentred at the
/// midpoint of their support interval along `v` so the output height range
/// is symmetric (the radius profile then need not be even).
pub fn schwarz_round(
    body: &Body,
    v: &Vec3,
    slices: usize,
) -> Result<RevolutionBody, SymmetrizeError> {
    assert!(slices >= 64, "schwarz_round needs at least 64 slices");
    let v = v.normalize();
    let dim = body.dim();
    let t_hi = body.support(&v);
    let t_lo = -body.support(&(-v));
    if t_hi - t_lo <= 1e-12 {
        return Err(SymmetrizeError::DegenerateBody("flat support interval".into()));
    }
    let center = (t_hi + t_lo) / 2.0;
    let half = (t_hi - t_lo) / 2.0 * (1.0 - 1e-9);
    let m = if slices % 2 == 0 { slices + 1 } else { slices };
    let heights: Vec<f64> =
        (0..m).map(|i| -half + 2.0 * half * i as f64 / (m - 1) as f64).collect();
    let kappa = unit_ball_volume(dim - 1);
    let exponent = 1.0 / (dim - 1) as f64;
    let mut radii: Vec<f64> = heights
        .par_iter()
        .map(|&t| (body.section_measure(&v, center + t).max(0.0) / kappa).powf(exponent))
        .collect();

    // Sections of an o-symmetric body are symmetric up to floating point;
    // average the pairs so the sampled profile is exactly even.
    let r_scale = radii.iter().cloned().fold(1e-30, f64::max);
    let symmetric = (0..m).all(|i| (radii[i] - radii[m - 1 - i]).abs() <= 1e-9 * r_scale);
    if symmetric {
        for i in 0..m / 2 {
            let avg = (radii[i] + radii[m - 1 - i]) / 2.0;
            radii[i] = avg;
            radii[m - 1 - i] = avg;
        }
    }

    // Brunn-Minkowski makes the exact profile concave; quadrature noise in
    // the sampled sections can break the discrete check, so project onto
    // the upper concave envelope (a no-op up to that noise).
    let radii = concave_envelope(&heights, &radii);
    Ok(RevolutionBody::new(dim, v, heights, radii)?)
}

/// Upper concave envelope of sampled (t, r), evaluated at the same t.
fn concave_envelope(ts: &[f64], rs: &[f64]) -> Vec<f64> {
    let m = ts.len();
    // Upper hull by a monotone scan.
    let mut hull: Vec<usize> = Vec::with_capacity(m);
    for i in 0..m {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (ts[b] - ts[a]) * (rs[i] - rs[a]) - (rs[b] - rs[a]) * (ts[i] - ts[a]);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }
    let mut out = vec![0.0; m];
    let mut seg = 0;
    for i in 0..m {
        while seg + 1 < hull.len() && ts[hull[seg + 1]] < ts[i] {
            seg += 1;
        }
        let (a, b) = (hull[seg], hull[(seg + 1).min(hull.len() - 1)]);
        if a == b || ts[b] <= ts[a] {
            out[i] = rs[a];
        } else {
            let s = (ts[i] - ts[a]) / (ts[b] - ts[a]);
            out[i] = rs[a] + (rs[b] - rs[a]) * s.clamp(0.0, 1.0);
        }
    }
    out
}

/// Normalize an o-symmetric revolution body so its equator is the unit
/// sphere of the axis complement and its poles lie on the unit sphere:
/// diagonal scaling by 1/r(0) orthogonally and 1/h_max along the axis.
pub fn spin_normalize(k: &RevolutionBody) -> Result<RevolutionBody, SymmetrizeError> {
    if !k.is_origin_symmetric() {
        return Err(SymmetrizeError::DegenerateBody(
            "spin normalization needs an o-symmetric body".into(),
        ));
    }
    let r0 = k.equator_radius();
    let h = k.h_max();
    if r0 <= 1e-12 || h <= 1e-12 {
        return Err(SymmetrizeError::DegenerateBody("zero equator or height".into()));
    }
    Ok(k.scaled(1.0 / h, 1.0 / r0)?)
}
