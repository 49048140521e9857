//! Bodies of revolution given by a sampled concave radius profile.

use super::polytope::{build_polytope, Polytope};
use super::{unit_ball_volume, GeometryError, Vec3};

/// A convex body with rotational symmetry around `axis`, described by the
/// radius profile r(t) of its sections orthogonal to the axis. Heights are
/// strictly increasing over a symmetric interval [-h_max, h_max]; the
/// piecewise-linear interpolant of (t, r) must be concave so the body is
/// convex. In the plane (dim 2) "rotation" degenerates to reflection across
/// the axis and the body is { t axis + s perp : |s| <= r(t) }.
#[derive(Debug, Clone)]
pub struct RevolutionBody {
    dim: usize,
    axis: Vec3,
    heights: Vec<f64>,
    radii: Vec<f64>,
    /// Profile region in (t, s) coordinates, used for exact support,
    /// radial and chord queries against the piecewise-linear profile.
    profile_poly: Polytope,
}

impl RevolutionBody {
    /// Validating constructor. `heights` must be strictly increasing and
    /// span a symmetric interval; radii must be nonnegative with a concave
    /// piecewise-linear interpolant peaking at t = 0.
    pub fn new(
        dim: usize,
        axis: Vec3,
        heights: Vec<f64>,
        radii: Vec<f64>,
    ) -> Result<Self, GeometryError> {
        assert!(dim == 2 || dim == 3, "only dimensions 2 and 3 are supported");
        if heights.len() < 2 || heights.len() != radii.len() {
            return Err(GeometryError::DegenerateBody(
                "profile needs at least two matching samples".into(),
            ));
        }
        let axis_norm = axis.norm();
        if axis_norm <= 1e-14 {
            return Err(GeometryError::DegenerateBody("zero axis".into()));
        }
        let axis = axis / axis_norm;
        let m = heights.len();
        let h_max = heights[m - 1];
        if (heights[0] + h_max).abs() > 1e-9 * h_max.abs().max(1.0) {
            return Err(GeometryError::DegenerateBody(
                "height interval must be symmetric about zero".into(),
            ));
        }
        for w in heights.windows(2) {
            if w[1] <= w[0] {
                return Err(GeometryError::DegenerateBody("heights must strictly increase".into()));
            }
        }
        let r_scale = radii.iter().cloned().fold(0.0_f64, f64::max).max(1e-30);
        if radii.iter().any(|&r| r < -1e-12 * r_scale) {
            return Err(GeometryError::DegenerateBody("negative radius sample".into()));
        }
        let radii: Vec<f64> = radii.iter().map(|&r| r.max(0.0)).collect();
        // Concavity: chord slopes must be nonincreasing.
        for i in 1..m - 1 {
            let left = (radii[i] - radii[i - 1]) / (heights[i] - heights[i - 1]);
            let right = (radii[i + 1] - radii[i]) / (heights[i + 1] - heights[i]);
            if right - left > 1e-9 {
                return Err(GeometryError::DegenerateBody("radius profile is not concave".into()));
            }
        }
        // For a symmetric concave profile the maximum sits at t = 0; check
        // it there so lopsided data is caught early. Asymmetric profiles
        // (Schwarz rounding of non-symmetric bodies) peak elsewhere.
        let symmetric = {
            let m = heights.len();
            (0..m).all(|i| {
                (interp(&heights, &radii, -heights[i]) - radii[i]).abs() <= 1e-9 * r_scale
            })
        };
        if symmetric && interp(&heights, &radii, 0.0) + 1e-9 * r_scale < r_scale {
            return Err(GeometryError::DegenerateBody(
                "radius must attain its maximum at t = 0".into(),
            ));
        }
        let profile_poly = profile_polygon(&heights, &radii)?;
        Ok(Self { dim, axis, heights, radii, profile_poly })
    }

    /// Uniformly sampled profile of an even function r(t) on [-h_max, h_max].
    pub fn from_profile_fn(
        dim: usize,
        axis: Vec3,
        h_max: f64,
        samples: usize,
        r: impl Fn(f64) -> f64,
    ) -> Result<Self, GeometryError> {
        assert!(samples >= 3);
        let m = if samples % 2 == 0 { samples + 1 } else { samples };
        let heights: Vec<f64> =
            (0..m).map(|i| -h_max + 2.0 * h_max * i as f64 / (m - 1) as f64).collect();
        let radii: Vec<f64> = heights.iter().map(|&t| r(t).max(0.0)).collect();
        Self::new(dim, axis, heights, radii)
    }

    /// Coaxial ellipsoid with equatorial semi-axis `r_eq` and axial
    /// semi-axis `r_axis`. Sampled uniformly in the eccentric angle, which
    /// keeps the piecewise-linear error quadratic right up to the poles.
    pub fn coaxial_ellipsoid(
        dim: usize,
        axis: Vec3,
        r_eq: f64,
        r_axis: f64,
        samples: usize,
    ) -> Result<Self, GeometryError> {
        assert!(samples >= 3);
        let m = if samples % 2 == 0 { samples + 1 } else { samples };
        let mut heights = Vec::with_capacity(m);
        let mut radii = Vec::with_capacity(m);
        for i in 0..m {
            let theta = std::f64::consts::PI * i as f64 / (m - 1) as f64;
            heights.push(-r_axis * theta.cos());
            radii.push(r_eq * theta.sin());
        }
        // Cosine heights are symmetric up to rounding; pin them exactly.
        for i in 0..m / 2 {
            let t = (heights[m - 1 - i] - heights[i]) / 2.0;
            heights[i] = -t;
            heights[m - 1 - i] = t;
            let r = (radii[i] + radii[m - 1 - i]) / 2.0;
            radii[i] = r;
            radii[m - 1 - i] = r;
        }
        heights[m / 2] = 0.0;
        Self::new(dim, axis, heights, radii)
    }

    /// Unit ball profile with the default sampling.
    pub fn ball(dim: usize, samples: usize) -> Self {
        Self::coaxial_ellipsoid(dim, Vec3::z(), 1.0, 1.0, samples)
            .expect("unit ball profile is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn h_max(&self) -> f64 {
        *self.heights.last().unwrap()
    }

    /// Interpolated radius at axis coordinate `t` (zero outside the range).
    pub fn radius_at(&self, t: f64) -> f64 {
        interp(&self.heights, &self.radii, t)
    }

    pub fn equator_radius(&self) -> f64 {
        self.radius_at(0.0)
    }

    /// Whether the sampled profile is symmetric under t -> -t within 1e-9.
    pub fn is_origin_symmetric(&self) -> bool {
        let r_scale = self.radii.iter().cloned().fold(1e-30, f64::max);
        let m = self.heights.len();
        for i in 0..m {
            let tr = interp(&self.heights, &self.radii, -self.heights[i]);
            if (tr - self.radii[i]).abs() > 1e-9 * r_scale {
                return false;
            }
        }
        true
    }

    /// Volume through the profile integral: kappa_{n-1} times the trapezoid
    /// rule applied to r(t)^(n-1) on the sampled heights.
    pub fn volume(&self) -> f64 {
        let k = unit_ball_volume(self.dim - 1);
        let e = (self.dim - 1) as i32;
        let mut acc = 0.0;
        for i in 1..self.heights.len() {
            let dt = self.heights[i] - self.heights[i - 1];
            acc += 0.5 * dt * (self.radii[i].powi(e) + self.radii[i - 1].powi(e));
        }
        k * acc
    }

    /// Support function of the piecewise-linear body: the maximum of
    /// t * (x . axis) + r(t) * |component of x orthogonal to the axis| over
    /// the profile samples.
    pub fn support(&self, x: &Vec3) -> f64 {
        let a = x.dot(&self.axis);
        let p = (x - self.axis * a).norm();
        self.heights
            .iter()
            .zip(&self.radii)
            .map(|(&t, &r)| t * a + r * p)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Radial function, computed exactly against the profile polygon.
    pub fn radial(&self, v: &Vec3) -> Result<f64, GeometryError> {
        let a = v.dot(&self.axis);
        let p = (v - self.axis * a).norm();
        self.profile_radial(a, p)
    }

    /// Radial function in profile coordinates: direction (t, s) with s >= 0.
    pub fn profile_radial(&self, t_comp: f64, s_comp: f64) -> Result<f64, GeometryError> {
        let dir = Vec3::new(t_comp, s_comp, 0.0);
        let n = dir.norm();
        if n <= 1e-14 {
            return Err(GeometryError::NonpositiveRadial);
        }
        Ok(self.profile_poly.radial(&(dir / n))? / n)
    }

    /// (n-1)-measure of the section by the hyperplane { x . v = c }.
    ///
    /// Exact (piecewise-linear) when v is the axis or the body is planar;
    /// evaluated by refined trapezoid quadrature over the profile for
    /// oblique sections of a 3D body.
    pub fn section_measure(&self, v: &Vec3, c: f64) -> f64 {
        let u = v.normalize();
        let cos_a = u.dot(&self.axis).clamp(-1.0, 1.0);
        if self.dim == 2 {
            // Map the plane { x . v = c } into profile coordinates.
            let perp = super::rot90(&self.axis);
            let vt = u.dot(&self.axis);
            let vs = u.dot(&perp);
            return self.profile_poly.section_measure(&Vec3::new(vt, vs, 0.0), c);
        }
        let sin_a = (1.0 - cos_a * cos_a).max(0.0).sqrt();
        if sin_a < 1e-9 {
            let t = c / cos_a;
            let r = self.radius_at(t);
            return std::f64::consts::PI * r * r;
        }
        // Integrate chord lengths of the axis-orthogonal disks over the
        // axis coordinate; the plane meets the disk at height tau in a
        // chord at distance |c - tau cos| / sin from its center.
        let refine = 4;
        let mut acc = 0.0;
        for i in 1..self.heights.len() {
            let (t0, t1) = (self.heights[i - 1], self.heights[i]);
            let step = (t1 - t0) / refine as f64;
            for k in 0..refine {
                let a0 = t0 + step * k as f64;
                let a1 = a0 + step;
                let f = |tau: f64| -> f64 {
                    let r = self.radius_at(tau);
                    let q = (c - tau * cos_a) / sin_a;
                    let inside = r * r - q * q;
                    if inside > 0.0 {
                        2.0 * inside.sqrt()
                    } else {
                        0.0
                    }
                };
                acc += 0.5 * step * (f(a0) + f(a1));
            }
        }
        acc / sin_a
    }

    /// Scale the profile: factor `su` along the axis, `sp` orthogonally.
    pub fn scaled(&self, su: f64, sp: f64) -> Result<Self, GeometryError> {
        let heights: Vec<f64> = self.heights.iter().map(|&t| t * su).collect();
        let radii: Vec<f64> = self.radii.iter().map(|&r| r * sp).collect();
        Self::new(self.dim, self.axis, heights, radii)
    }
}

fn interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let m = xs.len();
    let span = (xs[m - 1] - xs[0]).abs().max(1e-30);
    if x < xs[0] - 1e-12 * span || x > xs[m - 1] + 1e-12 * span {
        return 0.0;
    }
    let x = x.clamp(xs[0], xs[m - 1]);
    let idx = xs.partition_point(|&t| t <= x).clamp(1, m - 1);
    let (x0, x1) = (xs[idx - 1], xs[idx]);
    let (y0, y1) = (ys[idx - 1], ys[idx]);
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

/// The profile region { (t, s) : |s| <= r(t) } as a planar polytope.
fn profile_polygon(heights: &[f64], radii: &[f64]) -> Result<Polytope, GeometryError> {
    let mut pts: Vec<Vec3> = Vec::with_capacity(2 * heights.len());
    for (&t, &r) in heights.iter().zip(radii) {
        pts.push(Vec3::new(t, r, 0.0));
        pts.push(Vec3::new(t, -r, 0.0));
    }
    build_polytope(2, &pts)
        .map_err(|_| GeometryError::DegenerateBody("profile region is degenerate".into()))
}
