//! Quadrature rules on the unit sphere.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::{GeometryError, Vec3};

/// Equal-weight quadrature rule on the unit circle or sphere.
///
/// Dimension 2 uses uniformly spaced angles; dimension 3 uses a Fibonacci
/// lattice. Both are deterministic for a fixed resolution, and the weights
/// sum to the total surface measure exactly by construction.
#[derive(Debug, Clone)]
pub struct SphericalGrid {
    dim: usize,
    directions: Vec<Vec3>,
    weight: f64,
    resolution: usize,
}

impl SphericalGrid {
    pub fn new(dim: usize, resolution: usize) -> Self {
        assert!(dim == 2 || dim == 3, "only dimensions 2 and 3 are supported");
        assert!(resolution >= 16, "grid resolution must be at least 16");
        let directions = match dim {
            2 => (0..resolution)
                .map(|j| {
                    let theta = 2.0 * PI * (j as f64 + 0.5) / resolution as f64;
                    Vec3::new(theta.cos(), theta.sin(), 0.0)
                })
                .collect(),
            _ => fibonacci_sphere(resolution),
        };
        let total = if dim == 2 { 2.0 * PI } else { 4.0 * PI };
        SphericalGrid { dim, directions, weight: total / resolution as f64, resolution }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn directions(&self) -> &[Vec3] {
        &self.directions
    }

    /// The common weight of every node.
    pub fn weight(&self) -> f64 {
        self.weight
    }

    /// Total surface measure represented by the rule (2 pi or 4 pi).
    pub fn total_measure(&self) -> f64 {
        self.weight * self.resolution as f64
    }

    /// Integrate a function over the sphere. Evaluations run in parallel;
    /// the reduction is a fixed-order serial sum so results do not depend
    /// on scheduling.
    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(&Vec3) -> f64 + Sync,
    {
        // Not `.map(f)`: rayon would demand F: Send, borrowing keeps it Sync-only.
        #[allow(clippy::redundant_closure)]
        let values: Vec<f64> = self.directions.par_iter().map(|v| f(v)).collect();
        self.weight * values.iter().sum::<f64>()
    }

    /// Worst absolute defect of the second-moment identity
    /// integral of (v.e)^2 = |S^{n-1}| / n over the coordinate directions.
    pub fn second_moment_defect(&self) -> f64 {
        let target = self.total_measure() / self.dim as f64;
        let mut worst = 0.0_f64;
        for axis in 0..self.dim {
            let e = match axis {
                0 => Vec3::x(),
                1 => Vec3::y(),
                _ => Vec3::z(),
            };
            let got = self.integrate(|v| {
                let d = v.dot(&e);
                d * d
            });
            worst = worst.max((got - target).abs());
        }
        worst
    }
}

/// Deterministic Fibonacci lattice: midpoint-offset heights with golden
/// angle azimuths.
pub fn fibonacci_sphere(count: usize) -> Vec<Vec3> {
    let golden_angle = PI * (3.0 - 5.0_f64.sqrt());
    (0..count)
        .map(|j| {
            let z = 1.0 - (2.0 * j as f64 + 1.0) / count as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden_angle * j as f64;
            Vec3::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

/// Volume of a star-shaped set from its radial function:
/// sum of weight * rho^n / n over the grid.
pub fn volume_from_radial<F>(rho: F, grid: &SphericalGrid) -> Result<f64, GeometryError>
where
    F: Fn(&Vec3) -> f64 + Sync,
{
    let n = grid.dim() as i32;
    #[allow(clippy::redundant_closure)]
    let values: Vec<f64> = grid.directions().par_iter().map(|v| rho(v)).collect();
    if values.iter().any(|&r| r.is_nan() || r <= 0.0) {
        return Err(GeometryError::NonpositiveRadial);
    }
    let sum: f64 = values.iter().map(|r| r.powi(n)).sum();
    Ok(grid.weight() * sum / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_surface_measure() {
        let g2 = SphericalGrid::new(2, 4096);
        assert!((g2.total_measure() - 2.0 * PI).abs() < 1e-9);
        let g3 = SphericalGrid::new(3, 8192);
        assert!((g3.total_measure() - 4.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn circle_second_moment_is_exact() {
        let g = SphericalGrid::new(2, 4096);
        assert!(g.second_moment_defect() < 1e-9 * g.total_measure());
    }

    #[test]
    fn sphere_second_moment_within_tolerance() {
        let g = SphericalGrid::new(3, 8192);
        assert!(g.second_moment_defect() < 1e-4 * g.total_measure());
    }

    #[test]
    fn grids_are_deterministic() {
        let a = SphericalGrid::new(3, 512);
        let b = SphericalGrid::new(3, 512);
        for (u, v) in a.directions().iter().zip(b.directions()) {
            assert_eq!(u, v);
        }
    }

    #[test]
    fn constant_radial_gives_ball_volume() {
        let g = SphericalGrid::new(2, 1024);
        let v = volume_from_radial(|_| 1.0, &g).unwrap();
        assert!((v - PI).abs() < 1e-9);
        let g3 = SphericalGrid::new(3, 8192);
        let v3 = volume_from_radial(|_| 2.0, &g3).unwrap();
        assert!((v3 - 8.0 * 4.0 * PI / 3.0).abs() < 1e-4 * 8.0 * 4.0 * PI / 3.0);
    }

    #[test]
    fn nonpositive_radial_is_an_error() {
        let g = SphericalGrid::new(2, 64);
        let r = volume_from_radial(|v| v.x, &g);
        assert!(matches!(r, Err(GeometryError::NonpositiveRadial)));
    }
}
