//! Seeded body corpora for the experiments.

use nalgebra::Matrix3;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::body::{ball_points, BodySpec};
use crate::geometry::polytope::{build_polytope, Polytope};
use crate::geometry::Vec3;

/// One named corpus body. `ellipsoidal` marks the entries where equality
/// is expected in the projection inequalities; `resolution` overrides the
/// config's discretization for this entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    pub spec: BodySpec,
    #[serde(default)]
    pub ellipsoidal: bool,
    #[serde(default)]
    pub resolution: Option<usize>,
}

fn polytope_spec(dim: usize, vertices: &[Vec3]) -> BodySpec {
    BodySpec::Polytope {
        dim,
        vertices: vertices.iter().map(|v| v.iter().cloned().take(dim).collect()).collect(),
    }
}

/// Default corpus: fine and coarse ball discretizations (the fine one
/// first, it serves as the equality reference), axis-aligned boxes, seeded
/// o-symmetric random polytopes, a cap body, and one random shear of the
/// ball and of a box for the affine-invariance checks.
pub fn default_corpus(dim: usize, seed: u64, body_resolution: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x636f7270);
    let mut entries = Vec::new();
    if dim == 2 {
        entries.push(CorpusEntry {
            id: "disk256".into(),
            spec: BodySpec::Ball { dim: 2 },
            ellipsoidal: true,
            resolution: Some(256),
        });
        entries.push(CorpusEntry {
            id: "disk64".into(),
            spec: BodySpec::Ball { dim: 2 },
            ellipsoidal: true,
            resolution: Some(64),
        });
        let square = [
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(-1.0, 1.0, 0.0),
            Vec3::new(-1.0, -1.0, 0.0),
            Vec3::new(1.0, -1.0, 0.0),
        ];
        entries.push(CorpusEntry {
            id: "square".into(),
            spec: polytope_spec(2, &square),
            ellipsoidal: false,
            resolution: None,
        });
        let rect = [
            Vec3::new(2.0, 1.0, 0.0),
            Vec3::new(-2.0, 1.0, 0.0),
            Vec3::new(-2.0, -1.0, 0.0),
            Vec3::new(2.0, -1.0, 0.0),
        ];
        entries.push(CorpusEntry {
            id: "box21".into(),
            spec: polytope_spec(2, &rect),
            ellipsoidal: false,
            resolution: None,
        });
        for i in 0..2 {
            let verts = symmetric_polytope_vertices(2, 6, &mut rng);
            entries.push(CorpusEntry {
                id: format!("sympoly{i}"),
                spec: polytope_spec(2, &verts),
                ellipsoidal: false,
                resolution: None,
            });
        }
        entries.push(CorpusEntry {
            id: "cap020".into(),
            spec: BodySpec::CapBall { dim: 2, eps: 0.2 },
            ellipsoidal: false,
            resolution: None,
        });
        // Random shears: of the reference ball (still an ellipse) and of
        // the square (not an ellipse).
        let shear = random_shear(2, &mut rng);
        let sheared_disk: Vec<Vec3> =
            ball_points(2, body_resolution.min(256)).iter().map(|p| shear * p).collect();
        entries.push(CorpusEntry {
            id: "shear_disk".into(),
            spec: polytope_spec(2, &sheared_disk),
            ellipsoidal: true,
            resolution: None,
        });
        let sheared_square: Vec<Vec3> = square.iter().map(|p| shear * p).collect();
        entries.push(CorpusEntry {
            id: "shear_square".into(),
            spec: polytope_spec(2, &sheared_square),
            ellipsoidal: false,
            resolution: None,
        });
    } else {
        entries.push(CorpusEntry {
            id: "ball2000".into(),
            spec: BodySpec::Ball { dim: 3 },
            ellipsoidal: true,
            resolution: Some(2000),
        });
        entries.push(CorpusEntry {
            id: "ball500".into(),
            spec: BodySpec::Ball { dim: 3 },
            ellipsoidal: true,
            resolution: Some(500),
        });
        let mut cube = Vec::new();
        for &x in &[-1.0, 1.0] {
            for &y in &[-1.0, 1.0] {
                for &z in &[-1.0, 1.0] {
                    cube.push(Vec3::new(x, y, z));
                }
            }
        }
        entries.push(CorpusEntry {
            id: "cube".into(),
            spec: polytope_spec(3, &cube),
            ellipsoidal: false,
            resolution: None,
        });
        let box112: Vec<Vec3> = cube.iter().map(|p| Vec3::new(p.x, p.y, 2.0 * p.z)).collect();
        entries.push(CorpusEntry {
            id: "box112".into(),
            spec: polytope_spec(3, &box112),
            ellipsoidal: false,
            resolution: None,
        });
        let verts = symmetric_polytope_vertices(3, 12, &mut rng);
        entries.push(CorpusEntry {
            id: "sympoly0".into(),
            spec: polytope_spec(3, &verts),
            ellipsoidal: false,
            resolution: None,
        });
        entries.push(CorpusEntry {
            id: "cap020".into(),
            spec: BodySpec::CapBall { dim: 3, eps: 0.2 },
            ellipsoidal: false,
            resolution: None,
        });
        let shear = random_shear(3, &mut rng);
        let sheared_ball: Vec<Vec3> = ball_points(3, 500).iter().map(|p| shear * p).collect();
        entries.push(CorpusEntry {
            id: "shear_ball".into(),
            spec: polytope_spec(3, &sheared_ball),
            ellipsoidal: true,
            resolution: None,
        });
        let sheared_cube: Vec<Vec3> = cube.iter().map(|p| shear * p).collect();
        entries.push(CorpusEntry {
            id: "shear_cube".into(),
            spec: polytope_spec(3, &sheared_cube),
            ellipsoidal: false,
            resolution: None,
        });
    }
    entries
}

/// Vertices of a random o-symmetric polytope: `pairs` seeded points with
/// radii in [0.6, 1.4], together with their antipodes.
pub fn symmetric_polytope_vertices(dim: usize, pairs: usize, rng: &mut ChaCha8Rng) -> Vec<Vec3> {
    let mut out = Vec::with_capacity(2 * pairs);
    for _ in 0..pairs {
        let p = random_direction(dim, rng) * rng.random_range(0.6..1.4);
        out.push(p);
        out.push(-p);
    }
    out
}

/// A random convex polygon with the origin well interior: radii in
/// [0.5, 1.5] at sorted random angles.
pub fn seeded_polygon(rng: &mut ChaCha8Rng) -> Polytope {
    loop {
        let m = rng.random_range(4..10_usize);
        let mut angles: Vec<f64> =
            (0..m).map(|_| rng.random_range(0.0..2.0 * std::f64::consts::PI)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let pts: Vec<Vec3> = angles
            .iter()
            .map(|&t| {
                let r = rng.random_range(0.5..1.5);
                Vec3::new(r * t.cos(), r * t.sin(), 0.0)
            })
            .collect();
        if let Ok(k) = build_polytope(2, &pts) {
            if k.contains_origin_interior() {
                return k;
            }
        }
    }
}

/// The 2D test corpus for the symmetrization monotonicity runs.
pub fn seeded_polygon_corpus(seed: u64, count: usize) -> Vec<(String, Polytope)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x706f6c79);
    (0..count).map(|i| (format!("poly{i:02}"), seeded_polygon(&mut rng))).collect()
}

fn random_direction(dim: usize, rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            if dim == 3 { rng.random_range(-1.0..1.0) } else { 0.0 },
        );
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}

/// A mildly conditioned random volume-preserving-ish shear.
pub fn random_shear(dim: usize, rng: &mut ChaCha8Rng) -> Matrix3<f64> {
    let mut m = Matrix3::identity();
    m[(0, 1)] = rng.random_range(-0.6..0.6);
    if dim == 3 {
        m[(0, 2)] = rng.random_range(-0.4..0.4);
        m[(1, 2)] = rng.random_range(-0.4..0.4);
    }
    m
}

/// A random invertible map with determinant bounded away from zero and
/// moderate condition number, for the equivariance checks.
pub fn random_invertible(dim: usize, rng: &mut ChaCha8Rng) -> Matrix3<f64> {
    loop {
        let mut m = Matrix3::identity();
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = rng.random_range(-1.0..1.0);
            }
        }
        let det: f64 = if dim == 2 {
            m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
        } else {
            m.determinant()
        };
        let norm = m.norm();
        if det.abs() > 0.25 && norm < 2.5 {
            return m;
        }
    }
}
