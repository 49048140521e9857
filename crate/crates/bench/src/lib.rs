//! Shared fixtures for the benchmark targets.

use projbody::geometry::body::ball_points;
use projbody::geometry::polytope::{build_polytope, Polytope};
use projbody::geometry::Vec3;

pub fn disk_polygon(n: usize) -> Polytope {
    build_polytope(2, &ball_points(2, n)).expect("disk polygon")
}

pub fn ball_polytope(n: usize) -> Polytope {
    build_polytope(3, &ball_points(3, n)).expect("ball polytope")
}

pub fn unit_square() -> Polytope {
    build_polytope(
        2,
        &[
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(-1.0, 1.0, 0.0),
            Vec3::new(-1.0, -1.0, 0.0),
            Vec3::new(1.0, -1.0, 0.0),
        ],
    )
    .expect("square")
}
