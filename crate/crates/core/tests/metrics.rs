//! Distance functional invariants and the star-inclusion machinery.

use projbody::experiments::seeded_polygon;
use projbody::geometry::grid::SphericalGrid;
use projbody::geometry::revolution::RevolutionBody;
use projbody::geometry::Vec3;
use projbody::metrics::{
    bm_distance_to_ball_axial, el_deviation_axial, star_inclusion, steiner_symmetral_of_star,
};
use projbody::orlicz::{OrliczPolarStar, PhiFunction};
use projbody::symmetrize::steiner_2d;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn john_bound_for_axial_bodies() {
    // The distance of any o-symmetric body to the ball is at most
    // ln sqrt(n); the coaxial scan must respect that.
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let aspect = rng.random_range(0.2..5.0);
        let c = RevolutionBody::from_profile_fn(3, Vec3::z(), aspect, 801, |_| 1.0).unwrap();
        let v = bm_distance_to_ball_axial(&c).unwrap().value;
        assert!(v <= 0.5 * 3.0_f64.ln() + 1e-6, "aspect {aspect}: {v}");
        let el = el_deviation_axial(&c).unwrap().value;
        assert!((el - v.min(1.0)).abs() <= 1e-9);
    }
}

#[test]
fn rectangles_share_the_square_distance() {
    // The Banach-Mazur distance is affine invariant, and the coaxial
    // family absorbs axis-aligned stretches: every rectangle sits at the
    // square's distance ln sqrt(2) from the disk.
    let expect = 0.5 * 2.0_f64.ln();
    for aspect in [1.0, 1.5, 2.5, 4.0] {
        let e = RevolutionBody::from_profile_fn(2, Vec3::y(), aspect, 1001, |_| 1.0).unwrap();
        let v = bm_distance_to_ball_axial(&e).unwrap().value;
        assert!((v - expect).abs() <= 2e-3, "aspect {aspect}: {v} vs {expect}");
    }
}

#[test]
fn inclusion_is_antisymmetric_for_strict_nesting() {
    let grid = SphericalGrid::new(2, 128);
    let inner = |v: &Vec3| Ok(1.0 + 0.3 * v.x * v.x);
    let outer = |v: &Vec3| Ok(1.2 + 0.3 * v.x * v.x);
    let fwd = star_inclusion(inner, outer, &grid, 1e-9).unwrap();
    assert!(fwd.holds);
    let bwd = star_inclusion(outer, inner, &grid, 1e-9).unwrap();
    assert!(!bwd.holds);
    assert!(bwd.worst_violation >= 0.2 - 1e-9);
}

#[test]
fn star_symmetral_sits_inside_polar_of_symmetral() {
    // The pointwise form of the symmetrization monotonicity, on a small
    // random corpus with a non-even phi.
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let phi = PhiFunction::asymmetric_power(2.0, 3.0, 0.7).unwrap();
    let grid = SphericalGrid::new(2, 128);
    for _ in 0..3 {
        let k = seeded_polygon(&mut rng);
        let theta: f64 = rng.random_range(0.0..std::f64::consts::PI);
        let v = Vec3::new(theta.cos(), theta.sin(), 0.0);
        let star = OrliczPolarStar::new(&k, phi.clone()).unwrap();
        let sym_star = steiner_symmetral_of_star(&star, &v);
        let sk = steiner_2d(&k, &v).unwrap();
        let star_after = OrliczPolarStar::new(&sk, phi.clone()).unwrap();
        let report = star_inclusion(
            |w| sym_star.radial(w),
            |w| star_after.radial(w).map_err(Into::into),
            &grid,
            1e-6,
        )
        .unwrap();
        assert!(
            report.holds,
            "violation {} in direction {:?}",
            report.worst_violation, report.worst_direction
        );
    }
}

#[test]
fn report_serializes_with_all_fields() {
    let e = RevolutionBody::coaxial_ellipsoid(2, Vec3::y(), 1.0, 1.3, 801).unwrap();
    let report = bm_distance_to_ball_axial(&e).unwrap();
    let json = serde_json::to_value(&report).unwrap();
    for field in ["value", "witness_inner", "witness_outer_scale", "method"] {
        assert!(json.get(field).is_some(), "missing {field}");
    }
    assert_eq!(json["method"], "coaxial_scan");
    assert!(json["witness_inner"]["semi_axes"].as_array().unwrap().len() == 2);
}
