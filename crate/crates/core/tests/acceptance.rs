//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line with the computed value, the reference, the tolerance and the
//! elapsed time. Criteria with runtime budgets are serialized through a
//! global lock so their timings do not interfere.

use std::sync::Mutex;
use std::time::Instant;

use projbody::experiments::{
    exp_example_cap, exp_lemma_suite, exp_orlicz_ratio, exp_steiner_monotone, random_invertible,
    seeded_polygon, symmetric_polytope_vertices, CorpusEntry, ExperimentConfig, ResultRow,
};
use projbody::geometry::body::{ball_points, Body, BodySpec};
use projbody::geometry::grid::{volume_from_radial, SphericalGrid};
use projbody::geometry::moments::{ellipsoid_moment_check, make_isotropic};
use projbody::geometry::polytope::{build_polytope, Polytope};
use projbody::geometry::Vec3;
use projbody::orlicz::{
    classical_projection_support, lp_support, orlicz_support, polar_radial_orlicz, PhiFunction,
    PhiSpec,
};
use projbody::symmetrize::{schwarz_round, steiner_2d, steiner_3d};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

static TIMING_LOCK: Mutex<()> = Mutex::new(());

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let _guard = TIMING_LOCK.lock().unwrap_or_else(|e| e.into_inner());
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}

fn report(criterion: &str, passed: bool, detail: &str) {
    println!("criterion {criterion}: {} -- {detail}", if passed { "PASS" } else { "FAIL" });
}

fn petty_product(k: &Polytope, grid: &SphericalGrid) -> f64 {
    let polar = volume_from_radial(|v| 1.0 / classical_projection_support(k, v), grid).unwrap();
    polar * k.volume().powi(k.dim() as i32 - 1)
}

fn assert_rows(criterion: &str, rows: &[ResultRow], skip: &[&str]) {
    let mut ok = true;
    for r in rows {
        if skip.contains(&r.body.as_str()) {
            continue;
        }
        if !r.passed {
            ok = false;
            println!(
                "  failed row {}/{}: value {} reference {} tolerance {}",
                r.experiment, r.body, r.value, r.reference, r.tolerance
            );
        }
    }
    assert!(ok, "criterion {criterion}: some experiment rows failed");
}

#[test]
fn criterion_01_petty_equality_at_ball() {
    // 2D: 256-gon at grid 4096 within 1% of (pi/2)^2.
    let bound2 = (std::f64::consts::PI / 2.0).powi(2);
    let (p2, t2) = timed(|| {
        let disk = build_polytope(2, &ball_points(2, 256)).unwrap();
        petty_product(&disk, &SphericalGrid::new(2, 4096))
    });
    let ok2 = (p2 - bound2).abs() <= 0.01 * bound2 && t2 < 30.0;
    report(
        "01 (petty equality, disk)",
        ok2,
        &format!("product {p2:.5} vs {bound2:.5}, tol 1%, {t2:.2}s < 30s"),
    );
    assert!(ok2);

    // 3D: 2000-vertex ball at grid 8192 within 2% of (4/3)^3.
    let bound3 = (4.0_f64 / 3.0).powi(3);
    let (p3, t3) = timed(|| {
        let ball = build_polytope(3, &ball_points(3, 2000)).unwrap();
        petty_product(&ball, &SphericalGrid::new(3, 8192))
    });
    let ok3 = (p3 - bound3).abs() <= 0.02 * bound3 && t3 < 30.0;
    report(
        "01 (petty equality, ball)",
        ok3,
        &format!("product {p3:.5} vs {bound3:.5}, tol 2%, {t3:.2}s < 30s"),
    );
    assert!(ok3);
}

#[test]
fn criterion_02_square_strict_inequality() {
    let (product, t) = timed(|| {
        let square = build_polytope(
            2,
            &[
                Vec3::new(1.0, 1.0, 0.0),
                Vec3::new(-1.0, 1.0, 0.0),
                Vec3::new(-1.0, -1.0, 0.0),
                Vec3::new(1.0, -1.0, 0.0),
            ],
        )
        .unwrap();
        petty_product(&square, &SphericalGrid::new(2, 4096))
    });
    // Exact oracle: the polar projection body of the square is the
    // cross-polytope of area 1/2, so the product is 2.
    let ok = (product - 2.0).abs() <= 1e-3 && product < 2.4674 && t < 1.0;
    report(
        "02 (square strict)",
        ok,
        &format!("product {product:.6} vs 2.000 (tol 1e-3), below 2.4674, {t:.2}s < 1s"),
    );
    assert!(ok);
}

#[test]
fn criterion_03_lp_orlicz_consistency() {
    let ((worst, count), t) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(303);
        let ps = [1.0, 1.5, 2.0, 3.0, 8.0];
        let mut bodies: Vec<Polytope> = (0..6).map(|_| seeded_polygon(&mut rng)).collect();
        for _ in 0..4 {
            let verts = symmetric_polytope_vertices(3, 8, &mut rng);
            bodies.push(build_polytope(3, &verts).unwrap());
        }
        let mut worst = 0.0_f64;
        let mut count = 0;
        while count < 100 {
            let k = &bodies[count % bodies.len()];
            let p = ps[count % ps.len()];
            let phi = PhiFunction::power(p).unwrap();
            let x = Vec3::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                if k.dim() == 3 { rng.random_range(-1.0..1.0) } else { 0.0 },
            );
            if x.norm() < 1e-3 {
                continue;
            }
            let a = orlicz_support(k, &phi, &x).unwrap();
            let b = lp_support(k, p, &x).unwrap();
            worst = worst.max((a - b).abs() / b);
            count += 1;
        }
        (worst, count)
    });
    let ok = worst <= 1e-8 && t < 10.0;
    report(
        "03 (Lp/Orlicz consistency)",
        ok,
        &format!("worst relative deviation {worst:.2e} over {count} triples (tol 1e-8), {t:.2}s < 10s"),
    );
    assert!(ok);
}

#[test]
fn criterion_04_gl_equivariance() {
    let (worst, t) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(404);
        let phi = PhiFunction::power(2.0).unwrap();
        let mut worst = 0.0_f64;
        for map_idx in 0..20 {
            let dim = if map_idx % 5 == 4 { 3 } else { 2 };
            let (k, dirs): (Polytope, Vec<Vec3>) = if dim == 2 {
                let k = seeded_polygon(&mut rng);
                let dirs = (0..64)
                    .map(|j| {
                        let th = std::f64::consts::TAU * (j as f64 + 0.5) / 64.0;
                        Vec3::new(th.cos(), th.sin(), 0.0)
                    })
                    .collect();
                (k, dirs)
            } else {
                let verts = symmetric_polytope_vertices(3, 8, &mut rng);
                (
                    build_polytope(3, &verts).unwrap(),
                    projbody::geometry::grid::fibonacci_sphere(64),
                )
            };
            let a = random_invertible(dim, &mut rng);
            let a_inv = a.try_inverse().unwrap();
            let ak = k.linear_image(&a).unwrap();
            for v in &dirs {
                let lhs = polar_radial_orlicz(&ak, &phi, v).unwrap();
                let w = a_inv * v;
                let rhs = polar_radial_orlicz(&k, &phi, &(w / w.norm())).unwrap() / w.norm();
                worst = worst.max((lhs - rhs).abs() / rhs);
            }
        }
        worst
    });
    let ok = worst <= 1e-6 && t < 30.0;
    report(
        "04 (GL equivariance)",
        ok,
        &format!("worst relative deviation {worst:.2e} over 20 maps x 64 dirs (tol 1e-6), {t:.2}s < 30s"),
    );
    assert!(ok);
}

#[test]
fn criterion_05_steiner_monotonicity() {
    let (rows, t) = timed(|| {
        let cfg = ExperimentConfig::for_dim(2, 0);
        exp_steiner_monotone(&cfg).unwrap()
    });
    let inclusion_rows = rows.iter().filter(|r| r.body.contains("inclusion")).count();
    let ok = rows.iter().all(|r| r.passed) && t < 120.0;
    report(
        "05 (steiner monotonicity)",
        ok,
        &format!(
            "{} rows ({} inclusion checks over 20 bodies x 8 directions) all passed, {t:.2}s < 120s",
            rows.len(),
            inclusion_rows
        ),
    );
    assert_rows("05", &rows, &[]);
    assert!(t < 120.0, "runtime {t:.2}s exceeds the 2 minute budget");
}

#[test]
fn criterion_06_volume_preservation() {
    let (results, t) = timed(|| {
        // Exact 2D symmetrals.
        let mut rng = ChaCha8Rng::seed_from_u64(606);
        let mut worst2 = 0.0_f64;
        for _ in 0..10 {
            let k = seeded_polygon(&mut rng);
            let theta: f64 = rng.random_range(0.0..std::f64::consts::PI);
            let v = Vec3::new(theta.cos(), theta.sin(), 0.0);
            let s = steiner_2d(&k, &v).unwrap();
            worst2 = worst2.max((s.volume() - k.volume()).abs() / k.volume());
        }
        // Approximate 3D symmetral at the default grid and one doubling.
        let verts = symmetric_polytope_vertices(3, 10, &mut rng);
        let k3 = build_polytope(3, &verts).unwrap();
        let v3 = Vec3::new(0.2, -0.4, 1.0).normalize();
        let e_steiner: Vec<f64> = [100usize, 200]
            .iter()
            .map(|&res| (k3.volume() - steiner_3d(&k3, &v3, res).unwrap().volume()).abs())
            .collect();
        // Schwarz rounding at the default slice count and one doubling.
        let cap = BodySpec::CapBall { dim: 3, eps: 0.2 }.build(500).unwrap();
        let e_default =
            (cap.volume() - schwarz_round(&cap, &Vec3::z(), 2001).unwrap().volume()).abs();
        let e_schwarz: Vec<f64> = [1001usize, 2001]
            .iter()
            .map(|&m| {
                (k3.volume()
                    - schwarz_round(&Body::Polytope(k3.clone()), &v3, m).unwrap().volume())
                .abs()
            })
            .collect();
        (worst2, e_steiner, e_default, e_schwarz, k3.volume(), cap.volume())
    });
    let (worst2, e_steiner, e_schwarz_default, e_schwarz, v3, vcap) = results;
    let ok = worst2 <= 1e-12
        && e_steiner[0] <= 0.005 * v3
        && e_steiner[1] < e_steiner[0]
        && e_schwarz_default <= 0.005 * vcap
        && e_schwarz[0] <= 0.005 * v3
        && e_schwarz[1] < e_schwarz[0];
    report(
        "06 (volume preservation)",
        ok,
        &format!(
            "steiner_2d worst rel {worst2:.2e} (tol 1e-12); steiner_3d err {:.2e} -> {:.2e} (<=0.5%, decreasing); schwarz err {:.2e} -> {:.2e} (default {:.2e} <= 0.5%), {t:.2}s",
            e_steiner[0], e_steiner[1], e_schwarz[0], e_schwarz[1], e_schwarz_default
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_07_example_cap() {
    // Everything the cap-body experiment asserts apart from the
    // coarse-grid slope: positive deficits at every eps, the distance
    // lower bound eps/2 - 1e-3, and the asymptotic slope 1.5 +- 0.3.
    let (rows, t) = timed(|| {
        let cfg = ExperimentConfig::for_dim(2, 0);
        exp_example_cap(&cfg).unwrap()
    });
    let ok = rows.iter().filter(|r| r.body != "fit/slope").all(|r| r.passed) && t < 120.0;
    let asym = rows.iter().find(|r| r.body == "fit/slope_asymptotic").unwrap();
    report(
        "07 (cap deficits, distance bound, asymptotic slope)",
        ok,
        &format!(
            "all deficit and bm rows passed; asymptotic slope {:.3} vs 1.5 +- 0.3, {t:.2}s < 120s",
            asym.value
        ),
    );
    assert_rows("07", &rows, &["fit/slope"]);
    assert!(t < 120.0);
}

#[test]
fn criterion_07_spec_grid_slope() {
    // Pinned exactly as stated: the log-log slope of the n = 2 Petty
    // deficit over eps in {0.05, ..., 0.4} should be 1.5 +- 0.3.
    //
    // This fails, and the failure is a property of the deficit function
    // itself, not of the implementation: the exact closed form
    //   d(eps) = 1 - (pi + 2(tan tau - tau))(pi + sin 2tau - 2tau)/pi^2,
    //   tau = arccos(1/(1+eps)),
    // has a log-log slope of 1.18 over this grid (1.10 once the smallest
    // eps is dropped per the fitting rule), because the eps^{3/2} law is
    // asymptotic and this grid is pre-asymptotic. The law itself is
    // confirmed by the small-eps fit in the companion test, which sits
    // within 1.5 +- 0.3 (and tends to 1.5 as the grid shrinks further).
    let (slope_row, _t) = timed(|| {
        let cfg = ExperimentConfig::for_dim(2, 0);
        let rows = exp_example_cap(&cfg).unwrap();
        rows.into_iter().find(|r| r.body == "fit/slope").unwrap()
    });
    report(
        "07 (spec-grid slope, expected red)",
        slope_row.passed,
        &format!(
            "fitted slope {:.3} vs 1.5 +- 0.3 over eps in {{0.05..0.4}}; exact-oracle slope on this grid is 1.18/1.10",
            slope_row.value
        ),
    );
    assert!(
        slope_row.passed,
        "spec-grid slope {:.4} is outside 1.5 +- 0.3; the coarse eps grid is pre-asymptotic \
         (exact closed-form slope over it is 1.18 without the drop rule, 1.10 with it); \
         see the asymptotic fit in criterion_07_example_cap for the (n+1)/2 law",
        slope_row.value
    );
}

#[test]
fn criterion_08_maximality_of_the_ball() {
    let (all_rows, t) = timed(|| {
        let mut out: Vec<(String, Vec<ResultRow>)> = Vec::new();
        for p in [1.0, 2.0, 4.0] {
            let mut cfg = ExperimentConfig::for_dim(2, 0);
            cfg.phi = PhiSpec::Power { p };
            out.push((format!("2d p={p}"), exp_orlicz_ratio(&cfg).unwrap()));
        }
        // A lighter 3D corpus: the fine ball still leads as the reference.
        for p in [1.0, 2.0] {
            let mut cfg = ExperimentConfig::for_dim(3, 0);
            cfg.phi = PhiSpec::Power { p };
            cfg.grid_resolution = 2048;
            cfg.body_resolution = 500;
            cfg.corpus = vec![
                CorpusEntry {
                    id: "ball500".into(),
                    spec: BodySpec::Ball { dim: 3 },
                    ellipsoidal: true,
                    resolution: Some(500),
                },
                CorpusEntry {
                    id: "cube".into(),
                    spec: BodySpec::Polytope {
                        dim: 3,
                        vertices: vec![
                            vec![1.0, 1.0, 1.0],
                            vec![1.0, 1.0, -1.0],
                            vec![1.0, -1.0, 1.0],
                            vec![1.0, -1.0, -1.0],
                            vec![-1.0, 1.0, 1.0],
                            vec![-1.0, 1.0, -1.0],
                            vec![-1.0, -1.0, 1.0],
                            vec![-1.0, -1.0, -1.0],
                        ],
                    },
                    ellipsoidal: false,
                    resolution: None,
                },
                CorpusEntry {
                    id: "cap020".into(),
                    spec: BodySpec::CapBall { dim: 3, eps: 0.2 },
                    ellipsoidal: false,
                    resolution: Some(500),
                },
            ];
            out.push((format!("3d p={p}"), exp_orlicz_ratio(&cfg).unwrap()));
        }
        out
    });
    let mut total = 0;
    let mut gaps = 0;
    for (label, rows) in &all_rows {
        total += rows.len();
        gaps += rows.iter().filter(|r| r.body.ends_with("/gap")).count();
        assert_rows(&format!("08 [{label}]"), rows, &[]);
    }
    report(
        "08 (maximality of the ball)",
        true,
        &format!("{total} rows over phi in {{|t|, t^2, t^4}} incl. {gaps} strict-gap checks, {t:.2}s"),
    );
}

#[test]
fn criterion_09_lemma_suites() {
    let (rows, t) = timed(|| {
        let mut all = Vec::new();
        for p in [2.0, 4.0] {
            let mut cfg = ExperimentConfig::for_dim(2, 0);
            cfg.phi = PhiSpec::Power { p };
            all.extend(exp_lemma_suite(&cfg).unwrap());
        }
        all
    });
    let ok = rows.iter().all(|r| r.passed);
    let equal_rows: Vec<&ResultRow> =
        rows.iter().filter(|r| r.body.ends_with("equality")).collect();
    for r in &equal_rows {
        assert!(r.margin.abs() <= 1e-12, "equality sample margin {}", r.margin);
    }
    report(
        "09 (scalar lemma suites)",
        ok,
        &format!(
            "2 x 10^4 seeded samples per phi, zero violations at slack 1e-9; equality margins {:.1e}, {:.1e}; {t:.2}s",
            equal_rows[0].margin, equal_rows[1].margin
        ),
    );
    assert_rows("09", &rows, &[]);
}

#[test]
fn criterion_10_identity_suite() {
    let ((worst_recip, worst_p1, worst_moment, iso_err), t) = timed(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(1010);

        // Polar radial times support: exact (one floating division).
        let mut worst_recip = 0.0_f64;
        for _ in 0..20 {
            let k = seeded_polygon(&mut rng);
            for _ in 0..25 {
                let th: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                let v = Vec3::new(th.cos(), th.sin(), 0.0);
                let prod = k.polar_radial(&v).unwrap() * k.support(&v);
                worst_recip = worst_recip.max((prod - 1.0).abs());
            }
        }

        // p = 1 identity at 1e-12.
        let mut worst_p1 = 0.0_f64;
        for _ in 0..20 {
            let k = seeded_polygon(&mut rng);
            let nv = 2.0 * k.volume();
            for _ in 0..5 {
                let x = Vec3::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), 0.0);
                let lp = lp_support(&k, 1.0, &x).unwrap();
                let classical = classical_projection_support(&k, &x);
                worst_p1 = worst_p1.max((lp - 2.0 * classical / nv).abs() / lp.max(1e-300));
            }
        }

        // Ellipsoid moment identity over 100 samples at 1e-9.
        let mut worst_moment = 0.0_f64;
        for i in 0..100 {
            let dim = if i % 2 == 0 { 2 } else { 3 };
            let axes: Vec<f64> = (0..dim).map(|_| rng.random_range(0.2..3.0)).collect();
            let mut w = Vec3::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                if dim == 3 { rng.random_range(-1.0..1.0) } else { 0.0 },
            );
            if w.norm() < 1e-3 {
                w = Vec3::x();
            }
            let (lhs, rhs) = ellipsoid_moment_check(&axes, &w.normalize());
            worst_moment = worst_moment.max((lhs - rhs).abs() / lhs);
        }

        // Isotropic constant of the normalized cube.
        let mut cube_pts = Vec::new();
        for &x in &[-1.0, 1.0] {
            for &y in &[-1.0, 1.0] {
                for &z in &[-1.0, 1.0] {
                    cube_pts.push(Vec3::new(x, y, z));
                }
            }
        }
        let cube = build_polytope(3, &cube_pts).unwrap();
        let (_, md) = make_isotropic(&cube).unwrap();
        let iso_err = (md.isotropic_constant.unwrap() - 1.0 / 12.0).abs();
        (worst_recip, worst_p1, worst_moment, iso_err)
    });
    let ok = worst_recip <= f64::EPSILON
        && worst_p1 <= 1e-12
        && worst_moment <= 1e-9
        && iso_err <= 1e-9;
    report(
        "10 (identity suite)",
        ok,
        &format!(
            "reciprocal identity {worst_recip:.1e} (<= 1 ulp); p=1 identity {worst_p1:.1e} (tol 1e-12); moment identity {worst_moment:.1e} over 100 samples (tol 1e-9); cube isotropic constant err {iso_err:.1e} (tol 1e-9); {t:.2}s"
        ),
    );
    assert!(ok);
}
