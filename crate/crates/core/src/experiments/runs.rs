//! The experiment implementations.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::corpus::CorpusEntry;
use super::{ExperimentConfig, ExperimentError, ResultRow};
use crate::geometry::body::Body;
use crate::geometry::grid::{volume_from_radial, SphericalGrid};
use crate::geometry::polytope::Polytope;
use crate::geometry::{unit_ball_volume, Vec3};
use crate::metrics::{bm_distance_to_ball_axial, star_inclusion, steiner_symmetral_of_star};
use crate::orlicz::{
    classical_projection_support, opposite_sign_deficit_bound, second_order_deficit_bound, volume_ratio,
    OrliczPolarStar, PhiFunction,
};
use crate::symmetrize::{schwarz_round, steiner_2d};
use rand::Rng;

/// The sharp Petty bound (kappa_n / kappa_{n-1})^n.
pub fn petty_bound(n: usize) -> f64 {
    (unit_ball_volume(n) / unit_ball_volume(n - 1)).powi(n as i32)
}

/// Classical Petty product V(polar projection body) * V(K)^(n-1).
pub fn petty_product(k: &Polytope, grid: &SphericalGrid) -> Result<f64, ExperimentError> {
    let polar_vol =
        volume_from_radial(|v| 1.0 / classical_projection_support(k, v), grid)?;
    Ok(polar_vol * k.volume().powi(k.dim() as i32 - 1))
}

fn build_entry(entry: &CorpusEntry, cfg: &ExperimentConfig) -> Result<Body, ExperimentError> {
    Ok(entry.spec.build(entry.resolution.unwrap_or(cfg.body_resolution))?)
}

fn polytope_entries(cfg: &ExperimentConfig) -> Result<Vec<(String, Polytope, bool)>, ExperimentError> {
    let mut out = Vec::new();
    for entry in &cfg.corpus {
        if let Body::Polytope(k) = build_entry(entry, cfg)? {
            out.push((entry.id.clone(), k, entry.ellipsoidal));
        }
    }
    if out.is_empty() {
        return Err(ExperimentError::Config("corpus has no polytope entries".into()));
    }
    Ok(out)
}

/// Petty projection inequality over the corpus: the product stays below
/// the sharp bound, and ellipsoidal entries attain it within tolerance.
/// Every reported volume carries a grid-refinement gate row.
pub fn exp_petty(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>, ExperimentError> {
    let name = "petty";
    let grid = SphericalGrid::new(cfg.dim, cfg.grid_resolution);
    let grid_fine = SphericalGrid::new(cfg.dim, 2 * cfg.grid_resolution);
    let bound = petty_bound(cfg.dim);
    let tol_rel = cfg.tol("petty_rel", if cfg.dim == 2 { 0.01 } else { 0.02 });
    let quad_rel = cfg.tol("quad_rel", 1e-3);
    let mut rows = Vec::new();
    for (id, k, ellipsoidal) in polytope_entries(cfg)? {
        let product = petty_product(&k, &grid)?;
        let refined = petty_product(&k, &grid_fine)?;
        rows.push(ResultRow::new(
            name,
            &format!("{id}/gate"),
            refined,
            product,
            3.0 * quad_rel * product,
            (refined - product).abs() <= 3.0 * quad_rel * product,
        ));
        let passed = if ellipsoidal {
            (product - bound).abs() <= tol_rel * bound
        } else {
            product <= bound * (1.0 + tol_rel)
        };
        rows.push(ResultRow::new(name, &id, product, bound, tol_rel * bound, passed));
    }
    Ok(rows)
}

/// Orlicz-Petty volume ratio over the corpus: the ratio is maximal at the
/// ball, and for strictly convex phi every non-ellipsoidal body shows a
/// strictly positive gap.
pub fn exp_orlicz_ratio(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>, ExperimentError> {
    let name = "orlicz-ratio";
    let phi = PhiFunction::from_spec(&cfg.phi)?;
    let grid = SphericalGrid::new(cfg.dim, cfg.grid_resolution);
    let grid_fine = SphericalGrid::new(cfg.dim, 2 * cfg.grid_resolution);
    let quad_rel = cfg.tol("quad_rel", 1e-3);
    let entries = polytope_entries(cfg)?;
    let reference = entries
        .iter()
        .find(|(_, _, ellipsoidal)| *ellipsoidal)
        .ok_or_else(|| ExperimentError::Config("corpus needs an ellipsoidal reference".into()))?;
    let ball_ratio = volume_ratio(&reference.1, &phi, &grid)?;
    let mut rows = Vec::new();
    rows.push(ResultRow::new(
        name,
        &format!("{}/reference", reference.0),
        ball_ratio,
        ball_ratio,
        0.0,
        true,
    ));
    for (id, k, ellipsoidal) in &entries {
        let ratio = volume_ratio(k, &phi, &grid)?;
        let refined = volume_ratio(k, &phi, &grid_fine)?;
        rows.push(ResultRow::new(
            name,
            &format!("{id}/gate"),
            refined,
            ratio,
            3.0 * quad_rel * ratio,
            (refined - ratio).abs() <= 3.0 * quad_rel * ratio,
        ));
        let tol = 3.0 * quad_rel * ball_ratio;
        rows.push(ResultRow::new(name, id, ratio, ball_ratio, tol, ratio <= ball_ratio + tol));
        if phi.strictly_convex() && !ellipsoidal {
            // The gap must clear the quadrature tolerance.
            let gap = ball_ratio - ratio;
            rows.push(ResultRow::new(name, &format!("{id}/gap"), gap, tol, tol, gap > tol));
        }
    }
    Ok(rows)
}

/// Monotonicity of the polar projection body volume under Steiner
/// symmetrization on an exact 2D corpus, with the pointwise inclusion of
/// the symmetrized polar in the polar of the symmetral.
pub fn exp_steiner_monotone(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>, ExperimentError> {
    let name = "steiner-monotone";
    let phi = PhiFunction::from_spec(&cfg.phi)?;
    let bodies = super::corpus::seeded_polygon_corpus(cfg.seed, 20);
    let directions_per_body = 8;
    // Polar volumes here only feed monotonicity checks with a 3 quad_rel
    // budget; a 1024-point rule is orders of magnitude inside that.
    let grid = SphericalGrid::new(2, cfg.grid_resolution.min(1024));
    let incl_grid = SphericalGrid::new(2, 256);
    let quad_rel = cfg.tol("quad_rel", 1e-3);
    let incl_tol = cfg.tol("inclusion", 1e-6);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x73746e72);
    let mut rows = Vec::new();
    for (id, k) in &bodies {
        let star = OrliczPolarStar::new(k, phi.clone())?;
        let vol_before = volume_from_radial(|v| star.radial(v).unwrap_or(f64::NAN), &grid)?;
        for j in 0..directions_per_body {
            let theta = rng.random_range(0.0..std::f64::consts::PI);
            let v = Vec3::new(theta.cos(), theta.sin(), 0.0);
            let sym_k = steiner_2d(k, &v)?;
            let star_after = OrliczPolarStar::new(&sym_k, phi.clone())?;
            let sym_star = steiner_symmetral_of_star(&star, &v);
            let report = star_inclusion(
                |w| sym_star.radial(w),
                |w| star_after.radial(w).map_err(Into::into),
                &incl_grid,
                incl_tol,
            )?;
            rows.push(ResultRow::new(
                name,
                &format!("{id}/dir{j}/inclusion"),
                report.worst_violation,
                0.0,
                incl_tol,
                report.holds,
            ));
            let vol_after = volume_from_radial(|w| star_after.radial(w).unwrap_or(f64::NAN), &grid)?;
            let tol = 3.0 * quad_rel * vol_before;
            rows.push(ResultRow::new(
                name,
                &format!("{id}/dir{j}/volume"),
                vol_after,
                vol_before,
                tol,
                vol_after >= vol_before - tol,
            ));
        }
    }
    // Fixed point: a body symmetric about the direction keeps its polar
    // volume (equality case of the monotonicity).
    let square = crate::geometry::polytope::build_polytope(
        2,
        &[
            Vec3::new(1.0, 1.0, 0.0),
            Vec3::new(-1.0, 1.0, 0.0),
            Vec3::new(-1.0, -1.0, 0.0),
            Vec3::new(1.0, -1.0, 0.0),
        ],
    )?;
    let star_sq = OrliczPolarStar::new(&square, phi.clone())?;
    let vol_sq = volume_from_radial(|v| star_sq.radial(v).unwrap_or(f64::NAN), &grid)?;
    let sym_sq = steiner_2d(&square, &Vec3::x())?;
    let star_sym = OrliczPolarStar::new(&sym_sq, phi.clone())?;
    let vol_sym = volume_from_radial(|v| star_sym.radial(v).unwrap_or(f64::NAN), &grid)?;
    rows.push(ResultRow::new(
        name,
        "square/fixed_point",
        vol_sym,
        vol_sq,
        3.0 * quad_rel * vol_sq,
        (vol_sym - vol_sq).abs() <= 3.0 * quad_rel * vol_sq,
    ));

    // Iterated symmetrization of the first body: the polar volume must be
    // nondecreasing at every step within tolerance.
    let (id0, mut body) = bodies[0].clone();
    let phi0 = phi.clone();
    let star0 = OrliczPolarStar::new(&body, phi0.clone())?;
    let mut prev = volume_from_radial(|v| star0.radial(v).unwrap_or(f64::NAN), &grid)?;
    for step in 0..20 {
        let theta = std::f64::consts::PI * (step as f64 + 0.37) / 7.3;
        let v = Vec3::new(theta.cos(), theta.sin(), 0.0);
        body = steiner_2d(&body, &v)?;
        let star = OrliczPolarStar::new(&body, phi0.clone())?;
        let vol = volume_from_radial(|w| star.radial(w).unwrap_or(f64::NAN), &grid)?;
        let tol = 3.0 * quad_rel * prev;
        rows.push(ResultRow::new(
            name,
            &format!("{id0}/iter{step:02}"),
            vol,
            prev,
            tol,
            vol >= prev - tol,
        ));
        prev = vol;
    }
    Ok(rows)
}

/// Cap bodies [B^n, +-(1+eps) pole]: the Petty deficit follows the
/// (n+1)/2 power law in eps, and the distance to the ball is at least
/// eps / 2.
pub fn exp_example_cap(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>, ExperimentError> {
    let name = "example-cap";
    let n = cfg.dim;
    let grid = SphericalGrid::new(n, cfg.grid_resolution);
    let bound = petty_bound(n);
    let quad_rel = cfg.tol("quad_rel", 1e-3);
    let bm_margin = cfg.tol("bm_margin", 1e-3);
    let slope_tol = cfg.tol("slope", 0.3);
    let eps_grid = [0.05, 0.1, 0.15, 0.2, 0.3, 0.4];
    let pole = if n == 3 { Vec3::z() } else { Vec3::y() };
    let mut rows = Vec::new();
    let mut fit_points = Vec::new();

    // The deficit of each cap body is measured against the ball at the
    // same discretization: the two bodies share their equatorial vertices,
    // so the difference isolates the cap effect from discretization error.
    let ball = crate::geometry::body::BodySpec::Ball { dim: n }.build(cfg.body_resolution)?;
    let baseline = petty_product(ball.as_polytope().unwrap(), &grid)?;
    rows.push(ResultRow::new(
        name,
        "ball/baseline",
        baseline,
        bound,
        if n == 2 { 0.01 } else { 0.02 } * bound,
        (baseline - bound).abs() <= if n == 2 { 0.01 } else { 0.02 } * bound,
    ));

    for &eps in &eps_grid {
        let spec = crate::geometry::body::BodySpec::CapBall { dim: n, eps };
        let body = spec.build(cfg.body_resolution)?;
        let k = body
            .as_polytope()
            .ok_or_else(|| ExperimentError::Config("cap body must be a polytope".into()))?;
        let product = petty_product(k, &grid)?;
        let deficit = 1.0 - product / baseline;
        rows.push(ResultRow::new(
            name,
            &format!("cap{eps:.2}/deficit"),
            deficit,
            0.0,
            0.0,
            deficit > 0.0,
        ));
        fit_points.push((eps.ln(), deficit.ln()));
        let rounded = schwarz_round(&body, &pole, 2001)?;
        let bm = bm_distance_to_ball_axial(&rounded)?;
        rows.push(ResultRow::new(
            name,
            &format!("cap{eps:.2}/bm"),
            bm.value,
            eps / 2.0,
            bm_margin,
            bm.value >= eps / 2.0 - bm_margin,
        ));
    }
    // Drop the smallest-eps point when its deficit sits in the quadrature
    // noise floor.
    let (_, d_min) = fit_points[0];
    if d_min.exp() < 10.0 * quad_rel {
        fit_points.remove(0);
    }
    let slope = fit_slope(&fit_points);
    let slope_ref = (n + 1) as f64 / 2.0;
    rows.push(ResultRow::new(
        name,
        "fit/slope",
        slope,
        slope_ref,
        slope_tol,
        (slope - slope_ref).abs() <= slope_tol,
    ));

    // The power law is asymptotic: on the coarse grid above the measured
    // exponent is dragged down by higher-order terms (for n = 2 the exact
    // deficit is (2/3pi) tau^3 (1 - 4 tau^2/5 + ...) with
    // tau = arccos(1/(1+eps)), whose log-log slope over [0.05, 0.4] is
    // about 1.18). A second fit on a small-eps grid checks the law itself.
    let eps_small: &[f64] =
        if n == 2 { &[0.00625, 0.0125, 0.025, 0.05] } else { &[0.025, 0.05, 0.1, 0.2] };
    let mut small_points = Vec::new();
    for &eps in eps_small {
        let spec = crate::geometry::body::BodySpec::CapBall { dim: n, eps };
        let body = spec.build(cfg.body_resolution)?;
        let product = petty_product(body.as_polytope().unwrap(), &grid)?;
        let deficit = 1.0 - product / baseline;
        if deficit > 0.0 {
            small_points.push((eps.ln(), deficit.ln()));
        }
    }
    let slope_small = fit_slope(&small_points);
    rows.push(ResultRow::new(
        name,
        "fit/slope_asymptotic",
        slope_small,
        slope_ref,
        slope_tol,
        (slope_small - slope_ref).abs() <= slope_tol,
    ));
    Ok(rows)
}

fn fit_slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    (m * sxy - sx * sy) / (m * sxx - sx * sx)
}

/// Sign and trend of the Orlicz deficit along a family of bodies with
/// growing distance to the ball. The constants of the quantitative
/// stability bounds are not reproducible, so only positivity and
/// monotonicity are asserted.
pub fn exp_stability_sign(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>, ExperimentError> {
    let name = "stability-sign";
    let n = cfg.dim;
    let phi = PhiFunction::from_spec(&cfg.phi)?;
    let grid = SphericalGrid::new(n, cfg.grid_resolution);
    let quad_rel = cfg.tol("quad_rel", 1e-3);
    let res = cfg.body_resolution;
    let mut rows = Vec::new();

    let ball = crate::geometry::body::BodySpec::Ball { dim: n }.build(res)?;
    let ball_k = ball.as_polytope().unwrap();
    let ball_ratio = volume_ratio(ball_k, &phi, &grid)?;
    let tol = 3.0 * quad_rel * ball_ratio;
    rows.push(ResultRow::new(name, "ball/deficit", 0.0, 0.0, tol, true));

    // A dilated and a sheared copy of the ball: the ratio is invariant
    // under invertible linear maps, so the deficit stays within tolerance.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x7374616c);
    let dilated: Vec<Vec3> = ball_k.vertices().iter().map(|v| v * 2.5).collect();
    let dilated_k = crate::geometry::polytope::build_polytope(n, &dilated)?;
    let d_ratio = volume_ratio(&dilated_k, &phi, &grid)?;
    rows.push(ResultRow::new(
        name,
        "ball_dilated/deficit",
        ball_ratio - d_ratio,
        0.0,
        tol,
        (ball_ratio - d_ratio).abs() <= tol,
    ));
    let shear = super::corpus::random_shear(n, &mut rng);
    let sheared: Vec<Vec3> = ball_k.vertices().iter().map(|v| shear * v).collect();
    let sheared_k = crate::geometry::polytope::build_polytope(n, &sheared)?;
    let s_ratio = volume_ratio(&sheared_k, &phi, &grid)?;
    rows.push(ResultRow::new(
        name,
        "ball_sheared/deficit",
        ball_ratio - s_ratio,
        0.0,
        tol,
        (ball_ratio - s_ratio).abs() <= tol,
    ));

    // The cap family: deficits must be positive once the distance to the
    // ball is visible, and strictly increasing along the family.
    let pole = if n == 3 { Vec3::z() } else { Vec3::y() };
    let mut prev_deficit = 0.0;
    for &eps in &[0.05, 0.1, 0.2, 0.3, 0.4] {
        let body = crate::geometry::body::BodySpec::CapBall { dim: n, eps }.build(res)?;
        let k = body.as_polytope().unwrap();
        let ratio = volume_ratio(k, &phi, &grid)?;
        let deficit = ball_ratio - ratio;
        let rounded = schwarz_round(&body, &pole, 1001)?;
        let bm = bm_distance_to_ball_axial(&rounded)?.value;
        rows.push(ResultRow::new(
            name,
            &format!("cap{eps:.2}/deficit"),
            deficit,
            bm,
            tol,
            deficit > 0.0,
        ));
        rows.push(ResultRow::new(
            name,
            &format!("cap{eps:.2}/trend"),
            deficit,
            prev_deficit,
            0.0,
            deficit > prev_deficit,
        ));
        prev_deficit = deficit;
    }
    Ok(rows)
}

/// Randomized checks of the two scalar deficit bounds, plus the
/// hand-computed equality samples.
pub fn exp_lemma_suite(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>, ExperimentError> {
    let name = "lemma-suite";
    let slack = cfg.tol("lemma_slack", 1e-9);
    let samples = 10_000;
    let phi = PhiFunction::from_spec(&cfg.phi)?;
    // The second-order bound needs an even phi with positive second
    // derivative; fall back to the quadratic when the configured one does
    // not qualify.
    let phi_smooth = if phi.is_even() && phi.min_second_derivative(0.5) > 0.0 {
        phi.clone()
    } else {
        PhiFunction::power(2.0)?
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x6c656d73);
    let mut rows = Vec::new();

    let quad = PhiFunction::power(2.0)?;
    let (d10, b10) = opposite_sign_deficit_bound(&quad, 1.0, -1.0, 1.0, 1.0, 1.0)?;
    rows.push(ResultRow::new(
        name,
        "opposite_sign/equality",
        d10 - b10,
        0.0,
        1e-12,
        (d10 - b10).abs() <= 1e-12,
    ));
    let (d15, b15) = second_order_deficit_bound(&quad, 2.0, 1.0, 1.0, 1.0, 0.5)?;
    rows.push(ResultRow::new(
        name,
        "second_order/equality",
        d15 - b15,
        0.0,
        1e-12,
        (d15 - b15).abs() <= 1e-12,
    ));

    let mut violations10 = 0_usize;
    let mut worst10 = f64::INFINITY;
    for _ in 0..samples {
        let omega = rng.random_range(0.05..2.0);
        let alpha = rng.random_range(0.1..10.0);
        let beta = rng.random_range(0.1..10.0);
        let a = omega * alpha * (1.0 + rng.random_range(0.0..5.0));
        let b = -omega * beta * (1.0 + rng.random_range(0.0..5.0));
        let (d, bnd) = opposite_sign_deficit_bound(&phi, a, b, alpha, beta, omega)?;
        worst10 = worst10.min(d - bnd);
        if d < bnd - slack {
            violations10 += 1;
        }
    }
    rows.push(ResultRow::new(
        name,
        "opposite_sign/violations",
        violations10 as f64,
        0.0,
        0.0,
        violations10 == 0,
    ));
    rows.push(ResultRow::new(name, "opposite_sign/worst_margin", worst10, 0.0, slack, worst10 >= -slack));

    let mut violations15 = 0_usize;
    let mut worst15 = f64::INFINITY;
    for _ in 0..samples {
        let omega = rng.random_range(0.1..0.9);
        let alpha = rng.random_range(0.1..10.0);
        let beta = rng.random_range(0.1..10.0);
        let span = 1.0 / omega - omega;
        let a = alpha * (omega + rng.random_range(0.0..1.0) * span);
        let b = beta * (omega + rng.random_range(0.0..1.0) * span);
        let (d, bnd) = second_order_deficit_bound(&phi_smooth, a, b, alpha, beta, omega)?;
        worst15 = worst15.min(d - bnd);
        if d < bnd - slack {
            violations15 += 1;
        }
    }
    rows.push(ResultRow::new(
        name,
        "second_order/violations",
        violations15 as f64,
        0.0,
        0.0,
        violations15 == 0,
    ));
    rows.push(ResultRow::new(name, "second_order/worst_margin", worst15, 0.0, slack, worst15 >= -slack));
    Ok(rows)
}

/// Run every experiment that applies to the configured dimension. The
/// symmetrization monotonicity run always uses its own exact 2D corpus.
pub fn run_all(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>, ExperimentError> {
    let mut rows = Vec::new();
    rows.extend(exp_petty(cfg)?);
    rows.extend(exp_orlicz_ratio(cfg)?);
    rows.extend(exp_steiner_monotone(cfg)?);
    rows.extend(exp_example_cap(cfg)?);
    rows.extend(exp_stability_sign(cfg)?);
    rows.extend(exp_lemma_suite(cfg)?);
    Ok(rows)
}
