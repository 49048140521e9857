//! The admissible class of Orlicz functions.
//!
//! Admissible functions are convex, nonnegative, vanish at zero, and are
//! strictly monotone on at least one side of it (so phi(-t) + phi(t) > 0
//! for t != 0). Three families are supported: even powers |t|^p, two-sided
//! powers with independent exponents and a weight on the negative branch,
//! and convex piecewise-linear tables.

use serde::{Deserialize, Serialize};

use super::OrliczError;

/// Wire format for an Orlicz function.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PhiSpec {
    Power { p: f64 },
    AsymmetricPower { p_plus: f64, p_minus: f64, c: f64 },
    Table { points: Vec<[f64; 2]> },
}

#[derive(Debug, Clone)]
enum PhiKind {
    Power { p: f64 },
    AsymmetricPower { p_plus: f64, p_minus: f64, c: f64 },
    Table { knots: Vec<(f64, f64)> },
}

/// A validated Orlicz function together with its normalization constant
/// c_phi, the unique c > 0 with max(phi(-c), phi(c)) = 1.
#[derive(Debug, Clone)]
pub struct PhiFunction {
    kind: PhiKind,
    c_phi: f64,
    strictly_convex: bool,
}

impl PhiFunction {
    /// phi(t) = |t|^p for p >= 1.
    pub fn power(p: f64) -> Result<Self, OrliczError> {
        if p.is_nan() || p < 1.0 {
            return Err(OrliczError::InvalidPhi("power exponent must be >= 1".into()));
        }
        Ok(Self { kind: PhiKind::Power { p }, c_phi: 1.0, strictly_convex: p > 1.0 })
    }

    /// phi(t) = t^p_plus for t >= 0 and c * (-t)^p_minus for t < 0.
    pub fn asymmetric_power(p_plus: f64, p_minus: f64, c: f64) -> Result<Self, OrliczError> {
        if p_plus.is_nan() || p_minus.is_nan() || p_plus < 1.0 || p_minus < 1.0 {
            return Err(OrliczError::InvalidPhi("exponents must be >= 1".into()));
        }
        if c.is_nan() || c < 0.0 {
            return Err(OrliczError::InvalidPhi("negative-branch weight must be >= 0".into()));
        }
        let kind = PhiKind::AsymmetricPower { p_plus, p_minus, c };
        let c_phi = solve_c_phi(|t| eval_kind(&kind, t))?;
        let strictly_convex = p_plus > 1.0 && p_minus > 1.0 && c > 0.0;
        Ok(Self { kind, c_phi, strictly_convex })
    }

    /// Convex piecewise-linear interpolant through the given knots,
    /// extended linearly with the boundary slopes. The data is validated
    /// on a dense net; any violation of the class conditions is an error.
    pub fn table(points: &[[f64; 2]]) -> Result<Self, OrliczError> {
        let mut knots: Vec<(f64, f64)> = points.iter().map(|p| (p[0], p[1])).collect();
        knots.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        knots.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-14);
        if knots.len() < 2 {
            return Err(OrliczError::InvalidPhi("table needs at least two knots".into()));
        }
        if !knots.iter().any(|&(t, y)| t.abs() < 1e-14 && y.abs() < 1e-14) {
            return Err(OrliczError::InvalidPhi("table must pass through (0, 0)".into()));
        }
        if knots.iter().any(|&(_, y)| y < 0.0) {
            return Err(OrliczError::InvalidPhi("table values must be nonnegative".into()));
        }
        // Convexity of the interpolant: knot slopes must not decrease.
        let mut prev_slope = f64::NEG_INFINITY;
        for w in knots.windows(2) {
            let slope = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
            if slope < prev_slope - 1e-12 {
                return Err(OrliczError::InvalidPhi("table is not convex".into()));
            }
            prev_slope = slope;
        }
        let kind = PhiKind::Table { knots };
        // Dense-net validation of the class conditions.
        let span = match &kind {
            PhiKind::Table { knots } => knots.last().unwrap().0.abs().max(knots[0].0.abs()),
            _ => unreachable!(),
        }
        .max(1.0);
        let net = 10_000;
        for i in 0..=net {
            let t = -span + 2.0 * span * i as f64 / net as f64;
            let v = eval_kind(&kind, t);
            let w = eval_kind(&kind, -t);
            if v < -1e-12 {
                return Err(OrliczError::InvalidPhi("negative value on the net".into()));
            }
            if t.abs() > 1e-9 && v + w <= 0.0 {
                return Err(OrliczError::InvalidPhi(
                    "phi(-t) + phi(t) must be positive for t != 0".into(),
                ));
            }
            // Midpoint convexity against the net neighbors.
            if i >= 2 {
                let t0 = -span + 2.0 * span * (i - 2) as f64 / net as f64;
                let mid = eval_kind(&kind, (t0 + t) / 2.0);
                if mid > (eval_kind(&kind, t0) + v) / 2.0 + 1e-12 {
                    return Err(OrliczError::InvalidPhi("midpoint convexity violated".into()));
                }
            }
        }
        // Monotone away from zero on each side.
        let mut last = eval_kind(&kind, 0.0);
        for i in 1..=200 {
            let v = eval_kind(&kind, span * i as f64 / 200.0);
            if v < last - 1e-12 {
                return Err(OrliczError::InvalidPhi("not nondecreasing on [0, inf)".into()));
            }
            last = v;
        }
        last = eval_kind(&kind, 0.0);
        for i in 1..=200 {
            let v = eval_kind(&kind, -span * i as f64 / 200.0);
            if v < last - 1e-12 {
                return Err(OrliczError::InvalidPhi("not nonincreasing on (-inf, 0]".into()));
            }
            last = v;
        }
        let c_phi = solve_c_phi(|t| eval_kind(&kind, t))?;
        Ok(Self { kind, c_phi, strictly_convex: false })
    }

    pub fn from_spec(spec: &PhiSpec) -> Result<Self, OrliczError> {
        match spec {
            PhiSpec::Power { p } => Self::power(*p),
            PhiSpec::AsymmetricPower { p_plus, p_minus, c } => {
                Self::asymmetric_power(*p_plus, *p_minus, *c)
            }
            PhiSpec::Table { points } => Self::table(points),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        eval_kind(&self.kind, t)
    }

    /// The constant with max(phi(-c), phi(c)) = 1.
    pub fn c_phi(&self) -> f64 {
        self.c_phi
    }

    pub fn strictly_convex(&self) -> bool {
        self.strictly_convex
    }

    pub fn is_even(&self) -> bool {
        match &self.kind {
            PhiKind::Power { .. } => true,
            PhiKind::AsymmetricPower { p_plus, p_minus, c } => {
                p_plus == p_minus && (c - 1.0).abs() < 1e-14
            }
            PhiKind::Table { knots } => {
                knots.iter().all(|&(t, y)| (eval_kind(&self.kind, -t) - y).abs() < 1e-12)
            }
        }
    }

    /// Second derivative, from the closed form for power kinds and central
    /// differences (step 1e-5) otherwise. Power exponents below 2 blow up
    /// at zero; callers restrict to t bounded away from it.
    pub fn second_derivative(&self, t: f64) -> f64 {
        match &self.kind {
            PhiKind::Power { p } => {
                if *p == 1.0 {
                    0.0
                } else {
                    p * (p - 1.0) * t.abs().powf(p - 2.0)
                }
            }
            PhiKind::AsymmetricPower { p_plus, p_minus, c } => {
                if t >= 0.0 {
                    p_plus * (p_plus - 1.0) * t.powf(p_plus - 2.0)
                } else {
                    c * p_minus * (p_minus - 1.0) * (-t).powf(p_minus - 2.0)
                }
            }
            PhiKind::Table { .. } => {
                let h = 1e-5;
                (self.eval(t + h) - 2.0 * self.eval(t) + self.eval(t - h)) / (h * h)
            }
        }
    }

    /// Minimum of the second derivative over the interval (omega, 1/omega),
    /// exact for power kinds, sampled otherwise.
    pub fn min_second_derivative(&self, omega: f64) -> f64 {
        debug_assert!(omega > 0.0 && omega < 1.0 + 1e-12);
        match &self.kind {
            PhiKind::Power { p } => {
                if *p >= 2.0 {
                    self.second_derivative(omega)
                } else {
                    self.second_derivative(1.0 / omega)
                }
            }
            _ => {
                let mut min = f64::INFINITY;
                let lo = omega.ln();
                let hi = (1.0 / omega).ln();
                for i in 0..=1000 {
                    let t = (lo + (hi - lo) * i as f64 / 1000.0).exp();
                    min = min.min(self.second_derivative(t));
                }
                min
            }
        }
    }
}

fn eval_kind(kind: &PhiKind, t: f64) -> f64 {
    match kind {
        PhiKind::Power { p } => t.abs().powf(*p),
        PhiKind::AsymmetricPower { p_plus, p_minus, c } => {
            if t >= 0.0 {
                t.powf(*p_plus)
            } else {
                c * (-t).powf(*p_minus)
            }
        }
        PhiKind::Table { knots } => {
            let m = knots.len();
            if t <= knots[0].0 {
                let slope = (knots[1].1 - knots[0].1) / (knots[1].0 - knots[0].0);
                return (knots[0].1 + slope * (t - knots[0].0)).max(0.0);
            }
            if t >= knots[m - 1].0 {
                let slope = (knots[m - 1].1 - knots[m - 2].1) / (knots[m - 1].0 - knots[m - 2].0);
                return (knots[m - 1].1 + slope * (t - knots[m - 1].0)).max(0.0);
            }
            let idx = knots.partition_point(|&(x, _)| x <= t).clamp(1, m - 1);
            let (x0, y0) = knots[idx - 1];
            let (x1, y1) = knots[idx];
            y0 + (y1 - y0) * (t - x0) / (x1 - x0)
        }
    }
}

/// Bisection for the unique c with max(phi(-c), phi(c)) = 1.
fn solve_c_phi(phi: impl Fn(f64) -> f64) -> Result<f64, OrliczError> {
    let level = |c: f64| phi(c).max(phi(-c));
    let mut hi = 1.0;
    let mut grow = 0;
    while level(hi) < 1.0 {
        hi *= 2.0;
        grow += 1;
        if grow > 200 {
            return Err(OrliczError::InvalidPhi("phi never reaches level one".into()));
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if level(mid) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Ok((lo + hi) / 2.0)
}
