//! Scalar convexity-deficit bounds used by the stability experiments.

use super::phi::PhiFunction;
use super::OrliczError;

/// The convexity deficit
/// alpha phi(a/alpha) + beta phi(b/beta) - (alpha+beta) phi((a+b)/(alpha+beta)),
/// nonnegative for every admissible phi.
pub fn convexity_deficit(phi: &PhiFunction, a: f64, b: f64, alpha: f64, beta: f64) -> f64 {
    assert!(alpha > 0.0 && beta > 0.0, "weights must be positive");
    alpha * phi.eval(a / alpha) + beta * phi.eval(b / beta)
        - (alpha + beta) * phi.eval((a + b) / (alpha + beta))
}

/// Deficit lower bound for arguments of opposite sign bounded away from
/// zero: when a b < 0 and |a|/alpha, |b|/beta >= omega, the deficit is at
/// least min(|a|, |b|) / omega * (phi(-omega) + phi(omega)).
///
/// Returns (deficit, bound); callers assert deficit >= bound - slack.
pub fn opposite_sign_deficit_bound(
    phi: &PhiFunction,
    a: f64,
    b: f64,
    alpha: f64,
    beta: f64,
    omega: f64,
) -> Result<(f64, f64), OrliczError> {
    if [alpha, beta, omega].iter().any(|t| t.is_nan() || *t <= 0.0) {
        return Err(OrliczError::PreconditionViolated("weights and omega must be positive".into()));
    }
    if (a * b).is_nan() || a * b >= 0.0 {
        return Err(OrliczError::PreconditionViolated("a and b must have opposite signs".into()));
    }
    if a.abs() / alpha < omega - 1e-15 || b.abs() / beta < omega - 1e-15 {
        return Err(OrliczError::PreconditionViolated(
            "normalized arguments must be at least omega".into(),
        ));
    }
    let deficit = convexity_deficit(phi, a, b, alpha, beta);
    let bound = a.abs().min(b.abs()) / omega * (phi.eval(-omega) + phi.eval(omega));
    Ok((deficit, bound))
}

/// Second-order deficit lower bound for even, twice differentiable phi
/// with positive second derivative: for positive data with
/// omega <= a/alpha, b/beta <= 1/omega,
/// deficit >= min phi'' on (omega, 1/omega) * min(alpha^2, beta^2)
///            / (2 (alpha + beta)) * (a/alpha - b/beta)^2.
pub fn second_order_deficit_bound(
    phi: &PhiFunction,
    a: f64,
    b: f64,
    alpha: f64,
    beta: f64,
    omega: f64,
) -> Result<(f64, f64), OrliczError> {
    if [a, b, alpha, beta, omega].iter().any(|t| t.is_nan() || *t <= 0.0) {
        return Err(OrliczError::PreconditionViolated("all inputs must be positive".into()));
    }
    if !phi.is_even() {
        return Err(OrliczError::PreconditionViolated("phi must be even".into()));
    }
    let (ra, rb) = (a / alpha, b / beta);
    let inv = 1.0 / omega;
    if ra < omega - 1e-15 || ra > inv + 1e-15 || rb < omega - 1e-15 || rb > inv + 1e-15 {
        return Err(OrliczError::PreconditionViolated(
            "normalized arguments must lie in [omega, 1/omega]".into(),
        ));
    }
    let min_dd = phi.min_second_derivative(omega.min(1.0 / omega));
    if min_dd.is_nan() || min_dd <= 0.0 {
        return Err(OrliczError::PreconditionViolated(
            "phi must have positive second derivative on the window".into(),
        ));
    }
    let deficit = convexity_deficit(phi, a, b, alpha, beta);
    let bound =
        min_dd * alpha.min(beta).powi(2) / (2.0 * (alpha + beta)) * (ra - rb) * (ra - rb);
    Ok((deficit, bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deficit_vanishes_on_the_diagonal() {
        let phi = PhiFunction::power(3.0).unwrap();
        let d = convexity_deficit(&phi, 2.0, 4.0, 1.0, 2.0);
        assert!(d.abs() < 1e-12);
        let d2 = convexity_deficit(&phi, 1.5, 1.5, 1.0, 1.0);
        assert!(d2.abs() < 1e-12);
    }

    #[test]
    fn deficit_square_opposite_signs() {
        let phi = PhiFunction::power(2.0).unwrap();
        // 1 + 1 - 2 phi(0) = 2.
        let d = convexity_deficit(&phi, 1.0, -1.0, 1.0, 1.0);
        assert!((d - 2.0).abs() < 1e-12);
    }

    #[test]
    fn deficit_linear_on_a_ray() {
        let phi = PhiFunction::power(1.0).unwrap();
        // |2| + |1| - 2 |3/2| = 0.
        let d = convexity_deficit(&phi, 2.0, 1.0, 1.0, 1.0);
        assert!(d.abs() < 1e-12);
    }

    #[test]
    fn opposite_sign_equality_sample() {
        let phi = PhiFunction::power(2.0).unwrap();
        let (d, b) = opposite_sign_deficit_bound(&phi, 1.0, -1.0, 1.0, 1.0, 1.0).unwrap();
        assert!((d - 2.0).abs() < 1e-12);
        assert!((b - 2.0).abs() < 1e-12);
        assert!((d - b).abs() < 1e-12);
    }

    #[test]
    fn opposite_sign_strict_sample() {
        let phi = PhiFunction::power(2.0).unwrap();
        // 4 + 1 - 2 (1/2)^2 = 4.5 against the bound 2.
        let (d, b) = opposite_sign_deficit_bound(&phi, 2.0, -1.0, 1.0, 1.0, 1.0).unwrap();
        assert!((d - 4.5).abs() < 1e-12);
        assert!((b - 2.0).abs() < 1e-12);
        assert!(d >= b - 1e-12);
    }

    #[test]
    fn opposite_sign_rejects_same_signs() {
        let phi = PhiFunction::power(2.0).unwrap();
        assert!(opposite_sign_deficit_bound(&phi, 1.0, 1.0, 1.0, 1.0, 0.5).is_err());
        assert!(opposite_sign_deficit_bound(&phi, 0.1, -1.0, 1.0, 1.0, 0.5).is_err());
    }

    #[test]
    fn second_order_equality_sample() {
        let phi = PhiFunction::power(2.0).unwrap();
        // deficit = 4 + 1 - 2 (3/2)^2 = 1/2; bound = 2 * 1 / 4 * 1 = 1/2.
        let (d, b) = second_order_deficit_bound(&phi, 2.0, 1.0, 1.0, 1.0, 0.5).unwrap();
        assert!((d - 0.5).abs() < 1e-12);
        assert!((b - 0.5).abs() < 1e-12);
    }

    #[test]
    fn second_order_diagonal_sample() {
        let phi = PhiFunction::power(2.0).unwrap();
        let (d, b) = second_order_deficit_bound(&phi, 1.0, 2.0, 0.5, 1.0, 0.5).unwrap();
        assert!(d >= -1e-12);
        assert!(b.abs() < 1e-12);
    }

    #[test]
    fn second_order_rejects_odd_phi() {
        let phi = PhiFunction::asymmetric_power(2.0, 2.0, 0.5).unwrap();
        assert!(second_order_deficit_bound(&phi, 1.0, 1.0, 1.0, 1.0, 0.5).is_err());
    }
}
