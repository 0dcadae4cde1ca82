//! Safeguarded root finding: Newton steps inside a sign-change bracket,
//! falling back to bisection whenever a step would leave the bracket or the
//! derivative is unusable.

use crate::config::EvalConfig;
use crate::error::{domain_error, LeafError, Result};

/// An interval known to contain a sign change of the target function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Bracket> {
        if !(lo < hi) {
            return domain_error("bracket requires lo < hi");
        }
        if !(f_lo * f_hi < 0.0) {
            return domain_error("bracket endpoints must have opposite signs");
        }
        Ok(Bracket { lo, hi, f_lo, f_hi })
    }
}

/// Derivative magnitude below which Newton steps are not trusted.
const DERIVATIVE_FLOOR: f64 = 1e-8;

/// Finds the root of `f` enclosed by `bracket`.
///
/// When `df` is supplied, Newton steps accelerate convergence; any step that
/// leaves the current bracket is replaced by a bisection step, so the result
/// always stays inside the initial interval. Converges when the residual
/// drops below `newton_tol` scaled by the bracket's function magnitude, or
/// when the interval collapses to floating-point resolution.
pub fn find_root<F, D>(f: F, bracket: Bracket, df: Option<D>, cfg: &EvalConfig) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
    D: Fn(f64) -> f64,
{
    cfg.validate()?;
    let mut lo = bracket.lo;
    let mut hi = bracket.hi;
    let mut f_lo = bracket.f_lo;
    let tol = cfg.newton_tol * bracket.f_lo.abs().max(bracket.f_hi.abs()).max(1.0);

    let mut x = 0.5 * (lo + hi);
    let mut fx = f(x)?;

    for _ in 0..cfg.newton_max_iter {
        if fx.abs() <= tol {
            return Ok(x);
        }
        if fx * f_lo > 0.0 {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
        }
        if (hi - lo).abs() <= 4.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(1.0) {
            return Ok(x);
        }

        let mut next = f64::NAN;
        if let Some(ref d) = df {
            let slope = d(x);
            if slope.abs() > DERIVATIVE_FLOOR && slope.is_finite() {
                let candidate = x - fx / slope;
                if candidate > lo && candidate < hi {
                    next = candidate;
                }
            }
        }
        if !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        x = next;
        fx = f(x)?;
    }
    Err(LeafError::NonConvergence {
        context: "root finder exhausted its iteration budget",
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn bracket_invariants() {
        assert!(Bracket::new(1.0, 0.0, -1.0, 1.0).is_err());
        assert!(Bracket::new(0.0, 1.0, 1.0, 2.0).is_err());
        assert!(Bracket::new(0.0, 1.0, -1.0, 2.0).is_ok());
    }

    #[test]
    fn linear_root() {
        let b = Bracket::new(0.0, 1.0, -0.5, 0.5).unwrap();
        let x = find_root(|x| Ok(x - 0.5), b, Some(|_| 1.0), &cfg()).unwrap();
        assert!((x - 0.5).abs() < 1e-13);
    }

    #[test]
    fn cube_root_of_two() {
        let f = |x: f64| Ok(x * x * x - 2.0);
        let b = Bracket::new(1.0, 2.0, -1.0, 6.0).unwrap();
        let x = find_root(f, b, Some(|x: f64| 3.0 * x * x), &cfg()).unwrap();
        assert!((x - 2f64.powf(1.0 / 3.0)).abs() < 1e-13);
    }

    #[test]
    fn stays_inside_bracket_without_derivative() {
        // steep function; pure bisection must still converge
        let f = |x: f64| Ok((x - 0.25).powi(3) * 1e6);
        let b = Bracket::new(0.0, 1.0, f(0.0).unwrap(), f(1.0).unwrap()).unwrap();
        let x = find_root(f, b, None::<fn(f64) -> f64>, &cfg()).unwrap();
        assert!((0.0..=1.0).contains(&x));
        assert!((x - 0.25).abs() < 1e-6);
    }

    #[test]
    fn iteration_budget_reported() {
        let mut tight = cfg();
        tight.newton_max_iter = 3;
        tight.newton_tol = 1e-300;
        let f = |x: f64| Ok((x - 0.123456789).powi(3));
        let b = Bracket::new(0.0, 1.0, f(0.0).unwrap(), f(1.0).unwrap()).unwrap();
        let err = find_root(f, b, None::<fn(f64) -> f64>, &tight).unwrap_err();
        assert!(matches!(err, LeafError::NonConvergence { .. }));
    }
}
