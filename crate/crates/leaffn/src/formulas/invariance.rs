//! The two-variable decomposition behind the basis-3 odd addition rule and
//! its invariance property.
//!
//! Writing the squared rule as `g(l1,l2)^2 = (p1^2 + p2^2) / p3` in terms of
//! `sleaf_3` values and derivatives at `l1` and `l2`, the function `g`
//! satisfies `dg/dl1 = dg/dl2`, which forces `g(l1,l2) = g(l1+l2, 0)` — the
//! statement that the right-hand side really is a function of the sum
//! alone. [`sleaf3_addition_invariance`] verifies both facts numerically at
//! a point: the partial derivatives by central differences, the sum
//! property by direct comparison of the squares.

use crate::config::{Basis, EvalConfig};
use crate::error::{domain_error, LeafError, Result};
use crate::leaf::sleaf;

/// The decomposition `g^2 = (p1^2 + p2^2)/p3` evaluated at `(l1, l2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sleaf3AdditionState {
    /// Symmetric derivative-weighted numerator part.
    pub p1: f64,
    /// Antisymmetric cubic correction part.
    pub p2: f64,
    /// Denominator; `>= 1` for real arguments.
    pub p3: f64,
    /// `(p1^2 + p2^2) / p3`, the squared addition value.
    pub g_squared: f64,
}

/// Evaluates the decomposition at `(l1, l2)`.
pub fn sleaf3_addition_state(l1: f64, l2: f64, cfg: &EvalConfig) -> Result<Sleaf3AdditionState> {
    let a = sleaf(Basis::THREE, l1, cfg)?;
    let b = sleaf(Basis::THREE, l2, cfg)?;
    let (s1, s2) = (a.value, b.value);
    let p1 = s1 * b.derivative + s2 * a.derivative;
    let p2 = s1.powi(3) * s2 - s1 * s2.powi(3);
    let p3 = 1.0 + 4.0 * s1.powi(4) * s2 * s2 + 4.0 * s1 * s1 * s2.powi(4);
    Ok(Sleaf3AdditionState {
        p1,
        p2,
        p3,
        g_squared: (p1 * p1 + p2 * p2) / p3,
    })
}

/// Central-difference estimates of `dg/dl1` and `dg/dl2` on the positive
/// branch `g = sqrt(g^2)`.
///
/// The step must lie in `[1e-6, 1e-4]`. Fails with
/// [`LeafError::DegenerateBranch`] when `|g| < 1e-6` at the center point,
/// where the square root is not differentiable.
pub fn sleaf3_addition_invariance(
    l1: f64,
    l2: f64,
    h: f64,
    cfg: &EvalConfig,
) -> Result<(f64, f64)> {
    if !(1e-6..=1e-4).contains(&h) {
        return domain_error("finite-difference step must lie in [1e-6, 1e-4]");
    }
    let g = |x1: f64, x2: f64| -> Result<f64> {
        Ok(sleaf3_addition_state(x1, x2, cfg)?.g_squared.max(0.0).sqrt())
    };
    let center = g(l1, l2)?;
    if center < 1e-6 {
        return Err(LeafError::DegenerateBranch);
    }
    let d_l1 = (g(l1 + h, l2)? - g(l1 - h, l2)?) / (2.0 * h);
    let d_l2 = (g(l1, l2 + h)? - g(l1, l2 - h)?) / (2.0 * h);
    Ok((d_l1, d_l2))
}
