//! Shared domain types: the basis parameter, function selectors and the
//! evaluation configuration.

use std::fmt;

use crate::error::{domain_error, Result};

/// The integer exponent parameter `n >= 1` of the function family.
///
/// `n = 1` recovers the trigonometric and hyperbolic functions, `n = 2` the
/// lemniscate family. Addition, double-angle and half-angle formulas are
/// available for `n <= 3`; the inverse integrals work for any basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis(u32);

impl Basis {
    pub const ONE: Basis = Basis(1);
    pub const TWO: Basis = Basis(2);
    pub const THREE: Basis = Basis(3);

    pub fn new(n: u32) -> Result<Basis> {
        if n == 0 {
            return domain_error("basis must be a positive integer");
        }
        Ok(Basis(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// The exponent `2n` that appears under every square root.
    pub(crate) fn two_n(self) -> i32 {
        2 * self.0 as i32
    }

    /// True when the full formula layer (addition, double/half angle) exists.
    pub fn has_formula_support(self) -> bool {
        self.0 <= 3
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Selects one of the four function families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    Sleaf,
    Cleaf,
    Sleafh,
    Cleafh,
}

impl FunctionKind {
    pub fn is_hyperbolic(self) -> bool {
        matches!(self, FunctionKind::Sleafh | FunctionKind::Cleafh)
    }

    /// Lower-case name without the basis suffix ("sleaf", "cleafh", ...).
    pub fn name(self) -> &'static str {
        match self {
            FunctionKind::Sleaf => "sleaf",
            FunctionKind::Cleaf => "cleaf",
            FunctionKind::Sleafh => "sleafh",
            FunctionKind::Cleafh => "cleafh",
        }
    }
}

impl fmt::Display for FunctionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Tolerances and iteration caps for the numerical kernels.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    /// Absolute tolerance for adaptive quadrature.
    pub quad_abs_tol: f64,
    /// Maximum bisection depth of an adaptive quadrature panel.
    pub quad_max_depth: u32,
    /// Residual tolerance of the safeguarded root finder.
    pub newton_tol: f64,
    /// Iteration cap of the root finder.
    pub newton_max_iter: u32,
    /// Per-step relative tolerance of the adaptive ODE integrator.
    pub ode_rel_tol: f64,
    /// Smallest step the ODE integrator may take before giving up.
    pub ode_min_step: f64,
    /// Minimum allowed distance from a domain limit or pole.
    pub pole_guard: f64,
    /// Evaluate the basis-2 hyperbolic functions on their periodic
    /// extension instead of refusing arguments beyond the base domain.
    pub extended: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            quad_abs_tol: 1e-13,
            quad_max_depth: 48,
            newton_tol: 1e-13,
            newton_max_iter: 100,
            ode_rel_tol: 1e-12,
            ode_min_step: 1e-12,
            pole_guard: 1e-6,
            extended: false,
        }
    }
}

impl EvalConfig {
    /// Checks the invariants every kernel relies on.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("quad_abs_tol", self.quad_abs_tol),
            ("newton_tol", self.newton_tol),
            ("ode_rel_tol", self.ode_rel_tol),
            ("ode_min_step", self.ode_min_step),
            ("pole_guard", self.pole_guard),
        ];
        for (name, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return domain_error(format!("{name} must be strictly positive"));
            }
        }
        if self.quad_max_depth == 0 || self.newton_max_iter == 0 {
            return domain_error("iteration caps must be nonzero");
        }
        Ok(())
    }

    /// Same tolerances with the extension flag set.
    pub fn with_extended(mut self, extended: bool) -> Self {
        self.extended = extended;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_rejects_zero() {
        assert!(Basis::new(0).is_err());
        assert_eq!(Basis::new(2).unwrap(), Basis::TWO);
    }

    #[test]
    fn default_config_is_valid() {
        EvalConfig::default().validate().unwrap();
    }

    #[test]
    fn nonpositive_tolerance_rejected() {
        let mut cfg = EvalConfig::default();
        cfg.quad_abs_tol = 0.0;
        assert!(cfg.validate().is_err());
        cfg.quad_abs_tol = -1e-10;
        assert!(cfg.validate().is_err());
    }
}
