//! Double-angle and half-angle formulas for bases 2 and 3.
//!
//! Double-angle rules return the signed value `f(2l)`; half-angle rules are
//! square-valued and return `(f(l/2))^2`. For the basis-2 hyperbolic
//! half-angle rules the two published interval cases extend periodically:
//! the case is chosen from the window of `l` modulo `4 zeta_2` (odd family)
//! or `4 eta_2` (even family), which reduces to the printed `|l|` condition
//! on the first period. In base mode only case (i) is reachable.

use crate::config::{Basis, EvalConfig, FunctionKind};
use crate::constants;
use crate::error::{domain_error, LeafError, Result};
use crate::formulas::{Case, FormulaReport};
use crate::leaf::{cleaf, cleafh, sleaf, sleafh, LeafValue};

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const SQRT_3: f64 = 1.7320508075688772;

fn guard_pole(value: f64, cfg: &EvalConfig) -> Result<f64> {
    if value.abs() < cfg.pole_guard {
        Err(LeafError::PoleProximity {
            distance: value.abs(),
        })
    } else {
        Ok(value)
    }
}

fn guard_division(value: f64, cfg: &EvalConfig, context: &'static str) -> Result<f64> {
    if value.abs() < cfg.pole_guard {
        Err(LeafError::DivisionNearZero { context })
    } else {
        Ok(value)
    }
}

fn require_formula_basis(n: Basis) -> Result<()> {
    if n.get() == 2 || n.get() == 3 {
        Ok(())
    } else {
        domain_error(format!(
            "double/half-angle formulas exist for bases 2 and 3, not {n}"
        ))
    }
}

fn eval(kind: FunctionKind, n: Basis, l: f64, cfg: &EvalConfig) -> Result<LeafValue> {
    match kind {
        FunctionKind::Sleaf => sleaf(n, l, cfg),
        FunctionKind::Cleaf => cleaf(n, l, cfg),
        FunctionKind::Sleafh => sleafh(n, l, cfg),
        FunctionKind::Cleafh => cleafh(n, l, cfg),
    }
}

/// `f(2l)` from the value and derivative at `l`.
pub fn double_angle(kind: FunctionKind, n: Basis, l: f64, cfg: &EvalConfig) -> Result<FormulaReport> {
    cfg.validate()?;
    require_formula_basis(n)?;
    let v = eval(kind, n, l, cfg)?;
    let x = v.value;
    let sign_case = if v.branch.derivative_sign >= 0 {
        Case::I
    } else {
        Case::II
    };
    let (id, rhs, case): (&'static str, f64, Option<Case>) = match (kind, n.get()) {
        (FunctionKind::Sleaf, 2) => (
            "3.1.3",
            2.0 * x * v.derivative / (1.0 + x.powi(4)),
            Some(sign_case),
        ),
        (FunctionKind::Cleaf, 2) => (
            "3.1.6",
            (1.0 - 2.0 * x * x - x.powi(4)) / (-1.0 - 2.0 * x * x + x.powi(4)),
            None,
        ),
        (FunctionKind::Sleaf, 3) => (
            "3.1.7",
            2.0 * x * v.derivative / (1.0 + 8.0 * x.powi(6)).sqrt(),
            Some(sign_case),
        ),
        (FunctionKind::Cleaf, 3) => (
            "3.1.10",
            (2.0 * x * x + 2.0 * x.powi(4) - 1.0)
                / (1.0 + 8.0 * x * x + 8.0 * x.powi(6) - 8.0 * x.powi(8)).sqrt(),
            None,
        ),
        (FunctionKind::Sleafh, 2) => {
            let den = guard_pole(1.0 - x.powi(4), cfg)?;
            ("3.3.3", 2.0 * x * v.derivative / den, None)
        }
        (FunctionKind::Cleafh, 2) => {
            let den = guard_pole(-x.powi(4) + 2.0 * x * x + 1.0, cfg)?;
            ("3.3.4", (x.powi(4) + 2.0 * x * x - 1.0) / den, None)
        }
        (FunctionKind::Sleafh, 3) => {
            let rad = guard_pole(1.0 - 8.0 * x.powi(6), cfg)?;
            if rad < 0.0 {
                return Err(LeafError::PoleProximity { distance: -rad });
            }
            ("3.3.5", 2.0 * x * v.derivative / rad.sqrt(), None)
        }
        (FunctionKind::Cleafh, 3) => {
            let rad = guard_pole(1.0 + 8.0 * x * x + 8.0 * x.powi(6) - 8.0 * x.powi(8), cfg)?;
            if rad < 0.0 {
                return Err(LeafError::PoleProximity { distance: -rad });
            }
            (
                "3.3.6",
                (2.0 * x * x + 2.0 * x.powi(4) - 1.0) / rad.sqrt(),
                None,
            )
        }
        _ => unreachable!("basis restricted above"),
    };
    let direct = eval(kind, n, 2.0 * l, cfg)?.value;
    Ok(FormulaReport::new(id, vec![l], rhs, direct, case))
}

/// Window classification for the periodically extended basis-2 hyperbolic
/// half-angle cases: case (i) iff `l` reduced modulo `4 * limit` lies within
/// `limit` of a multiple.
fn hyperbolic_half_case(l: f64, limit: f64) -> Case {
    let period = 4.0 * limit;
    let w = l - period * (l / period).round();
    if w.abs() <= limit {
        Case::I
    } else {
        Case::II
    }
}

/// `(f(l/2))^2` from the value at `l`; square-valued by construction.
pub fn half_angle_sq(kind: FunctionKind, n: Basis, l: f64, cfg: &EvalConfig) -> Result<FormulaReport> {
    cfg.validate()?;
    require_formula_basis(n)?;
    let v = eval(kind, n, l, cfg)?;
    let x = v.value;
    let (id, rhs, case): (&'static str, f64, Option<Case>) = match (kind, n.get()) {
        (FunctionKind::Sleaf, 2) => {
            let s2 = x * x;
            guard_division(s2, cfg, "sleaf_2 half-angle needs sleaf_2(l) != 0")?;
            let w = (1.0 - s2).max(0.0).sqrt();
            // 2 - s^2 + 2w = (1 + w)^2 and 2 - s^2 - 2w = (1 - w)^2, so both
            // cases reduce to cancellation-free quotients.
            if v.branch.derivative_sign < 0 {
                let rhs = (1.0 + w) / (1.0 + (1.0 + s2).sqrt());
                ("3.2.3", rhs, Some(Case::I))
            } else {
                let rhs = ((1.0 + s2).sqrt() - 1.0) / (1.0 + w);
                ("3.2.4", rhs, Some(Case::II))
            }
        }
        (FunctionKind::Cleaf, 2) => {
            let den = guard_division(1.0 + x, cfg, "cleaf_2 half-angle needs cleaf_2(l) != -1")?;
            let rhs = (-1.0 + x + SQRT_2 * (1.0 + x * x).sqrt()) / den;
            ("3.2.5", rhs, None)
        }
        (FunctionKind::Sleaf, 3) => {
            let s2 = x * x;
            let a = (1.0 + s2 + s2 * s2).sqrt();
            let inner =
                (-1.0 - s2 + 2.0 * s2 * s2 + (2.0 - 2.0 * s2.powi(3)) / a).max(0.0);
            let base = -0.5 * s2 + 0.5 * a;
            if v.branch.derivative_sign >= 0 {
                ("3.2.6", base - 0.5 * inner.sqrt(), Some(Case::I))
            } else {
                ("3.2.7", base + 0.5 * inner.sqrt(), Some(Case::II))
            }
        }
        (FunctionKind::Cleaf, 3) => {
            let c2 = x * x;
            let a = (1.0 + c2 + c2 * c2).sqrt();
            let t1 = (c2 - 1.0) / (4.0 * c2 + 2.0);
            let t2 = SQRT_3 * a / (2.0 * (1.0 + 4.0 * c2 + 4.0 * c2 * c2).sqrt());
            let inner = (-3.0 - 6.0 * c2 + 2.0 * SQRT_3 * (1.0 + 2.0 * c2) * a).max(0.0);
            let t3 = SQRT_3 * x * inner.sqrt() / (2.0 * (1.0 + 2.0 * c2).powf(1.5));
            ("3.2.8", t1 + t2 + t3, None)
        }
        (FunctionKind::Sleafh, 2) => {
            let s2 = x * x;
            if l == 0.0 {
                // limiting value of the case-(i) expression
                ("3.4.3", 0.0, Some(Case::I))
            } else {
                guard_division(s2, cfg, "sleafh_2 half-angle needs sleafh_2(l) != 0")?;
                let a = (1.0 + s2 * s2).sqrt();
                // (1 + A)/s^2 -+ sqrt(2)/sqrt(A - 1) collapses to a single
                // cancellation-free quotient in each case.
                let root = (1.0 + a).sqrt();
                let zeta = constants::constants_for(n, cfg)?
                    .zeta_n
                    .expect("zeta_2 exists");
                match hyperbolic_half_case(l, zeta) {
                    Case::I => ("3.4.3", s2 / (root * (root + SQRT_2)), Some(Case::I)),
                    _ => ("3.4.4", root * (root + SQRT_2) / s2, Some(Case::II)),
                }
            }
        }
        (FunctionKind::Cleafh, 2) => {
            let den = guard_division(1.0 + x, cfg, "cleafh_2 half-angle needs cleafh_2(l) != -1")?;
            let eta = constants::constants_for(n, cfg)?
                .eta_n
                .expect("eta_2 exists");
            let root = SQRT_2 * (1.0 + x * x).sqrt();
            match hyperbolic_half_case(l, eta) {
                Case::I => ("3.4.5", (-1.0 + x + root) / den, Some(Case::I)),
                _ => ("3.4.6", (-1.0 + x - root) / den, Some(Case::II)),
            }
        }
        (FunctionKind::Sleafh, 3) => {
            let s2 = x * x;
            let b = (1.0 - s2 + s2 * s2).sqrt();
            let inner = (-1.0 + s2 + 2.0 * s2 * s2 + (2.0 + 2.0 * s2.powi(3)) / b).max(0.0);
            ("3.4.7", -0.5 * s2 - 0.5 * b + 0.5 * inner.sqrt(), None)
        }
        (FunctionKind::Cleafh, 3) => {
            let c2 = x * x;
            let a = (1.0 + c2 + c2 * c2).sqrt();
            let t1 = (c2 - 1.0 + SQRT_3 * a) / (4.0 * c2 + 2.0);
            let inner = (-3.0 - 6.0 * c2 + 2.0 * SQRT_3 * (1.0 + 2.0 * c2) * a).max(0.0);
            let t2 = SQRT_3 * x * inner.sqrt() / (2.0 * (1.0 + 2.0 * c2).powf(1.5));
            ("3.4.8", t1 + t2, None)
        }
        _ => unreachable!("basis restricted above"),
    };
    let direct = eval(kind, n, 0.5 * l, cfg)?.value.powi(2);
    Ok(FormulaReport::new(id, vec![l], rhs, direct, case))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn double_angle_reference_points() {
        let c = cfg();
        let r = double_angle(FunctionKind::Sleaf, Basis::TWO, 0.5, &c).unwrap();
        assert!((r.direct - 0.90768322140494617).abs() < 1e-11);
        assert!(r.residual < 1e-11);
        let r = double_angle(FunctionKind::Cleafh, Basis::TWO, 0.0, &c).unwrap();
        assert_eq!(r.direct, 1.0);
        assert!(r.residual < 1e-12);
        let r = double_angle(FunctionKind::Sleafh, Basis::THREE, 0.3, &c).unwrap();
        assert!((r.direct - 0.60200855898759428).abs() < 1e-11);
        assert!(r.residual < 1e-10);
    }

    #[test]
    fn double_angle_case_split() {
        let c = cfg();
        // falling quadrant flips the sign case
        let r = double_angle(FunctionKind::Sleaf, Basis::TWO, 2.0, &c).unwrap();
        assert_eq!(r.branch_case, Some(Case::II));
        assert!(r.residual < 1e-10);
        let r = double_angle(FunctionKind::Sleaf, Basis::THREE, -2.0, &c).unwrap();
        assert!(r.residual < 1e-10);
    }

    #[test]
    fn double_angle_rejects_other_bases() {
        assert!(double_angle(FunctionKind::Sleaf, Basis::ONE, 0.3, &cfg()).is_err());
    }

    #[test]
    fn half_angle_reference_points() {
        let c = cfg();
        let r = half_angle_sq(FunctionKind::Cleaf, Basis::TWO, 1.0, &c).unwrap();
        assert!((r.direct - 0.7771594206519663f64.powi(2)).abs() < 1e-11);
        assert!(r.residual < 1e-11);
        let r = half_angle_sq(FunctionKind::Sleafh, Basis::TWO, 0.0, &c).unwrap();
        assert_eq!(r.rhs, 0.0);
        assert_eq!(r.direct, 0.0);
        let r = half_angle_sq(FunctionKind::Cleafh, Basis::THREE, 0.6, &c).unwrap();
        assert!((r.direct - 1.1529571179710109f64.powi(2)).abs() < 1e-10);
        assert!(r.residual < 1e-10);
    }

    #[test]
    fn half_angle_case_split_leaf() {
        let c = cfg();
        // l in the falling quadrant selects the first case
        let r = half_angle_sq(FunctionKind::Sleaf, Basis::TWO, 2.0, &c).unwrap();
        assert_eq!(r.branch_case, Some(Case::I));
        assert!(r.residual < 1e-11);
        let r = half_angle_sq(FunctionKind::Sleaf, Basis::TWO, 1.0, &c).unwrap();
        assert_eq!(r.branch_case, Some(Case::II));
        assert!(r.residual < 1e-11);
        let r = half_angle_sq(FunctionKind::Sleaf, Basis::THREE, 1.0, &c).unwrap();
        assert_eq!(r.branch_case, Some(Case::I));
        assert!(r.residual < 1e-11);
        let r = half_angle_sq(FunctionKind::Sleaf, Basis::THREE, 2.0, &c).unwrap();
        assert_eq!(r.branch_case, Some(Case::II));
        assert!(r.residual < 1e-11);
    }

    #[test]
    fn half_angle_division_guard() {
        let c = cfg();
        // sleaf_2 vanishes at 0, so the half-angle rule refuses l = 1e-9
        assert!(matches!(
            half_angle_sq(FunctionKind::Sleaf, Basis::TWO, 1e-9, &c),
            Err(LeafError::DivisionNearZero { .. })
        ));
    }

    #[test]
    fn half_angle_extension_cases() {
        let ext = EvalConfig::default().with_extended(true);
        let zeta = constants::zeta_n(Basis::TWO, &ext).unwrap().unwrap();
        let eta = constants::eta_n(Basis::TWO, &ext).unwrap().unwrap();
        // second window: case (ii) of the odd family
        let r = half_angle_sq(FunctionKind::Sleafh, Basis::TWO, 1.3 * zeta, &ext).unwrap();
        assert_eq!(r.branch_case, Some(Case::II));
        assert!(r.residual < 1e-9, "residual {}", r.residual);
        // fourth window wraps back to case (i)
        let r = half_angle_sq(FunctionKind::Sleafh, Basis::TWO, 3.4 * zeta, &ext).unwrap();
        assert_eq!(r.branch_case, Some(Case::I));
        assert!(r.residual < 1e-9);
        // negative branch of the even family: case (ii)
        let r = half_angle_sq(FunctionKind::Cleafh, Basis::TWO, 1.6 * eta, &ext).unwrap();
        assert_eq!(r.branch_case, Some(Case::II));
        assert!(r.residual < 1e-9);
        let r = half_angle_sq(FunctionKind::Cleafh, Basis::TWO, 3.3 * eta, &ext).unwrap();
        assert_eq!(r.branch_case, Some(Case::I));
        assert!(r.residual < 1e-9);
    }

    #[test]
    fn double_and_half_compose_to_identity() {
        let c = cfg();
        for k in 0..20 {
            let l = 0.11 + k as f64 * 0.11; // stays clear of sleaf_2 zeros
            let half = half_angle_sq(FunctionKind::Sleaf, Basis::TWO, 2.0 * l, &c).unwrap();
            let direct = sleaf(Basis::TWO, l, &c).unwrap().value;
            assert!((half.rhs - direct * direct).abs() < 1e-9);
            let double = double_angle(FunctionKind::Sleaf, Basis::TWO, l / 2.0 * 2.0, &c);
            assert!(double.is_ok());
        }
    }
}
