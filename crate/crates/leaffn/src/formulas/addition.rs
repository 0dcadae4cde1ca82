//! Addition formulas: `f(l1 + l2)` from values and derivatives at `l1` and
//! `l2`.
//!
//! The derivative factors in the published right-hand sides are square
//! roots of the first integral with interval-dependent signs; here they are
//! taken from [`crate::LeafValue::derivative`], which is exactly that root
//! with the branch sign already applied. The reported case label records
//! which sign combination the interval classification selected.

use crate::config::{Basis, EvalConfig};
use crate::error::{LeafError, Result};
use crate::formulas::{Case, FormulaReport};
use crate::leaf::{cleaf, cleafh, sleaf, sleafh};

fn guard_denominator(den: f64, cfg: &EvalConfig) -> Result<f64> {
    if den.abs() < cfg.pole_guard {
        Err(LeafError::PoleProximity {
            distance: den.abs(),
        })
    } else {
        Ok(den)
    }
}

/// `sleaf_2(l1 + l2)` by the four-case addition rule.
pub fn add_sleaf2(l1: f64, l2: f64, cfg: &EvalConfig) -> Result<FormulaReport> {
    let a = sleaf(Basis::TWO, l1, cfg)?;
    let b = sleaf(Basis::TWO, l2, cfg)?;
    let (s1, s2) = (a.value, b.value);
    let rhs = (s1 * b.derivative + s2 * a.derivative) / (1.0 + s1 * s1 * s2 * s2);
    let case = match (a.branch.derivative_sign, b.branch.derivative_sign) {
        (1, 1) => Case::I,
        (1, -1) => Case::II,
        (-1, 1) => Case::III,
        _ => Case::IIII,
    };
    let direct = sleaf(Basis::TWO, l1 + l2, cfg)?.value;
    Ok(FormulaReport::new(
        "2.1.3",
        vec![l1, l2],
        rhs,
        direct,
        Some(case),
    ))
}

/// `cleaf_2(l1 + l2)` from `cleaf_2(l1)` and `sleaf_2(l2)`.
pub fn add_cleaf2(l1: f64, l2: f64, cfg: &EvalConfig) -> Result<FormulaReport> {
    let a = cleaf(Basis::TWO, l1, cfg)?;
    let b = sleaf(Basis::TWO, l2, cfg)?;
    let (c1, s2) = (a.value, b.value);
    let rhs = (c1 * b.derivative + s2 * a.derivative) / (1.0 + c1 * c1 * s2 * s2);
    let case = match (a.branch.derivative_sign, b.branch.derivative_sign) {
        (-1, 1) => Case::I,
        (1, 1) => Case::II,
        (1, -1) => Case::III,
        _ => Case::IIII,
    };
    let direct = cleaf(Basis::TWO, l1 + l2, cfg)?.value;
    Ok(FormulaReport::new(
        "2.1.8",
        vec![l1, l2],
        rhs,
        direct,
        Some(case),
    ))
}

/// `(sleaf_3(l1 + l2))^2`; the basis-3 rule is square-valued.
pub fn add_sleaf3_sq(l1: f64, l2: f64, cfg: &EvalConfig) -> Result<FormulaReport> {
    let a = sleaf(Basis::THREE, l1, cfg)?;
    let b = sleaf(Basis::THREE, l2, cfg)?;
    let (s1, s2) = (a.value, b.value);
    let p1 = s1 * b.derivative + s2 * a.derivative;
    let p2 = s1.powi(3) * s2 - s1 * s2.powi(3);
    let p3 = 1.0 + 4.0 * s1.powi(4) * s2 * s2 + 4.0 * s1 * s1 * s2.powi(4);
    let rhs = (p1 * p1 + p2 * p2) / p3;
    let case = if a.branch.derivative_sign * b.branch.derivative_sign == 1 {
        Case::I
    } else {
        Case::II
    };
    let direct = sleaf(Basis::THREE, l1 + l2, cfg)?.value.powi(2);
    Ok(FormulaReport::new(
        "2.1.13",
        vec![l1, l2],
        rhs,
        direct,
        Some(case),
    ))
}

/// `(cleaf_3(l1 + l2))^2` from `cleaf_3(l1)` and `sleaf_3(l2)`.
pub fn add_cleaf3_sq(l1: f64, l2: f64, cfg: &EvalConfig) -> Result<FormulaReport> {
    let a = cleaf(Basis::THREE, l1, cfg)?;
    let b = sleaf(Basis::THREE, l2, cfg)?;
    let (c1, s2) = (a.value, b.value);
    let q1 = c1 * b.derivative + s2 * a.derivative;
    let q2 = s2.powi(3) * c1 - s2 * c1.powi(3);
    let q3 = 1.0 + 4.0 * s2.powi(4) * c1 * c1 + 4.0 * s2 * s2 * c1.powi(4);
    let rhs = (q1 * q1 + q2 * q2) / q3;
    let case = if a.branch.derivative_sign * b.branch.derivative_sign == -1 {
        Case::I
    } else {
        Case::II
    };
    let direct = cleaf(Basis::THREE, l1 + l2, cfg)?.value.powi(2);
    Ok(FormulaReport::new(
        "2.1.16",
        vec![l1, l2],
        rhs,
        direct,
        Some(case),
    ))
}

/// `sleafh_2(l1 + l2)`; single-case (the derivative never changes sign).
pub fn add_sleafh2(l1: f64, l2: f64, cfg: &EvalConfig) -> Result<FormulaReport> {
    let a = sleafh(Basis::TWO, l1, cfg)?;
    let b = sleafh(Basis::TWO, l2, cfg)?;
    let (s1, s2) = (a.value, b.value);
    let den = guard_denominator(1.0 - s1 * s1 * s2 * s2, cfg)?;
    let rhs = (s1 * b.derivative + s2 * a.derivative) / den;
    let direct = sleafh(Basis::TWO, l1 + l2, cfg)?.value;
    Ok(FormulaReport::new(
        "2.2.10",
        vec![l1, l2],
        rhs,
        direct,
        None,
    ))
}

/// `cleafh_2(l1 + l2)`; the sign case follows whether `l1` and `l2` share a
/// sign.
pub fn add_cleafh2(l1: f64, l2: f64, cfg: &EvalConfig) -> Result<FormulaReport> {
    let a = cleafh(Basis::TWO, l1, cfg)?;
    let b = cleafh(Basis::TWO, l2, cfg)?;
    let (c1, c2) = (a.value, b.value);
    let den = guard_denominator(1.0 + c1 * c1 + c2 * c2 - c1 * c1 * c2 * c2, cfg)?;
    let rhs = (2.0 * c1 * c2 + a.derivative * b.derivative) / den;
    let case = if (l1 >= 0.0) == (l2 >= 0.0) {
        Case::I
    } else {
        Case::II
    };
    let direct = cleafh(Basis::TWO, l1 + l2, cfg)?.value;
    Ok(FormulaReport::new(
        "2.2.11",
        vec![l1, l2],
        rhs,
        direct,
        Some(case),
    ))
}

/// `(sleafh_3(l1 + l2))^2`; square-valued.
pub fn add_sleafh3_sq(l1: f64, l2: f64, cfg: &EvalConfig) -> Result<FormulaReport> {
    let a = sleafh(Basis::THREE, l1, cfg)?;
    let b = sleafh(Basis::THREE, l2, cfg)?;
    let (s1, s2) = (a.value, b.value);
    let den = guard_denominator(
        1.0 - 4.0 * s1.powi(4) * s2 * s2 - 4.0 * s1 * s1 * s2.powi(4),
        cfg,
    )?;
    let num1 = s1 * b.derivative + s2 * a.derivative;
    let num2 = s1.powi(3) * s2 - s1 * s2.powi(3);
    let rhs = (num1 * num1 - num2 * num2) / den;
    let direct = sleafh(Basis::THREE, l1 + l2, cfg)?.value.powi(2);
    Ok(FormulaReport::new(
        "2.2.16",
        vec![l1, l2],
        rhs,
        direct,
        None,
    ))
}

/// `(cleafh_3(l1 + l2))^2` from `cleafh_3(l1)` and `sleafh_3(l2)`.
///
/// The uncased statement of this rule is ambiguous about which argument
/// carries the cubed factor in its correction term; the sign-cased variants
/// are mutually consistent and are what is implemented here, with the case
/// selected by the sign of `l1`.
pub fn add_cleafh3_sq(l1: f64, l2: f64, cfg: &EvalConfig) -> Result<FormulaReport> {
    let a = cleafh(Basis::THREE, l1, cfg)?;
    let b = sleafh(Basis::THREE, l2, cfg)?;
    let (c1, s2) = (a.value, b.value);
    let den = guard_denominator(
        1.0 + 4.0 * s2.powi(4) * c1 * c1 - 4.0 * s2 * s2 * c1.powi(4),
        cfg,
    )?;
    // a.derivative = sign(l1) * sqrt(c1^6 - 1), so the first bracket is the
    // cased numerator for either sign of l1.
    let num1 = c1 * b.derivative + s2 * a.derivative;
    let num2 = s2.powi(3) * c1 + s2 * c1.powi(3);
    let rhs = (num1 * num1 - num2 * num2) / den;
    let case = if l1 <= 0.0 { Case::I } else { Case::II };
    let direct = cleafh(Basis::THREE, l1 + l2, cfg)?.value.powi(2);
    Ok(FormulaReport::new(
        "2.2.17",
        vec![l1, l2],
        rhs,
        direct,
        Some(case),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn sleaf2_reference_sums() {
        let c = cfg();
        let r = add_sleaf2(0.5, 0.5, &c).unwrap();
        assert!((r.direct - 0.90768322140494617).abs() < 1e-11);
        assert!(r.residual < 1e-11, "residual {}", r.residual);
        assert_eq!(r.branch_case, Some(Case::I));
        // identity argument
        let r = add_sleaf2(1.7, 0.0, &c).unwrap();
        assert!(r.residual < 1e-11);
        // sign-flip case: 2.0 lies in the falling quadrant
        let r = add_sleaf2(2.0, 1.0, &c).unwrap();
        assert!((r.direct - -0.37717262326512984).abs() < 1e-11);
        assert!(r.residual < 1e-11);
        assert_eq!(r.branch_case, Some(Case::III));
    }

    #[test]
    fn cleaf2_reference_sums() {
        let c = cfg();
        let r = add_cleaf2(0.0, 0.5, &c).unwrap();
        assert!((r.direct - 0.7771594206519663).abs() < 1e-11);
        assert!(r.residual < 1e-11);
        let r = add_cleaf2(1.0, 1.0, &c).unwrap();
        assert!((r.direct - -0.67373319897453367).abs() < 1e-11);
        assert!(r.residual < 1e-11);
        let r = add_cleaf2(-1.3, 0.0, &c).unwrap();
        assert!(r.residual < 1e-11);
    }

    #[test]
    fn sleaf3_squared_sums() {
        let c = cfg();
        let r = add_sleaf3_sq(0.2, 0.3, &c).unwrap();
        assert!((r.direct - 0.49944280125508899f64.powi(2)).abs() < 1e-11);
        assert!(r.residual < 1e-11);
        let r = add_sleaf3_sq(1.0, 1.0, &c).unwrap();
        assert!((r.direct - 0.42846082987998425f64.powi(2)).abs() < 1e-11);
        assert!(r.residual < 1e-11);
        let r = add_sleaf3_sq(-0.8, 0.0, &c).unwrap();
        assert!(r.residual < 1e-11);
    }

    #[test]
    fn cleaf3_squared_sums() {
        let c = cfg();
        let r = add_cleaf3_sq(0.5, 0.5, &c).unwrap();
        assert!((r.direct - 0.21432384011997101f64.powi(2)).abs() < 1e-11);
        assert!(r.residual < 1e-11);
        assert_eq!(r.branch_case, Some(Case::I));
        let r = add_cleaf3_sq(2.0, 0.4, &c).unwrap();
        assert!((r.direct - 0.99876997219771751f64.powi(2)).abs() < 1e-11);
        assert!(r.residual < 1e-11);
    }

    #[test]
    fn sleafh2_sums_and_pole() {
        let c = cfg();
        let r = add_sleafh2(0.3, 0.4, &c).unwrap();
        assert!((r.direct - 0.71715025366984278).abs() < 1e-11);
        assert!(r.residual < 1e-11);
        let r = add_sleafh2(0.9, 0.9, &c).unwrap();
        // frozen fixed-step oracle value at l = 1.8
        assert!((r.direct - 18.492928573718746).abs() < 2e-7);
        assert!(r.residual / r.direct.abs() < 1e-9);
        // sum within the pole guard of the domain limit
        assert!(matches!(
            add_sleafh2(0.92, 0.93407368, &c),
            Err(LeafError::PoleProximity { .. }) | Err(LeafError::DomainExceeded { .. })
        ));
    }

    #[test]
    fn cleafh2_sums_cases() {
        let c = cfg();
        let r = add_cleafh2(0.5, 0.5, &c).unwrap();
        assert!((r.direct - 3.2181459113330707).abs() < 1e-10);
        assert!(r.residual < 1e-9);
        assert_eq!(r.branch_case, Some(Case::I));
        let r = add_cleafh2(0.6, -0.2, &c).unwrap();
        assert!((r.direct - 1.1741552430628949).abs() < 1e-11);
        assert!(r.residual < 1e-10);
        assert_eq!(r.branch_case, Some(Case::II));
    }

    #[test]
    fn sleafh3_squared_sums() {
        let c = cfg();
        let r = add_sleafh3_sq(0.3, 0.3, &c).unwrap();
        assert!((r.direct - 0.60200855898759428f64.powi(2)).abs() < 1e-10);
        assert!(r.residual < 1e-10);
        let r = add_sleafh3_sq(0.7, 0.7, &c).unwrap();
        let big = 15.137255636428557f64.powi(2);
        assert!((r.direct - big).abs() / big < 1e-9);
        assert!(r.residual / r.direct < 1e-9);
    }

    #[test]
    fn cleafh3_squared_sums_cases() {
        let c = cfg();
        let r = add_cleafh3_sq(0.3, 0.3, &c).unwrap();
        assert!((r.direct - 2.2251175484819682f64.powi(2)).abs() < 1e-9);
        assert!(r.residual < 1e-9);
        assert_eq!(r.branch_case, Some(Case::II));
        let r = add_cleafh3_sq(-0.2, 0.5, &c).unwrap();
        assert!((r.direct - 1.1529571179710109f64.powi(2)).abs() < 1e-10);
        assert!(r.residual < 1e-9);
        assert_eq!(r.branch_case, Some(Case::I));
    }
}
