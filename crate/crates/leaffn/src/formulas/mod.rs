//! Evaluators for the addition, double-angle, half-angle and relation
//! formulas of bases 1-3.
//!
//! Every evaluator returns a [`FormulaReport`] carrying the formula's
//! right-hand side, the directly evaluated left-hand side, their absolute
//! difference, and the interval case that was selected. Case selection is
//! always derived from the argument's [`crate::BranchInfo`] interval
//! classification, never by trying both signs and keeping the closer one:
//! the point of the report is to demonstrate that the interval conditions
//! themselves are correct.
//!
//! Formulas whose published form is stated for the *square* of the function
//! (all basis-3 additions and every half-angle formula) report squares; no
//! sign recovery is attempted. Callers who need signed values evaluate the
//! functions directly.
//!
//! Formula identifiers are stable strings (`"2.1.3"`, `"3.4.5"`, `"B2"`,
//! ...) shared with the command-line `check` subcommand.

mod addition;
mod angle;
mod invariance;
mod relations;

pub use addition::{
    add_cleaf2, add_cleaf3_sq, add_cleafh2, add_cleafh3_sq, add_sleaf2, add_sleaf3_sq,
    add_sleafh2, add_sleafh3_sq,
};
pub use angle::{double_angle, half_angle_sq};
pub use invariance::{sleaf3_addition_invariance, sleaf3_addition_state, Sleaf3AdditionState};
pub use relations::{identity_residual, Relation};

use std::fmt;

/// Interval case labels matching the published case analyses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    I,
    II,
    III,
    IIII,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Case::I => "i",
            Case::II => "ii",
            Case::III => "iii",
            Case::IIII => "iiii",
        };
        f.write_str(s)
    }
}

/// Outcome of evaluating one formula at concrete arguments.
#[derive(Debug, Clone, PartialEq)]
pub struct FormulaReport {
    /// Stable identifier of the formula (e.g. `"2.2.16"`).
    pub formula_id: &'static str,
    /// The argument list the formula was evaluated at.
    pub inputs: Vec<f64>,
    /// Value of the formula's right-hand side.
    pub rhs: f64,
    /// Direct evaluation of the left-hand side.
    pub direct: f64,
    /// `|rhs - direct|`.
    pub residual: f64,
    /// Which interval case applied, for formulas with a case split.
    pub branch_case: Option<Case>,
}

impl FormulaReport {
    pub(crate) fn new(
        formula_id: &'static str,
        inputs: Vec<f64>,
        rhs: f64,
        direct: f64,
        branch_case: Option<Case>,
    ) -> FormulaReport {
        FormulaReport {
            formula_id,
            inputs,
            rhs,
            direct,
            residual: (rhs - direct).abs(),
            branch_case,
        }
    }
}
