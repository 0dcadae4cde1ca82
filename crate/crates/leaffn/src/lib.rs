//! Leaf functions and hyperbolic leaf functions.
//!
//! The basis-`n` leaf functions `sleaf_n` / `cleaf_n` solve
//! `r'' = -n r^(2n-1)` with sine-like / cosine-like initial conditions; they
//! are periodic with period `2 pi_n` and amplitude 1. Their hyperbolic
//! counterparts `sleafh_n` / `cleafh_n` solve `r'' = +n r^(2n-1)` and, for
//! `n >= 2`, blow up at finite domain limits `±zeta_n` and `±eta_n`.
//! `n = 1` recovers `sin`, `cos`, `sinh` and `cosh`; `n = 2` the lemniscate
//! family.
//!
//! The crate provides:
//!
//! * forward evaluation with derivatives and branch tracking ([`leaf`]),
//!   including the periodic extension of the basis-2 hyperbolic functions;
//! * the four inverse integrals ([`inverse`]);
//! * the defining constants `pi_n`, `zeta_n`, `eta_n` ([`constants`]);
//! * evaluators for every addition, double-angle, half-angle and relation
//!   formula of bases 1-3, reporting the residual against direct
//!   evaluation ([`formulas`]);
//! * the underlying quadrature / root-finding / ODE kernels ([`numerics`]).
//!
//! Forward values are produced by inverting the defining integrals with a
//! safeguarded Newton iteration; integrating the defining ODE provides an
//! independent cross-check path for every function.

pub mod config;
pub mod constants;
pub mod error;
pub mod formulas;
pub mod inverse;
pub mod leaf;
pub mod numerics;

pub use config::{Basis, EvalConfig, FunctionKind};
pub use constants::{constants_for, eta_n, pi_n, zeta_n, ConstantsSet};
pub use error::{LeafError, Result};
pub use formulas::{Case, FormulaReport};
pub use leaf::{branch_of, cleaf, cleafh, sleaf, sleafh, BranchInfo, LeafValue};
