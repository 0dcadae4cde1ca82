//! Relation identities between the function families, evaluated as
//! residuals `|LHS - RHS|`.
//!
//! * `A1`, `A2`: the basis-1 circular and hyperbolic relations.
//! * `B1`-`B4`: basis-2 relations, including the `sqrt(2)`-scaled bridges
//!   between the leaf and hyperbolic-leaf families.
//! * `C1`, `C2`: basis-3 relations.

use std::fmt;
use std::str::FromStr;

use crate::config::{Basis, EvalConfig};
use crate::error::{domain_error, LeafError, Result};
use crate::leaf::{cleaf, cleafh, sleaf, sleafh};

/// Identifier of one relation identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    A1,
    A2,
    B1,
    B2,
    B3,
    B4,
    C1,
    C2,
}

impl Relation {
    pub const ALL: [Relation; 8] = [
        Relation::A1,
        Relation::A2,
        Relation::B1,
        Relation::B2,
        Relation::B3,
        Relation::B4,
        Relation::C1,
        Relation::C2,
    ];

    /// The basis the relation is stated for.
    pub fn basis(self) -> Basis {
        match self {
            Relation::A1 | Relation::A2 => Basis::ONE,
            Relation::B1 | Relation::B2 | Relation::B3 | Relation::B4 => Basis::TWO,
            Relation::C1 | Relation::C2 => Basis::THREE,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Relation::A1 => "A1",
            Relation::A2 => "A2",
            Relation::B1 => "B1",
            Relation::B2 => "B2",
            Relation::B3 => "B3",
            Relation::B4 => "B4",
            Relation::C1 => "C1",
            Relation::C2 => "C2",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Relation {
    type Err = crate::error::LeafError;

    fn from_str(s: &str) -> Result<Relation> {
        Relation::ALL
            .into_iter()
            .find(|r| r.id() == s)
            .ok_or_else(|| LeafError::DomainError {
                message: format!("unknown relation identifier {s:?}"),
            })
    }
}

/// `|LHS - RHS|` of the named identity at `l`.
///
/// `n` must match the relation's basis. Domain restrictions of the
/// participating functions apply: `B2` needs `sqrt(2) * |l|` inside the
/// `cleafh_2` domain, `B3` needs `|l| < eta_2`, `B4` needs `|l| < zeta_2`,
/// and `C2` needs `|l| < eta_3`.
pub fn identity_residual(relation: Relation, n: Basis, l: f64, cfg: &EvalConfig) -> Result<f64> {
    cfg.validate()?;
    if n != relation.basis() {
        return domain_error(format!(
            "relation {relation} is stated for basis {}, got {n}",
            relation.basis()
        ));
    }
    let value = match relation {
        Relation::A1 => {
            let s = sleaf(n, l, cfg)?.value;
            let c = cleaf(n, l, cfg)?.value;
            s * s + c * c - 1.0
        }
        Relation::A2 => {
            let sh = sleafh(n, l, cfg)?.value;
            let ch = cleafh(n, l, cfg)?.value;
            ch * ch - sh * sh - 1.0
        }
        Relation::B1 => {
            let s = sleaf(n, l, cfg)?.value;
            let c = cleaf(n, l, cfg)?.value;
            s * s + c * c + s * s * c * c - 1.0
        }
        Relation::B2 => {
            let sh = sleafh(n, l, cfg)?.value;
            let den = 1.0 - sh * sh;
            if den.abs() < cfg.pole_guard {
                return Err(LeafError::PoleProximity {
                    distance: den.abs(),
                });
            }
            let lhs = cleafh(n, std::f64::consts::SQRT_2 * l, cfg)?.value;
            lhs - (1.0 + sh * sh) / den
        }
        Relation::B3 => {
            let c = cleaf(n, l, cfg)?.value;
            let ch = cleafh(n, l, cfg)?.value;
            c * ch - 1.0
        }
        Relation::B4 => {
            let sh = sleafh(n, l, cfg)?.value;
            let lhs = sleaf(n, std::f64::consts::SQRT_2 * l, cfg)?.value.powi(2);
            lhs - 2.0 * sh * sh / (1.0 + sh.powi(4))
        }
        Relation::C1 => {
            let s = sleaf(n, l, cfg)?.value;
            let c = cleaf(n, l, cfg)?.value;
            s * s + c * c + 2.0 * s * s * c * c - 1.0
        }
        Relation::C2 => {
            let sh = sleafh(n, l, cfg)?.value;
            let ch = cleafh(n, l, cfg)?.value;
            ch * ch - sh * sh - 2.0 * sh * sh * ch * ch - 1.0
        }
    };
    Ok(value.abs())
}
