//! Function-name parsing ("sleaf2", "cleafh3", ...) and sign-aware helpers
//! shared by the table and figure writers.

use leaffn::{Basis, EvalConfig, FunctionKind, LeafError, LeafValue};

use crate::CliError;

/// A function selector as it appears on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuncSpec {
    pub kind: FunctionKind,
    pub n: Basis,
}

impl FuncSpec {
    pub fn parse(name: &str) -> Result<FuncSpec, CliError> {
        let (kind, rest) = if let Some(r) = name.strip_prefix("sleafh") {
            (FunctionKind::Sleafh, r)
        } else if let Some(r) = name.strip_prefix("cleafh") {
            (FunctionKind::Cleafh, r)
        } else if let Some(r) = name.strip_prefix("sleaf") {
            (FunctionKind::Sleaf, r)
        } else if let Some(r) = name.strip_prefix("cleaf") {
            (FunctionKind::Cleaf, r)
        } else {
            return Err(CliError::Usage(format!("unknown function name {name:?}")));
        };
        let n: u32 = rest
            .parse()
            .map_err(|_| CliError::Usage(format!("bad basis suffix in {name:?}")))?;
        let n = Basis::new(n).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(FuncSpec { kind, n })
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.kind.name(), self.n)
    }

    pub fn eval(&self, l: f64, cfg: &EvalConfig) -> Result<LeafValue, LeafError> {
        match self.kind {
            FunctionKind::Sleaf => leaffn::sleaf(self.n, l, cfg),
            FunctionKind::Cleaf => leaffn::cleaf(self.n, l, cfg),
            FunctionKind::Sleafh => leaffn::sleafh(self.n, l, cfg),
            FunctionKind::Cleafh => leaffn::cleafh(self.n, l, cfg),
        }
    }
}

/// Sign of the function value at `l`, decided from the branch structure
/// alone (never from an evaluated value). Used to restore signs when a
/// square-valued formula feeds a plotted curve.
pub fn value_sign(kind: FunctionKind, n: Basis, l: f64, cfg: &EvalConfig) -> f64 {
    match kind {
        // sleaf >= 0 on [0, pi_n] of each period
        FunctionKind::Sleaf => {
            let b = leaffn::branch_of(FunctionKind::Sleaf, n, l);
            if b.reduced_l >= 0.0 {
                1.0
            } else {
                -1.0
            }
        }
        // cleaf >= 0 on [-pi_n/2, pi_n/2] of each period
        FunctionKind::Cleaf => {
            let b = leaffn::branch_of(FunctionKind::Cleaf, n, l);
            let quarter = leaffn::pi_n(n, cfg).unwrap_or(f64::NAN) / 2.0;
            if b.reduced_l.abs() <= quarter {
                1.0
            } else {
                -1.0
            }
        }
        // odd and increasing within each window
        FunctionKind::Sleafh => {
            if cfg.extended && n.get() == 2 {
                let zeta = leaffn::zeta_n(n, cfg).ok().flatten().unwrap_or(f64::NAN);
                let w = l - 2.0 * zeta * (l / (2.0 * zeta)).round();
                if w >= 0.0 {
                    1.0
                } else {
                    -1.0
                }
            } else if l >= 0.0 {
                1.0
            } else {
                -1.0
            }
        }
        // positive on the base branch; the extension alternates windows
        FunctionKind::Cleafh => {
            if cfg.extended && n.get() == 2 {
                let eta = leaffn::eta_n(n, cfg).ok().flatten().unwrap_or(f64::NAN);
                let w = l - 4.0 * eta * (l / (4.0 * eta)).round();
                if w.abs() <= eta {
                    1.0
                } else {
                    -1.0
                }
            } else {
                1.0
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trips() {
        for name in ["sleaf1", "cleaf2", "sleafh3", "cleafh2"] {
            let spec = FuncSpec::parse(name).unwrap();
            assert_eq!(spec.name(), name);
        }
        assert!(FuncSpec::parse("tanleaf2").is_err());
        assert!(FuncSpec::parse("sleaf0").is_err());
        assert!(FuncSpec::parse("sleaf").is_err());
    }

    #[test]
    fn signs_follow_branches() {
        let cfg = EvalConfig::default();
        let pi2 = leaffn::pi_n(Basis::TWO, &cfg).unwrap();
        assert_eq!(value_sign(FunctionKind::Sleaf, Basis::TWO, 0.5, &cfg), 1.0);
        assert_eq!(
            value_sign(FunctionKind::Sleaf, Basis::TWO, pi2 + 0.5, &cfg),
            -1.0
        );
        assert_eq!(value_sign(FunctionKind::Cleaf, Basis::TWO, 0.0, &cfg), 1.0);
        assert_eq!(
            value_sign(FunctionKind::Cleaf, Basis::TWO, pi2, &cfg),
            -1.0
        );
    }
}
