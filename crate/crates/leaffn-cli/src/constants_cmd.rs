//! The `constants` subcommand: `pi_n`, `zeta_n` and `eta_n` per basis.

use std::io::Write;

use leaffn::{Basis, EvalConfig};

use crate::output::format_value;
use crate::CliError;

/// Writes `n,pi_n,zeta_n,eta_n` rows for `n = 1..=n_max`, with `NA` for the
/// basis-1 limits that do not exist.
pub fn cmd_constants<W: Write>(
    n_max: u32,
    decimals: usize,
    cfg: &EvalConfig,
    out: &mut W,
) -> Result<(), CliError> {
    if n_max == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if !(1..=15).contains(&decimals) {
        return Err(CliError::Usage("--decimals must lie in 1..=15".into()));
    }
    writeln!(out, "n,pi_n,zeta_n,eta_n").map_err(|e| CliError::Numerical(e.to_string()))?;
    for n in 1..=n_max {
        let set = leaffn::constants_for(Basis::new(n).map_err(CliError::from)?, cfg)?;
        let fmt_opt = |v: Option<f64>| match v {
            Some(x) => format_value(x, decimals),
            None => "NA".to_string(),
        };
        writeln!(
            out,
            "{n},{},{},{}",
            format_value(set.pi_n, decimals),
            fmt_opt(set.zeta_n),
            fmt_opt(set.eta_n)
        )
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_rows_with_na_limits() {
        let mut buf = Vec::new();
        cmd_constants(3, 12, &EvalConfig::default(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "n,pi_n,zeta_n,eta_n");
        assert!(lines[1].starts_with("1,3.141592653590,NA,NA"));
        assert!(lines[2].starts_with("2,2.622057554292,1.854074677301,1.311028777146"));
        assert!(lines[3].starts_with("3,2.428650647888,1.402182105325,0.701091052663"));
    }

    #[test]
    fn zero_bases_rejected() {
        let err = cmd_constants(0, 9, &EvalConfig::default(), &mut Vec::new()).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
    }
}
