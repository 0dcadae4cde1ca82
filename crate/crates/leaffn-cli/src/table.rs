//! The `table` subcommand: a CSV grid of function values.

use std::io::Write;

use leaffn::{EvalConfig, LeafError};

use crate::funcs::FuncSpec;
use crate::output::{format_value, grid_decimals};
use crate::CliError;

/// Parsed arguments of the `table` subcommand.
#[derive(Debug, Clone)]
pub struct TableSpec {
    pub functions: Vec<FuncSpec>,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    pub decimals: usize,
}

impl TableSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.functions.is_empty() {
            return Err(CliError::Usage("at least one --func is required".into()));
        }
        if !(self.step > 0.0) {
            return Err(CliError::Usage("--step must be positive".into()));
        }
        if self.start > self.stop {
            return Err(CliError::Usage("--start must not exceed --stop".into()));
        }
        if !(1..=15).contains(&self.decimals) {
            return Err(CliError::Usage("--decimals must lie in 1..=15".into()));
        }
        Ok(())
    }

    fn rows(&self) -> usize {
        ((self.stop - self.start) / self.step + 1e-9) as usize + 1
    }
}

/// Writes the grid as CSV. Cells where a hyperbolic function is outside its
/// domain (or too close to a pole) print the literal `-`.
pub fn cmd_table<W: Write>(spec: &TableSpec, cfg: &EvalConfig, out: &mut W) -> Result<(), CliError> {
    spec.validate()?;
    let l_decimals = grid_decimals(spec.step);
    let mut header = String::from("l");
    for f in &spec.functions {
        header.push(',');
        header.push_str(&f.name());
    }
    writeln!(out, "{header}").map_err(io_err)?;

    for i in 0..spec.rows() {
        let l = spec.start + i as f64 * spec.step;
        let mut line = format_value(l, l_decimals);
        for f in &spec.functions {
            line.push(',');
            match f.eval(l, cfg) {
                Ok(v) => line.push_str(&format_value(v.value, spec.decimals)),
                Err(LeafError::DomainExceeded { .. }) | Err(LeafError::PoleProximity { .. }) => {
                    line.push('-');
                }
                Err(e) => return Err(CliError::Numerical(e.to_string())),
            }
        }
        writeln!(out, "{line}").map_err(io_err)?;
    }
    Ok(())
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Numerical(format!("write failed: {e}"))
}
