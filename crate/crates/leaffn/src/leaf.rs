//! Forward evaluation of the four function families with first derivatives
//! and branch tracking.
//!
//! Evaluation strategy: reduce the argument onto the monotone piece of the
//! matching inverse integral, invert it with the safeguarded root finder,
//! and report the derivative from the first integral of the defining ODE
//! (`r'^2 ± r^(2n) = const`) with the sign selected by the branch, never by
//! numerical differentiation.
//!
//! Near the turning points where `dr/dl -> 0` the inversion switches to the
//! variable `s` with `r = ±(1 - s^2)`; in that variable the equation being
//! solved has an O(1) slope, so both the value and the derivative magnitude
//! stay fully accurate instead of degrading to half precision.
//!
//! The periodic continuations of the basis-2 hyperbolic functions relocate
//! the initial conditions to each pole-free window: [`sleafh2_extended`]
//! repeats the base curve with period `2 zeta_2`, and [`cleafh2_extended`]
//! alternates positive and negative copies with period `4 eta_2`. The sign
//! pattern between poles follows the published curve shapes.

use crate::config::{Basis, EvalConfig, FunctionKind};
use crate::constants;
use crate::error::{domain_error, LeafError, Result};
use crate::inverse;
use crate::numerics::{even_power_sum, find_root, Bracket};

/// Which quadrant of the period an argument fell in, and the derivative
/// sign that quadrant dictates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchInfo {
    /// Period-cell index: `reduced_l` reproduces the argument after adding
    /// `m` whole periods.
    pub m: i64,
    /// Sign of the derivative on this branch.
    pub derivative_sign: i8,
    /// The argument reduced into the fundamental interval.
    pub reduced_l: f64,
}

/// A function value bundled with its derivative and branch classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeafValue {
    pub value: f64,
    pub derivative: f64,
    pub branch: BranchInfo,
}

/// Classifies `l` into the quadrant structure of the given function.
///
/// For the periodic leaf functions the period is `2 pi_n` and
/// `derivative_sign = +1` exactly when `l` lies in
/// `[pi_n(4m-1)/2, pi_n(4m+1)/2]` (sleaf) or in the rising half-period
/// (cleaf). The base-mode hyperbolic functions are single-branch: `m = 0`
/// with the sign of the derivative at `l`.
pub fn branch_of(kind: FunctionKind, n: Basis, l: f64) -> BranchInfo {
    match kind {
        FunctionKind::Sleaf | FunctionKind::Cleaf => {
            let period = 2.0 * constants::cached(n).pi_n;
            let half = period / 2.0;
            let mut m = (l / period).round() as i64;
            let mut reduced = l - m as f64 * period;
            if reduced > half {
                m += 1;
                reduced -= period;
            } else if reduced < -half {
                m -= 1;
                reduced += period;
            }
            let derivative_sign = match kind {
                FunctionKind::Sleaf => {
                    if reduced.abs() <= half / 2.0 {
                        1
                    } else {
                        -1
                    }
                }
                _ => {
                    if reduced >= 0.0 {
                        -1
                    } else {
                        1
                    }
                }
            };
            BranchInfo {
                m,
                derivative_sign,
                reduced_l: reduced,
            }
        }
        FunctionKind::Sleafh => BranchInfo {
            m: 0,
            derivative_sign: 1,
            reduced_l: l,
        },
        FunctionKind::Cleafh => BranchInfo {
            m: 0,
            derivative_sign: if l >= 0.0 { 1 } else { -1 },
            reduced_l: l,
        },
    }
}

/// `sqrt(1 - r^(2n))` through the factorization
/// `(1 - r)(1 + r) * sum r^(2j)`, which keeps precision for `|r|` near 1.
fn leaf_derivative_magnitude(n: Basis, r: f64) -> f64 {
    let radicand = (1.0 - r) * (1.0 + r) * even_power_sum(r, n.get() as i32);
    radicand.max(0.0).sqrt()
}

/// Fraction of the quarter period beyond which the inversion switches to
/// the turning-point variable.
const TURNING_SWITCH: f64 = 0.95;

/// `(1/s) * integral of dt/sqrt(1 - t^(2n))` over `[1 - s^2, 1]`.
///
/// Parameterized as `t = 1 - s^2 v`, `v in [0, 1]`, which keeps the
/// dependence on `s` smooth: evaluating the bound `1 - s^2` directly would
/// quantize at the floating-point spacing of 1 and poison root finding in
/// `s`.
fn scaled_tail_upper(n: Basis, s: f64) -> Result<f64> {
    let count = n.get() as i32;
    let s2 = s * s;
    crate::numerics::tanh_sinh(
        |node| {
            let t = 1.0 - s2 * node.x;
            let regular = (1.0 + t) * even_power_sum(t, count);
            1.0 / (node.dist_lo * regular).sqrt()
        },
        0.0,
        1.0,
        1e-12,
        12,
    )
}

/// `(1/s) * integral of dt/sqrt(1 - t^(2n))` over `[-1, -1 + s^2]`.
fn scaled_tail_lower(n: Basis, s: f64) -> Result<f64> {
    let count = n.get() as i32;
    let s2 = s * s;
    crate::numerics::tanh_sinh(
        |node| {
            let t = -1.0 + s2 * node.x;
            let regular = (1.0 - t) * even_power_sum(t, count);
            1.0 / (node.dist_lo * regular).sqrt()
        },
        0.0,
        1.0,
        1e-12,
        12,
    )
}

/// `(1/s) * integral of dt/sqrt(t^(2n) - 1)` over `[1, 1 + s^2]`.
fn scaled_tail_hyperbolic(n: Basis, s: f64) -> Result<f64> {
    let count = n.get() as i32;
    let s2 = s * s;
    crate::numerics::tanh_sinh(
        |node| {
            let t = 1.0 + s2 * node.x;
            let regular = (t + 1.0) * even_power_sum(t, count);
            1.0 / (node.dist_lo * regular).sqrt()
        },
        0.0,
        1.0,
        1e-12,
        12,
    )
}

/// Inverts `arcsleaf` on the monotone quarter `q in [-pi_n/2, pi_n/2]`.
/// Returns the value and the derivative magnitude.
fn solve_sleaf_quarter(n: Basis, q: f64, cfg: &EvalConfig) -> Result<(f64, f64)> {
    let half = constants::constants_for(n, cfg)?.pi_n / 2.0;
    let sign = if q < 0.0 { -1.0 } else { 1.0 };
    let a = q.abs();
    if a == 0.0 {
        return Ok((0.0, 1.0));
    }
    if a >= half {
        return Ok((sign, 0.0));
    }
    let count = n.get() as i32;
    if a > TURNING_SWITCH * half {
        // Solve s * G(s) = half - a in the turning-point variable s, where
        // s * G(s) is the tail integral over [1 - s^2, 1].
        let eps = half - a;
        let f = |s: f64| -> Result<f64> {
            if s == 0.0 {
                return Ok(-eps);
            }
            Ok(s * scaled_tail_upper(n, s)? - eps)
        };
        let df = |s: f64| {
            let r = 1.0 - s * s;
            2.0 / ((1.0 + r) * even_power_sum(r, count)).sqrt()
        };
        let bracket = Bracket::new(0.0, 1.0, -eps, half - eps)?;
        let s = find_root(f, bracket, Some(df), cfg)?;
        let r = 1.0 - s * s;
        let dmag = s * ((1.0 + r) * even_power_sum(r, count)).sqrt();
        Ok((sign * r, dmag))
    } else {
        let f = |r: f64| Ok(inverse::arcsleaf(n, r, cfg)? - a);
        let two_n = n.two_n();
        let df = |r: f64| 1.0 / (1.0 - r.powi(two_n)).sqrt();
        let bracket = Bracket::new(0.0, 1.0, -a, half - a)?;
        let r = find_root(f, bracket, Some(df), cfg)?;
        Ok((sign * r, leaf_derivative_magnitude(n, r)))
    }
}

/// Inverts `arccleaf` on its monotone span `u in [0, pi_n]`.
fn solve_cleaf_half(n: Basis, u: f64, cfg: &EvalConfig) -> Result<(f64, f64)> {
    let pi_n = constants::constants_for(n, cfg)?.pi_n;
    let count = n.get() as i32;
    if u == 0.0 {
        return Ok((1.0, 0.0));
    }
    if u >= pi_n {
        return Ok((-1.0, 0.0));
    }
    let lo_cut = (1.0 - TURNING_SWITCH) * pi_n / 2.0;
    if u < lo_cut {
        // near r = +1: the inverse integral over [1 - s^2, 1] is s * G(s)
        let f = |s: f64| -> Result<f64> {
            if s == 0.0 {
                return Ok(-u);
            }
            Ok(s * scaled_tail_upper(n, s)? - u)
        };
        let df = |s: f64| {
            let r = 1.0 - s * s;
            2.0 / ((1.0 + r) * even_power_sum(r, count)).sqrt()
        };
        let f_hi = inverse::arccleaf(n, 1.0 - 0.64, cfg)? - u;
        let bracket = Bracket::new(0.0, 0.8, -u, f_hi)?;
        let s = find_root(f, bracket, Some(df), cfg)?;
        let r = 1.0 - s * s;
        let dmag = s * ((1.0 + r) * even_power_sum(r, count)).sqrt();
        Ok((r, dmag))
    } else if u > pi_n - lo_cut {
        // near r = -1: arccleaf(-1 + s^2) = pi_n - s * G(s)
        let f = |s: f64| -> Result<f64> {
            if s == 0.0 {
                return Ok(pi_n - u);
            }
            Ok((pi_n - u) - s * scaled_tail_lower(n, s)?)
        };
        let df = |s: f64| {
            let r = -1.0 + s * s;
            -2.0 / ((1.0 - r) * even_power_sum(r, count)).sqrt()
        };
        let f_hi = inverse::arccleaf(n, -1.0 + 0.64, cfg)? - u;
        let bracket = Bracket::new(0.0, 0.8, pi_n - u, f_hi)?;
        let s = find_root(f, bracket, Some(df), cfg)?;
        let r = -1.0 + s * s;
        let dmag = s * ((1.0 - r) * even_power_sum(r, count)).sqrt();
        Ok((r, dmag))
    } else {
        let f = |r: f64| Ok(inverse::arccleaf(n, r, cfg)? - u);
        let two_n = n.two_n();
        let df = |r: f64| -1.0 / (1.0 - r.powi(two_n)).sqrt();
        let bracket = Bracket::new(-1.0, 1.0, pi_n - u, -u)?;
        let r = find_root(f, bracket, Some(df), cfg)?;
        Ok((r, leaf_derivative_magnitude(n, r)))
    }
}

/// `sleaf_n(l)`: odd, periodic with period `2 pi_n`, amplitude 1.
pub fn sleaf(n: Basis, l: f64, cfg: &EvalConfig) -> Result<LeafValue> {
    cfg.validate()?;
    if !l.is_finite() {
        return domain_error("sleaf argument must be finite");
    }
    let branch = branch_of(FunctionKind::Sleaf, n, l);
    let half = constants::constants_for(n, cfg)?.pi_n / 2.0;
    let mut q = branch.reduced_l;
    if q > half {
        q = 2.0 * half - q;
    } else if q < -half {
        q = -2.0 * half - q;
    }
    let (value, dmag) = solve_sleaf_quarter(n, q, cfg)?;
    Ok(LeafValue {
        value,
        derivative: branch.derivative_sign as f64 * dmag,
        branch,
    })
}

/// `cleaf_n(l)`: even, periodic with period `2 pi_n`, `cleaf_n(0) = 1`.
pub fn cleaf(n: Basis, l: f64, cfg: &EvalConfig) -> Result<LeafValue> {
    cfg.validate()?;
    if !l.is_finite() {
        return domain_error("cleaf argument must be finite");
    }
    let branch = branch_of(FunctionKind::Cleaf, n, l);
    let (value, dmag) = solve_cleaf_half(n, branch.reduced_l.abs(), cfg)?;
    Ok(LeafValue {
        value,
        derivative: branch.derivative_sign as f64 * dmag,
        branch,
    })
}

/// Checks the base-mode domain of a hyperbolic function, returning the
/// limit when one applies.
fn hyperbolic_guard(limit: Option<f64>, l: f64, cfg: &EvalConfig) -> Result<()> {
    if let Some(limit) = limit {
        if l.abs() >= limit {
            return Err(LeafError::DomainExceeded {
                limit,
                argument: l,
            });
        }
        if limit - l.abs() < cfg.pole_guard {
            return Err(LeafError::PoleProximity {
                distance: limit - l.abs(),
            });
        }
    }
    Ok(())
}

fn sleafh_base(n: Basis, l: f64, cfg: &EvalConfig) -> Result<(f64, f64)> {
    let a = l.abs();
    if a == 0.0 {
        return Ok((0.0, 1.0));
    }
    let sign = l.signum();
    let two_n = n.two_n();
    // grow the bracket until the inverse integral reaches a
    let mut hi = 1.0;
    let mut f_hi = inverse::asleafh(n, hi, cfg)? - a;
    let mut growth = 0;
    while f_hi < 0.0 {
        hi *= 2.0;
        f_hi = inverse::asleafh(n, hi, cfg)? - a;
        growth += 1;
        if growth > 200 {
            return Err(LeafError::NonConvergence {
                context: "sleafh bracket growth failed",
            });
        }
    }
    let f = |r: f64| Ok(inverse::asleafh(n, r, cfg)? - a);
    let df = |r: f64| 1.0 / (1.0 + r.powi(two_n)).sqrt();
    let r = if f_hi == 0.0 {
        hi
    } else {
        find_root(f, Bracket::new(0.0, hi, -a, f_hi)?, Some(df), cfg)?
    };
    let dmag = (1.0 + r.powi(two_n)).sqrt();
    Ok((sign * r, dmag))
}

fn cleafh_base(n: Basis, l: f64, cfg: &EvalConfig) -> Result<(f64, f64)> {
    let a = l.abs();
    if a == 0.0 {
        return Ok((1.0, 0.0));
    }
    let count = n.get() as i32;
    // solve in s with r = 1 + s^2; the slope in s is O(1) down to r = 1
    let g = |s: f64| -> Result<f64> {
        if s == 0.0 {
            return Ok(-a);
        }
        if s <= 1.0 {
            // scaled form avoids quantizing 1 + s^2 against 1
            Ok(s * scaled_tail_hyperbolic(n, s)? - a)
        } else {
            Ok(inverse::acleafh(n, 1.0 + s * s, cfg)? - a)
        }
    };
    let dg = |s: f64| {
        let r = 1.0 + s * s;
        2.0 / ((r + 1.0) * even_power_sum(r, count)).sqrt()
    };
    let mut hi = 1.0;
    let mut g_hi = g(hi)?;
    let mut growth = 0;
    while g_hi < 0.0 {
        hi *= 2.0;
        g_hi = g(hi)?;
        growth += 1;
        if growth > 200 {
            return Err(LeafError::NonConvergence {
                context: "cleafh bracket growth failed",
            });
        }
    }
    let s = if g_hi == 0.0 {
        hi
    } else {
        find_root(g, Bracket::new(0.0, hi, -a, g_hi)?, Some(dg), cfg)?
    };
    let r = 1.0 + s * s;
    let dmag = s * ((r + 1.0) * even_power_sum(r, count)).sqrt();
    Ok((r, dmag * l.signum()))
}

/// `sleafh_n(l)`: odd and strictly increasing. For `n >= 2` the base-mode
/// domain is `(-zeta_n, zeta_n)`; with [`EvalConfig::extended`] set, basis 2
/// evaluates on its periodic extension instead.
pub fn sleafh(n: Basis, l: f64, cfg: &EvalConfig) -> Result<LeafValue> {
    cfg.validate()?;
    if !l.is_finite() {
        return domain_error("sleafh argument must be finite");
    }
    if cfg.extended && n.get() == 2 {
        return sleafh2_extended(l, cfg);
    }
    hyperbolic_guard(constants::constants_for(n, cfg)?.zeta_n, l, cfg)?;
    let (value, dmag) = sleafh_base(n, l, cfg)?;
    Ok(LeafValue {
        value,
        derivative: dmag,
        branch: branch_of(FunctionKind::Sleafh, n, l),
    })
}

/// `cleafh_n(l)`: even with `cleafh_n(0) = 1` and values `>= 1` on the base
/// domain `(-eta_n, eta_n)` (`n >= 2`). With [`EvalConfig::extended`] set,
/// basis 2 evaluates on its periodic extension.
pub fn cleafh(n: Basis, l: f64, cfg: &EvalConfig) -> Result<LeafValue> {
    cfg.validate()?;
    if !l.is_finite() {
        return domain_error("cleafh argument must be finite");
    }
    if cfg.extended && n.get() == 2 {
        return cleafh2_extended(l, cfg);
    }
    hyperbolic_guard(constants::constants_for(n, cfg)?.eta_n, l, cfg)?;
    let (value, derivative) = cleafh_base(n, l, cfg)?;
    Ok(LeafValue {
        value,
        derivative,
        branch: branch_of(FunctionKind::Cleafh, n, l),
    })
}

/// The periodically extended `sleafh_2`: on each pole-free window
/// `((2m-1) zeta_2, (2m+1) zeta_2)` it repeats the base curve, giving zeros
/// with unit slope at every `2m zeta_2` and period `2 zeta_2`.
pub fn sleafh2_extended(l: f64, cfg: &EvalConfig) -> Result<LeafValue> {
    cfg.validate()?;
    if !l.is_finite() {
        return domain_error("sleafh argument must be finite");
    }
    let zeta = constants::constants_for(Basis::TWO, cfg)?
        .zeta_n
        .expect("zeta_2 exists");
    let period = 2.0 * zeta;
    let m = (l / period).round() as i64;
    let q = l - m as f64 * period;
    if zeta - q.abs() < cfg.pole_guard {
        return Err(LeafError::PoleProximity {
            distance: zeta - q.abs(),
        });
    }
    let base_cfg = EvalConfig {
        extended: false,
        ..cfg.clone()
    };
    let (value, dmag) = sleafh_base(Basis::TWO, q, &base_cfg)?;
    Ok(LeafValue {
        value,
        derivative: dmag,
        branch: BranchInfo {
            m,
            derivative_sign: 1,
            reduced_l: q,
        },
    })
}

/// The periodically extended `cleafh_2` with period `4 eta_2`: positive
/// copies of the base branch around `4m eta_2` (value +1, zero slope) and
/// negated copies around `(4m-2) eta_2` (value -1, zero slope), with poles
/// at every odd multiple of `eta_2`.
pub fn cleafh2_extended(l: f64, cfg: &EvalConfig) -> Result<LeafValue> {
    cfg.validate()?;
    if !l.is_finite() {
        return domain_error("cleafh argument must be finite");
    }
    let eta = constants::constants_for(Basis::TWO, cfg)?
        .eta_n
        .expect("eta_2 exists");
    let period = 4.0 * eta;
    let m = (l / period).round() as i64;
    let q = l - m as f64 * period; // in [-2 eta, 2 eta]
    let pole_distance = (q.abs() - eta).abs();
    if pole_distance < cfg.pole_guard {
        return Err(LeafError::PoleProximity {
            distance: pole_distance,
        });
    }
    let base_cfg = EvalConfig {
        extended: false,
        ..cfg.clone()
    };
    if q.abs() < eta {
        let (value, derivative) = cleafh_base(Basis::TWO, q, &base_cfg)?;
        Ok(LeafValue {
            value,
            derivative,
            branch: BranchInfo {
                m,
                derivative_sign: if q >= 0.0 { 1 } else { -1 },
                reduced_l: q,
            },
        })
    } else {
        let q_inner = q - q.signum() * 2.0 * eta; // in (-eta, eta)
        let (value, derivative) = cleafh_base(Basis::TWO, q_inner, &base_cfg)?;
        Ok(LeafValue {
            value: -value,
            derivative: -derivative,
            branch: BranchInfo {
                m,
                derivative_sign: if q_inner >= 0.0 { -1 } else { 1 },
                reduced_l: q,
            },
        })
    }
}
