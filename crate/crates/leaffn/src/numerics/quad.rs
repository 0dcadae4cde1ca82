//! Adaptive quadrature.
//!
//! Two kernels cover everything the crate integrates:
//!
//! * [`integrate`] — globally adaptive Gauss–Kronrod (G7, K15) panels for
//!   integrands that are finite on the closed interval;
//! * a tanh–sinh (double-exponential) rule for integrands with an algebraic
//!   singularity at one or both endpoints, exposed through
//!   [`integrate_singular_upper`] and reused by the inverse-function module.
//!
//! The tanh–sinh rule hands each node's *distance to the endpoints* to the
//! integrand so that factors like `1 - t^(2n)` can be evaluated without
//! cancellation right up against the singularity.

use crate::config::{Basis, EvalConfig};
use crate::error::{domain_error, LeafError, Result};

/// Kronrod abscissae for the (G7, K15) pair on [-1, 1].
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

/// Gauss weights for the embedded 7-point rule (odd-index abscissae).
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One (G7, K15) panel. Returns the K15 value, an error estimate and the
/// integral of |f| (for round-off accounting).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64, f64)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        let sum = f1 + f2;
        resk += WGK[j] * sum;
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * sum;
        }
    }

    if !resk.is_finite() {
        return Err(LeafError::NonConvergence {
            context: "non-finite integrand value in quadrature panel",
        });
    }

    let mean = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }

    let value = resk * half;
    let mut err = ((resk - resg) * half).abs();
    let resasc = resasc * half.abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let resabs = resabs * half.abs();
    let round_off = 50.0 * f64::EPSILON * resabs;
    Ok((value, err.max(round_off), resabs))
}

/// Adaptive quadrature of `f` over `[a, b]`.
///
/// The integrand must be finite on the closed interval; endpoint
/// singularities belong to [`integrate_singular_upper`].
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cfg: &EvalConfig) -> Result<f64> {
    cfg.validate()?;
    if !a.is_finite() || !b.is_finite() {
        return domain_error("integration bounds must be finite");
    }
    if a > b {
        return domain_error("integration requires a <= b");
    }
    if a == b {
        return Ok(0.0);
    }

    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        err: f64,
        resabs: f64,
        depth: u32,
    }

    let (value, err, resabs) = gk15(&f, a, b)?;
    let mut panels = vec![Panel {
        a,
        b,
        value,
        err,
        resabs,
        depth: 0,
    }];
    let mut total_err = err;
    let mut total_resabs = resabs;
    let mut splits = 0u32;

    loop {
        if total_err <= cfg.quad_abs_tol {
            break;
        }
        // A tolerance below the round-off level of the integral cannot be
        // met in double precision; the estimate is then as good as it gets.
        if total_err <= 100.0 * f64::EPSILON * total_resabs {
            break;
        }
        // Split the panel with the largest error estimate.
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .expect("panel list never empty");
        let Panel {
            a: pa,
            b: pb,
            err: perr,
            resabs: pabs,
            depth,
            ..
        } = panels[worst];
        if depth >= cfg.quad_max_depth || panels.len() >= 100_000 {
            return Err(LeafError::NonConvergence {
                context: "adaptive quadrature reached maximum depth",
            });
        }
        let mid = 0.5 * (pa + pb);
        let (v1, e1, r1) = gk15(&f, pa, mid)?;
        let (v2, e2, r2) = gk15(&f, mid, pb)?;
        panels[worst] = Panel {
            a: pa,
            b: mid,
            value: v1,
            err: e1,
            resabs: r1,
            depth: depth + 1,
        };
        panels.push(Panel {
            a: mid,
            b: pb,
            value: v2,
            err: e2,
            resabs: r2,
            depth: depth + 1,
        });
        total_err = total_err - perr + e1 + e2;
        total_resabs = total_resabs - pabs + r1 + r2;
        splits += 1;
        // Refresh the running sums to shed accumulated cancellation noise.
        if splits % 64 == 0 {
            total_err = panels.iter().map(|p| p.err).sum();
            total_resabs = panels.iter().map(|p| p.resabs).sum();
        }
    }

    // Deterministic summation order: left to right.
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(panels.iter().map(|p| p.value).sum())
}

/// A tanh–sinh node: abscissa plus its exact distances to both endpoints.
pub(crate) struct SingularNode {
    pub x: f64,
    pub dist_lo: f64,
    pub dist_hi: f64,
}

/// Tanh–sinh quadrature of `f` over `[a, b]`.
///
/// `f` receives each node together with its distance to `a` and to `b`;
/// integrable algebraic singularities at either endpoint are fine as long
/// as the integrand is computed from those distances.
pub(crate) fn tanh_sinh<F: Fn(&SingularNode) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_level: u32,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return domain_error("integration requires a <= b");
    }
    let half = 0.5 * (b - a);
    const T_MAX: f64 = 6.5;

    // Weighted integrand at the substitution parameter t.
    let eval = |t: f64| -> Option<f64> {
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let q = (-2.0 * u.abs()).exp();
        // 1 -+ tanh(u) without cancellation.
        let near = half * (2.0 * q / (1.0 + q));
        let far = half * (2.0 / (1.0 + q));
        let (x, dist_lo, dist_hi) = if t >= 0.0 {
            (b - near, far, near)
        } else {
            (a + near, near, far)
        };
        if dist_lo == 0.0 || dist_hi == 0.0 {
            return None; // node indistinguishable from the endpoint
        }
        let cosh_u = u.cosh();
        let w = half * std::f64::consts::FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
        if w == 0.0 {
            return None;
        }
        let fx = f(&SingularNode { x, dist_lo, dist_hi });
        Some(w * fx)
    };

    // Level 0: trapezoid with h = 1 over integer nodes.
    let mut h = 1.0;
    let mut sum = eval(0.0).unwrap_or(0.0);
    for k in 1..=(T_MAX as i64) {
        for t in [k as f64, -(k as f64)] {
            if let Some(term) = eval(t) {
                sum += term;
            }
        }
    }
    let mut value = h * sum;

    for _level in 1..=max_level {
        h *= 0.5;
        // Add the new midpoints (odd multiples of the refined h).
        let mut new_sum = 0.0;
        let mut k = 1i64;
        loop {
            let t = k as f64 * h;
            if t > T_MAX {
                break;
            }
            let mut dead = true;
            for tt in [t, -t] {
                if let Some(term) = eval(tt) {
                    new_sum += term;
                    if term.abs() > f64::EPSILON * new_sum.abs() * 1e-2 {
                        dead = false;
                    }
                }
            }
            // Terms decay double-exponentially; stop once they vanish.
            if dead && k > 8 {
                break;
            }
            k += 2;
        }
        let new_value = 0.5 * value + h * new_sum;
        let change = (new_value - value).abs();
        value = new_value;
        if !value.is_finite() {
            return Err(LeafError::NonConvergence {
                context: "non-finite value in tanh-sinh quadrature",
            });
        }
        if _level >= 3 && change <= tol.max(f64::EPSILON * value.abs()) {
            return Ok(value);
        }
    }
    Err(LeafError::NonConvergence {
        context: "tanh-sinh quadrature did not converge",
    })
}

/// `sum_{j=0}^{count-1} t^(2j)`, the regular cofactor of `1 - t^(2n)`.
#[inline]
pub(crate) fn even_power_sum(t: f64, count: i32) -> f64 {
    let t2 = t * t;
    let mut acc = 1.0;
    let mut pow = 1.0;
    for _ in 1..count {
        pow *= t2;
        acc += pow;
    }
    acc
}

/// Integrates `w(t) / sqrt(1 - t^(2n))` over `[r, 1]` for `0 <= r < 1`.
///
/// The integrable singularity at `t = 1` is removed by the tanh–sinh
/// substitution; `1 - t^(2n)` is factored as
/// `(1 - t) * (1 + t) * sum t^(2j)` with the `1 - t` factor taken from the
/// node's endpoint distance.
pub fn integrate_singular_upper<W: Fn(f64) -> f64>(
    w: W,
    n: Basis,
    r: f64,
    cfg: &EvalConfig,
) -> Result<f64> {
    cfg.validate()?;
    if !(0.0..1.0).contains(&r) {
        return domain_error("lower bound must satisfy 0 <= r < 1");
    }
    let count = n.get() as i32;
    tanh_sinh(
        |node| {
            let t = node.x;
            let one_plus = node.dist_lo + (1.0 + r); // == 1 + t, exact near t = -1
            let radicand = node.dist_hi * one_plus * even_power_sum(t, count);
            w(t) / radicand.sqrt()
        },
        r,
        1.0,
        cfg.quad_abs_tol,
        12,
    )
}
