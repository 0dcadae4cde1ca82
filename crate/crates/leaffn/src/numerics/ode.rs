//! Adaptive integration of the defining second-order equation
//! `r'' = s * n * r^(2n-1)` as a first-order system, using the
//! Dormand–Prince 5(4) embedded pair.

use crate::config::{Basis, EvalConfig};
use crate::error::{domain_error, LeafError, Result};

/// Sign of the restoring term in `r'' = s * n * r^(2n-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeSign {
    /// `s = -1`: bounded, periodic solutions (the leaf functions).
    Leaf,
    /// `s = +1`: unbounded solutions with finite domain limits.
    Hyperbolic,
}

impl OdeSign {
    fn factor(self) -> f64 {
        match self {
            OdeSign::Leaf => -1.0,
            OdeSign::Hyperbolic => 1.0,
        }
    }
}

type State = [f64; 2];

#[inline]
fn rhs(sign: f64, n: Basis, y: State) -> State {
    [y[1], sign * n.get() as f64 * y[0].powi(n.two_n() - 1)]
}

// Dormand–Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Difference between the 5th- and embedded 4th-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Integrates the initial value problem `r(0) = r0`, `r'(0) = v0` up to
/// `l_target`, returning `(r, r')` there.
pub fn ode_integrate(
    sign: OdeSign,
    n: Basis,
    r0: f64,
    v0: f64,
    l_target: f64,
    cfg: &EvalConfig,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    if !l_target.is_finite() || !r0.is_finite() || !v0.is_finite() {
        return domain_error("ODE inputs must be finite");
    }
    if l_target == 0.0 {
        return Ok((r0, v0));
    }

    let s = sign.factor();
    let dir = l_target.signum();
    let mut l = 0.0f64;
    let mut y: State = [r0, v0];
    let mut k1 = rhs(s, n, y);
    let mut h = dir * 1e-4f64.min(l_target.abs());
    let rel = cfg.ode_rel_tol;
    let abs = cfg.ode_rel_tol * 1e-2;

    let max_steps = 40_000_000u64;
    let mut steps = 0u64;

    while (l_target - l) * dir > 0.0 {
        steps += 1;
        if steps > max_steps {
            return Err(LeafError::NonConvergence {
                context: "ODE integrator exceeded its step budget",
            });
        }
        if (l + h - l_target) * dir > 0.0 {
            h = l_target - l;
        }
        if h.abs() < cfg.ode_min_step {
            return Err(LeafError::NonConvergence {
                context: "ODE step size underflow (likely near a pole)",
            });
        }

        let y2 = [y[0] + h * A21 * k1[0], y[1] + h * A21 * k1[1]];
        let k2 = rhs(s, n, y2);
        let y3 = [
            y[0] + h * (A31 * k1[0] + A32 * k2[0]),
            y[1] + h * (A31 * k1[1] + A32 * k2[1]),
        ];
        let k3 = rhs(s, n, y3);
        let y4 = [
            y[0] + h * (A41 * k1[0] + A42 * k2[0] + A43 * k3[0]),
            y[1] + h * (A41 * k1[1] + A42 * k2[1] + A43 * k3[1]),
        ];
        let k4 = rhs(s, n, y4);
        let y5 = [
            y[0] + h * (A51 * k1[0] + A52 * k2[0] + A53 * k3[0] + A54 * k4[0]),
            y[1] + h * (A51 * k1[1] + A52 * k2[1] + A53 * k3[1] + A54 * k4[1]),
        ];
        let k5 = rhs(s, n, y5);
        let y6 = [
            y[0] + h * (A61 * k1[0] + A62 * k2[0] + A63 * k3[0] + A64 * k4[0] + A65 * k5[0]),
            y[1] + h * (A61 * k1[1] + A62 * k2[1] + A63 * k3[1] + A64 * k4[1] + A65 * k5[1]),
        ];
        let k6 = rhs(s, n, y6);
        let y_new = [
            y[0] + h * (B1 * k1[0] + B3 * k3[0] + B4 * k4[0] + B5 * k5[0] + B6 * k6[0]),
            y[1] + h * (B1 * k1[1] + B3 * k3[1] + B4 * k4[1] + B5 * k5[1] + B6 * k6[1]),
        ];
        let k7 = rhs(s, n, y_new);

        if !y_new[0].is_finite() || !y_new[1].is_finite() {
            return Err(LeafError::NonConvergence {
                context: "ODE state became non-finite",
            });
        }

        let mut err_norm = 0.0f64;
        for i in 0..2 {
            let e = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = abs + rel * y[i].abs().max(y_new[i].abs());
            err_norm += (e / scale) * (e / scale);
        }
        let err_norm = (err_norm / 2.0).sqrt();

        if err_norm <= 1.0 {
            l += h;
            y = y_new;
            k1 = k7; // first-same-as-last
            let grow = if err_norm == 0.0 {
                5.0
            } else {
                (0.9 * err_norm.powf(-0.2)).clamp(1.0, 5.0)
            };
            h *= grow;
        } else {
            h *= (0.9 * err_norm.powf(-0.2)).clamp(0.2, 0.9);
        }
    }
    Ok((y[0], y[1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn initial_condition_at_zero() {
        let (r, v) = ode_integrate(OdeSign::Leaf, Basis::THREE, 0.3, -0.7, 0.0, &cfg()).unwrap();
        assert_eq!((r, v), (0.3, -0.7));
    }

    #[test]
    fn n1_reduces_to_sin() {
        let (r, v) = ode_integrate(OdeSign::Leaf, Basis::ONE, 0.0, 1.0, 1.0, &cfg()).unwrap();
        assert!((r - 1f64.sin()).abs() < 1e-11);
        assert!((v - 1f64.cos()).abs() < 1e-11);
    }

    #[test]
    fn hyperbolic_reference_point() {
        // frozen oracle value of the basis-2 odd hyperbolic function at 1.0
        let (r, _) = ode_integrate(OdeSign::Hyperbolic, Basis::TWO, 0.0, 1.0, 1.0, &cfg()).unwrap();
        assert!((r - 1.1091036499554591).abs() < 1e-10, "{r}");
    }

    #[test]
    fn first_integral_conserved() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let c = cfg();
        for _ in 0..40 {
            let n = Basis::new(rng.gen_range(1..=3)).unwrap();
            let l: f64 = rng.gen_range(-2.0..2.0);
            // leaf family: v^2 + r^(2n) stays at its initial value 1
            let (r, v) = ode_integrate(OdeSign::Leaf, n, 0.0, 1.0, l, &c).unwrap();
            let inv = v * v + r.powi(n.two_n());
            assert!((inv - 1.0).abs() < 100.0 * c.ode_rel_tol, "leaf invariant {inv}");
            // hyperbolic family from the even start: v^2 - r^(2n) = -1
            let lh: f64 = rng.gen_range(-0.6..0.6);
            let (r, v) = ode_integrate(OdeSign::Hyperbolic, n, 1.0, 0.0, lh, &c).unwrap();
            let inv = v * v - r.powi(n.two_n());
            assert!((inv + 1.0).abs() < 100.0 * c.ode_rel_tol, "hyperbolic invariant {inv}");
        }
    }

    #[test]
    fn pole_stops_integration() {
        // the basis-2 odd hyperbolic solution blows up at ~1.854
        let err = ode_integrate(OdeSign::Hyperbolic, Basis::TWO, 0.0, 1.0, 1.8540747, &cfg());
        assert!(matches!(err, Err(LeafError::NonConvergence { .. })));
    }
}
