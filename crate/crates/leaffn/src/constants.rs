//! The defining constants of each basis: the half-period scale `pi_n` of the
//! leaf functions and the domain limits `zeta_n` / `eta_n` of the hyperbolic
//! leaf functions.
//!
//! * `pi_n  = 2 * integral of 1/sqrt(1 - t^(2n)) over [0, 1]`
//! * `zeta_n = integral of 1/sqrt(1 + t^(2n)) over [0, inf)`  (n >= 2)
//! * `eta_n  = integral of 1/sqrt(t^(2n) - 1) over [1, inf)`  (n >= 2)
//!
//! For `n = 1` the two improper integrals diverge and the limits do not
//! exist. The improper integrals are never truncated: the tail over
//! `[1, inf)` is mapped onto `[0, 1]` by `t -> 1/u`, which turns it into
//! `u^(n-2) / sqrt(1 ± u^(2n))` on a finite interval.
//!
//! Constants are computed lazily at a fixed internal tolerance on first use
//! per basis and cached process-wide, so repeated calls return bit-identical
//! values regardless of the caller's configuration.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::config::{Basis, EvalConfig};
use crate::error::Result;
use crate::numerics::{integrate, integrate_singular_upper};

/// Cached constants of one basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantsSet {
    pub n: Basis,
    /// Half-period scale of the leaf functions; always defined.
    pub pi_n: f64,
    /// Domain limit of `sleafh_n`; `None` for `n = 1`.
    pub zeta_n: Option<f64>,
    /// Domain limit of `cleafh_n`; `None` for `n = 1`.
    pub eta_n: Option<f64>,
}

static CACHE: RwLock<Option<HashMap<u32, ConstantsSet>>> = RwLock::new(None);

/// Tolerances used to pin the cached values; tighter than any caller needs.
fn internal_config() -> EvalConfig {
    EvalConfig {
        quad_abs_tol: 1e-14,
        ..EvalConfig::default()
    }
}

fn compute(n: Basis) -> Result<ConstantsSet> {
    let cfg = internal_config();
    let two_n = n.two_n();

    let pi_n = 2.0 * integrate_singular_upper(|_| 1.0, n, 0.0, &cfg)?;

    let (zeta_n, eta_n) = if n.get() == 1 {
        (None, None)
    } else {
        let head = integrate(|t| 1.0 / (1.0 + t.powi(two_n)).sqrt(), 0.0, 1.0, &cfg)?;
        let tail_w = n.get() as i32 - 2;
        let tail = integrate(
            |u| u.powi(tail_w) / (1.0 + u.powi(two_n)).sqrt(),
            0.0,
            1.0,
            &cfg,
        )?;
        let zeta = head + tail;
        let eta = integrate_singular_upper(|u| u.powi(tail_w), n, 0.0, &cfg)?;
        (Some(zeta), Some(eta))
    };

    Ok(ConstantsSet {
        n,
        pi_n,
        zeta_n,
        eta_n,
    })
}

/// Returns the constants of basis `n`, computing and caching them on first
/// use. Concurrent first access may compute twice; both results are
/// identical, so either insert wins.
pub fn constants_for(n: Basis, cfg: &EvalConfig) -> Result<ConstantsSet> {
    cfg.validate()?;
    if let Some(map) = CACHE.read().expect("constants cache poisoned").as_ref() {
        if let Some(set) = map.get(&n.get()) {
            return Ok(*set);
        }
    }
    let set = compute(n)?;
    let mut guard = CACHE.write().expect("constants cache poisoned");
    let map = guard.get_or_insert_with(HashMap::new);
    Ok(*map.entry(n.get()).or_insert(set))
}

/// `pi_n`, the half-period scale of the basis-`n` leaf functions.
pub fn pi_n(n: Basis, cfg: &EvalConfig) -> Result<f64> {
    constants_for(n, cfg).map(|c| c.pi_n)
}

/// `zeta_n`, the domain limit of `sleafh_n`; `None` when `n = 1`.
pub fn zeta_n(n: Basis, cfg: &EvalConfig) -> Result<Option<f64>> {
    constants_for(n, cfg).map(|c| c.zeta_n)
}

/// `eta_n`, the domain limit of `cleafh_n`; `None` when `n = 1`.
pub fn eta_n(n: Basis, cfg: &EvalConfig) -> Result<Option<f64>> {
    constants_for(n, cfg).map(|c| c.eta_n)
}

/// Infallible cached access for internal callers. The integrands are smooth
/// or tanh-sinh-handled, so the fixed internal tolerance always converges.
pub(crate) fn cached(n: Basis) -> ConstantsSet {
    constants_for(n, &internal_config()).expect("constant computation failed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    // Frozen full-precision references from the development quadrature
    // oracle; the published tables print only 4-5 digits.
    const PI_1: f64 = std::f64::consts::PI;
    const PI_2: f64 = 2.6220575542921198;
    const PI_3: f64 = 2.4286506478875816;
    const ZETA_2: f64 = 1.8540746773013719;
    const ZETA_3: f64 = 1.4021821053254543;
    const ETA_2: f64 = 1.3110287771460600;
    const ETA_3: f64 = 0.7010910526627271;

    #[test]
    fn pi_n_reference_values() {
        assert!((pi_n(Basis::ONE, &cfg()).unwrap() - PI_1).abs() < 1e-12);
        assert!((pi_n(Basis::TWO, &cfg()).unwrap() - PI_2).abs() < 1e-12);
        assert!((pi_n(Basis::THREE, &cfg()).unwrap() - PI_3).abs() < 1e-12);
    }

    #[test]
    fn limits_absent_exactly_for_basis_one() {
        assert_eq!(zeta_n(Basis::ONE, &cfg()).unwrap(), None);
        assert_eq!(eta_n(Basis::ONE, &cfg()).unwrap(), None);
        assert!(zeta_n(Basis::TWO, &cfg()).unwrap().is_some());
        assert!(eta_n(Basis::THREE, &cfg()).unwrap().is_some());
    }

    #[test]
    fn hyperbolic_limits_reference_values() {
        assert!((zeta_n(Basis::TWO, &cfg()).unwrap().unwrap() - ZETA_2).abs() < 1e-12);
        assert!((zeta_n(Basis::THREE, &cfg()).unwrap().unwrap() - ZETA_3).abs() < 1e-12);
        assert!((eta_n(Basis::TWO, &cfg()).unwrap().unwrap() - ETA_2).abs() < 1e-12);
        assert!((eta_n(Basis::THREE, &cfg()).unwrap().unwrap() - ETA_3).abs() < 1e-12);
    }

    #[test]
    fn eta_two_consistent_with_half_period() {
        let set = constants_for(Basis::TWO, &cfg()).unwrap();
        assert!((set.eta_n.unwrap() - set.pi_n / 2.0).abs() <= 1e-10);
    }

    #[test]
    fn caching_is_bit_identical() {
        let a = constants_for(Basis::THREE, &cfg()).unwrap();
        let b = constants_for(Basis::THREE, &cfg()).unwrap();
        assert_eq!(a.pi_n.to_bits(), b.pi_n.to_bits());
        assert_eq!(a.zeta_n.unwrap().to_bits(), b.zeta_n.unwrap().to_bits());
        assert_eq!(a.eta_n.unwrap().to_bits(), b.eta_n.unwrap().to_bits());
    }

    #[test]
    fn concurrent_first_access() {
        let handles: Vec<_> = (0..8)
            .map(|_| std::thread::spawn(|| constants_for(Basis::new(5).unwrap(), &cfg()).unwrap()))
            .collect();
        let values: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for pair in values.windows(2) {
            assert_eq!(pair[0].pi_n.to_bits(), pair[1].pi_n.to_bits());
        }
    }

    /// Independent split-free evaluations through a single substitution
    /// mapping [0, inf) onto [0, 1): t = u/(1-u) for zeta, t = 1/(1-u) for
    /// eta. Cross-checks the production 1/u-transform route.
    #[test]
    fn improper_integrals_agree_across_transforms() {
        use crate::numerics::{integrate, integrate_singular_upper};
        for n in [Basis::TWO, Basis::THREE] {
            let two_n = n.two_n();
            let zeta_alt = integrate(
                |u| {
                    let t = u / (1.0 - u);
                    let jac = 1.0 / ((1.0 - u) * (1.0 - u));
                    jac / (1.0 + t.powi(two_n)).sqrt()
                },
                0.0,
                1.0 - 1e-14,
                &cfg(),
            )
            .unwrap();
            let zeta = zeta_n(n, &cfg()).unwrap().unwrap();
            assert!((zeta - zeta_alt).abs() < 1e-11, "zeta_{n}: {zeta} vs {zeta_alt}");

            // eta through a different split: direct integral over [1, 2]
            // (singularity at t = 1) plus the transformed tail over [2, inf).
            let count = n.get() as i32;
            let head = crate::numerics::tanh_sinh(
                |node| {
                    let t = node.x;
                    let radicand =
                        node.dist_lo * (t + 1.0) * crate::numerics::even_power_sum(t, count);
                    1.0 / radicand.sqrt()
                },
                1.0,
                2.0,
                1e-13,
                12,
            )
            .unwrap();
            let tail = integrate(
                |u| u.powi(count - 2) / (1.0 - u.powi(two_n)).sqrt(),
                0.0,
                0.5,
                &cfg(),
            )
            .unwrap();
            let eta = eta_n(n, &cfg()).unwrap().unwrap();
            let eta_alt = head + tail;
            assert!((eta - eta_alt).abs() < 1e-11, "eta_{n}: {eta} vs {eta_alt}");
        }
    }
}
