//! The `check` subcommand: seeded residual suites over the formula
//! registry.
//!
//! Every registered formula owns a sampler that draws in-domain arguments
//! (rejecting draws that violate a precondition or sit closer to a pole or
//! case boundary than the configured guards) and an evaluator producing a
//! residual against direct evaluation. Runs are deterministic: the
//! per-formula generator is seeded with `seed ^ fnv1a(id)`, so identical
//! invocations produce byte-identical output.
//!
//! A sample passes at tolerance `tol` if its absolute residual is within
//! `tol`, or — for direct values of magnitude above 10, where the absolute
//! scale is meaningless — within `10 * tol` relative.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use leaffn::formulas::{
    add_cleaf2, add_cleaf3_sq, add_cleafh2, add_cleafh3_sq, add_sleaf2, add_sleaf3_sq,
    add_sleafh2, add_sleafh3_sq, double_angle, half_angle_sq, identity_residual,
    sleaf3_addition_invariance, sleaf3_addition_state, Relation,
};
use leaffn::{Basis, Case, EvalConfig, FormulaReport, FunctionKind, LeafError};

use crate::CliError;

/// Outcome of one formula's suite.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub formula_id: &'static str,
    pub samples: u32,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub worst_inputs: Vec<f64>,
    pub seed: u64,
    /// How often each interval case was exercised.
    pub case_counts: Vec<(Case, u32)>,
    pub passed: bool,
}

struct Sample {
    inputs: Vec<f64>,
    residual: f64,
    direct: f64,
    case: Option<Case>,
}

impl From<FormulaReport> for Sample {
    fn from(r: FormulaReport) -> Sample {
        Sample {
            inputs: r.inputs,
            residual: r.residual,
            direct: r.direct,
            case: r.branch_case,
        }
    }
}

type Runner = fn(&mut ChaCha8Rng, &EvalConfig) -> Result<Sample, LeafError>;

struct FormulaDef {
    id: &'static str,
    run: Runner,
}

/// Margin kept from domain limits when drawing hyperbolic arguments.
const EDGE: f64 = 0.02;
/// Rejection budget per sample.
const MAX_TRIES: u32 = 10_000;

fn fnv1a(s: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn retry<T>(
    mut attempt: impl FnMut() -> Result<Option<T>, LeafError>,
) -> Result<T, LeafError> {
    for _ in 0..MAX_TRIES {
        if let Some(v) = attempt()? {
            return Ok(v);
        }
    }
    Err(LeafError::NonConvergence {
        context: "sampler exhausted its rejection budget",
    })
}

/// Treats domain/pole/division refusals as a rejected draw, everything else
/// as a real failure.
fn rejectable(e: LeafError) -> Result<Option<Sample>, LeafError> {
    match e {
        LeafError::DomainExceeded { .. }
        | LeafError::PoleProximity { .. }
        | LeafError::DivisionNearZero { .. }
        | LeafError::DegenerateBranch => Ok(None),
        other => Err(other),
    }
}

fn wrap(result: Result<FormulaReport, LeafError>) -> Result<Option<Sample>, LeafError> {
    match result {
        Ok(report) => Ok(Some(report.into())),
        Err(e) => rejectable(e),
    }
}

// --- constants helpers -------------------------------------------------

fn pi_n(n: u32) -> f64 {
    leaffn::constants_for(Basis::new(n).unwrap(), &EvalConfig::default())
        .expect("constants")
        .pi_n
}

fn zeta(n: u32) -> f64 {
    leaffn::constants_for(Basis::new(n).unwrap(), &EvalConfig::default())
        .expect("constants")
        .zeta_n
        .expect("zeta exists for n >= 2")
}

fn eta(n: u32) -> f64 {
    leaffn::constants_for(Basis::new(n).unwrap(), &EvalConfig::default())
        .expect("constants")
        .eta_n
        .expect("eta exists for n >= 2")
}

// --- samplers -----------------------------------------------------------

/// Uniform over the rising quadrant (+1) or falling quadrant (-1) of the
/// odd leaf function, over three periods.
fn quadrant_sleaf(rng: &mut ChaCha8Rng, n: u32, sign: i8) -> f64 {
    let p = pi_n(n);
    let m = rng.gen_range(-1..=1) as f64;
    let center = if sign > 0 { 2.0 * p * m } else { (2.0 * m + 1.0) * p };
    center + rng.gen_range(-0.5 * p..0.5 * p)
}

/// Uniform over the falling (-1) or rising (+1) half-period of the even
/// leaf function.
fn quadrant_cleaf(rng: &mut ChaCha8Rng, n: u32, sign: i8) -> f64 {
    let p = pi_n(n);
    let m = rng.gen_range(-1..=1) as f64;
    let center = if sign < 0 {
        (2.0 * m + 0.5) * p
    } else {
        (2.0 * m - 0.5) * p
    };
    center + rng.gen_range(-0.5 * p..0.5 * p)
}

fn span(rng: &mut ChaCha8Rng, half_width: f64) -> f64 {
    rng.gen_range(-half_width..half_width)
}

macro_rules! leaf_addition {
    ($name:ident, $eval:ident, $n:expr) => {
        fn $name(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
            retry(|| {
                let w = 2.0 * pi_n($n);
                let (l1, l2) = (span(rng, w), span(rng, w));
                wrap($eval(l1, l2, cfg))
            })
        }
    };
}

leaf_addition!(run_2_1_3, add_sleaf2, 2);
leaf_addition!(run_2_1_8, add_cleaf2, 2);
leaf_addition!(run_2_1_13, add_sleaf3_sq, 3);
leaf_addition!(run_2_1_16, add_cleaf3_sq, 3);

macro_rules! leaf_addition_case {
    ($name:ident, $eval:ident, $n:expr, $q1:ident, $s1:expr, $q2:ident, $s2:expr, $case:expr) => {
        fn $name(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
            retry(|| {
                let l1 = $q1(rng, $n, $s1);
                let l2 = $q2(rng, $n, $s2);
                match wrap($eval(l1, l2, cfg))? {
                    Some(s) if s.case == Some($case) => Ok(Some(s)),
                    _ => Ok(None), // boundary draw landed in the other case
                }
            })
        }
    };
}

leaf_addition_case!(run_2_1_4, add_sleaf2, 2, quadrant_sleaf, 1, quadrant_sleaf, 1, Case::I);
leaf_addition_case!(run_2_1_5, add_sleaf2, 2, quadrant_sleaf, 1, quadrant_sleaf, -1, Case::II);
leaf_addition_case!(run_2_1_6, add_sleaf2, 2, quadrant_sleaf, -1, quadrant_sleaf, 1, Case::III);
leaf_addition_case!(run_2_1_7, add_sleaf2, 2, quadrant_sleaf, -1, quadrant_sleaf, -1, Case::IIII);
leaf_addition_case!(run_2_1_9, add_cleaf2, 2, quadrant_cleaf, -1, quadrant_sleaf, 1, Case::I);
leaf_addition_case!(run_2_1_10, add_cleaf2, 2, quadrant_cleaf, 1, quadrant_sleaf, 1, Case::II);
leaf_addition_case!(run_2_1_11, add_cleaf2, 2, quadrant_cleaf, 1, quadrant_sleaf, -1, Case::III);
leaf_addition_case!(run_2_1_12, add_cleaf2, 2, quadrant_cleaf, -1, quadrant_sleaf, -1, Case::IIII);

fn run_2_1_14(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| {
        let s: i8 = if rng.gen::<bool>() { 1 } else { -1 };
        let (l1, l2) = (quadrant_sleaf(rng, 3, s), quadrant_sleaf(rng, 3, s));
        match wrap(add_sleaf3_sq(l1, l2, cfg))? {
            Some(smp) if smp.case == Some(Case::I) => Ok(Some(smp)),
            _ => Ok(None),
        }
    })
}

fn run_2_1_15(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| {
        let s: i8 = if rng.gen::<bool>() { 1 } else { -1 };
        let (l1, l2) = (quadrant_sleaf(rng, 3, s), quadrant_sleaf(rng, 3, -s));
        match wrap(add_sleaf3_sq(l1, l2, cfg))? {
            Some(smp) if smp.case == Some(Case::II) => Ok(Some(smp)),
            _ => Ok(None),
        }
    })
}

fn run_2_1_17(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| {
        let s: i8 = if rng.gen::<bool>() { 1 } else { -1 };
        let (l1, l2) = (quadrant_cleaf(rng, 3, s), quadrant_sleaf(rng, 3, -s));
        match wrap(add_cleaf3_sq(l1, l2, cfg))? {
            Some(smp) if smp.case == Some(Case::I) => Ok(Some(smp)),
            _ => Ok(None),
        }
    })
}

fn run_2_1_18(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| {
        let s: i8 = if rng.gen::<bool>() { 1 } else { -1 };
        let (l1, l2) = (quadrant_cleaf(rng, 3, s), quadrant_sleaf(rng, 3, s));
        match wrap(add_cleaf3_sq(l1, l2, cfg))? {
            Some(smp) if smp.case == Some(Case::II) => Ok(Some(smp)),
            _ => Ok(None),
        }
    })
}

fn run_2_2_10(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| {
        let w = zeta(2) - EDGE;
        let (l1, l2) = (span(rng, w), span(rng, w));
        if (l1 + l2).abs() >= w {
            return Ok(None);
        }
        wrap(add_sleafh2(l1, l2, cfg))
    })
}

fn run_2_2_11(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| {
        let w = eta(2) - EDGE;
        let (l1, l2) = (span(rng, w), span(rng, w));
        if (l1 + l2).abs() >= w {
            return Ok(None);
        }
        wrap(add_cleafh2(l1, l2, cfg))
    })
}

fn cleafh2_case_pair(rng: &mut ChaCha8Rng, same_sign: bool) -> Option<(f64, f64)> {
    let w = eta(2) - EDGE;
    let a = rng.gen_range(0.0..w);
    let b = rng.gen_range(0.0..w);
    let s: f64 = if rng.gen::<bool>() { 1.0 } else { -1.0 };
    let (l1, l2) = if same_sign { (s * a, s * b) } else { (s * a, -s * b) };
    if (l1 + l2).abs() >= w {
        None
    } else {
        Some((l1, l2))
    }
}

fn run_2_2_12(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| match cleafh2_case_pair(rng, true) {
        Some((l1, l2)) => wrap(add_cleafh2(l1, l2, cfg)),
        None => Ok(None),
    })
}

fn run_2_2_13(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| match cleafh2_case_pair(rng, false) {
        Some((l1, l2)) => wrap(add_cleafh2(l1, l2, cfg)),
        None => Ok(None),
    })
}

fn run_2_2_16(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| {
        let w = zeta(3) - EDGE;
        let (l1, l2) = (span(rng, w), span(rng, w));
        if (l1 + l2).abs() >= w {
            return Ok(None);
        }
        wrap(add_sleafh3_sq(l1, l2, cfg))
    })
}

fn cleafh3_pair(rng: &mut ChaCha8Rng) -> Option<(f64, f64)> {
    let w1 = eta(3) - EDGE;
    let w2 = zeta(3) - EDGE;
    let l1 = rng.gen_range(-w1..w1);
    let l2 = rng.gen_range(-w2..w2);
    if (l1 + l2).abs() >= w1 {
        None
    } else {
        Some((l1, l2))
    }
}

fn run_2_2_17(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| match cleafh3_pair(rng) {
        Some((l1, l2)) => wrap(add_cleafh3_sq(l1, l2, cfg)),
        None => Ok(None),
    })
}

fn run_2_2_18(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| match cleafh3_pair(rng) {
        Some((l1, l2)) => wrap(add_cleafh3_sq(-l1.abs(), l2, cfg)),
        None => Ok(None),
    })
}

fn run_2_2_19(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| match cleafh3_pair(rng) {
        Some((l1, l2)) => wrap(add_cleafh3_sq(l1.abs(), l2, cfg)),
        None => Ok(None),
    })
}

macro_rules! angle_full {
    ($name:ident, $op:ident, $kind:expr, $n:expr, $width:expr) => {
        fn $name(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
            retry(|| {
                let l = span(rng, $width);
                wrap($op($kind, Basis::new($n).unwrap(), l, cfg))
            })
        }
    };
}

macro_rules! angle_case {
    ($name:ident, $op:ident, $kind:expr, $n:expr, $sampler:ident, $sign:expr, $case:expr) => {
        fn $name(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
            retry(|| {
                let l = $sampler(rng, $n, $sign);
                match wrap($op($kind, Basis::new($n).unwrap(), l, cfg))? {
                    Some(s) if s.case == Some($case) => Ok(Some(s)),
                    _ => Ok(None),
                }
            })
        }
    };
}

angle_full!(run_3_1_3, double_angle, FunctionKind::Sleaf, 2, 2.0 * pi_n(2));
angle_case!(run_3_1_4, double_angle, FunctionKind::Sleaf, 2, quadrant_sleaf, 1, Case::I);
angle_case!(run_3_1_5, double_angle, FunctionKind::Sleaf, 2, quadrant_sleaf, -1, Case::II);
angle_full!(run_3_1_6, double_angle, FunctionKind::Cleaf, 2, 2.0 * pi_n(2));
angle_full!(run_3_1_7, double_angle, FunctionKind::Sleaf, 3, 2.0 * pi_n(3));
angle_case!(run_3_1_8, double_angle, FunctionKind::Sleaf, 3, quadrant_sleaf, 1, Case::I);
angle_case!(run_3_1_9, double_angle, FunctionKind::Sleaf, 3, quadrant_sleaf, -1, Case::II);
angle_full!(run_3_1_10, double_angle, FunctionKind::Cleaf, 3, 2.0 * pi_n(3));

/// The odd basis-2 half-angle rules divide by `sleaf_2(l)^2`; keep a
/// margin from the zeros so the quotient stays well-conditioned.
const ZERO_MARGIN: f64 = 0.05;

fn run_3_2_3(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| {
        let l = quadrant_sleaf(rng, 2, -1);
        if leaffn::sleaf(Basis::TWO, l, cfg)?.value.abs() < ZERO_MARGIN {
            return Ok(None);
        }
        match wrap(half_angle_sq(FunctionKind::Sleaf, Basis::TWO, l, cfg))? {
            Some(s) if s.case == Some(Case::I) => Ok(Some(s)),
            _ => Ok(None),
        }
    })
}

fn run_3_2_4(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| {
        let l = quadrant_sleaf(rng, 2, 1);
        if leaffn::sleaf(Basis::TWO, l, cfg)?.value.abs() < ZERO_MARGIN {
            return Ok(None);
        }
        match wrap(half_angle_sq(FunctionKind::Sleaf, Basis::TWO, l, cfg))? {
            Some(s) if s.case == Some(Case::II) => Ok(Some(s)),
            _ => Ok(None),
        }
    })
}

fn run_3_2_5(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| {
        let l = span(rng, 2.0 * pi_n(2));
        if (leaffn::cleaf(Basis::TWO, l, cfg)?.value + 1.0).abs() < ZERO_MARGIN {
            return Ok(None);
        }
        wrap(half_angle_sq(FunctionKind::Cleaf, Basis::TWO, l, cfg))
    })
}

angle_case!(run_3_2_6, half_angle_sq, FunctionKind::Sleaf, 3, quadrant_sleaf, 1, Case::I);
angle_case!(run_3_2_7, half_angle_sq, FunctionKind::Sleaf, 3, quadrant_sleaf, -1, Case::II);
angle_full!(run_3_2_8, half_angle_sq, FunctionKind::Cleaf, 3, 2.0 * pi_n(3));

angle_full!(run_3_3_3, double_angle, FunctionKind::Sleafh, 2, zeta(2) / 2.0 - EDGE);
angle_full!(run_3_3_4, double_angle, FunctionKind::Cleafh, 2, eta(2) / 2.0 - EDGE);
angle_full!(run_3_3_5, double_angle, FunctionKind::Sleafh, 3, zeta(3) / 2.0 - EDGE);
angle_full!(run_3_3_6, double_angle, FunctionKind::Cleafh, 3, eta(3) / 2.0 - EDGE);

fn run_3_4_3(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| {
        let l = span(rng, zeta(2) - EDGE);
        if l.abs() < ZERO_MARGIN {
            return Ok(None);
        }
        wrap(half_angle_sq(FunctionKind::Sleafh, Basis::TWO, l, cfg))
    })
}

/// Case (ii) of the odd basis-2 half-angle rule lives beyond the first
/// domain limit, so it is sampled in extension mode on the second window.
fn run_3_4_4(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    let ext = cfg.clone().with_extended(true);
    retry(|| {
        let z = zeta(2);
        let sign: f64 = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let k = rng.gen_range(-1..=1) as f64;
        let l = sign * rng.gen_range(z + ZERO_MARGIN..2.0 * z - ZERO_MARGIN) + k * 4.0 * z;
        match wrap(half_angle_sq(FunctionKind::Sleafh, Basis::TWO, l, &ext))? {
            Some(s) if s.case == Some(Case::II) => Ok(Some(s)),
            _ => Ok(None),
        }
    })
}

fn run_3_4_5(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| {
        let l = span(rng, eta(2) - EDGE);
        wrap(half_angle_sq(FunctionKind::Cleafh, Basis::TWO, l, cfg))
    })
}

/// Case (ii) of the even basis-2 half-angle rule: the negated branch
/// windows of the periodic extension.
fn run_3_4_6(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    let ext = cfg.clone().with_extended(true);
    retry(|| {
        let e = eta(2);
        let sign: f64 = if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let k = rng.gen_range(-1..=1) as f64;
        let l = sign * rng.gen_range(e + ZERO_MARGIN..2.0 * e - ZERO_MARGIN) + k * 4.0 * e;
        match wrap(half_angle_sq(FunctionKind::Cleafh, Basis::TWO, l, &ext))? {
            Some(s) if s.case == Some(Case::II) => Ok(Some(s)),
            _ => Ok(None),
        }
    })
}

angle_full!(run_3_4_7, half_angle_sq, FunctionKind::Sleafh, 3, zeta(3) - EDGE);
angle_full!(run_3_4_8, half_angle_sq, FunctionKind::Cleafh, 3, eta(3) - EDGE);

/// The quarter-period shift relation between the odd and even leaf
/// functions, sampled across bases 1-3.
fn run_4_1_1(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    let n = Basis::new(rng.gen_range(1..=3)).unwrap();
    let p = leaffn::pi_n(n, cfg)?;
    let l = span(rng, 2.0 * p);
    let lhs = leaffn::sleaf(n, l + p / 2.0, cfg)?.value;
    let rhs = leaffn::cleaf(n, l, cfg)?.value;
    Ok(Sample {
        inputs: vec![n.get() as f64, l],
        residual: (lhs - rhs).abs(),
        direct: rhs,
        case: None,
    })
}

macro_rules! relation_runner {
    ($name:ident, $rel:expr, $width:expr) => {
        fn $name(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
            retry(|| {
                let l = span(rng, $width);
                match identity_residual($rel, $rel.basis(), l, cfg) {
                    Ok(residual) => Ok(Some(Sample {
                        inputs: vec![l],
                        residual,
                        direct: 0.0,
                        case: None,
                    })),
                    Err(e) => match e {
                        LeafError::DomainExceeded { .. }
                        | LeafError::PoleProximity { .. }
                        | LeafError::DivisionNearZero { .. }
                        | LeafError::DegenerateBranch => Ok(None),
                        other => Err(other),
                    },
                }
            })
        }
    };
}

relation_runner!(run_a1, Relation::A1, 3.0);
relation_runner!(run_a2, Relation::A2, 3.0);
relation_runner!(run_b1, Relation::B1, 2.0 * pi_n(2));
relation_runner!(run_b2, Relation::B2, eta(2) / std::f64::consts::SQRT_2 - EDGE);
relation_runner!(run_b3, Relation::B3, eta(2) - EDGE);
relation_runner!(run_b4, Relation::B4, zeta(2) - EDGE);
relation_runner!(run_c1, Relation::C1, 2.0 * pi_n(3));
relation_runner!(run_c2, Relation::C2, eta(3) - EDGE);

/// Interior box where the basis-3 odd addition decomposition stays on a
/// positive branch.
fn invariance_point(rng: &mut ChaCha8Rng) -> (f64, f64) {
    (rng.gen_range(0.05..1.0), rng.gen_range(0.05..1.0))
}

fn run_i15(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    retry(|| {
        let (l1, l2) = invariance_point(rng);
        match sleaf3_addition_invariance(l1, l2, 1e-5, cfg) {
            Ok((d1, d2)) => Ok(Some(Sample {
                inputs: vec![l1, l2],
                residual: (d1 - d2).abs(),
                direct: 0.0,
                case: None,
            })),
            Err(LeafError::DegenerateBranch) => Ok(None),
            Err(e) => Err(e),
        }
    })
}

fn run_i16(rng: &mut ChaCha8Rng, cfg: &EvalConfig) -> Result<Sample, LeafError> {
    let (l1, l2) = invariance_point(rng);
    let two = sleaf3_addition_state(l1, l2, cfg)?.g_squared;
    let one = sleaf3_addition_state(l1 + l2, 0.0, cfg)?.g_squared;
    Ok(Sample {
        inputs: vec![l1, l2],
        residual: (two - one).abs(),
        direct: one,
        case: None,
    })
}

/// The full registry, ordered for output.
fn registry() -> Vec<FormulaDef> {
    macro_rules! def {
        ($id:literal, $run:ident) => {
            FormulaDef {
                id: $id,
                run: $run,
            }
        };
    }
    vec![
        def!("2.1.3", run_2_1_3),
        def!("2.1.4", run_2_1_4),
        def!("2.1.5", run_2_1_5),
        def!("2.1.6", run_2_1_6),
        def!("2.1.7", run_2_1_7),
        def!("2.1.8", run_2_1_8),
        def!("2.1.9", run_2_1_9),
        def!("2.1.10", run_2_1_10),
        def!("2.1.11", run_2_1_11),
        def!("2.1.12", run_2_1_12),
        def!("2.1.13", run_2_1_13),
        def!("2.1.14", run_2_1_14),
        def!("2.1.15", run_2_1_15),
        def!("2.1.16", run_2_1_16),
        def!("2.1.17", run_2_1_17),
        def!("2.1.18", run_2_1_18),
        def!("2.2.10", run_2_2_10),
        def!("2.2.11", run_2_2_11),
        def!("2.2.12", run_2_2_12),
        def!("2.2.13", run_2_2_13),
        def!("2.2.16", run_2_2_16),
        def!("2.2.17", run_2_2_17),
        def!("2.2.18", run_2_2_18),
        def!("2.2.19", run_2_2_19),
        def!("3.1.3", run_3_1_3),
        def!("3.1.4", run_3_1_4),
        def!("3.1.5", run_3_1_5),
        def!("3.1.6", run_3_1_6),
        def!("3.1.7", run_3_1_7),
        def!("3.1.8", run_3_1_8),
        def!("3.1.9", run_3_1_9),
        def!("3.1.10", run_3_1_10),
        def!("3.2.3", run_3_2_3),
        def!("3.2.4", run_3_2_4),
        def!("3.2.5", run_3_2_5),
        def!("3.2.6", run_3_2_6),
        def!("3.2.7", run_3_2_7),
        def!("3.2.8", run_3_2_8),
        def!("3.3.3", run_3_3_3),
        def!("3.3.4", run_3_3_4),
        def!("3.3.5", run_3_3_5),
        def!("3.3.6", run_3_3_6),
        def!("3.4.3", run_3_4_3),
        def!("3.4.4", run_3_4_4),
        def!("3.4.5", run_3_4_5),
        def!("3.4.6", run_3_4_6),
        def!("3.4.7", run_3_4_7),
        def!("3.4.8", run_3_4_8),
        def!("4.1.1", run_4_1_1),
        def!("A1", run_a1),
        def!("A2", run_a2),
        def!("B1", run_b1),
        def!("B2", run_b2),
        def!("B3", run_b3),
        def!("B4", run_b4),
        def!("C1", run_c1),
        def!("C2", run_c2),
        def!("I15", run_i15),
        def!("I16", run_i16),
    ]
}

/// All registered formula identifiers, in output order.
pub fn formula_ids() -> Vec<&'static str> {
    registry().iter().map(|d| d.id).collect()
}

fn matches_pattern(id: &str, pattern: &str) -> bool {
    if pattern == "*" {
        return true;
    }
    match pattern.strip_suffix('*') {
        Some(prefix) => id.starts_with(prefix),
        None => id == pattern,
    }
}

/// Per-sample acceptance: absolute `tol`, switching to `10 tol` relative
/// for direct values beyond magnitude 10.
fn sample_passes(residual: f64, direct: f64, tol: f64) -> bool {
    residual <= tol || (direct.abs() > 10.0 && residual <= 10.0 * tol * direct.abs())
}

/// Runs one formula's suite.
pub fn run_formula(
    id: &str,
    samples: u32,
    seed: u64,
    tol: f64,
    cfg: &EvalConfig,
) -> Result<CheckReport, CliError> {
    let defs = registry();
    let def = defs
        .iter()
        .find(|d| d.id == id)
        .ok_or_else(|| CliError::Usage(format!("unknown formula id {id:?}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(def.id));
    let mut max_residual = 0.0f64;
    let mut sum_residual = 0.0f64;
    let mut worst_inputs = Vec::new();
    let mut worst_ratio = -1.0f64;
    let mut case_counts: Vec<(Case, u32)> = Vec::new();
    let mut passed = true;

    for _ in 0..samples {
        let s = (def.run)(&mut rng, cfg).map_err(|e| CliError::Numerical(e.to_string()))?;
        max_residual = max_residual.max(s.residual);
        sum_residual += s.residual;
        if !sample_passes(s.residual, s.direct, tol) {
            passed = false;
        }
        let allowed = if s.direct.abs() > 10.0 {
            10.0 * tol * s.direct.abs()
        } else {
            tol
        };
        let ratio = s.residual / allowed;
        if ratio > worst_ratio {
            worst_ratio = ratio;
            worst_inputs = s.inputs.clone();
        }
        if let Some(c) = s.case {
            match case_counts.iter_mut().find(|(k, _)| *k == c) {
                Some((_, count)) => *count += 1,
                None => case_counts.push((c, 1)),
            }
        }
    }
    case_counts.sort_by_key(|(c, _)| format!("{c}").len());
    Ok(CheckReport {
        formula_id: def.id,
        samples,
        max_residual,
        mean_residual: if samples > 0 {
            sum_residual / samples as f64
        } else {
            0.0
        },
        worst_inputs,
        seed,
        case_counts,
        passed,
    })
}

/// Runs every formula matching `pattern` and writes one CSV line each.
/// Returns `ResidualFailure` if any suite failed its tolerance.
pub fn cmd_check<W: Write>(
    pattern: &str,
    samples: u32,
    seed: u64,
    tol: f64,
    cfg: &EvalConfig,
    out: &mut W,
) -> Result<(), CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if !(tol > 0.0) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let selected: Vec<&'static str> = formula_ids()
        .into_iter()
        .filter(|id| matches_pattern(id, pattern))
        .collect();
    if selected.is_empty() {
        return Err(CliError::Usage(format!(
            "pattern {pattern:?} matches no formula"
        )));
    }
    writeln!(
        out,
        "formula,samples,max_residual,mean_residual,worst_inputs,seed,cases,status"
    )
    .map_err(|e| CliError::Numerical(e.to_string()))?;
    let mut all_passed = true;
    for id in selected {
        let report = run_formula(id, samples, seed, tol, cfg)?;
        all_passed &= report.passed;
        let inputs = report
            .worst_inputs
            .iter()
            .map(|v| format!("{v:.9e}"))
            .collect::<Vec<_>>()
            .join(";");
        let cases = if report.case_counts.is_empty() {
            "-".to_string()
        } else {
            report
                .case_counts
                .iter()
                .map(|(c, k)| format!("{c}:{k}"))
                .collect::<Vec<_>>()
                .join(";")
        };
        writeln!(
            out,
            "{},{},{:.3e},{:.3e},{},{},{},{}",
            report.formula_id,
            report.samples,
            report.max_residual,
            report.mean_residual,
            inputs,
            report.seed,
            cases,
            if report.passed { "pass" } else { "fail" }
        )
        .map_err(|e| CliError::Numerical(e.to_string()))?;
    }
    if all_passed {
        Ok(())
    } else {
        Err(CliError::ResidualFailure)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_matching() {
        assert!(matches_pattern("2.2.10", "2.2.*"));
        assert!(!matches_pattern("2.1.3", "2.2.*"));
        assert!(matches_pattern("A1", "A1"));
        assert!(matches_pattern("3.4.5", "*"));
        assert!(!matches_pattern("A1", "A2"));
    }

    #[test]
    fn trivial_suite_passes() {
        let report = run_formula("A1", 10, 7, 1e-12, &EvalConfig::default()).unwrap();
        assert!(report.passed);
        assert!(report.max_residual <= 1e-12);
        assert!(report.mean_residual <= report.max_residual);
    }

    #[test]
    fn unknown_pattern_is_usage_error() {
        let err =
            cmd_check("9.9.9", 5, 1, 1e-9, &EvalConfig::default(), &mut Vec::new()).unwrap_err();
        assert!(matches!(err, CliError::Usage(_)));
    }

    #[test]
    fn deterministic_output() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        cmd_check("B3", 25, 42, 1e-9, &EvalConfig::default(), &mut a).unwrap();
        cmd_check("B3", 25, 42, 1e-9, &EvalConfig::default(), &mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn impossible_tolerance_fails() {
        let err = cmd_check(
            "2.1.3",
            20,
            3,
            1e-300,
            &EvalConfig::default(),
            &mut Vec::new(),
        )
        .unwrap_err();
        assert!(matches!(err, CliError::ResidualFailure));
    }

    #[test]
    fn case_counts_cover_all_four() {
        let report = run_formula("2.1.3", 400, 11, 1e-9, &EvalConfig::default()).unwrap();
        assert!(report.passed);
        assert_eq!(report.case_counts.len(), 4);
        for (_, count) in &report.case_counts {
            assert!(*count >= 20, "case undersampled: {:?}", report.case_counts);
        }
    }
}
