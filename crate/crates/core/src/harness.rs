// Copyright 2026 The spingroup Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded property suite covering every invariant of the library.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`): draw `i` uses the generator
//! seeded with `seed` and switched to stream `i`, so each draw is independent
//! of evaluation order and of how many threads run the suite. Every property
//! sees the same draw for the same index.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bispinor::{boost_bispinor, dirac_residual, extract_phase, rest_bispinor, spin_eigen_residual};
use crate::clifford::{
    boost_speed_of, build_gamma_basis, exp_boost_closed, exp_rotation_closed, exp_series, metric_defect, vector_rep,
    ComplexMatrix4, GammaBasis, Vec3,
};
use crate::error::{Error, Result};
use crate::little_group::{
    axis_tensor, beta_from_param, boost_vector, closed_form_factors, closure_check, element, extract_rotation_angle,
    generator_defect, momentum_residual, rotation_angle, spin_conjugation_residual, FactorOrder, LittleGroupElement,
};
use crate::polar::polar_factor;
use crate::spin_tensor::{
    boost_spin_axis, momentum_spin_contraction, pauli_lubanski, spin_operator, spin_tensor_by_conjugation,
    FourMomentum, SpinTensor, UnitAxis,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Threshold for exact-construction checks.
pub const TOL_CONSTRUCTION: f64 = 1e-12;

/// Lower bound every positive control must clear.
pub const CONTROL_FLOOR: f64 = 1e-2;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;

/// Phase-law grid.
pub const PHASE_GRID: [f64; 6] = [0.0, FRAC_PI_2, PI, TAU, 3.0 * PI, 2.0 * TAU];

const SERIES_TOL: f64 = 1e-17;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub tol_strict: f64,
    pub tol_accum: f64,
    pub mass: f64,
    pub p_max_over_m: f64,
    /// Fan draws out over the rayon pool.
    pub parallel: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            trials: 200,
            tol_strict: 1e-10,
            tol_accum: 1e-9,
            mass: 1.0,
            p_max_over_m: 5.0,
            parallel: true,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidTrials);
        }
        for tol in [self.tol_strict, self.tol_accum] {
            if !(tol > 0.0 && tol.is_finite()) {
                return Err(Error::InvalidTolerance(tol));
            }
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(Error::InvalidMass(self.mass));
        }
        if !(self.p_max_over_m >= 0.0 && self.p_max_over_m.is_finite()) {
            return Err(Error::NonFinite("p_max_over_m"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    /// Passes when the largest residual is at most the threshold.
    #[serde(rename = "le")]
    AtMost,
    /// Positive control: passes when the smallest residual is at least the threshold.
    #[serde(rename = "ge")]
    AtLeast,
}

/// Input that produced a failing residual, with a command line replaying it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub draw: u64,
    pub mass: f64,
    pub momentum: [f64; 3],
    pub spin: [f64; 3],
    pub axis: [f64; 3],
    pub phi: f64,
    pub residual: f64,
    pub replay: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyRecord {
    pub id: String,
    pub anchor: String,
    pub trials: usize,
    pub comparison: Comparison,
    /// Largest residual for `le` properties, smallest for `ge` controls.
    pub worst_residual: f64,
    pub threshold: f64,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub version: String,
    pub config: SuiteConfig,
    pub properties: Vec<PropertyRecord>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn property(&self, id: &str) -> Option<&PropertyRecord> {
        self.properties.iter().find(|p| p.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "spingroup {} verify: seed={} trials={} tol_strict={:e} tol_accum={:e} mass={} p_max_over_m={}\n",
            self.version,
            self.config.seed,
            self.config.trials,
            self.config.tol_strict,
            self.config.tol_accum,
            self.config.mass,
            self.config.p_max_over_m
        );
        for p in &self.properties {
            let op = match p.comparison {
                Comparison::AtMost => "<=",
                Comparison::AtLeast => ">=",
            };
            out.push_str(&format!(
                "{} {:<34} {:<28} trials={:<4} worst={:.3e} {} {:.0e}\n",
                if p.pass { "PASS" } else { "FAIL" },
                p.id,
                p.anchor,
                p.trials,
                p.worst_residual,
                op,
                p.threshold
            ));
            if let Some(cx) = &p.counterexample {
                out.push_str(&format!("     counterexample draw {}: {}\n", cx.draw, cx.replay));
            }
        }
        out.push_str(if self.pass {
            "overall: PASS\n"
        } else {
            "overall: FAIL\n"
        });
        out
    }
}

/// Test-only mutations used to check that the suite detects broken formulas.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Flip the sign of the `p_perp` term in the boost-then-rotation factor.
    FlipBoostRotationSign,
}

/// Momentum with `|p|` uniform on `[0, p_max_over_m * m]` and direction
/// uniform on the sphere.
pub fn random_momentum<R: Rng + ?Sized>(rng: &mut R, cfg: &SuiteConfig) -> FourMomentum {
    let magnitude = cfg.p_max_over_m * cfg.mass * rng.random::<f64>();
    FourMomentum::new(cfg.mass, random_unit(rng) * magnitude).expect("finite momentum")
}

fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Vec3 {
    let z: f64 = 2.0 * rng.random::<f64>() - 1.0;
    let azimuth = TAU * rng.random::<f64>();
    let rho = (1.0 - z * z).max(0.0).sqrt();
    Vec3::new(rho * azimuth.cos(), rho * azimuth.sin(), z)
}

fn random_axis<R: Rng + ?Sized>(rng: &mut R) -> UnitAxis {
    UnitAxis::normalized(random_unit(rng)).expect("unit draw")
}

/// Generator for draw `index`.
pub fn draw_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Everything one trial needs, generated up front from `(seed, index)`.
#[derive(Clone, Debug)]
pub struct Draw {
    pub index: u64,
    pub momentum: FourMomentum,
    pub spin: UnitAxis,
    pub axis: UnitAxis,
    /// Unit axis orthogonal to `spin`.
    pub perp_axis: UnitAxis,
    /// Momentum with `|p| >= m/2`, for positive controls.
    pub fast_momentum: FourMomentum,
    pub phi: f64,
    pub phi2: f64,
    /// `phi` for factorization checks: every fourth draw within 1e-3 of pi,
    /// every fourth within 1e-3 of 2 pi, otherwise uniform on `[0, 4 pi)`.
    pub phi_factor: f64,
    pub boost_dir: Vec3,
    pub boost_b: f64,
    pub rot_axis: Vec3,
    pub rot_theta: f64,
    pub unit_interval: f64,
}

impl Draw {
    pub fn generate(cfg: &SuiteConfig, index: u64) -> Self {
        let mut rng = draw_rng(cfg.seed, index);
        let momentum = random_momentum(&mut rng, cfg);
        let spin = random_axis(&mut rng);
        let axis = random_axis(&mut rng);
        let helper = random_unit(&mut rng);
        let perp = helper - spin.vector() * helper.dot(spin.vector());
        let perp_axis = UnitAxis::normalized(perp).unwrap_or_else(|_| {
            let alt = spin.vector().cross(&Vec3::x());
            let alt = if alt.norm() < 0.5 {
                spin.vector().cross(&Vec3::y())
            } else {
                alt
            };
            UnitAxis::normalized(alt).expect("non-zero cross product")
        });
        let hi = (cfg.p_max_over_m * cfg.mass).max(0.5 * cfg.mass);
        let fast = 0.5 * cfg.mass + (hi - 0.5 * cfg.mass) * rng.random::<f64>();
        let fast_momentum = FourMomentum::new(cfg.mass, random_unit(&mut rng) * fast).expect("finite");
        let phi = 2.0 * TAU * rng.random::<f64>();
        let phi2 = 2.0 * TAU * rng.random::<f64>();
        let jitter = 2e-3 * rng.random::<f64>() - 1e-3;
        let phi_factor = match index % 4 {
            0 => PI + jitter,
            1 => TAU + jitter,
            _ => phi,
        };
        let boost_dir = random_unit(&mut rng);
        let boost_b = rng.random::<f64>();
        let rot_axis = random_unit(&mut rng);
        let rot_theta = 2.0 * TAU * rng.random::<f64>();
        let unit_interval = 2.0 * rng.random::<f64>() - 1.0;
        Self {
            index,
            momentum,
            spin,
            axis,
            perp_axis,
            fast_momentum,
            phi,
            phi2,
            phi_factor,
            boost_dir,
            boost_b,
            rot_axis,
            rot_theta,
            unit_interval,
        }
    }
}

struct Ctx {
    basis: GammaBasis,
    fault: Option<Fault>,
}

/// Residual of one trial plus the inputs worth reporting if it fails.
struct Sample {
    residual: f64,
    momentum: FourMomentum,
    spin: UnitAxis,
    axis: UnitAxis,
    phi: f64,
}

impl Sample {
    fn new(residual: f64, draw: &Draw, phi: f64) -> Self {
        Self {
            residual,
            momentum: draw.momentum,
            spin: draw.spin,
            axis: draw.axis,
            phi,
        }
    }

    fn with_momentum(mut self, p: FourMomentum) -> Self {
        self.momentum = p;
        self
    }

    fn with_axis(mut self, a: UnitAxis) -> Self {
        self.axis = a;
        self
    }
}

#[derive(Clone, Copy)]
enum Threshold {
    Strict,
    Accum,
    Fixed(f64),
}

#[derive(Clone, Copy)]
enum Trials {
    Once,
    PerDraw,
}

type Eval = fn(&Ctx, &Draw) -> Result<Sample>;

struct Property {
    id: &'static str,
    anchor: &'static str,
    trials: Trials,
    comparison: Comparison,
    threshold: Threshold,
    eval: Eval,
}

const fn prop(
    id: &'static str,
    anchor: &'static str,
    trials: Trials,
    comparison: Comparison,
    threshold: Threshold,
    eval: Eval,
) -> Property {
    Property {
        id,
        anchor,
        trials,
        comparison,
        threshold,
        eval,
    }
}

use Comparison::{AtLeast, AtMost};
use Threshold::{Accum, Fixed, Strict};
use Trials::{Once, PerDraw};

fn properties() -> Vec<Property> {
    vec![
        // gamma algebra
        prop(
            "gamma-anticommutation",
            "gamma-algebra",
            Once,
            AtMost,
            Fixed(TOL_CONSTRUCTION),
            eval_anticommutation,
        ),
        prop(
            "sigma-definition",
            "gamma-algebra",
            Once,
            AtMost,
            Fixed(TOL_CONSTRUCTION),
            eval_sigma_definition,
        ),
        prop(
            "gamma-hermiticity",
            "gamma-algebra",
            Once,
            AtMost,
            Fixed(TOL_CONSTRUCTION),
            eval_hermiticity,
        ),
        prop(
            "exp-boost-oracle",
            "boost-exponential",
            PerDraw,
            AtMost,
            Accum,
            eval_exp_boost,
        ),
        prop(
            "exp-rotation-oracle",
            "rotation-exponential",
            PerDraw,
            AtMost,
            Accum,
            eval_exp_rotation,
        ),
        prop(
            "exp-element-oracle",
            "element-exponential",
            PerDraw,
            AtMost,
            Accum,
            eval_exp_element,
        ),
        prop(
            "vector-rep-homomorphism",
            "vector-representation",
            PerDraw,
            AtMost,
            Accum,
            eval_homomorphism,
        ),
        prop(
            "vector-rep-metric",
            "vector-representation",
            PerDraw,
            AtMost,
            Accum,
            eval_metric,
        ),
        prop(
            "boost-speed-tanh-2b",
            "boost-speed",
            PerDraw,
            AtMost,
            Accum,
            eval_boost_speed_tanh,
        ),
        // spin tensor
        prop(
            "spin-tensor-invariants",
            "spin-tensor",
            PerDraw,
            AtMost,
            Strict,
            eval_spin_invariants,
        ),
        prop(
            "spin-operator-square",
            "generator-square",
            PerDraw,
            AtMost,
            Strict,
            eval_spin_square,
        ),
        prop(
            "spin-operator-spectrum",
            "spin-spectrum",
            PerDraw,
            AtMost,
            Strict,
            eval_spin_spectrum,
        ),
        prop(
            "spin-conjugation-oracle",
            "spin-tensor",
            PerDraw,
            AtMost,
            Accum,
            eval_conjugation_oracle,
        ),
        prop(
            "momentum-spin-commutator",
            "momentum-spin-commutator",
            PerDraw,
            AtMost,
            Strict,
            eval_commutator,
        ),
        prop(
            "momentum-spin-mismatch-control",
            "momentum-spin-commutator",
            PerDraw,
            AtLeast,
            Fixed(CONTROL_FLOOR),
            eval_commutator_control,
        ),
        prop(
            "pauli-lubanski-orthogonality",
            "pauli-lubanski",
            PerDraw,
            AtMost,
            Strict,
            eval_pl_orthogonality,
        ),
        prop(
            "pauli-lubanski-invariance",
            "pauli-lubanski",
            PerDraw,
            AtMost,
            Accum,
            eval_pl_invariance,
        ),
        // bispinor
        prop("dirac-residual", "dirac-equation", PerDraw, AtMost, Strict, eval_dirac),
        prop(
            "spin-eigen-residual",
            "spin-eigenvalue",
            PerDraw,
            AtMost,
            Strict,
            eval_spin_eigen,
        ),
        prop("phase-law", "phase-law", PerDraw, AtMost, Accum, eval_phase_law),
        prop(
            "phase-eigen-residual",
            "phase-law",
            PerDraw,
            AtMost,
            Strict,
            eval_phase_residual,
        ),
        prop(
            "rest-bispinor-determinism",
            "rest-bispinor",
            PerDraw,
            AtMost,
            Fixed(0.0),
            eval_determinism,
        ),
        // little group
        prop(
            "little-group-momentum",
            "little-group",
            PerDraw,
            AtMost,
            Accum,
            eval_momentum,
        ),
        prop(
            "spin-group-spin-invariance",
            "spin-group",
            PerDraw,
            AtMost,
            Strict,
            eval_spin_invariance,
        ),
        prop(
            "generic-axis-spin-control",
            "spin-group",
            PerDraw,
            AtLeast,
            Fixed(CONTROL_FLOOR),
            eval_spin_control,
        ),
        prop(
            "generator-square",
            "generator-square",
            PerDraw,
            AtMost,
            Strict,
            eval_generator_square,
        ),
        prop(
            "w2-squared-identity",
            "axis-tensor",
            PerDraw,
            AtMost,
            Strict,
            eval_w2_identity,
        ),
        prop(
            "factorization-product",
            "factorization",
            PerDraw,
            AtMost,
            Accum,
            eval_factor_product,
        ),
        prop(
            "factorization-polar-oracle",
            "factorization",
            PerDraw,
            AtMost,
            Accum,
            eval_factor_polar,
        ),
        prop(
            "rotation-factor-order-independence",
            "factorization",
            PerDraw,
            AtMost,
            Fixed(TOL_CONSTRUCTION),
            eval_rotation_order,
        ),
        prop(
            "boost-speed-symmetry",
            "boost-speed",
            PerDraw,
            AtMost,
            Fixed(TOL_CONSTRUCTION),
            eval_speed_symmetry,
        ),
        prop(
            "boost-beta-vector-rep",
            "boost-speed",
            PerDraw,
            AtMost,
            Accum,
            eval_beta_vector_rep,
        ),
        prop(
            "boost-direction-perp-w2",
            "boost-direction",
            PerDraw,
            AtMost,
            Strict,
            eval_direction_perp,
        ),
        prop(
            "rotation-angle-consistency",
            "rotation-angle",
            PerDraw,
            AtMost,
            Accum,
            eval_angle_consistency,
        ),
        prop(
            "one-parameter-closure",
            "one-parameter-subgroup",
            PerDraw,
            AtMost,
            Strict,
            eval_closure,
        ),
        prop(
            "spinor-period-4pi",
            "double-cover",
            PerDraw,
            AtMost,
            Strict,
            eval_spinor_period,
        ),
        prop(
            "vector-period-2pi",
            "double-cover",
            PerDraw,
            AtMost,
            Accum,
            eval_vector_period,
        ),
    ]
}

/// Ids of every property, in report order.
pub fn property_ids() -> Vec<&'static str> {
    properties().iter().map(|p| p.id).collect()
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    run_suite_with_fault(cfg, None)
}

#[doc(hidden)]
pub fn run_suite_with_fault(cfg: &SuiteConfig, fault: Option<Fault>) -> Result<SuiteReport> {
    cfg.validate()?;
    let ctx = Ctx {
        basis: build_gamma_basis(),
        fault,
    };
    let generate = |i: usize| Draw::generate(cfg, i as u64);
    let draws: Vec<Draw> = if cfg.parallel {
        (0..cfg.trials).into_par_iter().map(generate).collect()
    } else {
        (0..cfg.trials).map(generate).collect()
    };

    let records: Vec<PropertyRecord> = properties()
        .iter()
        .map(|prop| run_property(prop, &ctx, cfg, &draws))
        .collect();
    let pass = records.iter().all(|r| r.pass);
    Ok(SuiteReport {
        version: VERSION.to_string(),
        config: cfg.clone(),
        properties: records,
        pass,
    })
}

fn run_property(prop: &Property, ctx: &Ctx, cfg: &SuiteConfig, draws: &[Draw]) -> PropertyRecord {
    let used = match prop.trials {
        Once => &draws[..1],
        PerDraw => draws,
    };
    let eval = |d: &Draw| -> (u64, Option<Sample>) { (d.index, (prop.eval)(ctx, d).ok()) };
    let samples: Vec<(u64, Option<Sample>)> = if cfg.parallel {
        used.par_iter().map(eval).collect()
    } else {
        used.iter().map(eval).collect()
    };

    let threshold = match prop.threshold {
        Strict => cfg.tol_strict,
        Accum => cfg.tol_accum,
        Fixed(t) => t,
    };
    // an evaluation error counts as the worst possible outcome
    let score = |s: &Option<Sample>| match (s, prop.comparison) {
        (Some(s), _) if s.residual.is_finite() => s.residual,
        (_, AtMost) => f64::INFINITY,
        (_, AtLeast) => 0.0,
    };
    let passes = |r: f64| match prop.comparison {
        AtMost => r <= threshold,
        AtLeast => r >= threshold,
    };

    let mut worst = match prop.comparison {
        AtMost => 0.0,
        AtLeast => f64::INFINITY,
    };
    let mut counterexample = None;
    for (index, sample) in &samples {
        let r = score(sample);
        worst = match prop.comparison {
            AtMost => worst.max(r),
            AtLeast => worst.min(r),
        };
        if counterexample.is_none() && !passes(r) {
            let draw = &used[used.iter().position(|d| d.index == *index).unwrap_or(0)];
            counterexample = Some(counterexample_for(*index, sample.as_ref(), draw, r));
        }
    }
    PropertyRecord {
        id: prop.id.to_string(),
        anchor: prop.anchor.to_string(),
        trials: used.len(),
        comparison: prop.comparison,
        worst_residual: worst,
        threshold,
        pass: counterexample.is_none(),
        counterexample,
    }
}

fn counterexample_for(index: u64, sample: Option<&Sample>, draw: &Draw, residual: f64) -> Counterexample {
    let (p, spin, axis, phi) = match sample {
        Some(s) => (s.momentum, s.spin, s.axis, s.phi),
        None => (draw.momentum, draw.spin, draw.axis, draw.phi),
    };
    let m = p.mass();
    let v = |x: &Vec3| [x.x, x.y, x.z];
    let pm = p.spatial() / m;
    let replay = format!(
        "spingroup factorize --mass {m:?} --p {:?},{:?},{:?} --spin {:?},{:?},{:?} --phi {phi:?} --order br",
        pm.x,
        pm.y,
        pm.z,
        spin.vector().x,
        spin.vector().y,
        spin.vector().z,
    );
    Counterexample {
        draw: index,
        mass: m,
        momentum: v(p.spatial()),
        spin: v(spin.vector()),
        axis: v(axis.vector()),
        phi,
        residual,
        replay,
    }
}

// ---------------------------------------------------------------------------
// gamma algebra

fn eval_anticommutation(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let b = &ctx.basis;
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for c in 0..4 {
            let g = if a == c { 2.0 * b.metric(a) } else { 0.0 };
            let lhs = b.gamma(a).anticommutator(b.gamma(c));
            worst = worst.max(lhs.max_abs_diff(&ComplexMatrix4::identity().scale(g)));
        }
    }
    Ok(Sample::new(worst, d, 0.0))
}

/// Dirac-Pauli bivectors written out by hand: `sigma^{0k} = [[0, s_k], [s_k, 0]]`
/// and `sigma^{kl} = -i eps_{klm} diag(s_m, s_m)`.
fn explicit_sigma(a: usize, b: usize) -> ComplexMatrix4 {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let pauli = [[[z, one], [one, z]], [[z, -i], [i, z]], [[one, z], [z, -one]]];
    let block = |m: &[[Complex64; 2]; 2], off_diag: bool, k: Complex64| {
        let mut rows = [[z; 4]; 4];
        for r in 0..2 {
            for c in 0..2 {
                if off_diag {
                    rows[r][c + 2] = k * m[r][c];
                    rows[r + 2][c] = k * m[r][c];
                } else {
                    rows[r][c] = k * m[r][c];
                    rows[r + 2][c + 2] = k * m[r][c];
                }
            }
        }
        ComplexMatrix4::from_rows(rows)
    };
    match (a, b) {
        (x, y) if x == y => ComplexMatrix4::zeros(),
        (0, k) => block(&pauli[k - 1], true, one),
        (k, 0) => block(&pauli[k - 1], true, -one),
        (k, l) => {
            let m = 6 - k - l;
            let sign = if (k, l) == (1, 2) || (k, l) == (2, 3) || (k, l) == (3, 1) {
                1.0
            } else {
                -1.0
            };
            block(&pauli[m - 1], false, -i * sign)
        }
    }
}

fn eval_sigma_definition(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let b = &ctx.basis;
    let mut worst: f64 = 0.0;
    for a in 0..4 {
        for c in 0..4 {
            let from_gammas = b.gamma(a).commutator(b.gamma(c)).scale(0.5);
            worst = worst
                .max(b.sigma(a, c).max_abs_diff(&from_gammas))
                .max(b.sigma(a, c).max_abs_diff(&explicit_sigma(a, c)));
        }
    }
    Ok(Sample::new(worst, d, 0.0))
}

fn eval_hermiticity(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let b = &ctx.basis;
    let worst = (0..4)
        .map(|mu| {
            let sign = if mu == 0 { 1.0 } else { -1.0 };
            b.gamma(mu).dagger().max_abs_diff(&b.gamma(mu).scale(sign))
        })
        .fold(0.0, f64::max);
    Ok(Sample::new(worst, d, 0.0))
}

fn eval_exp_boost(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let b = &ctx.basis;
    let closed = exp_boost_closed(&d.boost_dir, d.boost_b, b)?;
    let series = exp_series(&b.boost_generator(&d.boost_dir).scale(d.boost_b), SERIES_TOL)?;
    Ok(Sample::new(closed.max_abs_diff(&series), d, 0.0))
}

fn eval_exp_rotation(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let b = &ctx.basis;
    let closed = exp_rotation_closed(&d.rot_axis, d.rot_theta, b)?;
    let series = exp_series(&b.rotation_generator(&d.rot_axis).scale(0.5 * d.rot_theta), SERIES_TOL)?;
    Ok(Sample::new(closed.max_abs_diff(&series), d, d.rot_theta))
}

fn eval_exp_element(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let axis = axis_tensor(&d.momentum, &d.axis);
    // keep |G phi / 2| of order one so the plain series stays accurate
    let phi = 4.0 * d.unit_interval / (axis.w1().norm() + axis.w2().norm());
    let el = element(&axis, phi, &ctx.basis)?;
    let series = exp_series(&axis.generator(&ctx.basis).scale(0.5 * phi), SERIES_TOL)?;
    Ok(Sample::new(el.matrix().max_abs_diff(&series), d, phi))
}

fn eval_homomorphism(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let b = &ctx.basis;
    let boost = exp_boost_closed(&d.boost_dir, d.boost_b, b)?;
    let rot = exp_rotation_closed(&d.rot_axis, d.rot_theta, b)?;
    let other = d.momentum.boost_from_rest(b);
    let mut worst: f64 = 0.0;
    for (s1, s2) in [(boost, rot), (rot, other), (boost, other)] {
        let lhs = vector_rep(&(s1 * s2), b)?;
        let rhs = vector_rep(&s1, b)? * vector_rep(&s2, b)?;
        worst = worst.max((lhs - rhs).amax());
    }
    Ok(Sample::new(worst, d, d.rot_theta))
}

fn eval_metric(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let b = &ctx.basis;
    let el = element(&axis_tensor(&d.momentum, &d.axis), d.phi, b)?;
    let transforms = [
        exp_boost_closed(&d.boost_dir, d.boost_b, b)?,
        exp_rotation_closed(&d.rot_axis, d.rot_theta, b)?,
        *el.matrix(),
    ];
    let mut worst: f64 = 0.0;
    for s in &transforms {
        worst = worst.max(metric_defect(&vector_rep(s, b)?));
    }
    Ok(Sample::new(worst, d, d.phi))
}

fn eval_boost_speed_tanh(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let lambda = vector_rep(&exp_boost_closed(&d.boost_dir, d.boost_b, &ctx.basis)?, &ctx.basis)?;
    let along = Vec3::new(lambda[(1, 0)], lambda[(2, 0)], lambda[(3, 0)]).dot(&d.boost_dir) / lambda[(0, 0)];
    let speed_err = (boost_speed_of(&lambda) - (2.0 * d.boost_b).tanh()).abs();
    let dir_err = (along - (2.0 * d.boost_b).tanh()).abs();
    Ok(Sample::new(speed_err.max(dir_err), d, 0.0))
}

// ---------------------------------------------------------------------------
// spin tensor

fn eval_spin_invariants(_: &Ctx, d: &Draw) -> Result<Sample> {
    let s = boost_spin_axis(&d.momentum, &d.spin);
    let r = s.orthogonality().abs().max((s.invariant() - 1.0).abs());
    Ok(Sample::new(r, d, 0.0))
}

fn eval_spin_square(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let op = spin_operator(&boost_spin_axis(&d.momentum, &d.spin), &ctx.basis);
    Ok(Sample::new((op * op).max_abs_diff(&ComplexMatrix4::identity()), d, 0.0))
}

/// `Sigma^2 = 1` and `tr Sigma = 0` force the spectrum `{+1, +1, -1, -1}`.
fn eval_spin_spectrum(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let op = spin_operator(&boost_spin_axis(&d.momentum, &d.spin), &ctx.basis);
    let plus = (ComplexMatrix4::identity() + op).scale(0.5);
    let minus = (ComplexMatrix4::identity() - op).scale(0.5);
    let r = (plus.trace() - 2.0).norm().max((minus.trace() - 2.0).norm());
    let square = (op * op).max_abs_diff(&ComplexMatrix4::identity());
    Ok(Sample::new(r.max(square), d, 0.0))
}

fn eval_conjugation_oracle(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let formula = spin_operator(&boost_spin_axis(&d.momentum, &d.spin), &ctx.basis);
    let conj = spin_tensor_by_conjugation(&d.momentum, &d.spin, &ctx.basis);
    Ok(Sample::new(formula.max_abs_diff(&conj), d, 0.0))
}

fn eval_commutator(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let s = boost_spin_axis(&d.momentum, &d.spin);
    let r = momentum_spin_contraction(&d.momentum, &s, &ctx.basis).max_abs();
    Ok(Sample::new(r, d, 0.0))
}

fn eval_commutator_control(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let s = boost_spin_axis(&d.momentum, &d.spin);
    let m = d.momentum.mass();
    let shifted = FourMomentum::new(m, d.momentum.spatial() + Vec3::x() * m)?;
    let r = momentum_spin_contraction(&shifted, &s, &ctx.basis).max_abs();
    Ok(Sample::new(r, d, 0.0).with_momentum(shifted))
}

fn eval_pl_orthogonality(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let s = boost_spin_axis(&d.momentum, &d.spin);
    let lambda = pauli_lubanski(&d.momentum, &s, &ctx.basis);
    Ok(Sample::new(
        d.momentum.four_vector().minkowski_dot(&lambda).abs(),
        d,
        0.0,
    ))
}

fn eval_pl_invariance(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let s = boost_spin_axis(&d.momentum, &d.spin);
    let lambda = pauli_lubanski(&d.momentum, &s, &ctx.basis);
    let rest = FourMomentum::at_rest(d.momentum.mass())?;
    let lambda0 = pauli_lubanski(&rest, &SpinTensor::at_rest(&d.spin), &ctx.basis);
    let r = (lambda.minkowski_dot(&lambda) - lambda0.minkowski_dot(&lambda0)).abs();
    Ok(Sample::new(r, d, 0.0))
}

// ---------------------------------------------------------------------------
// bispinor

fn eval_dirac(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let psi = boost_bispinor(&rest_bispinor(&d.spin, &ctx.basis)?, &d.momentum, &ctx.basis);
    Ok(Sample::new(dirac_residual(&psi, &d.momentum, &ctx.basis), d, 0.0))
}

fn eval_spin_eigen(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let psi = boost_bispinor(&rest_bispinor(&d.spin, &ctx.basis)?, &d.momentum, &ctx.basis);
    let s = boost_spin_axis(&d.momentum, &d.spin);
    Ok(Sample::new(spin_eigen_residual(&psi, &s, &ctx.basis), d, 0.0))
}

/// Worst `(|c - exp(-i phi/2)|, eigen residual)` over the phase grid.
fn phase_grid(ctx: &Ctx, d: &Draw) -> Result<(f64, f64, f64)> {
    let psi = boost_bispinor(&rest_bispinor(&d.spin, &ctx.basis)?, &d.momentum, &ctx.basis);
    let axis = axis_tensor(&d.momentum, &d.spin);
    let mut worst = (0.0, 0.0, 0.0);
    for &phi in &PHASE_GRID {
        let el = element(&axis, phi, &ctx.basis)?;
        let (c, r) = extract_phase(el.matrix(), &psi);
        let expected = Complex64::from_polar(1.0, -0.5 * phi);
        let err = (c - expected).norm();
        if err >= worst.0 {
            worst.0 = err;
            worst.2 = phi;
        }
        worst.1 = f64::max(worst.1, r);
    }
    Ok(worst)
}

fn eval_phase_law(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let (err, _, phi) = phase_grid(ctx, d)?;
    Ok(Sample::new(err, d, phi))
}

fn eval_phase_residual(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let (_, r, phi) = phase_grid(ctx, d)?;
    Ok(Sample::new(r, d, phi))
}

fn eval_determinism(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let a = rest_bispinor(&d.spin, &ctx.basis)?;
    let b = rest_bispinor(&d.spin, &build_gamma_basis())?;
    let same = a
        .components()
        .iter()
        .zip(b.components().iter())
        .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits());
    Ok(Sample::new(if same { 0.0 } else { 1.0 }, d, 0.0))
}

// ---------------------------------------------------------------------------
// little group

fn generic_element(ctx: &Ctx, d: &Draw, phi: f64) -> Result<LittleGroupElement> {
    element(&axis_tensor(&d.momentum, &d.axis), phi, &ctx.basis)
}

fn eval_momentum(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let el = generic_element(ctx, d, d.phi)?;
    Ok(Sample::new(momentum_residual(&el, &ctx.basis)?, d, d.phi))
}

fn eval_spin_invariance(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let el = element(&axis_tensor(&d.momentum, &d.spin), d.phi, &ctx.basis)?;
    let s = boost_spin_axis(&d.momentum, &d.spin);
    let r = spin_conjugation_residual(&el, &s, &ctx.basis)?;
    Ok(Sample::new(r, d, d.phi).with_axis(d.spin))
}

fn eval_spin_control(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let p = d.fast_momentum;
    let el = element(&axis_tensor(&p, &d.perp_axis), FRAC_PI_2, &ctx.basis)?;
    let s = boost_spin_axis(&p, &d.spin);
    let r = spin_conjugation_residual(&el, &s, &ctx.basis)?;
    Ok(Sample::new(r, d, FRAC_PI_2).with_momentum(p).with_axis(d.perp_axis))
}

fn eval_generator_square(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let r = generator_defect(&axis_tensor(&d.momentum, &d.axis), &ctx.basis)
        .max(generator_defect(&axis_tensor(&d.momentum, &d.spin), &ctx.basis));
    Ok(Sample::new(r, d, 0.0))
}

fn eval_w2_identity(_: &Ctx, d: &Draw) -> Result<Sample> {
    let a = axis_tensor(&d.momentum, &d.spin);
    let r = (a.w2().norm_squared() - (1.0 + a.w1().norm_squared())).abs();
    Ok(Sample::new(r, d, 0.0))
}

fn factor_sign(ctx: &Ctx, order: FactorOrder) -> f64 {
    match (order, ctx.fault) {
        (FactorOrder::BoostRotation, Some(Fault::FlipBoostRotationSign)) => -1.0,
        (FactorOrder::BoostRotation, _) => 1.0,
        (FactorOrder::RotationBoost, _) => -1.0,
    }
}

const ORDERS: [FactorOrder; 2] = [FactorOrder::BoostRotation, FactorOrder::RotationBoost];

fn eval_factor_product(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let el = generic_element(ctx, d, d.phi_factor)?;
    let mut worst: f64 = 0.0;
    for order in ORDERS {
        let f = closed_form_factors(&el, order, factor_sign(ctx, order), &ctx.basis);
        worst = worst.max(f.product().max_abs_diff(el.matrix()));
    }
    Ok(Sample::new(worst, d, d.phi_factor))
}

fn eval_factor_polar(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let el = generic_element(ctx, d, d.phi_factor)?;
    let mut worst: f64 = 0.0;
    for order in ORDERS {
        let closed = closed_form_factors(&el, order, factor_sign(ctx, order), &ctx.basis);
        let oracle = polar_factor(&el, order, &ctx.basis)?;
        worst = worst
            .max(closed.boost_factor.max_abs_diff(&oracle.boost_factor))
            .max(closed.rotation_factor.max_abs_diff(&oracle.rotation_factor));
    }
    Ok(Sample::new(worst, d, d.phi_factor))
}

/// The unitary factor left over after removing each closed-form boost from
/// `W` must be the same for both orders.
fn eval_rotation_order(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let el = generic_element(ctx, d, d.phi_factor)?;
    let b = &ctx.basis;
    let boost = |order| -> ComplexMatrix4 {
        let u = boost_vector(el.axis(), el.phi(), order);
        let rotation_free = 1.0 / (1.0 - u.norm_squared()).sqrt();
        (ComplexMatrix4::identity() + b.boost_generator(&u)).scale(rotation_free)
    };
    let r = boost(FactorOrder::BoostRotation).try_inverse()? * *el.matrix();
    let r_prime = *el.matrix() * boost(FactorOrder::RotationBoost).try_inverse()?;
    Ok(Sample::new(r.max_abs_diff(&r_prime), d, d.phi_factor))
}

fn eval_speed_symmetry(_: &Ctx, d: &Draw) -> Result<Sample> {
    let axis = axis_tensor(&d.momentum, &d.axis);
    let mut worst: f64 = 0.0;
    for phi in [d.phi, d.phi_factor] {
        let plus = boost_vector(&axis, phi, FactorOrder::BoostRotation).norm();
        let minus = boost_vector(&axis, phi, FactorOrder::RotationBoost).norm();
        worst = worst.max((plus - minus).abs());
    }
    Ok(Sample::new(worst, d, d.phi))
}

fn eval_beta_vector_rep(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let el = generic_element(ctx, d, d.phi)?;
    let mut worst: f64 = 0.0;
    for order in ORDERS {
        let f = closed_form_factors(&el, order, factor_sign(ctx, order), &ctx.basis);
        let lambda = vector_rep(&f.boost_factor, &ctx.basis)?;
        worst = worst.max((boost_speed_of(&lambda) - beta_from_param(f.boost_param)).abs());
    }
    Ok(Sample::new(worst, d, d.phi))
}

fn eval_direction_perp(_: &Ctx, d: &Draw) -> Result<Sample> {
    let axis = axis_tensor(&d.momentum, &d.axis);
    let mut worst: f64 = 0.0;
    for order in ORDERS {
        let u = boost_vector(&axis, d.phi, order);
        if u.norm() > 0.0 {
            worst = worst.max((u / u.norm()).dot(axis.w2()).abs());
        }
    }
    Ok(Sample::new(worst, d, d.phi))
}

fn eval_angle_consistency(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let el = generic_element(ctx, d, d.phi)?;
    let formula = rotation_angle(el.axis(), d.phi);
    let oracle = polar_factor(&el, FactorOrder::BoostRotation, &ctx.basis)?;
    let extracted = extract_rotation_angle(&oracle.rotation_factor, el.axis().w2(), d.phi, &ctx.basis);
    Ok(Sample::new((formula - extracted).abs(), d, d.phi))
}

fn eval_closure(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let r = closure_check(&d.momentum, &d.spin, d.phi, d.phi2, &ctx.basis)?;
    Ok(Sample::new(r, d, d.phi).with_axis(d.spin))
}

fn eval_spinor_period(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let w = *generic_element(ctx, d, d.phi)?.matrix();
    let half_turn = *generic_element(ctx, d, d.phi + TAU)?.matrix();
    let full_turn = *generic_element(ctx, d, d.phi + 2.0 * TAU)?.matrix();
    let r = (half_turn + w).max_abs().max(full_turn.max_abs_diff(&w));
    Ok(Sample::new(r, d, d.phi))
}

fn eval_vector_period(ctx: &Ctx, d: &Draw) -> Result<Sample> {
    let a = vector_rep(generic_element(ctx, d, d.phi)?.matrix(), &ctx.basis)?;
    let b = vector_rep(generic_element(ctx, d, d.phi + TAU)?.matrix(), &ctx.basis)?;
    Ok(Sample::new((a - b).amax(), d, d.phi))
}
