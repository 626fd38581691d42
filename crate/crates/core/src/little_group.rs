// Copyright 2026 The spingroup Authors
// SPDX-License-Identifier: Apache-2.0

//! Elements of the little group of a massive momentum, generated by an
//! arbitrary boosted axis, and their factorization into a Hermitian boost
//! and a unitary rotation.
//!
//! For an axis tensor `(w1, w2)` the generator `G = w1.s1 + w2.s2` squares to
//! `-1`, so `W(phi) = exp(G phi/2) = cos(phi/2) + G sin(phi/2)`. With
//! `c = cos(phi/2)`, `s = sin(phi/2)` and `D = c^2 + w2^2 s^2` the factors are
//!
//! ```text
//! R  = (c + s w2.s2) / sqrt(D)
//! B  = sqrt(D) (1 + u.s1),   u = (s c w1 +/- s^2 (p_perp / p0) w2^2) / D
//! ```
//!
//! with `W = B R` for the `+` sign and `W = R B'` for the `-` sign. These are
//! the `tan(phi/2)` expressions multiplied through by `cos^2(phi/2)`, finite
//! for every `phi`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::clifford::{vector_rep, ComplexMatrix4, GammaBasis, Vec3};
use crate::error::{Error, Result};
use crate::spin_tensor::{boost_spin_axis, spin_operator, FourMomentum, SpinTensor, UnitAxis};

/// Allowed `|G^2 + 1|` when building an element.
const GENERATOR_TOL: f64 = 1e-8;

/// Allowed mismatch between the closed-form product and the element.
const FACTOR_TOL: f64 = 1e-8;

/// Below this `|u|` the boost direction is roundoff and is reported as zero.
pub const DIRECTION_FLOOR: f64 = 1e-14;

/// Boosted generating axis `(w1, w2)` together with what produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisTensor {
    tensor: SpinTensor,
    generator: UnitAxis,
    momentum: FourMomentum,
}

impl AxisTensor {
    pub fn w1(&self) -> &Vec3 {
        &self.tensor.s1
    }

    pub fn w2(&self) -> &Vec3 {
        &self.tensor.s2
    }

    pub fn tensor(&self) -> &SpinTensor {
        &self.tensor
    }

    pub fn generating_axis(&self) -> &UnitAxis {
        &self.generator
    }

    pub fn momentum(&self) -> &FourMomentum {
        &self.momentum
    }

    /// Non-hermitian generator `G = w1.s1 + w2.s2` with `G^2 = -1`.
    pub fn generator(&self, basis: &GammaBasis) -> ComplexMatrix4 {
        self.tensor.generator(basis)
    }
}

/// Same construction as [`boost_spin_axis`], applied to an arbitrary axis.
pub fn axis_tensor(p: &FourMomentum, axis: &UnitAxis) -> AxisTensor {
    AxisTensor {
        tensor: boost_spin_axis(p, axis),
        generator: *axis,
        momentum: *p,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LittleGroupElement {
    w: ComplexMatrix4,
    phi: f64,
    axis: AxisTensor,
}

impl LittleGroupElement {
    pub fn matrix(&self) -> &ComplexMatrix4 {
        &self.w
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn axis(&self) -> &AxisTensor {
        &self.axis
    }

    pub fn momentum(&self) -> &FourMomentum {
        &self.axis.momentum
    }
}

/// `max |G^2 + 1|`.
pub fn generator_defect(axis: &AxisTensor, basis: &GammaBasis) -> f64 {
    let g = axis.generator(basis);
    (g * g + ComplexMatrix4::identity()).max_abs()
}

pub fn element(axis: &AxisTensor, phi: f64, basis: &GammaBasis) -> Result<LittleGroupElement> {
    if !phi.is_finite() {
        return Err(Error::NonFinite("phi"));
    }
    let defect = generator_defect(axis, basis);
    let scale = axis.w2().norm_squared().max(1.0);
    if defect.is_nan() || defect > GENERATOR_TOL * scale {
        return Err(Error::BadGenerator(defect));
    }
    let half = 0.5 * phi;
    let w = ComplexMatrix4::identity().scale(half.cos()) + axis.generator(basis).scale(half.sin());
    Ok(LittleGroupElement { w, phi, axis: *axis })
}

/// Element of the spin group: the little-group element whose generating axis
/// is the particle's own rest-frame spin axis.
pub fn spin_group_element(
    p: &FourMomentum,
    spin: &UnitAxis,
    phi: f64,
    basis: &GammaBasis,
) -> Result<LittleGroupElement> {
    element(&axis_tensor(p, spin), phi, basis)
}

/// `|Lambda(W) p - p| / |p|`, Euclidean norms over the four components.
pub fn momentum_residual(el: &LittleGroupElement, basis: &GammaBasis) -> Result<f64> {
    let lambda = vector_rep(&el.w, basis)?;
    let p = el.momentum().four_vector().contravariant();
    Ok((lambda * p - p).norm() / p.norm())
}

/// `max |W Sigma(s) W^-1 - Sigma(s)|`.
pub fn spin_conjugation_residual(el: &LittleGroupElement, s: &SpinTensor, basis: &GammaBasis) -> Result<f64> {
    let sigma = spin_operator(s, basis);
    Ok(el.w.conjugate(&sigma)?.max_abs_diff(&sigma))
}

/// `max |W(phi1) W(phi2) - W(phi1 + phi2)|` for the spin group of `(p, spin)`.
pub fn closure_check(p: &FourMomentum, spin: &UnitAxis, phi1: f64, phi2: f64, basis: &GammaBasis) -> Result<f64> {
    let axis = axis_tensor(p, spin);
    let a = element(&axis, phi1, basis)?;
    let b = element(&axis, phi2, basis)?;
    let ab = element(&axis, phi1 + phi2, basis)?;
    Ok((a.w * b.w).max_abs_diff(&ab.w))
}

/// Component of `p` perpendicular to `w2`.
pub fn p_perp(p: &FourMomentum, axis: &AxisTensor) -> Vec3 {
    let w2 = axis.w2();
    let pv = p.spatial();
    pv - w2 * (w2.dot(pv) / w2.norm_squared())
}

/// Product order of a factorization, read left to right as written:
/// `BoostRotation` is `W = B R`, `RotationBoost` is `W = R B'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorOrder {
    #[serde(rename = "br")]
    BoostRotation,
    #[serde(rename = "rb")]
    RotationBoost,
}

impl FactorOrder {
    pub fn label(&self) -> &'static str {
        match self {
            Self::BoostRotation => "br",
            Self::RotationBoost => "rb",
        }
    }

    /// Sign in front of the `p_perp` term of the boost vector.
    fn sign(&self) -> f64 {
        match self {
            Self::BoostRotation => 1.0,
            Self::RotationBoost => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Factorization {
    pub order: FactorOrder,
    /// Hermitian factor `cosh(b) + sinh(b) n.s1`.
    pub boost_factor: ComplexMatrix4,
    /// Unitary factor `cos(r) + sin(r) w2_hat.s2`.
    pub rotation_factor: ComplexMatrix4,
    /// Rotation angle `2r` about `w2` in the vector representation.
    pub rotation_angle_2r: f64,
    /// `|u| = tanh(b)`.
    pub boost_param: f64,
    /// `u / |u|`; the zero vector when `|u| < DIRECTION_FLOOR`.
    pub boost_direction: Vec3,
}

impl Factorization {
    pub fn product(&self) -> ComplexMatrix4 {
        match self.order {
            FactorOrder::BoostRotation => self.boost_factor * self.rotation_factor,
            FactorOrder::RotationBoost => self.rotation_factor * self.boost_factor,
        }
    }

    /// Physical speed of the boost, `tanh(2b) = 2|u| / (1 + |u|^2)`.
    pub fn boost_beta(&self) -> f64 {
        beta_from_param(self.boost_param)
    }
}

pub fn beta_from_param(u: f64) -> f64 {
    2.0 * u / (1.0 + u * u)
}

struct HalfAngle {
    c: f64,
    s: f64,
    d: f64,
}

fn half_angle(axis: &AxisTensor, phi: f64) -> HalfAngle {
    let half = 0.5 * phi;
    let (s, c) = half.sin_cos();
    HalfAngle {
        c,
        s,
        d: c * c + axis.w2().norm_squared() * s * s,
    }
}

fn boost_vector_signed(axis: &AxisTensor, phi: f64, sign: f64) -> Vec3 {
    let HalfAngle { c, s, d } = half_angle(axis, phi);
    let p = axis.momentum();
    let drift = p_perp(p, axis) * (axis.w2().norm_squared() / p.energy());
    (axis.w1() * (s * c) + drift * (sign * s * s)) / d
}

/// Boost vector `u` of the Hermitian factor for the given product order.
pub fn boost_vector(axis: &AxisTensor, phi: f64, order: FactorOrder) -> Vec3 {
    boost_vector_signed(axis, phi, order.sign())
}

/// The same boost vector written with `w1 x w2` in place of
/// `(p_perp / p0) w2^2`, which carries the opposite sign.
pub fn boost_vector_cross_form(axis: &AxisTensor, phi: f64, order: FactorOrder) -> Vec3 {
    let HalfAngle { c, s, d } = half_angle(axis, phi);
    let cross = axis.w1().cross(axis.w2());
    (axis.w1() * (s * c) - cross * (order.sign() * s * s)) / d
}

/// `(|u|, beta)` for the boost-then-rotation order. The other order has the
/// same magnitude.
pub fn boost_speed(axis: &AxisTensor, phi: f64) -> (f64, f64) {
    let u = boost_vector(axis, phi, FactorOrder::BoostRotation).norm();
    (u, beta_from_param(u))
}

fn unwrap_near(angle: f64, target: f64) -> f64 {
    angle + TAU * ((target - angle) / TAU).round()
}

/// Rotation angle `2r = 2 arctan(|w2| tan(phi/2))`, continued through
/// `phi = pi` so that it grows monotonically with `phi` and reaches `2 pi`
/// at `phi = 2 pi`.
pub fn rotation_angle(axis: &AxisTensor, phi: f64) -> f64 {
    let half = 0.5 * phi;
    let (s, c) = half.sin_cos();
    let r = (axis.w2().norm() * s).atan2(c);
    2.0 * unwrap_near(r, half)
}

/// Angle `2r` of a unitary factor `cos(r) + sin(r) a.s2`, measured about
/// `axis_dir` and continued to lie near `phi_hint`.
pub fn extract_rotation_angle(rotation: &ComplexMatrix4, axis_dir: &Vec3, phi_hint: f64, basis: &GammaBasis) -> f64 {
    let scalar = rotation.trace().re / 4.0;
    let (_, v2) = basis.bivector_components(rotation);
    let dir = axis_dir / axis_dir.norm();
    let r = v2.dot(&dir).atan2(scalar);
    2.0 * unwrap_near(r, 0.5 * phi_hint)
}

/// `(|u|, direction)` of a Hermitian factor `cosh(b) + sinh(b) n.s1`.
pub fn extract_boost(boost: &ComplexMatrix4, basis: &GammaBasis) -> (f64, Vec3) {
    let cosh_b = boost.trace().re / 4.0;
    let (v1, _) = basis.bivector_components(boost);
    let sinh_b = v1.norm();
    let param = sinh_b / cosh_b;
    if param < DIRECTION_FLOOR {
        return (param, Vec3::zeros());
    }
    (param, v1 / sinh_b)
}

pub(crate) fn closed_form_factors(
    el: &LittleGroupElement,
    order: FactorOrder,
    sign: f64,
    basis: &GammaBasis,
) -> Factorization {
    let axis = &el.axis;
    let HalfAngle { c, s, d } = half_angle(axis, el.phi);
    let root = d.sqrt();
    let id = ComplexMatrix4::identity();

    let rotation_factor = (id.scale(c) + basis.rotation_generator(axis.w2()).scale(s)).scale(1.0 / root);
    let u = boost_vector_signed(axis, el.phi, sign);
    let boost_factor = (id + basis.boost_generator(&u)).scale(root);

    let param = u.norm();
    Factorization {
        order,
        boost_factor,
        rotation_factor,
        rotation_angle_2r: rotation_angle(axis, el.phi),
        boost_param: param,
        boost_direction: if param >= DIRECTION_FLOOR {
            u / param
        } else {
            Vec3::zeros()
        },
    }
}

/// Closed-form factorization of `el` in the requested order.
pub fn factor(el: &LittleGroupElement, order: FactorOrder, basis: &GammaBasis) -> Result<Factorization> {
    let f = closed_form_factors(el, order, order.sign(), basis);
    let mismatch = f.product().max_abs_diff(&el.w);
    if mismatch.is_nan() || mismatch > FACTOR_TOL * el.w.max_abs().max(1.0) {
        return Err(Error::FactorMismatch(mismatch));
    }
    Ok(f)
}

/// Whether `phi` lies in the canonical spinor period `[0, 4 pi)`.
pub fn in_canonical_range(phi: f64) -> bool {
    (0.0..2.0 * TAU).contains(&phi)
}

/// `phi` reduced into `[0, 4 pi)`.
pub fn canonical_phi(phi: f64) -> f64 {
    phi.rem_euclid(4.0 * PI)
}
