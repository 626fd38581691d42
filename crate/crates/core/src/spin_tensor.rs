// Copyright 2026 The spingroup Authors
// SPDX-License-Identifier: Apache-2.0

//! On-shell momenta, rest-frame spin axes and the spin tensor of a moving
//! fermion.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::clifford::{check_unit, exp_boost_closed, ComplexMatrix4, FourVector, GammaBasis, Vec3};
use crate::error::{Error, Result};

/// Unit 3-pseudovector: a rest-frame spin axis or the generating axis of a
/// little-group element.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitAxis(Vec3);

pub type RestSpinAxis = UnitAxis;

impl UnitAxis {
    /// Accepts `v` only if it already has unit norm.
    pub fn new(v: Vec3) -> Result<Self> {
        check_unit(&v, "axis")?;
        Ok(Self(v))
    }

    /// Normalizes any non-zero finite vector.
    pub fn normalized(v: Vec3) -> Result<Self> {
        if !v.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("axis"));
        }
        let n = v.norm();
        if n == 0.0 {
            return Err(Error::ZeroVector("axis"));
        }
        Ok(Self(v / n))
    }

    pub fn x() -> Self {
        Self(Vec3::x())
    }

    pub fn y() -> Self {
        Self(Vec3::y())
    }

    pub fn z() -> Self {
        Self(Vec3::z())
    }

    pub fn vector(&self) -> &Vec3 {
        &self.0
    }
}

impl std::ops::Neg for UnitAxis {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

/// On-shell momentum of a particle of mass `m`. Only the spatial part is
/// stored; the energy is always derived, so the mass shell holds by
/// construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourMomentum {
    mass: f64,
    p: Vec3,
}

impl FourMomentum {
    pub fn new(mass: f64, p: Vec3) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidMass(mass));
        }
        if !p.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("momentum"));
        }
        Ok(Self { mass, p })
    }

    pub fn at_rest(mass: f64) -> Result<Self> {
        Self::new(mass, Vec3::zeros())
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn spatial(&self) -> &Vec3 {
        &self.p
    }

    pub fn energy(&self) -> f64 {
        (self.mass * self.mass + self.p.norm_squared()).sqrt()
    }

    pub fn four_vector(&self) -> FourVector {
        FourVector {
            t: self.energy(),
            space: self.p,
        }
    }

    /// Spinor boost parameter `b` with `tanh(2b) = |p| / p0`.
    pub fn half_rapidity(&self) -> f64 {
        0.5 * (self.p.norm() / self.mass).asinh()
    }

    /// Speed `|p| / p0`.
    pub fn beta(&self) -> f64 {
        self.p.norm() / self.energy()
    }

    /// The spinor boost taking the rest frame to this momentum.
    pub fn boost_from_rest(&self, basis: &GammaBasis) -> ComplexMatrix4 {
        let norm = self.p.norm();
        if norm == 0.0 {
            return ComplexMatrix4::identity();
        }
        exp_boost_closed(&(self.p / norm), self.half_rapidity(), basis).expect("normalized momentum direction")
    }
}

/// Antisymmetric rank-2 tensor stored as a vector part
/// `s1 = (s_01, s_02, s_03)` and a pseudovector part `s2 = (s_23, s_31, s_12)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinTensor {
    pub s1: Vec3,
    pub s2: Vec3,
}

impl SpinTensor {
    pub fn at_rest(axis: &UnitAxis) -> Self {
        Self {
            s1: Vec3::zeros(),
            s2: *axis.vector(),
        }
    }

    /// Covariant component `s_{ab}`.
    pub fn component(&self, a: usize, b: usize) -> f64 {
        match (a, b) {
            (0, k @ 1..=3) => self.s1[k - 1],
            (k @ 1..=3, 0) => -self.s1[k - 1],
            (2, 3) => self.s2.x,
            (3, 2) => -self.s2.x,
            (3, 1) => self.s2.y,
            (1, 3) => -self.s2.y,
            (1, 2) => self.s2.z,
            (2, 1) => -self.s2.z,
            _ => 0.0,
        }
    }

    /// `s1 . s2`, zero for every tensor obtained by boosting a rest axis.
    pub fn orthogonality(&self) -> f64 {
        self.s1.dot(&self.s2)
    }

    /// `s2^2 - s1^2`, equal to one for a boosted unit axis.
    pub fn invariant(&self) -> f64 {
        self.s2.norm_squared() - self.s1.norm_squared()
    }

    /// `(1/2) s_{ab} sigma^{ab} = s1.s1 + s2.s2`.
    pub fn generator(&self, basis: &GammaBasis) -> ComplexMatrix4 {
        basis.bivector(&self.s1, &self.s2)
    }
}

/// Boosts a rest-frame axis to the frame where the particle has momentum `p`:
/// `s1 = p x a / m` and `s2 = (p0/m) a - p (p.a) / (m (m + p0))`.
pub fn boost_spin_axis(p: &FourMomentum, axis: &UnitAxis) -> SpinTensor {
    let m = p.mass();
    let p0 = p.energy();
    let pv = p.spatial();
    let a = axis.vector();
    SpinTensor {
        s1: pv.cross(a) / m,
        s2: a * (p0 / m) - pv * (pv.dot(a) / (m * (m + p0))),
    }
}

/// Dimensionless spin-projection operator `i (s1.s1 + s2.s2)`, eigenvalues
/// `+1, +1, -1, -1`.
pub fn spin_operator(s: &SpinTensor, basis: &GammaBasis) -> ComplexMatrix4 {
    s.generator(basis).scale_complex(Complex64::new(0.0, 1.0))
}

/// The moving-frame spin operator computed by conjugating the rest-frame one
/// with the boost, `B (i a.s2) B^-1`. Independent of [`boost_spin_axis`].
pub fn spin_tensor_by_conjugation(p: &FourMomentum, axis: &UnitAxis, basis: &GammaBasis) -> ComplexMatrix4 {
    let rest = spin_operator(&SpinTensor::at_rest(axis), basis);
    let boost = p.boost_from_rest(basis);
    let norm = p.spatial().norm();
    let inverse = if norm == 0.0 {
        ComplexMatrix4::identity()
    } else {
        exp_boost_closed(&(-p.spatial() / norm), p.half_rapidity(), basis).expect("normalized momentum direction")
    };
    boost * rest * inverse
}

/// Pauli-Lubanski pseudovector `lambda^a = eps^{abmn} p_b s_{mn}`, summed
/// over all index values (no symmetry factor).
pub fn pauli_lubanski(p: &FourMomentum, s: &SpinTensor, basis: &GammaBasis) -> FourVector {
    let p_lower = p.four_vector().covariant();
    let mut lambda = [0.0; 4];
    for (a, out) in lambda.iter_mut().enumerate() {
        for b in 0..4 {
            for mu in 0..4 {
                for nu in 0..4 {
                    let eps = basis.levi_civita(a, b, mu, nu);
                    if eps != 0.0 {
                        *out += eps * p_lower[b] * s.component(mu, nu);
                    }
                }
            }
        }
    }
    FourVector::new(lambda[0], lambda[1], lambda[2], lambda[3])
}

/// `p^a s_{ab} gamma^b`. Vanishes when `s` was built from the same momentum;
/// equals half the commutator `[p_a gamma^a, (1/2) s_{mn} sigma^{mn}]`.
pub fn momentum_spin_contraction(p: &FourMomentum, s: &SpinTensor, basis: &GammaBasis) -> ComplexMatrix4 {
    let p_upper = p.four_vector().contravariant();
    (0..4).fold(ComplexMatrix4::zeros(), |acc, b| {
        let coef: f64 = (0..4).map(|a| p_upper[a] * s.component(a, b)).sum();
        acc + basis.gamma(b).scale(coef)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{build_gamma_basis, slash};
    use std::f64::consts::SQRT_2;

    #[test]
    fn rest_frame_tensor_is_the_axis() {
        let axis = UnitAxis::normalized(Vec3::new(0.2, -0.4, 0.9)).unwrap();
        let s = boost_spin_axis(&FourMomentum::at_rest(1.3).unwrap(), &axis);
        assert_eq!(s.s1, Vec3::zeros());
        assert!((s.s2 - axis.vector()).amax() < 1e-15);
    }

    #[test]
    fn momentum_along_axis_leaves_tensor_unchanged() {
        for pz in [0.1, 1.0, 4.0, 30.0] {
            let p = FourMomentum::new(1.0, Vec3::new(0.0, 0.0, pz)).unwrap();
            let s = boost_spin_axis(&p, &UnitAxis::z());
            assert!(s.s1.amax() < 1e-15);
            assert!((s.s2 - Vec3::z()).amax() < 1e-13, "pz = {pz}: {:?}", s.s2);
        }
    }

    #[test]
    fn transverse_boost_example() {
        let m = 2.0;
        let p = FourMomentum::new(m, Vec3::new(m, 0.0, 0.0)).unwrap();
        assert!((p.energy() - SQRT_2 * m).abs() < 1e-15);
        let s = boost_spin_axis(&p, &UnitAxis::z());
        assert!((s.s1 - Vec3::new(0.0, -1.0, 0.0)).amax() < 1e-15);
        assert!((s.s2 - Vec3::new(0.0, 0.0, SQRT_2)).amax() < 1e-15);
        assert!(s.orthogonality().abs() < 1e-15);
        assert!((s.invariant() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rest_spin_operator_is_diag() {
        let basis = build_gamma_basis();
        let op = spin_operator(&SpinTensor::at_rest(&UnitAxis::z()), &basis);
        let c = |x: f64| Complex64::new(x, 0.0);
        let expected = ComplexMatrix4::from_diagonal([c(1.0), c(-1.0), c(1.0), c(-1.0)]);
        assert!(op.approx_eq(&expected, 1e-15));
        assert!(op.approx_eq(&basis.sigma(1, 2).scale_complex(Complex64::new(0.0, 1.0)), 0.0));
    }

    #[test]
    fn boosted_spin_operator_squares_to_one_and_is_traceless() {
        let basis = build_gamma_basis();
        let p = FourMomentum::new(1.0, Vec3::new(1.5, -2.0, 0.7)).unwrap();
        let axis = UnitAxis::normalized(Vec3::new(1.0, 1.0, -0.3)).unwrap();
        let op = spin_operator(&boost_spin_axis(&p, &axis), &basis);
        assert!((op * op).approx_eq(&ComplexMatrix4::identity(), 1e-13));
        assert!(op.trace().norm() < 1e-13);
        // +1 eigenspace has dimension tr((1 + op) / 2) = 2
        let plus = (ComplexMatrix4::identity() + op).scale(0.5);
        assert!((plus.trace().re - 2.0).abs() < 1e-13);
    }

    #[test]
    fn conjugation_matches_formula_for_transverse_boost() {
        let basis = build_gamma_basis();
        let p = FourMomentum::new(1.0, Vec3::new(1.0, 0.0, 0.0)).unwrap();
        let axis = UnitAxis::z();
        let by_formula = spin_operator(&boost_spin_axis(&p, &axis), &basis);
        let by_conj = spin_tensor_by_conjugation(&p, &axis, &basis);
        assert!(by_formula.approx_eq(&by_conj, 1e-12));

        let rest = FourMomentum::at_rest(1.0).unwrap();
        assert_eq!(
            spin_tensor_by_conjugation(&rest, &axis, &basis),
            spin_operator(&SpinTensor::at_rest(&axis), &basis)
        );
    }

    /// Brute-force contraction with an independently built Levi-Civita symbol.
    fn pauli_lubanski_oracle(p: &FourMomentum, s: &SpinTensor) -> [f64; 4] {
        fn parity(v: [usize; 4]) -> f64 {
            let mut v = v;
            let mut sign = 1.0;
            for i in 0..4 {
                while v[i] != i {
                    let j = v[i];
                    if v[j] == j {
                        return 0.0;
                    }
                    v.swap(i, j);
                    sign = -sign;
                }
            }
            sign
        }
        let pf = p.four_vector();
        let p_lower = [pf.t, -pf.space.x, -pf.space.y, -pf.space.z];
        let mut out = [0.0; 4];
        for (a, slot) in out.iter_mut().enumerate() {
            for (b, pb) in p_lower.iter().enumerate() {
                for mu in 0..4 {
                    for nu in 0..4 {
                        let idx = [a, b, mu, nu];
                        let distinct = (0..4).all(|i| (i + 1..4).all(|j| idx[i] != idx[j]));
                        if distinct {
                            *slot += parity(idx) * pb * s.component(mu, nu);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn pauli_lubanski_rest_frame_sign() {
        let basis = build_gamma_basis();
        let m = 1.5;
        let p = FourMomentum::at_rest(m).unwrap();
        let s = boost_spin_axis(&p, &UnitAxis::z());
        let lambda = pauli_lubanski(&p, &s, &basis);
        let oracle = pauli_lubanski_oracle(&p, &s);
        // eps^{3012} = -1 with eps^{0123} = +1
        assert_eq!(oracle, [0.0, 0.0, 0.0, -2.0 * m]);
        assert_eq!(lambda.t, 0.0);
        assert!((lambda.contravariant() - nalgebra::Vector4::from(oracle)).amax() < 1e-15);
    }

    #[test]
    fn pauli_lubanski_matches_oracle_and_is_orthogonal() {
        let basis = build_gamma_basis();
        let p = FourMomentum::new(1.0, Vec3::new(0.4, 2.2, -1.3)).unwrap();
        let axis = UnitAxis::normalized(Vec3::new(-0.3, 0.5, 0.8)).unwrap();
        let s = boost_spin_axis(&p, &axis);
        let lambda = pauli_lubanski(&p, &s, &basis);
        let oracle = nalgebra::Vector4::from(pauli_lubanski_oracle(&p, &s));
        assert!((lambda.contravariant() - oracle).amax() < 1e-13);
        assert!(p.four_vector().minkowski_dot(&lambda).abs() < 1e-12);

        let rest = FourMomentum::at_rest(1.0).unwrap();
        let lambda0 = pauli_lubanski(&rest, &SpinTensor::at_rest(&axis), &basis);
        assert!((lambda.minkowski_dot(&lambda) - lambda0.minkowski_dot(&lambda0)).abs() < 1e-11);
    }

    #[test]
    fn contraction_vanishes_for_matching_momentum_only() {
        let basis = build_gamma_basis();
        let axis = UnitAxis::normalized(Vec3::new(0.1, 0.9, -0.4)).unwrap();
        let rest = FourMomentum::at_rest(1.0).unwrap();
        let s_rest = boost_spin_axis(&rest, &axis);
        assert_eq!(momentum_spin_contraction(&rest, &s_rest, &basis).max_abs(), 0.0);

        let p = FourMomentum::new(1.0, Vec3::new(-1.1, 0.3, 2.5)).unwrap();
        let s = boost_spin_axis(&p, &axis);
        assert!(momentum_spin_contraction(&p, &s, &basis).max_abs() < 1e-13);

        let shifted = FourMomentum::new(1.0, p.spatial() + Vec3::x()).unwrap();
        assert!(momentum_spin_contraction(&shifted, &s, &basis).max_abs() > 1e-2);
    }

    #[test]
    fn contraction_is_half_the_commutator() {
        let basis = build_gamma_basis();
        let p = FourMomentum::new(1.0, Vec3::new(0.5, -0.2, 0.9)).unwrap();
        // deliberately inconsistent tensor so both sides are non-zero
        let s = SpinTensor {
            s1: Vec3::new(0.3, 0.1, -0.7),
            s2: Vec3::new(1.2, -0.4, 0.2),
        };
        let comm = slash(&p.four_vector(), &basis).commutator(&s.generator(&basis));
        let contraction = momentum_spin_contraction(&p, &s, &basis);
        assert!(contraction.max_abs() > 0.1);
        assert!(comm.approx_eq(&contraction.scale(2.0), 1e-13));
    }

    #[test]
    fn constructors_validate() {
        assert!(matches!(
            FourMomentum::new(0.0, Vec3::zeros()),
            Err(Error::InvalidMass(_))
        ));
        assert!(matches!(
            FourMomentum::new(-1.0, Vec3::zeros()),
            Err(Error::InvalidMass(_))
        ));
        assert!(matches!(
            FourMomentum::new(1.0, Vec3::new(f64::NAN, 0.0, 0.0)),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(UnitAxis::normalized(Vec3::zeros()), Err(Error::ZeroVector(_))));
        assert!(matches!(
            UnitAxis::new(Vec3::new(0.0, 0.0, 2.0)),
            Err(Error::NonUnitVector { .. })
        ));
    }
}
