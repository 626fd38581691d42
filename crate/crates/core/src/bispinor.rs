// Copyright 2026 The spingroup Authors
// SPDX-License-Identifier: Apache-2.0

//! Positive-energy spin eigen-bispinors at rest and in motion.

use num_complex::Complex64;

use crate::clifford::{slash, ComplexMatrix4, GammaBasis, Spinor};
use crate::error::{Error, Result};
use crate::spin_tensor::{spin_operator, FourMomentum, SpinTensor, UnitAxis};

/// A seed is used once its projection has at least this norm. The projector
/// has rank one, so one of the first two seeds always clears it.
const SEED_ACCEPT: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bispinor(Spinor);

impl Bispinor {
    pub fn new(components: [Complex64; 4]) -> Self {
        Self(Spinor::from(components))
    }

    pub fn from_spinor(v: Spinor) -> Self {
        Self(v)
    }

    pub fn spinor(&self) -> &Spinor {
        &self.0
    }

    pub fn components(&self) -> [Complex64; 4] {
        [self.0[0], self.0[1], self.0[2], self.0[3]]
    }

    /// `sqrt(psi^dagger psi)`.
    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }
}

/// Rest-frame bispinor with `gamma^0 psi = psi` and `(i a.s2) psi = psi`,
/// obtained by projecting the canonical basis vectors in order. The result is
/// normalized and its first largest-modulus component is real and positive.
pub fn rest_bispinor(axis: &UnitAxis, basis: &GammaBasis) -> Result<Bispinor> {
    let id = ComplexMatrix4::identity();
    let sigma = spin_operator(&SpinTensor::at_rest(axis), basis);
    let projector = ((id + *basis.gamma(0)) * (id + sigma)).scale(0.25);

    for k in 0..4 {
        let mut seed = Spinor::zeros();
        seed[k] = Complex64::new(1.0, 0.0);
        let image = projector.apply(&seed);
        let norm = image.norm();
        if norm >= SEED_ACCEPT {
            return Ok(Bispinor(fix_phase(image / Complex64::new(norm, 0.0))));
        }
    }
    Err(Error::DegenerateProjector)
}

fn fix_phase(v: Spinor) -> Spinor {
    let mut lead = 0;
    for k in 1..4 {
        if v[k].norm() > v[lead].norm() {
            lead = k;
        }
    }
    let z = v[lead];
    if z.norm() == 0.0 {
        return v;
    }
    v * (z.conj() / z.norm())
}

/// `B(p) psi0`: the boosted bispinor. No renormalization is applied.
pub fn boost_bispinor(psi0: &Bispinor, p: &FourMomentum, basis: &GammaBasis) -> Bispinor {
    Bispinor(p.boost_from_rest(basis).apply(&psi0.0))
}

/// `|(p_a gamma^a - m) psi|`.
pub fn dirac_residual(psi: &Bispinor, p: &FourMomentum, basis: &GammaBasis) -> f64 {
    let op = slash(&p.four_vector(), basis) - ComplexMatrix4::identity().scale(p.mass());
    op.apply(&psi.0).norm()
}

/// `|(Sigma(s) - 1) psi|`.
pub fn spin_eigen_residual(psi: &Bispinor, s: &SpinTensor, basis: &GammaBasis) -> f64 {
    let op = spin_operator(s, basis) - ComplexMatrix4::identity();
    op.apply(&psi.0).norm()
}

/// Returns `(c, r)` with `c = <psi|W|psi> / <psi|psi>` and
/// `r = |W psi - c psi| / |psi|`. A small `r` certifies that `psi` is an
/// eigenvector of `W` with eigenvalue `c`.
pub fn extract_phase(w: &ComplexMatrix4, psi: &Bispinor) -> (Complex64, f64) {
    let image = w.apply(&psi.0);
    let norm_sq = psi.0.norm_squared();
    let c = psi.0.dotc(&image) / norm_sq;
    let r = (image - psi.0 * c).norm() / norm_sq.sqrt();
    (c, r)
}
