// Copyright 2026 The spingroup Authors
// SPDX-License-Identifier: Apache-2.0

//! Numeric polar decomposition of little-group elements, used as an oracle
//! for the closed-form factors in [`crate::little_group`].

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::clifford::{ComplexMatrix4, GammaBasis};
use crate::error::{Error, Result};
use crate::little_group::{extract_boost, extract_rotation_angle, FactorOrder, Factorization, LittleGroupElement};

/// Principal square root of a Hermitian positive-definite matrix through its
/// eigendecomposition.
pub fn hermitian_sqrt(m: &ComplexMatrix4) -> Result<ComplexMatrix4> {
    let eig = m.inner().symmetric_eigen();
    if eig.eigenvalues.iter().any(|&l| l.is_nan() || l <= 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let roots = Vector4::from_iterator(eig.eigenvalues.iter().map(|l| Complex64::new(l.sqrt(), 0.0)));
    let v = &eig.eigenvectors;
    let root: Matrix4<Complex64> = v * Matrix4::from_diagonal(&roots) * v.adjoint();
    Ok(ComplexMatrix4::from_inner(root))
}

/// `W = H U` with `H = (W W^dagger)^(1/2)` for [`FactorOrder::BoostRotation`],
/// or `W = U H'` with `H' = (W^dagger W)^(1/2)` for
/// [`FactorOrder::RotationBoost`].
pub fn polar_factor(el: &LittleGroupElement, order: FactorOrder, basis: &GammaBasis) -> Result<Factorization> {
    let w = el.matrix();
    let (boost_factor, rotation_factor) = match order {
        FactorOrder::BoostRotation => {
            let h = hermitian_sqrt(&(*w * w.dagger()))?;
            (h, h.try_inverse()? * *w)
        }
        FactorOrder::RotationBoost => {
            let h = hermitian_sqrt(&(w.dagger() * *w))?;
            (h, *w * h.try_inverse()?)
        }
    };
    let (boost_param, boost_direction) = extract_boost(&boost_factor, basis);
    let rotation_angle_2r = extract_rotation_angle(&rotation_factor, el.axis().w2(), el.phi(), basis);
    Ok(Factorization {
        order,
        boost_factor,
        rotation_factor,
        rotation_angle_2r,
        boost_param,
        boost_direction,
    })
}
