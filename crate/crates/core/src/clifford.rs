// Copyright 2026 The spingroup Authors
// SPDX-License-Identifier: Apache-2.0

//! Complex 4x4 matrices, the Dirac-Pauli gamma basis and the exponentials
//! of its bivector generators.
//!
//! Conventions used throughout the crate:
//!
//! * metric signature `(+,-,-,-)`, Levi-Civita symbol with `eps^{0123} = +1`;
//! * units with `c = 1`;
//! * a spinor boost `exp(b n.sigma^{0k})` moves a particle at rest to speed
//!   `tanh(2b)` along `n`, so `b` is half the rapidity;
//! * `a.s1` is shorthand for `a_x sigma^{01} + a_y sigma^{02} + a_z sigma^{03}`
//!   and `a.s2` for `a_x sigma^{23} + a_y sigma^{31} + a_z sigma^{12}`.

use std::array::from_fn;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use nalgebra::{Matrix4, Vector3, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// Real 4x4 matrix acting on contravariant four-vectors.
pub type LorentzMatrix = Matrix4<f64>;

/// Raw 4-component complex column.
pub type Spinor = Vector4<Complex64>;

/// Norm tolerance used when a unit vector is required.
pub const UNIT_TOL: f64 = 1e-9;

/// Hard cap on the number of Taylor terms in [`exp_series`].
pub const SERIES_TERM_CAP: usize = 200;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub(crate) fn check_unit(v: &Vec3, what: &'static str) -> Result<()> {
    if !v.iter().all(|x| x.is_finite()) {
        return Err(Error::NonFinite(what));
    }
    let norm = v.norm();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NonUnitVector { what, norm });
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix4(Matrix4<Complex64>);

impl ComplexMatrix4 {
    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn zeros() -> Self {
        Self(Matrix4::zeros())
    }

    pub fn from_inner(m: Matrix4<Complex64>) -> Self {
        Self(m)
    }

    pub fn from_rows(rows: [[Complex64; 4]; 4]) -> Self {
        Self(Matrix4::from_fn(|i, j| rows[i][j]))
    }

    pub fn from_diagonal(d: [Complex64; 4]) -> Self {
        Self(Matrix4::from_fn(|i, j| if i == j { d[i] } else { ZERO }))
    }

    pub fn inner(&self) -> &Matrix4<Complex64> {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn dagger(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn scale(&self, k: f64) -> Self {
        Self(self.0.map(|z| z * k))
    }

    pub fn scale_complex(&self, k: Complex64) -> Self {
        Self(self.0 * k)
    }

    pub fn try_inverse(&self) -> Result<Self> {
        let det = self.0.determinant();
        if det.norm().is_nan() || det.norm() <= 1e-300 {
            return Err(Error::Singular);
        }
        self.0.try_inverse().map(Self).ok_or(Error::Singular)
    }

    pub fn apply(&self, v: &Spinor) -> Spinor {
        self.0 * v
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    /// `self * x * self^-1`.
    pub fn conjugate(&self, x: &Self) -> Result<Self> {
        Ok(*self * *x * self.try_inverse()?)
    }
}

impl fmt::Debug for ComplexMatrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix4[")?;
        for i in 0..4 {
            write!(f, "  ")?;
            for j in 0..4 {
                let z = self.0[(i, j)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for ComplexMatrix4 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl AddAssign for ComplexMatrix4 {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl Sub for ComplexMatrix4 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl Mul<f64> for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for ComplexMatrix4 {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        self.scale_complex(rhs)
    }
}

impl Neg for ComplexMatrix4 {
    type Output = Self;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

/// Four-vector with contravariant components `(t, x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourVector {
    pub t: f64,
    pub space: Vec3,
}

impl FourVector {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self {
            t,
            space: Vec3::new(x, y, z),
        }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    pub fn contravariant(&self) -> Vector4<f64> {
        Vector4::new(self.t, self.space.x, self.space.y, self.space.z)
    }

    pub fn covariant(&self) -> Vector4<f64> {
        Vector4::new(self.t, -self.space.x, -self.space.y, -self.space.z)
    }

    pub fn from_contravariant(v: &Vector4<f64>) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn minkowski_dot(&self, other: &Self) -> f64 {
        self.t * other.t - self.space.dot(&other.space)
    }

    pub fn transform(&self, lambda: &LorentzMatrix) -> Self {
        Self::from_contravariant(&(lambda * self.contravariant()))
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.space.iter().all(|x| x.is_finite())
    }
}

/// Gamma matrices in the Dirac-Pauli representation together with the
/// bivectors `sigma^{ab} = (gamma^a gamma^b - gamma^b gamma^a) / 2`, the
/// metric and the Levi-Civita symbol.
#[derive(Clone, Debug)]
pub struct GammaBasis {
    gamma: [ComplexMatrix4; 4],
    sigma: [[ComplexMatrix4; 4]; 4],
    metric: [f64; 4],
    levi_civita: [[[[i8; 4]; 4]; 4]; 4],
}

impl Default for GammaBasis {
    fn default() -> Self {
        Self::dirac_pauli()
    }
}

impl GammaBasis {
    /// The standard Dirac-Pauli representation, `gamma^0 = diag(1, 1, -1, -1)`
    /// and `gamma^k = [[0, pauli_k], [-pauli_k, 0]]`.
    pub fn dirac_pauli() -> Self {
        let pauli: [[[Complex64; 2]; 2]; 3] = [
            [[ZERO, ONE], [ONE, ZERO]],
            [[ZERO, -I], [I, ZERO]],
            [[ONE, ZERO], [ZERO, -ONE]],
        ];

        let gamma0 = ComplexMatrix4::from_diagonal([ONE, ONE, -ONE, -ONE]);
        let spatial = |k: usize| {
            let mut rows = [[ZERO; 4]; 4];
            for i in 0..2 {
                for j in 0..2 {
                    rows[i][j + 2] = pauli[k][i][j];
                    rows[i + 2][j] = -pauli[k][i][j];
                }
            }
            ComplexMatrix4::from_rows(rows)
        };
        let gamma = [gamma0, spatial(0), spatial(1), spatial(2)];

        let mut sigma = [[ComplexMatrix4::zeros(); 4]; 4];
        for a in 0..4 {
            for b in 0..4 {
                sigma[a][b] = gamma[a].commutator(&gamma[b]).scale(0.5);
            }
        }

        let levi_civita = from_fn(|a| from_fn(|b| from_fn(|c| from_fn(|d| permutation_sign([a, b, c, d])))));

        Self {
            gamma,
            sigma,
            metric: [1.0, -1.0, -1.0, -1.0],
            levi_civita,
        }
    }

    pub fn gamma(&self, mu: usize) -> &ComplexMatrix4 {
        &self.gamma[mu]
    }

    /// `gamma_mu = g_{mu mu} gamma^mu`.
    pub fn gamma_lower(&self, mu: usize) -> ComplexMatrix4 {
        self.gamma[mu].scale(self.metric[mu])
    }

    /// `sigma^{ab}` for any ordered pair; zero on the diagonal.
    pub fn sigma(&self, a: usize, b: usize) -> &ComplexMatrix4 {
        &self.sigma[a][b]
    }

    pub fn metric(&self, mu: usize) -> f64 {
        self.metric[mu]
    }

    pub fn levi_civita(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        f64::from(self.levi_civita[a][b][c][d])
    }

    /// `a.s1 = a_x sigma^{01} + a_y sigma^{02} + a_z sigma^{03}` (Hermitian).
    pub fn boost_generator(&self, a: &Vec3) -> ComplexMatrix4 {
        self.sigma[0][1].scale(a.x) + self.sigma[0][2].scale(a.y) + self.sigma[0][3].scale(a.z)
    }

    /// `a.s2 = a_x sigma^{23} + a_y sigma^{31} + a_z sigma^{12}` (anti-Hermitian).
    pub fn rotation_generator(&self, a: &Vec3) -> ComplexMatrix4 {
        self.sigma[2][3].scale(a.x) + self.sigma[3][1].scale(a.y) + self.sigma[1][2].scale(a.z)
    }

    /// `v1.s1 + v2.s2`, i.e. `(1/2) w_{ab} sigma^{ab}` for the antisymmetric
    /// tensor with `w_{0k} = v1_k` and `(w_{23}, w_{31}, w_{12}) = v2`.
    pub fn bivector(&self, v1: &Vec3, v2: &Vec3) -> ComplexMatrix4 {
        self.boost_generator(v1) + self.rotation_generator(v2)
    }

    /// Projections of a matrix onto the six bivectors, returned as the pair
    /// `(v1, v2)` such that the bivector part of `m` is `v1.s1 + v2.s2`.
    /// Imaginary parts are discarded.
    pub fn bivector_components(&self, m: &ComplexMatrix4) -> (Vec3, Vec3) {
        // sigma^{0k} squares to +1, sigma^{kl} to -1
        let coef = |a: usize, b: usize, sq: f64| {
            let s = &self.sigma[a][b];
            (*s * *m).trace().re / (4.0 * sq)
        };
        (
            Vec3::new(coef(0, 1, 1.0), coef(0, 2, 1.0), coef(0, 3, 1.0)),
            Vec3::new(coef(2, 3, -1.0), coef(3, 1, -1.0), coef(1, 2, -1.0)),
        )
    }
}

fn permutation_sign(idx: [usize; 4]) -> i8 {
    let mut sign = 1i8;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if idx[i] == idx[j] {
                return 0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

pub fn build_gamma_basis() -> GammaBasis {
    GammaBasis::dirac_pauli()
}

/// Feynman slash `p_a gamma^a = p^0 gamma^0 - p^k gamma^k`.
pub fn slash(p: &FourVector, basis: &GammaBasis) -> ComplexMatrix4 {
    let lower = p.covariant();
    (0..4).fold(ComplexMatrix4::zeros(), |acc, mu| {
        acc + basis.gamma(mu).scale(lower[mu])
    })
}

/// Taylor series of `exp(m)`, summed until the largest entry of the newest
/// term drops below `tol`. No scaling and squaring is applied, so inputs are
/// expected to have norm of order one.
pub fn exp_series(m: &ComplexMatrix4, tol: f64) -> Result<ComplexMatrix4> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    let mut sum = ComplexMatrix4::identity();
    let mut term = ComplexMatrix4::identity();
    for k in 1..SERIES_TERM_CAP {
        term = (term * *m).scale(1.0 / k as f64);
        sum += term;
        if !term.is_finite() {
            break;
        }
        if term.max_abs() < tol {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNotConverged { terms: SERIES_TERM_CAP })
}

/// `exp(b n.s1) = cosh(b) + sinh(b) n.s1`. Negative `b` gives the inverse boost.
pub fn exp_boost_closed(direction: &Vec3, b: f64, basis: &GammaBasis) -> Result<ComplexMatrix4> {
    check_unit(direction, "boost direction")?;
    if !b.is_finite() {
        return Err(Error::NonFinite("boost parameter"));
    }
    Ok(ComplexMatrix4::identity().scale(b.cosh()) + basis.boost_generator(direction).scale(b.sinh()))
}

/// `exp((theta/2) a.s2) = cos(theta/2) + sin(theta/2) a.s2`: a rotation by
/// `theta` about `a` (right-handed) in the vector representation.
pub fn exp_rotation_closed(axis: &Vec3, theta: f64, basis: &GammaBasis) -> Result<ComplexMatrix4> {
    check_unit(axis, "rotation axis")?;
    if !theta.is_finite() {
        return Err(Error::NonFinite("rotation angle"));
    }
    let half = 0.5 * theta;
    Ok(ComplexMatrix4::identity().scale(half.cos()) + basis.rotation_generator(axis).scale(half.sin()))
}

/// Lorentz matrix of a spinor transform: `S gamma_nu S^-1 = Lambda^mu_nu gamma_mu`,
/// so that `S (p_a gamma^a) S^-1 = (Lambda p)_a gamma^a`.
///
/// Entries are read off as `Lambda^mu_nu = Tr(gamma^mu S gamma_nu S^-1) / 4`.
pub fn vector_rep(s: &ComplexMatrix4, basis: &GammaBasis) -> Result<LorentzMatrix> {
    let s_inv = s.try_inverse()?;
    let mut lambda = LorentzMatrix::zeros();
    let mut residue: f64 = 0.0;
    for nu in 0..4 {
        let image = *s * basis.gamma_lower(nu) * s_inv;
        for mu in 0..4 {
            let t = (*basis.gamma(mu) * image).trace() * 0.25;
            lambda[(mu, nu)] = t.re;
            residue = residue.max(t.im.abs());
        }
    }
    let scale = lambda.iter().fold(1.0_f64, |acc, x| acc.max(x.abs()));
    if residue > 1e-9 * scale {
        return Err(Error::NotInSpinGroup(residue));
    }
    Ok(lambda)
}

/// `max |Lambda^T g Lambda - g|`.
pub fn metric_defect(lambda: &LorentzMatrix) -> f64 {
    let g = LorentzMatrix::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0));
    (lambda.transpose() * g * lambda - g).amax()
}

/// Speed `|v|` of a boost that takes the rest frame to `lambda` applied to
/// `(1, 0, 0, 0)`.
pub fn boost_speed_of(lambda: &LorentzMatrix) -> f64 {
    let col = lambda.column(0);
    Vec3::new(col[1], col[2], col[3]).norm() / col[0]
}
