// Copyright 2026 The spingroup Authors
// SPDX-License-Identifier: Apache-2.0

//! Numerical Clifford algebra for massive spin-1/2 fermions: Dirac
//! bispinors, spin tensors, and the one-parameter subgroup of the little
//! group that preserves both the momentum and the spin projection operator.

pub mod bispinor;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod harness;
pub mod little_group;
pub mod polar;
pub mod spin_tensor;

pub use error::{Error, Result};
