//! Bound states of a spin-1/2 particle in an Aharonov–Bohm flux tube with an
//! attractive Coulomb potential, observed from a rotating frame.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only numerics:
//!
//! * [`specfun`]: Gamma, reciprocal Gamma and the Kummer function ₁F₁.
//! * [`model`]: physical parameters, flux bookkeeping and the singular sector.
//! * [`spectrum`]: closed-form energies for the regular and irregular
//!   boundary conditions, κ/energy conversion and degeneracy grouping.
//! * [`secular`]: the general self-adjoint-extension condition and its roots.
//! * [`wavefunction`]: radial solutions, boundary values, norms and nodes.
//! * [`oracle`]: an independent finite-difference eigensolver for the radial
//!   operator, used to cross-check everything above.
//!
//! IO, scans and the command-line driver live in the `abspin` crate.
#![no_std]
#![warn(missing_debug_implementations)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod model;
pub mod oracle;
pub mod secular;
pub mod specfun;
pub mod spectrum;
pub mod wavefunction;

pub use error::{Error, Result};
pub use model::{
    admissible_m, decompose_flux, effective_j, is_singular_sector, Branch, EffectiveMomentum,
    FluxConfig, PhysicalParams, QuantumState, Spin,
};
pub use secular::{ExtensionParam, KummerParams, SecularRoot, SolutionCoefficients};
pub use spectrum::{DegeneracyGroup, Provenance, SpectralResult};
