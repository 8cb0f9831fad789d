//! Physical parameters and quantum-number bookkeeping.

use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Mass, ħ, Coulomb strength η and rotation frequency Ω.
///
/// The defaults are atomic units (m_e = ħ = η = 1) with no rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    mass: f64,
    hbar: f64,
    eta: f64,
    omega: f64,
}

impl PhysicalParams {
    pub fn new(mass: f64, hbar: f64, eta: f64, omega: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::InvalidParameter {
                name: "mass",
                value: mass,
            });
        }
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::InvalidParameter {
                name: "hbar",
                value: hbar,
            });
        }
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "eta",
                value: eta,
            });
        }
        if !omega.is_finite() {
            return Err(Error::InvalidParameter {
                name: "omega",
                value: omega,
            });
        }
        Ok(Self {
            mass,
            hbar,
            eta,
            omega,
        })
    }

    /// ħ = m_e = η = 1, Ω = 0.
    pub fn atomic() -> Self {
        Self {
            mass: 1.0,
            hbar: 1.0,
            eta: 1.0,
            omega: 0.0,
        }
    }

    pub fn with_omega(self, omega: f64) -> Result<Self> {
        Self::new(self.mass, self.hbar, self.eta, omega)
    }

    pub fn with_eta(self, eta: f64) -> Result<Self> {
        Self::new(self.mass, self.hbar, eta, self.omega)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// η′ = η/ħ².
    pub fn eta_prime(&self) -> f64 {
        self.eta / (self.hbar * self.hbar)
    }

    /// m_e·η′, the inverse Bohr-like length that sets every κ.
    pub fn coulomb_scale(&self) -> f64 {
        self.mass * self.eta_prime()
    }
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self::atomic()
    }
}

/// Flux φ split as N + β with N = ⌊φ⌋ and 0 ≤ β < 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxConfig {
    pub phi: f64,
    pub n_integer: i64,
    pub beta: f64,
}

/// Splits φ into its integer part (floor, for either sign) and remainder.
pub fn decompose_flux(phi: f64) -> FluxConfig {
    let mut n = libm::floor(phi);
    let mut beta = phi - n;
    if beta >= 1.0 {
        // φ just below an integer can round the remainder up to 1
        n += 1.0;
        beta = 0.0;
    }
    FluxConfig {
        phi,
        n_integer: n as i64,
        beta,
    }
}

impl FluxConfig {
    pub fn new(phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "flux",
                value: phi,
            });
        }
        Ok(decompose_flux(phi))
    }
}

/// Spin projection s = ±1 along the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    pub fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }

    pub fn from_sign(s: i64) -> Option<Self> {
        match s {
            1 => Some(Spin::Up),
            -1 => Some(Spin::Down),
            _ => None,
        }
    }
}

/// Which boundary behaviour at the origin the closed forms describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// r^{+|j|} at the origin, the λ = 0 extension.
    Regular,
    /// r^{−|j|} at the origin, the λ = ∞ extension; needs |j| < 1/2.
    Irregular,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Regular => "regular",
            Branch::Irregular => "irregular",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One bound level: principal index n ≥ 1, angular number m, spin, branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumState {
    pub n: u32,
    pub m: i64,
    pub spin: Spin,
    pub branch: Branch,
}

impl QuantumState {
    pub fn new(n: u32, m: i64, spin: Spin, branch: Branch) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "n",
                value: 0.0,
            });
        }
        Ok(Self { n, m, spin, branch })
    }

    pub fn regular(n: u32, m: i64, spin: Spin) -> Result<Self> {
        Self::new(n, m, spin, Branch::Regular)
    }

    pub fn irregular(n: u32, m: i64, spin: Spin) -> Result<Self> {
        Self::new(n, m, spin, Branch::Irregular)
    }
}

/// Effective angular momentum j = m + φ.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EffectiveMomentum(f64);

impl EffectiveMomentum {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn abs(self) -> f64 {
        libm::fabs(self.0)
    }
}

pub fn effective_j(m: i64, phi: f64) -> EffectiveMomentum {
    EffectiveMomentum(m as f64 + phi)
}

/// |j| < 1/2: the radial operator admits the irregular solution and has a
/// one-parameter family of self-adjoint extensions.
pub fn is_singular_sector(j: EffectiveMomentum) -> bool {
    j.abs() < 0.5
}

/// All m with −1/2 − φ < m < 1/2 − φ; at most one integer, none when the
/// fractional part of φ is exactly 1/2.
pub fn admissible_m(phi: f64) -> Vec<i64> {
    let centre = libm::round(-phi) as i64;
    (centre - 1..=centre + 1)
        .filter(|&m| is_singular_sector(effective_j(m, phi)))
        .collect()
}
