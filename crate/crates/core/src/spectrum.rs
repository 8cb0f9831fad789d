//! Closed-form bound-state energies for the regular (λ = 0) and irregular
//! (λ = ∞) boundary conditions.
//!
//! E = −m_e η² / (2ħ² (n − 1/2 ± |j|)²) − ħΩ (j + s/2), κ = m_e η′ / (n − 1/2 ± |j|).

use alloc::vec::Vec;

use crate::model::{effective_j, is_singular_sector, Branch, FluxConfig, PhysicalParams, QuantumState};
use crate::{Error, Result};

/// Default tolerance for grouping degenerate closed-form energies.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-12;

/// Where an energy came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    Secular,
    Oracle,
}

/// One evaluated level.
///
/// The energy is kept together with its three additive pieces so that the
/// rotation shift can be compared bit for bit across Ω and spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralResult {
    pub energy: f64,
    /// Coulomb part −m_e η² / (2ħ² D²); independent of Ω and s.
    pub binding: f64,
    /// −ħΩ·j
    pub orbital_shift: f64,
    /// −ħΩ·s/2
    pub spin_shift: f64,
    pub kappa: f64,
    pub exists: bool,
    pub state: QuantumState,
    pub provenance: Provenance,
}

impl SpectralResult {
    /// −ħΩ(j + s/2) as it enters the energy.
    pub fn rotation_shift(&self) -> f64 {
        self.orbital_shift + self.spin_shift
    }
}

fn assemble(state: QuantumState, params: &PhysicalParams, flux: &FluxConfig, denom: f64) -> SpectralResult {
    let j = effective_j(state.m, flux.phi).value();
    let hbar = params.hbar();
    let eta = params.eta();
    let binding = -(params.mass() * eta * eta) / (2.0 * hbar * hbar * denom * denom);
    let hw = hbar * params.omega();
    let orbital_shift = -(hw * j);
    let spin_shift = -(hw * state.spin.sign() * 0.5);
    let kappa = params.coulomb_scale() / denom;
    SpectralResult {
        energy: binding + orbital_shift + spin_shift,
        binding,
        orbital_shift,
        spin_shift,
        kappa,
        // 2mE/ħ² + (2mΩ/ħ)(j + s/2) = −κ² exactly for the closed forms
        exists: kappa > 0.0 && kappa.is_finite(),
        state,
        provenance: Provenance::ClosedForm,
    }
}

/// Energy of the λ = 0 extension (regular at the origin). The branch field of
/// `state` is ignored and reported as regular.
pub fn energy_regular(state: QuantumState, params: &PhysicalParams, flux: &FluxConfig) -> SpectralResult {
    let state = QuantumState {
        branch: Branch::Regular,
        ..state
    };
    let j = effective_j(state.m, flux.phi);
    let denom = state.n as f64 - 0.5 + j.abs();
    assemble(state, params, flux, denom)
}

/// Energy of the λ = ∞ extension (irregular at the origin); only defined
/// in the singular sector |j| < 1/2.
pub fn energy_irregular(
    state: QuantumState,
    params: &PhysicalParams,
    flux: &FluxConfig,
) -> Result<SpectralResult> {
    let state = QuantumState {
        branch: Branch::Irregular,
        ..state
    };
    let j = effective_j(state.m, flux.phi);
    if !is_singular_sector(j) {
        return Err(Error::Sector { j: j.value() });
    }
    let denom = state.n as f64 - 0.5 - j.abs();
    Ok(assemble(state, params, flux, denom))
}

/// Dispatches on `state.branch`.
pub fn closed_form_energy(
    state: QuantumState,
    params: &PhysicalParams,
    flux: &FluxConfig,
) -> Result<SpectralResult> {
    match state.branch {
        Branch::Regular => Ok(energy_regular(state, params, flux)),
        Branch::Irregular => energy_irregular(state, params, flux),
    }
}

/// 2m_e E/ħ² + (2m_e Ω/ħ)(j + s/2); negative for bound states.
pub fn bound_bracket(energy: f64, state: &QuantumState, params: &PhysicalParams, flux: &FluxConfig) -> f64 {
    let j = effective_j(state.m, flux.phi).value();
    let m = params.mass();
    let hbar = params.hbar();
    2.0 * m * energy / (hbar * hbar) + 2.0 * m * params.omega() / hbar * (j + 0.5 * state.spin.sign())
}

/// κ = √(−[2m_e E/ħ² + (2m_e Ω/ħ)(j + s/2)]).
pub fn kappa_of_energy(
    energy: f64,
    state: &QuantumState,
    params: &PhysicalParams,
    flux: &FluxConfig,
) -> Result<f64> {
    let bracket = bound_bracket(energy, state, params, flux);
    if !(bracket < 0.0) {
        return Err(Error::NotBound { bracket });
    }
    Ok(libm::sqrt(-bracket))
}

/// Inverse of [`kappa_of_energy`]: E = −ħ²κ²/(2m_e) − ħΩ(j + s/2).
pub fn energy_of_kappa(kappa: f64, state: &QuantumState, params: &PhysicalParams, flux: &FluxConfig) -> f64 {
    let j = effective_j(state.m, flux.phi).value();
    let hbar = params.hbar();
    let hw = hbar * params.omega();
    -(hbar * hbar * kappa * kappa) / (2.0 * params.mass()) - hw * j - hw * state.spin.sign() * 0.5
}

/// States whose closed-form energies coincide within a tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyGroup {
    /// Energy of the lowest member.
    pub energy: f64,
    pub members: Vec<QuantumState>,
    pub tolerance: f64,
}

/// Groups `states` by closed-form energy. Members of a group lie within
/// `tol` of its lowest energy (so pairwise within `tol`); singletons are
/// dropped. Groups come out in increasing energy, members in state order.
pub fn detect_degeneracies(
    states: &[QuantumState],
    params: &PhysicalParams,
    flux: &FluxConfig,
    tol: f64,
) -> Result<Vec<DegeneracyGroup>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
        });
    }
    let mut levels = Vec::with_capacity(states.len());
    for &s in states {
        levels.push((closed_form_energy(s, params, flux)?.energy, s));
    }
    levels.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut groups = Vec::new();
    let mut i = 0;
    while i < levels.len() {
        let base = levels[i].0;
        let mut k = i + 1;
        while k < levels.len() && levels[k].0 - base <= tol {
            k += 1;
        }
        if k - i > 1 {
            let mut members: Vec<QuantumState> = levels[i..k].iter().map(|l| l.1).collect();
            members.sort();
            members.dedup();
            if members.len() > 1 {
                groups.push(DegeneracyGroup {
                    energy: base,
                    members,
                    tolerance: tol,
                });
            }
        }
        i = k;
    }
    Ok(groups)
}
