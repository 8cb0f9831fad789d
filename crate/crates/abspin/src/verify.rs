//! Self-check suite behind `abspin verify`.

use abspin_core::oracle::{oracle_regular_spectrum, RadialGrid, Spacing};
use abspin_core::secular::{solve_secular, ExtensionParam, KummerParams};
use abspin_core::specfun::{asymptotic_1f1, gamma, kummer_1f1, sin_pi, EvalAccuracy, X_SWITCH};
use abspin_core::spectrum::{
    detect_degeneracies, energy_irregular, energy_regular, DEFAULT_DEGENERACY_TOL,
};
use abspin_core::wavefunction::{
    boundary_values, decaying_coefficients, normalize_and_count_nodes, secular_profile,
};
use abspin_core::{effective_j, FluxConfig, PhysicalParams, QuantumState, Spin};
use serde::Serialize;

pub const GROUPS: [&str; 5] = ["specfun", "spectrum", "secular", "oracle", "closure"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(name: &str, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            pass: residual <= tolerance,
            residual,
            tolerance,
        }
    }

    /// A check whose computation itself failed.
    fn errored(name: &str, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            pass: false,
            residual: f64::INFINITY,
            tolerance,
        }
    }

    pub fn group(&self) -> &str {
        self.name.split('.').next().unwrap_or("")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub params: PhysicalParams,
    /// Empty means every group.
    pub only: Vec<String>,
    /// Additive fault injected into Γ for the special-function checks.
    pub perturb_gamma: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            params: PhysicalParams::atomic(),
            only: Vec::new(),
            perturb_gamma: 0.0,
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn max_or_inf<I: IntoIterator<Item = Option<f64>>>(it: I) -> f64 {
    let mut worst = 0.0_f64;
    for v in it {
        match v {
            Some(v) if v.is_finite() => worst = worst.max(v),
            _ => return f64::INFINITY,
        }
    }
    worst
}

pub fn run_suite(opts: &VerifyOptions) -> Result<Report, String> {
    for g in &opts.only {
        if !GROUPS.contains(&g.as_str()) {
            return Err(format!("unknown check group `{g}` (expected one of {})", GROUPS.join(", ")));
        }
    }
    let wanted = |g: &str| opts.only.is_empty() || opts.only.iter().any(|o| o == g);
    let mut checks = Vec::new();
    if wanted("specfun") {
        checks.extend(specfun_checks(opts.perturb_gamma));
    }
    if wanted("spectrum") {
        checks.extend(spectrum_checks(&opts.params));
    }
    if wanted("secular") {
        checks.extend(secular_checks(&opts.params));
    }
    if wanted("oracle") {
        checks.push(oracle_check(&opts.params));
    }
    if wanted("closure") {
        checks.extend(closure_checks(&opts.params));
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(Report { checks, pass })
}

fn specfun_checks(eps: f64) -> Vec<Check> {
    let g = |z: f64| gamma(z).map(|v| v + eps).ok();
    let zs = [0.1, 0.5, 1.3, 2.7, 4.5, 7.9, 12.1, 20.5, -0.4, -1.7, -3.3];
    let recurrence = max_or_inf(zs.iter().map(|&z| Some(rel(z * g(z)?, g(z + 1.0)?))));
    let reflection = max_or_inf(
        [0.1, 0.3, 0.77, -0.6, 2.4, -3.9]
            .iter()
            .map(|&z| Some((g(z)? * g(1.0 - z)? * sin_pi(z) / std::f64::consts::PI - 1.0).abs())),
    );

    let acc = EvalAccuracy::default();
    let m = |a: f64, b: f64, x: f64| kummer_1f1(a, b, x, &acc).ok();
    let ode = max_or_inf(
        [(0.5, 1.4, 2.0), (-2.3, 0.6, 7.5), (1.7, 1.2, 25.0), (0.3, 1.6, 45.0), (-0.7, 0.8, -3.0), (2.2, 3.1, 60.0)]
            .iter()
            .map(|&(a, b, x)| {
                let f = m(a, b, x)?;
                let d1 = a / b * m(a + 1.0, b + 1.0, x)?;
                let d2 = a * (a + 1.0) / (b * (b + 1.0)) * m(a + 2.0, b + 2.0, x)?;
                let scale = (x * d2).abs().max(((b - x) * d1).abs()).max((a * f).abs());
                Some((x * d2 + (b - x) * d1 - a * f).abs() / scale)
            }),
    );
    let kummer = max_or_inf(
        [(0.5, 1.4, 3.0_f64), (-1.3, 0.7, 12.0), (2.1, 0.4, -5.5), (0.8, 2.6, 20.0)]
            .iter()
            .map(|&(a, b, x)| Some(rel(x.exp() * m(b - a, b, -x)?, m(a, b, x)?))),
    );
    let asym_acc = EvalAccuracy::new(1e-9, 2000).expect("valid accuracy");
    let switch = max_or_inf(
        [(0.5, 2.0), (1.2, 0.6), (-0.3, 1.4), (2.5, 1.9), (0.1, 0.2)]
            .iter()
            .map(|&(a, b)| Some(rel(asymptotic_1f1(a, b, X_SWITCH, &asym_acc).ok()?, m(a, b, X_SWITCH)?))),
    );
    vec![
        Check::new("specfun.gamma_recurrence", recurrence, 1e-12),
        Check::new("specfun.gamma_reflection", reflection, 1e-12),
        Check::new("specfun.kummer_ode", ode, 1e-8),
        Check::new("specfun.kummer_transformation", kummer, 1e-10),
        Check::new("specfun.series_vs_asymptotic", switch, 1e-6),
    ]
}

fn spectrum_checks(params: &PhysicalParams) -> Vec<Check> {
    let atomic = PhysicalParams::atomic();
    let flux0 = FluxConfig::new(0.0).expect("finite flux");
    let ground = energy_regular(QuantumState::regular(1, 0, Spin::Up).expect("n >= 1"), &atomic, &flux0);
    let irregular = FluxConfig::new(0.49)
        .ok()
        .and_then(|f| energy_irregular(QuantumState::irregular(1, 0, Spin::Up).ok()?, &atomic, &f).ok())
        .map(|r| rel(r.energy, -5000.0))
        .unwrap_or(f64::INFINITY);

    // exact affine dependence on Ω, component by component
    let mut affinity = 0.0_f64;
    let mut splitting = 0.0_f64;
    let hbar = params.hbar();
    for omega in [-2.0, 1.0, 3.0] {
        let Ok(rot) = params.with_omega(omega) else {
            affinity = f64::INFINITY;
            continue;
        };
        let still = params.with_omega(0.0).expect("zero rotation is valid");
        for phi in [0.0, 0.3, 2.7, -1.2, 5.5] {
            let flux = FluxConfig::new(phi).expect("finite flux");
            for n in 1..=3 {
                for m in -3..=3 {
                    let mut shifts = [0.0; 2];
                    for (k, spin) in [Spin::Up, Spin::Down].into_iter().enumerate() {
                        let st = QuantumState::regular(n, m, spin).expect("n >= 1");
                        let e1 = energy_regular(st, &rot, &flux);
                        let e0 = energy_regular(st, &still, &flux);
                        let j = effective_j(m, phi).value();
                        let dev = (e1.binding - e0.binding)
                            .abs()
                            .max((e1.orbital_shift + hbar * omega * j).abs())
                            .max((e1.spin_shift + hbar * omega * spin.sign() * 0.5).abs());
                        affinity = affinity.max(dev);
                        shifts[k] = e1.spin_shift;
                    }
                    splitting = splitting.max((shifts[0] - shifts[1] + hbar * omega).abs());
                }
            }
        }
    }

    // integer flux: detector against pairwise enumeration
    let mut mismatches = 0.0;
    for phi in [0.0, 1.0, 3.0, -2.0] {
        let flux = FluxConfig::new(phi).expect("finite flux");
        let still = params.with_omega(0.0).expect("zero rotation is valid");
        let states: Vec<QuantumState> = (-10..=10)
            .flat_map(|m| [Spin::Down, Spin::Up].map(|s| QuantumState::regular(1, m, s).expect("n >= 1")))
            .collect();
        let Ok(groups) = detect_degeneracies(&states, &still, &flux, DEFAULT_DEGENERACY_TOL) else {
            mismatches = f64::INFINITY;
            continue;
        };
        let group_of = |s: &QuantumState| groups.iter().position(|g| g.members.contains(s));
        for a in &states {
            for b in &states {
                if a >= b {
                    continue;
                }
                let ea = energy_regular(*a, &still, &flux).energy;
                let eb = energy_regular(*b, &still, &flux).energy;
                let brute = (ea - eb).abs() <= DEFAULT_DEGENERACY_TOL;
                let grouped = group_of(a).is_some() && group_of(a) == group_of(b);
                if brute != grouped {
                    mismatches += 1.0;
                }
            }
        }
    }
    vec![
        Check::new("spectrum.ground_state", (ground.energy + 2.0).abs(), 1e-12),
        Check::new("spectrum.irregular_anchor", irregular, 1e-6),
        Check::new("spectrum.rotation_affinity", affinity, 0.0),
        Check::new("spectrum.spin_splitting", splitting, 0.0),
        Check::new("spectrum.integer_flux_degeneracy", mismatches, 0.0),
    ]
}

fn secular_checks(params: &PhysicalParams) -> Vec<Check> {
    let mut reg = Vec::new();
    let mut irr = Vec::new();
    for j in [0.05, 0.2, 0.45] {
        let flux = FluxConfig::new(j).expect("finite flux");
        let r0 = solve_secular(ExtensionParam::Finite(0.0), j, params, 5).ok();
        let ri = solve_secular(ExtensionParam::Infinite, j, params, 5).ok();
        for n in 1..=5u32 {
            let st = QuantumState::regular(n, 0, Spin::Up).expect("n >= 1");
            let want_r = energy_regular(st, params, &flux).kappa;
            let want_i = energy_irregular(st, params, &flux).map(|r| r.kappa).ok();
            let k = n as usize - 1;
            reg.push(r0.as_ref().and_then(|v| v.get(k)).map(|r| rel(r.kappa, want_r)));
            irr.push(ri.as_ref().and_then(|v| v.get(k)).zip(want_i).map(|(r, w)| rel(r.kappa, w)));
        }
    }
    let mut residuals = Vec::new();
    for lam in [-1.0, 1.0, 2.5] {
        for j in [0.1, 0.3] {
            match solve_secular(ExtensionParam::Finite(lam), j, params, 5) {
                Ok(roots) if roots.len() == 5 => residuals.extend(roots.iter().map(|r| Some(r.residual))),
                _ => residuals.push(None),
            }
        }
    }
    vec![
        Check::new("secular.limit_regular", max_or_inf(reg), 1e-10),
        Check::new("secular.limit_irregular", max_or_inf(irr), 1e-10),
        Check::new("secular.root_residuals", max_or_inf(residuals), 1e-10),
    ]
}

fn oracle_check(params: &PhysicalParams) -> Check {
    let c = params.coulomb_scale();
    if c == 0.0 {
        return Check::errored("oracle.regular_agreement", 1e-6);
    }
    let Ok(grid) = RadialGrid::new(1e-5 / c, 200.0 / c, 4000, Spacing::Logarithmic) else {
        return Check::errored("oracle.regular_agreement", 1e-6);
    };
    let worst = max_or_inf([0.0, 0.25, 0.75, 1.5].iter().flat_map(|&j| {
        match oracle_regular_spectrum(j, params, 3, &grid) {
            Ok(levels) => levels
                .iter()
                .map(|l| Some(rel(l.kappa, c / (l.index as f64 - 0.5 + j))))
                .collect::<Vec<_>>(),
            Err(_) => vec![None],
        }
    }));
    Check::new("oracle.regular_agreement", worst, 1e-6)
}

fn closure_checks(params: &PhysicalParams) -> Vec<Check> {
    let mut closure = Vec::new();
    let mut node_errors = 0.0;
    for lam in [-1.0, 1.0] {
        for j in [0.2, 0.4] {
            let Ok(roots) = solve_secular(ExtensionParam::Finite(lam), j, params, 5) else {
                closure.push(None);
                continue;
            };
            for root in roots {
                let bv = KummerParams::new(root.kappa, j, params)
                    .and_then(|kp| boundary_values(decaying_coefficients(&kp)?, &kp))
                    .ok();
                closure.push(bv.map(|b| (lam * b.f0 - b.f1).abs() / b.f1.abs().max((lam * b.f0).abs())));
                let ok = secular_profile(&root, params, None)
                    .and_then(|p| normalize_and_count_nodes(&p))
                    .map(|(norm, nodes)| norm > 0.0 && norm.is_finite() && nodes == root.index - 1)
                    .unwrap_or(false);
                if !ok {
                    node_errors += 1.0;
                }
            }
        }
    }
    vec![
        Check::new("closure.boundary_condition", max_or_inf(closure), 1e-8),
        Check::new("closure.nodes_and_norm", node_errors, 0.0),
    ]
}
