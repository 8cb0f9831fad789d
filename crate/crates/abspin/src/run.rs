use std::fmt;

use abspin_core::secular::solve_secular;
use abspin_core::spectrum::energy_of_kappa;
use abspin_core::wavefunction::{level_profile, normalize_and_count_nodes, secular_profile, ProfileGrid};
use abspin_core::{effective_j, Branch, Error as CoreError, FluxConfig, KummerParams, PhysicalParams, QuantumState};
use serde::Serialize;

use crate::cli::{Cli, Command, Format, PhysicsArgs, SecularArgs, SpectrumArgs, VerifyArgs, WavefunctionArgs};
use crate::output::{sink, write_json, write_table, SCAN_HEADER};
use crate::scan::{evaluate, ScanError, StateSelection};
use crate::verify::{run_suite, VerifyOptions};

/// Why a command did not succeed; each kind maps to an exit code.
#[derive(Debug)]
pub enum Failure {
    /// Flags that parse but make no sense (exit 2).
    Usage(String),
    /// Irregular state outside the singular sector under `--strict` (exit 3).
    Sector(String),
    /// Some verification check failed (exit 1).
    Verify,
    /// Numerical or I/O failure (exit 1).
    Runtime(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Sector(_) => 3,
            Failure::Verify | Failure::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Sector(m) | Failure::Runtime(m) => f.write_str(m),
            Failure::Verify => f.write_str("verification failed"),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn core_failure(e: CoreError) -> Failure {
    match e {
        CoreError::Sector { .. } => Failure::Sector(e.to_string()),
        CoreError::InvalidParameter { .. } => Failure::Usage(e.to_string()),
        _ => Failure::Runtime(e.to_string()),
    }
}

fn physical(p: &PhysicsArgs) -> Result<PhysicalParams, Failure> {
    PhysicalParams::new(p.mass, p.hbar, p.eta, p.omega).map_err(|e| Failure::Usage(e.to_string()))
}

fn flux(p: &PhysicsArgs) -> Result<FluxConfig, Failure> {
    FluxConfig::new(p.flux).map_err(|e| Failure::Usage(e.to_string()))
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Spectrum(args) => spectrum(args, false),
        Command::Scan(args) => spectrum(args, true),
        Command::Secular(args) => secular(args),
        Command::Wavefunction(args) => wavefunction(args),
        Command::Verify(args) => verify(args),
    }
}

fn spectrum(args: SpectrumArgs, require_scan: bool) -> Result<(), Failure> {
    if require_scan && args.scan.is_none() {
        return Err(Failure::Usage("scan needs --scan var:start:stop:steps".into()));
    }
    let params = physical(&args.physics)?;
    flux(&args.physics)?;
    let states = StateSelection {
        n: args.n.principal().map_err(Failure::Usage)?,
        m: args.m.0.clone(),
        spins: args.spin.0.clone(),
        branches: args.branch.branches(),
    };
    let rows = evaluate(params, args.physics.flux, args.scan, &states, args.strict).map_err(|e| match e {
        ScanError::Sector { .. } => Failure::Sector(e.to_string()),
        ScanError::Core(c) => core_failure(c),
    })?;
    write_table(args.output.out.as_deref(), args.output.format, &SCAN_HEADER, &rows)?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct SecularRow {
    index: usize,
    j: f64,
    lambda: String,
    kappa: f64,
    energy: f64,
    residual: f64,
}

fn secular(args: SecularArgs) -> Result<(), Failure> {
    let params = physical(&args.physics)?;
    let fc = flux(&args.physics)?;
    if args.count == 0 {
        return Err(Failure::Usage("--count must be at least 1".into()));
    }
    let j = effective_j(args.m, fc.phi).value();
    let roots = solve_secular(args.lambda, j, &params, args.count).map_err(core_failure)?;
    let rows: Vec<SecularRow> = roots
        .iter()
        .map(|r| {
            let state = QuantumState::regular(r.index as u32, args.m, args.spin.0).expect("root index >= 1");
            SecularRow {
                index: r.index,
                j,
                lambda: r.lambda.to_string(),
                kappa: r.kappa,
                energy: energy_of_kappa(r.kappa, &state, &params, &fc),
                residual: r.residual,
            }
        })
        .collect();
    write_table(
        args.output.out.as_deref(),
        args.output.format,
        &["index", "j", "lambda", "kappa", "energy", "residual"],
        &rows,
    )?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct WavefunctionReport {
    kappa: f64,
    j: f64,
    norm: f64,
    nodes: usize,
    r: Vec<f64>,
    f: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct WavefunctionRow {
    r: f64,
    f: f64,
}

fn wavefunction(args: WavefunctionArgs) -> Result<(), Failure> {
    let params = physical(&args.physics)?;
    let fc = flux(&args.physics)?;
    if args.points < 3 || !(args.extent > 0.0) {
        return Err(Failure::Usage("need --points >= 3 and --extent > 0".into()));
    }
    let j = effective_j(args.m, fc.phi).value();
    let grid_for = |kappa: f64| ProfileGrid {
        points: args.points,
        r_max: args.extent / kappa,
        ..ProfileGrid::for_kappa(kappa)
    };
    let profile = match args.lambda {
        None => {
            let kappa = match args.branch.into() {
                Branch::Regular => KummerParams::regular_level(args.n, j, &params),
                Branch::Irregular => KummerParams::irregular_level(args.n, j, &params),
            }
            .map_err(core_failure)?
            .kappa;
            level_profile(args.n, j, args.branch.into(), &params, Some(grid_for(kappa))).map_err(core_failure)?
        }
        Some(lambda) => {
            let roots = solve_secular(lambda, j, &params, args.n as usize).map_err(core_failure)?;
            let root = roots
                .get(args.n as usize - 1)
                .ok_or_else(|| Failure::Runtime(format!("only {} bound states for this extension", roots.len())))?;
            secular_profile(root, &params, Some(grid_for(root.kappa))).map_err(core_failure)?
        }
    };
    let (norm, nodes) = normalize_and_count_nodes(&profile).map_err(core_failure)?;
    let scale = 1.0 / norm.sqrt();
    let rows: Vec<WavefunctionRow> = profile
        .samples
        .iter()
        .map(|&(r, f)| WavefunctionRow { r, f: f * scale })
        .collect();
    match args.output.format {
        Format::Csv => write_table(args.output.out.as_deref(), Format::Csv, &["r", "f"], &rows)?,
        Format::Json => write_json(
            sink(args.output.out.as_deref())?,
            &WavefunctionReport {
                kappa: profile.kappa,
                j,
                norm,
                nodes,
                r: rows.iter().map(|w| w.r).collect(),
                f: rows.iter().map(|w| w.f).collect(),
            },
        )?,
    }
    eprintln!("kappa = {}, nodes = {nodes}, norm before scaling = {norm}", profile.kappa);
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let params = physical(&args.physics)?;
    let opts = VerifyOptions {
        params,
        only: args.only,
        perturb_gamma: args.perturb_gamma.unwrap_or(0.0),
    };
    let report = run_suite(&opts).map_err(Failure::Usage)?;
    write_json(sink(args.out.as_deref())?, &report)?;
    for c in report.checks.iter().filter(|c| !c.pass) {
        eprintln!("FAIL {}: residual {} > tolerance {}", c.name, c.residual, c.tolerance);
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}
