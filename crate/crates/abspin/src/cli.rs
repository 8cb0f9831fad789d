use std::path::PathBuf;
use std::str::FromStr;

use abspin_core::{Branch, ExtensionParam, Spin};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::scan::ScanSpec;

#[derive(Debug, Parser)]
#[command(name = "abspin", version, about = "Bound states of a spin-1/2 particle in an Aharonov-Bohm flux with Coulomb attraction and rotation")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form energies for a set of states, optionally over a scan.
    Spectrum(SpectrumArgs),
    /// Closed-form energies over `--scan var:start:stop:steps`.
    Scan(SpectrumArgs),
    /// Roots of the self-adjoint-extension condition for finite or infinite λ.
    Secular(SecularArgs),
    /// Sampled, normalized radial wavefunction.
    Wavefunction(WavefunctionArgs),
    /// Runs the invariant suite and prints a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct PhysicsArgs {
    /// Coulomb strength η.
    #[arg(long, default_value_t = 1.0)]
    pub eta: f64,
    /// Rotation frequency Ω.
    #[arg(long, default_value_t = 0.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    /// Aharonov-Bohm flux φ in flux quanta.
    #[arg(long, default_value_t = 0.0)]
    pub flux: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// Principal numbers: `1`, `1,2,3` or `1..3`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub n: IntList,
    /// Angular numbers: `0`, `-2,0,2` or `-5..-1`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub m: IntList,
    /// Spin projection: +1, -1 or both.
    #[arg(long, visible_alias = "s", default_value = "+1", allow_hyphen_values = true)]
    pub spin: SpinSelection,
    #[arg(long, value_enum, default_value_t = BranchSelection::Regular)]
    pub branch: BranchSelection,
    /// `var:start:stop:steps` with var one of flux, omega, m.
    #[arg(long)]
    pub scan: Option<ScanSpec>,
    /// Fail with exit code 3 when an irregular state leaves |j| < 1/2.
    #[arg(long)]
    pub strict: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct SecularArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// Extension parameter λ, a real number or `inf`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: ExtensionParam,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long, visible_alias = "s", default_value = "+1", allow_hyphen_values = true)]
    pub spin: SpinArg,
    /// Number of most-bound roots.
    #[arg(long, default_value_t = 5)]
    pub count: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long, value_enum, default_value_t = BranchArg::Regular)]
    pub branch: BranchArg,
    /// Use the n-th root for this extension parameter instead of a closed-form level.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<ExtensionParam>,
    #[arg(long, default_value_t = 2001)]
    pub points: usize,
    /// Outer radius in units of 1/κ.
    #[arg(long, default_value_t = 40.0)]
    pub extent: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub physics: PhysicsArgs,
    /// Run only these check groups (specfun, spectrum, secular, oracle, closure).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Add EPS to every Γ value used by the special-function checks.
    #[arg(long, value_name = "EPS", allow_hyphen_values = true)]
    pub perturb_gamma: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Integer list given as `a`, `a,b,c` or the inclusive range `a..b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<i64>);

impl FromStr for IntList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if let Some((lo, hi)) = part.split_once("..") {
                let hi = hi.strip_prefix('=').unwrap_or(hi);
                let lo: i64 = lo.trim().parse().map_err(|_| format!("bad range start in `{part}`"))?;
                let hi: i64 = hi.trim().parse().map_err(|_| format!("bad range end in `{part}`"))?;
                if hi < lo {
                    return Err(format!("empty range `{part}`"));
                }
                out.extend(lo..=hi);
            } else {
                out.push(part.parse().map_err(|_| format!("not an integer: `{part}`"))?);
            }
        }
        if out.is_empty() {
            return Err("empty list".into());
        }
        Ok(Self(out))
    }
}

impl IntList {
    pub fn principal(&self) -> Result<Vec<u32>, String> {
        self.0
            .iter()
            .map(|&n| u32::try_from(n).ok().filter(|&n| n >= 1).ok_or(format!("n must be >= 1, got {n}")))
            .collect()
    }
}

fn parse_spin(s: &str) -> Option<Spin> {
    match s.trim() {
        "+1" | "1" | "up" | "+" => Some(Spin::Up),
        "-1" | "down" | "-" => Some(Spin::Down),
        _ => None,
    }
}

/// A single spin value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinArg(pub Spin);

impl FromStr for SpinArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_spin(s).map(SpinArg).ok_or(format!("spin must be +1 or -1, got `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinSelection(pub Vec<Spin>);

impl FromStr for SpinSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if matches!(s.trim(), "both" | "all" | "±1") {
            return Ok(Self(vec![Spin::Down, Spin::Up]));
        }
        let mut spins = Vec::new();
        for part in s.split(',') {
            let spin = parse_spin(part).ok_or(format!("spin must be +1, -1 or both, got `{part}`"))?;
            if !spins.contains(&spin) {
                spins.push(spin);
            }
        }
        spins.sort();
        Ok(Self(spins))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchSelection {
    Regular,
    Irregular,
    Both,
}

impl BranchSelection {
    pub fn branches(self) -> Vec<Branch> {
        match self {
            BranchSelection::Regular => vec![Branch::Regular],
            BranchSelection::Irregular => vec![Branch::Irregular],
            BranchSelection::Both => vec![Branch::Regular, Branch::Irregular],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    Regular,
    Irregular,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Regular => Branch::Regular,
            BranchArg::Irregular => Branch::Irregular,
        }
    }
}
