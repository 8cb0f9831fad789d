//! Parameter scans over flux, rotation or angular number.

use std::fmt;
use std::str::FromStr;

use abspin_core::spectrum::closed_form_energy;
use abspin_core::{Branch, Error as CoreError, FluxConfig, PhysicalParams, QuantumState, Spin};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanVar {
    Flux,
    Omega,
    M,
}

impl ScanVar {
    pub fn as_str(self) -> &'static str {
        match self {
            ScanVar::Flux => "flux",
            ScanVar::Omega => "omega",
            ScanVar::M => "m",
        }
    }
}

impl fmt::Display for ScanVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `var:start:stop:steps`, sampled at start + (stop − start)·i/(steps − 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSpec {
    pub variable: ScanVar,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl FromStr for ScanSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [var, start, stop, steps] = parts[..] else {
            return Err(format!("expected var:start:stop:steps, got `{s}`"));
        };
        let variable = match var.trim() {
            "flux" | "phi" => ScanVar::Flux,
            "omega" => ScanVar::Omega,
            "m" => ScanVar::M,
            other => return Err(format!("unknown scan variable `{other}` (flux, omega or m)")),
        };
        let num = |t: &str, what: &str| -> Result<f64, String> {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or(format!("bad scan {what} `{t}`"))
        };
        let spec = ScanSpec {
            variable,
            start: num(start, "start")?,
            stop: num(stop, "stop")?,
            steps: steps.trim().parse().map_err(|_| format!("bad scan steps `{steps}`"))?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl ScanSpec {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.start < self.stop) {
            return Err(format!("scan needs start < stop, got {} and {}", self.start, self.stop));
        }
        if self.steps < 2 {
            return Err(format!("scan needs at least 2 steps, got {}", self.steps));
        }
        if self.variable == ScanVar::M {
            if self.start.fract() != 0.0 || self.stop.fract() != 0.0 {
                return Err("an m scan needs integer start and stop".into());
            }
            for v in self.values() {
                if v.fract() != 0.0 {
                    return Err(format!("m scan point {v} is not an integer; use steps = stop - start + 1"));
                }
            }
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let span = self.stop - self.start;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.stop
                } else {
                    self.start + span * i as f64 / last
                }
            })
            .collect()
    }
}

/// One output line: a state evaluated at one scan point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub scan_var: ScanVar,
    pub scan_value: f64,
    pub n: u32,
    pub m: i64,
    pub s: i8,
    #[serde(serialize_with = "branch_name")]
    pub branch: Branch,
    pub energy: f64,
    pub kappa: f64,
    pub exists: bool,
    #[serde(skip)]
    pub flux: f64,
    #[serde(skip)]
    pub omega: f64,
}

fn branch_name<S: serde::Serializer>(b: &Branch, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(b.as_str())
}

/// Which states to evaluate at every scan point.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSelection {
    pub n: Vec<u32>,
    /// Ignored for an m scan.
    pub m: Vec<i64>,
    pub spins: Vec<Spin>,
    pub branches: Vec<Branch>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScanError {
    /// Invalid physical parameters.
    Core(CoreError),
    /// An irregular state outside |j| < 1/2 under `--strict`.
    Sector { m: i64, flux: f64, j: f64 },
}

impl fmt::Display for ScanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanError::Core(e) => write!(f, "{e}"),
            ScanError::Sector { m, flux, j } => write!(
                f,
                "irregular branch needs |m + flux| < 1/2, but m = {m}, flux = {flux} gives j = {j}"
            ),
        }
    }
}

impl std::error::Error for ScanError {}

/// Evaluates every selected state at every point; rows sorted by
/// (scan_value, n, m, s, branch).
pub fn evaluate(
    base: PhysicalParams,
    flux: f64,
    scan: Option<ScanSpec>,
    states: &StateSelection,
    strict: bool,
) -> Result<Vec<ScanRow>, ScanError> {
    let (variable, points) = match scan {
        Some(spec) => (spec.variable, spec.values()),
        None => (ScanVar::Flux, vec![flux]),
    };
    let per_point: Vec<Result<Vec<ScanRow>, ScanError>> = points
        .par_iter()
        .map(|&value| {
            let (phi, omega, ms) = match variable {
                ScanVar::Flux => (value, base.omega(), states.m.clone()),
                ScanVar::Omega => (flux, value, states.m.clone()),
                ScanVar::M => (flux, base.omega(), vec![value as i64]),
            };
            let params = base.with_omega(omega).map_err(ScanError::Core)?;
            let fc = FluxConfig::new(phi).map_err(ScanError::Core)?;
            let mut rows = Vec::new();
            for &n in &states.n {
                for &m in &ms {
                    for &spin in &states.spins {
                        for &branch in &states.branches {
                            let state = QuantumState::new(n, m, spin, branch).map_err(ScanError::Core)?;
                            let row = ScanRow {
                                scan_var: variable,
                                scan_value: value,
                                n,
                                m,
                                s: spin.as_i8(),
                                branch,
                                energy: f64::NAN,
                                kappa: f64::NAN,
                                exists: false,
                                flux: phi,
                                omega,
                            };
                            match closed_form_energy(state, &params, &fc) {
                                Ok(r) => rows.push(ScanRow {
                                    energy: r.energy,
                                    kappa: r.kappa,
                                    exists: r.exists,
                                    ..row
                                }),
                                Err(CoreError::Sector { .. }) if !strict => rows.push(row),
                                Err(CoreError::Sector { j }) => return Err(ScanError::Sector { m, flux: phi, j }),
                                Err(e) => return Err(ScanError::Core(e)),
                            }
                        }
                    }
                }
            }
            Ok(rows)
        })
        .collect();
    let mut rows = Vec::new();
    for chunk in per_point {
        rows.extend(chunk?);
    }
    rows.sort_by(|a, b| {
        a.scan_value
            .total_cmp(&b.scan_value)
            .then(a.n.cmp(&b.n))
            .then(a.m.cmp(&b.m))
            .then(a.s.cmp(&b.s))
            .then(a.branch.cmp(&b.branch))
    });
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn selection(m: Vec<i64>) -> StateSelection {
        StateSelection {
            n: vec![1],
            m,
            spins: vec![Spin::Up],
            branches: vec![Branch::Regular],
        }
    }

    #[test]
    fn scan_spec_parsing() {
        let s: ScanSpec = "flux:0:10:101".parse().unwrap();
        assert_eq!((s.variable, s.start, s.stop, s.steps), (ScanVar::Flux, 0.0, 10.0, 101));
        let v = s.values();
        assert_eq!(v.len(), 101);
        assert_eq!(v[10], 1.0);
        assert_eq!(v[100], 10.0);
        assert!("flux:1:0:5".parse::<ScanSpec>().is_err());
        assert!("flux:0:1:1".parse::<ScanSpec>().is_err());
        assert!("energy:0:1:5".parse::<ScanSpec>().is_err());
        assert!("m:-3:3:7".parse::<ScanSpec>().is_ok());
        assert!("m:-3:3:5".parse::<ScanSpec>().is_err());
        assert!("omega:-2:2".parse::<ScanSpec>().is_err());
    }

    #[test]
    fn ground_state_row() {
        let rows = evaluate(PhysicalParams::atomic(), 0.0, None, &selection(vec![0]), true).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].energy, -2.0);
        assert!(rows[0].exists);
    }

    #[test]
    fn sector_violations() {
        let mut sel = selection(vec![1]);
        sel.branches = vec![Branch::Irregular];
        let err = evaluate(PhysicalParams::atomic(), 0.0, None, &sel, true).unwrap_err();
        assert!(matches!(err, ScanError::Sector { m: 1, .. }));
        let rows = evaluate(PhysicalParams::atomic(), 0.0, None, &sel, false).unwrap();
        assert!(!rows[0].exists && rows[0].energy.is_nan());
    }

    #[test]
    fn rows_are_sorted_and_complete() {
        let spec: ScanSpec = "flux:0:2:5".parse().unwrap();
        let mut sel = selection(vec![2, -1, 0]);
        sel.spins = vec![Spin::Down, Spin::Up];
        let rows = evaluate(PhysicalParams::atomic(), 0.0, Some(spec), &sel, false).unwrap();
        assert_eq!(rows.len(), 5 * 3 * 2);
        for w in rows.windows(2) {
            let ka = (w[0].scan_value, w[0].n, w[0].m, w[0].s);
            let kb = (w[1].scan_value, w[1].n, w[1].m, w[1].s);
            assert!(ka < kb);
        }
    }

    #[test]
    fn m_scan_overrides_m_list() {
        let spec: ScanSpec = "m:-2:2:5".parse().unwrap();
        let rows = evaluate(PhysicalParams::atomic(), 0.3, Some(spec), &selection(vec![7]), false).unwrap();
        let ms: Vec<i64> = rows.iter().map(|r| r.m).collect();
        assert_eq!(ms, vec![-2, -1, 0, 1, 2]);
    }
}
