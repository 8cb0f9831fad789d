//! Finite-difference eigensolver for the regular radial problem.
//!
//! On a logarithmic mesh s = ln r the radial equation multiplied by r² reads
//! −F_ss + (j² − 2m_eη′r)F = −κ² r² F, a symmetric tridiagonal pencil
//! (A, B) with B = diag(r²). On a uniform mesh the Liouville form
//! u = √r F gives −u″ + [(j² − 1/4)/r² − 2m_eη′/r]u = −κ²u with B = I.
//! Eigenvalues are isolated by bisection on the inertia of A − σB.

use alloc::vec::Vec;

use crate::model::PhysicalParams;
use crate::{Error, Result};

/// Largest two-grid disagreement in κ accepted by [`oracle_regular_spectrum`].
pub const TWO_GRID_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Uniform,
    Logarithmic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Default for RadialGrid {
    fn default() -> Self {
        Self {
            r_min: 1e-5,
            r_max: 200.0,
            points: 4000,
            spacing: Spacing::Logarithmic,
        }
    }
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, points: usize, spacing: Spacing) -> Result<Self> {
        let grid = Self {
            r_min,
            r_max,
            points,
            spacing,
        };
        grid.validate()?;
        Ok(grid)
    }

    fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0) || !self.r_min.is_finite() {
            return Err(Error::InvalidParameter {
                name: "r_min",
                value: self.r_min,
            });
        }
        if !(self.r_max > self.r_min) || !self.r_max.is_finite() {
            return Err(Error::InvalidParameter {
                name: "r_max",
                value: self.r_max,
            });
        }
        if self.points < 100 {
            return Err(Error::InvalidParameter {
                name: "points",
                value: self.points as f64,
            });
        }
        Ok(())
    }

    /// Same span with the mesh spacing halved.
    pub fn refined(&self) -> Self {
        let points = match self.spacing {
            Spacing::Logarithmic => 2 * self.points - 1,
            Spacing::Uniform => 2 * self.points + 1,
        };
        Self { points, ..*self }
    }

    /// Mesh step in the discretized variable (ln r or r).
    pub fn step(&self) -> f64 {
        match self.spacing {
            Spacing::Logarithmic => libm::log(self.r_max / self.r_min) / (self.points - 1) as f64,
            Spacing::Uniform => (self.r_max - self.r_min) / (self.points + 1) as f64,
        }
    }
}

/// Symmetric tridiagonal pencil A − σB with diagonal B.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
    pub weight: Vec<f64>,
    /// Radius of each unknown.
    pub radii: Vec<f64>,
}

impl SymTridiagonal {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Element (i, k) of A.
    pub fn entry(&self, i: usize, k: usize) -> f64 {
        if i == k {
            self.diag[i]
        } else if i + 1 == k {
            self.off[i]
        } else if k + 1 == i {
            self.off[k]
        } else {
            0.0
        }
    }

    /// Number of generalized eigenvalues below σ.
    pub fn count_below(&self, sigma: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.diag.len() {
            let coupling = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] / d };
            d = self.diag[i] - sigma * self.weight[i] - coupling;
            if d == 0.0 {
                d = -f64::EPSILON * (libm::fabs(self.diag[i]) + f64::MIN_POSITIVE);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The k-th smallest generalized eigenvalue (k = 0 is the lowest).
    pub fn eigenvalue(&self, k: usize, upper: f64) -> Result<f64> {
        if self.count_below(upper) <= k {
            return Err(Error::NotBound { bracket: upper });
        }
        let mut lo = (-1.0_f64).min(upper - 1.0);
        let mut expand = 0;
        while self.count_below(lo) > k {
            lo *= 2.0;
            expand += 1;
            if expand > 200 {
                return Err(Error::Convergence {
                    what: "eigenvalue lower bound",
                    value: lo,
                });
            }
        }
        let mut hi = upper;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Regular-boundary discretization of the radial operator, Dirichlet at r_max.
///
/// On the logarithmic mesh the first row carries the Robin condition
/// F_s = γF with γ = |j| − 2m_eη′r_min/(1 + 2|j|), the log-derivative of
/// the regular solution to first order in r. On the uniform mesh u vanishes
/// just below r_min.
pub fn discretize_h0(j: f64, params: &PhysicalParams, grid: &RadialGrid) -> Result<SymTridiagonal> {
    grid.validate()?;
    if !j.is_finite() {
        return Err(Error::InvalidParameter { name: "j", value: j });
    }
    let c = params.coulomb_scale();
    let h = grid.step();
    let inv_h2 = 1.0 / (h * h);
    match grid.spacing {
        Spacing::Logarithmic => {
            let n = grid.points - 1;
            let s0 = libm::log(grid.r_min);
            let radii: Vec<f64> = (0..n).map(|i| libm::exp(s0 + h * i as f64)).collect();
            let mut diag: Vec<f64> = radii.iter().map(|&r| 2.0 * inv_h2 + j * j - 2.0 * c * r).collect();
            let mut weight: Vec<f64> = radii.iter().map(|&r| r * r).collect();
            let gamma = libm::fabs(j) - 2.0 * c * grid.r_min / (1.0 + 2.0 * libm::fabs(j));
            diag[0] = (1.0 + h * gamma) * inv_h2 + 0.5 * (j * j - 2.0 * c * radii[0]);
            weight[0] *= 0.5;
            Ok(SymTridiagonal {
                diag,
                off: alloc::vec![-inv_h2; n - 1],
                weight,
                radii,
            })
        }
        Spacing::Uniform => {
            let n = grid.points;
            let radii: Vec<f64> = (1..=n).map(|i| grid.r_min + h * i as f64).collect();
            let diag = radii
                .iter()
                .map(|&r| 2.0 * inv_h2 + (j * j - 0.25) / (r * r) - 2.0 * c / r)
                .collect();
            Ok(SymTridiagonal {
                diag,
                off: alloc::vec![-inv_h2; n - 1],
                weight: alloc::vec![1.0; n],
                radii,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleEigenvalue {
    pub kappa: f64,
    pub index: usize,
    pub grid: RadialGrid,
    /// κ on the given grid and on the refined grid before extrapolation.
    pub coarse_kappa: f64,
    pub fine_kappa: f64,
}

/// The `count` most-bound eigenvalues −κ² on one grid, without extrapolation.
pub fn grid_energies(j: f64, params: &PhysicalParams, count: usize, grid: &RadialGrid) -> Result<Vec<f64>> {
    let op = discretize_h0(j, params, grid)?;
    let available = op.count_below(0.0).min(count);
    (0..available).map(|k| op.eigenvalue(k, 0.0)).collect()
}

/// The `n_max` most-bound regular eigenvalues, Richardson-extrapolated from
/// `grid` and its refinement. Returns an empty list without attraction.
pub fn oracle_regular_spectrum(
    j: f64,
    params: &PhysicalParams,
    n_max: usize,
    grid: &RadialGrid,
) -> Result<Vec<OracleEigenvalue>> {
    if n_max == 0 {
        return Err(Error::InvalidParameter {
            name: "n_max",
            value: 0.0,
        });
    }
    grid.validate()?;
    if params.coulomb_scale() == 0.0 {
        return Ok(Vec::new());
    }
    let coarse = grid_energies(j, params, n_max, grid)?;
    let fine = grid_energies(j, params, n_max, &grid.refined())?;
    if coarse.len() < n_max || fine.len() < n_max {
        return Err(Error::Convergence {
            what: "bound states resolved by the grid",
            value: coarse.len().min(fine.len()) as f64,
        });
    }
    let mut out = Vec::with_capacity(n_max);
    for (k, (&ec, &ef)) in coarse.iter().zip(&fine).enumerate() {
        let extrapolated = (4.0 * ef - ec) / 3.0;
        if !(extrapolated < 0.0) {
            return Err(Error::Convergence {
                what: "extrapolated eigenvalue",
                value: extrapolated,
            });
        }
        let kappa = libm::sqrt(-extrapolated);
        let (kc, kf) = (libm::sqrt(-ec), libm::sqrt(-ef));
        let gap = libm::fabs(kf - kc) / kappa;
        if gap > TWO_GRID_TOL {
            return Err(Error::Convergence {
                what: "two-grid disagreement in kappa",
                value: gap,
            });
        }
        out.push(OracleEigenvalue {
            kappa,
            index: k + 1,
            grid: *grid,
            coarse_kappa: kc,
            fine_kappa: kf,
        });
    }
    Ok(out)
}
