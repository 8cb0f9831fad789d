//! Radial wavefunctions F(x) = a_m x^{|j|} e^{−x/2} ₁F₁(a, b, x)
//! + b_m x^{−|j|} e^{−x/2} ₁F₁(a′, b′, x), with x = 2κr.
//!
//! Closed-form levels have terminating ₁F₁ and can be evaluated anywhere.
//! A generic bound state (finite λ) is the combination that decays at
//! infinity; its two terms each grow like e^{x/2} and cancel, so beyond
//! [`MATCH_X`] it is continued by integrating the radial equation inward
//! from its large-x expansion instead.

use alloc::vec::Vec;

use crate::model::{Branch, PhysicalParams};
use crate::secular::{KummerParams, SecularRoot, SolutionCoefficients};
use crate::specfun::{gamma, kummer_1f1, reciprocal_gamma, EvalAccuracy};
use crate::{Error, Result};

/// Largest x at which the two-term ₁F₁ form of a decaying solution is used.
pub const MATCH_X: f64 = 12.0;
/// Largest x accepted by [`small_r_expansion`].
pub const SMALL_X_LIMIT: f64 = 0.1;
/// Relative accuracy asked of each ₁F₁ in the two-term form; below
/// [`MATCH_X`] cancellation costs at most about e^x·ε of it.
pub const TWO_TERM_REL_TOL: f64 = 1e-9;
const RK4_STEP: f64 = 0.01;
const TAIL_TOL: f64 = 1e-16;

/// Sampled radial function.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    /// (r, F(r)) with r strictly increasing.
    pub samples: Vec<(f64, f64)>,
    pub kappa: f64,
    pub coeffs: SolutionCoefficients,
    pub j: f64,
}

/// F₀ = lim r^{|j|} F and F₁ = lim r^{−|j|}[F − F₀ r^{−|j|}].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryValues {
    pub f0: f64,
    pub f1: f64,
}

impl BoundaryValues {
    /// Relative mismatch of F₀ = λ·F₁, the boundary condition that makes
    /// λ = 0 the regular and λ = ∞ the irregular extension.
    pub fn closure_residual(&self, lambda: crate::ExtensionParam) -> f64 {
        match lambda {
            crate::ExtensionParam::Finite(l) => {
                let rhs = l * self.f1;
                let scale = libm::fabs(self.f0).max(libm::fabs(rhs));
                if scale == 0.0 {
                    0.0
                } else {
                    libm::fabs(self.f0 - rhs) / scale
                }
            }
            crate::ExtensionParam::Infinite => {
                let scale = libm::fabs(self.f0).max(libm::fabs(self.f1));
                if scale == 0.0 {
                    0.0
                } else {
                    libm::fabs(self.f1) / scale
                }
            }
        }
    }
}

/// F at radius r from explicit coefficients.
pub fn radial_solution(r: f64, coeffs: SolutionCoefficients, kp: &KummerParams) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain {
            what: "radius",
            value: r,
        });
    }
    two_term(kp.x(r), coeffs, kp)
}

fn two_term(x: f64, coeffs: SolutionCoefficients, kp: &KummerParams) -> Result<f64> {
    let acc = EvalAccuracy::new(TWO_TERM_REL_TOL, 4000)?;
    let damp = libm::exp(-0.5 * x);
    let mut value = 0.0;
    if coeffs.a_m != 0.0 {
        value += coeffs.a_m * libm::pow(x, kp.j_abs) * damp * kummer_1f1(kp.a, kp.b, x, &acc)?;
    }
    if coeffs.b_m != 0.0 {
        value += coeffs.b_m
            * libm::pow(x, -kp.j_abs)
            * damp
            * kummer_1f1(kp.a_prime, kp.b_prime, x, &acc)?;
    }
    Ok(value)
}

/// Second-order product expansion of e^{−x/2}₁F₁(a, b, x) near x = 0.
fn damped_kummer_quadratic(a: f64, b: f64, x: f64) -> f64 {
    (x * x - 4.0 * x + 8.0) / (16.0 * b * (b + 1.0))
        * ((a * a + a) * x * x + 2.0 * (a * x + b) * (b + 1.0))
}

/// Small-r form of F, good to O(x³) for x = 2κr ≤ 0.1.
pub fn small_r_expansion(r: f64, coeffs: SolutionCoefficients, kp: &KummerParams) -> Result<f64> {
    let x = kp.x(r);
    if !(x > 0.0) || x > SMALL_X_LIMIT {
        return Err(Error::Domain {
            what: "small-r expansion needs 0 < 2κr ≤ 0.1",
            value: x,
        });
    }
    let mut value = 0.0;
    if coeffs.a_m != 0.0 {
        value += coeffs.a_m * libm::pow(x, kp.j_abs) * damped_kummer_quadratic(kp.a, kp.b, x);
    }
    if coeffs.b_m != 0.0 {
        value += coeffs.b_m
            * libm::pow(x, -kp.j_abs)
            * damped_kummer_quadratic(kp.a_prime, kp.b_prime, x);
    }
    Ok(value)
}

/// Boundary values at the origin. Every subleading piece of F₁ carries a
/// positive power r^{1−2|j|} or r^{2−2|j|}, so only a_m(2κ)^{|j|} survives.
pub fn boundary_values(coeffs: SolutionCoefficients, kp: &KummerParams) -> Result<BoundaryValues> {
    if kp.j_abs >= 0.5 {
        return Err(Error::Sector { j: kp.j_abs });
    }
    let two_kappa = 2.0 * kp.kappa;
    Ok(BoundaryValues {
        f0: coeffs.b_m * libm::pow(two_kappa, -kp.j_abs),
        f1: coeffs.a_m * libm::pow(two_kappa, kp.j_abs),
    })
}

/// r^{−|j|}[F(r) − F₀ r^{−|j|}] at finite r from the expanded coefficients;
/// tends to F₁ as r → 0.
pub fn boundary_expansion(r: f64, coeffs: SolutionCoefficients, kp: &KummerParams) -> Result<f64> {
    let bv = boundary_values(coeffs, kp)?;
    let j = kp.j_abs;
    let two_kappa = 2.0 * kp.kappa;
    let (ap, bp) = (kp.a_prime, kp.b_prime);
    let first = coeffs.b_m * libm::pow(two_kappa, 1.0 - j) * (ap / bp - 0.5) * libm::pow(r, 1.0 - 2.0 * j);
    let second = coeffs.b_m
        * 0.5
        * libm::pow(two_kappa, 2.0 - j)
        * (0.25 - ap / bp + ap / (bp * bp + bp) + ap * ap / (bp * bp + bp))
        * libm::pow(r, 2.0 - 2.0 * j);
    let regular = bv.f1 * (kp.a / kp.b - 0.5) * two_kappa * r;
    Ok(bv.f1 + first + second + regular)
}

/// Coefficients of x^{|j|}e^{−x/2}U(a, b, x), the unique combination that
/// decays at infinity: a_m = Γ(−2|j|)/Γ(a′), b_m = Γ(2|j|)/Γ(a).
pub fn decaying_coefficients(kp: &KummerParams) -> Result<SolutionCoefficients> {
    if kp.j_abs >= 0.5 {
        return Err(Error::Sector { j: kp.j_abs });
    }
    if kp.j_abs == 0.0 {
        return Err(Error::Domain {
            what: "j = 0 (regular and irregular solutions coincide)",
            value: 0.0,
        });
    }
    Ok(SolutionCoefficients {
        a_m: gamma(-2.0 * kp.j_abs)? * reciprocal_gamma(kp.a_prime),
        b_m: gamma(2.0 * kp.j_abs)? * reciprocal_gamma(kp.a),
    })
}

/// Large-x expansion of x^{|j|}e^{−x/2}U(a, b, x) and its x-derivative.
fn decaying_tail(kp: &KummerParams, x: f64) -> Option<(f64, f64)> {
    let p = kp.j_abs - kp.a;
    let mut c = 1.0_f64;
    let mut sum_f = 1.0;
    let mut sum_d = p / x - 0.5;
    for k in 0..400 {
        let kf = k as f64;
        let next = -c * (kp.a + kf) * (kp.a_prime + kf) / ((kf + 1.0) * x);
        let converged = libm::fabs(next) <= TAIL_TOL * libm::fabs(sum_f);
        if !converged && libm::fabs(next) > libm::fabs(c) && k > 0 {
            return None;
        }
        c = next;
        sum_f += c;
        sum_d += c * ((p - kf - 1.0) / x - 0.5);
        if converged {
            let pref = libm::exp(-0.5 * x + p * libm::log(x));
            return Some((pref * sum_f, pref * sum_d));
        }
    }
    None
}

/// Evaluator for the normalizable solution at an arbitrary κ (0 < |j| < 1/2).
#[derive(Debug, Clone, Copy)]
pub struct DecayingSolution {
    kp: KummerParams,
    coeffs: SolutionCoefficients,
}

impl DecayingSolution {
    pub fn new(kp: KummerParams) -> Result<Self> {
        let coeffs = decaying_coefficients(&kp)?;
        Ok(Self { kp, coeffs })
    }

    pub fn coefficients(&self) -> SolutionCoefficients {
        self.coeffs
    }

    pub fn params(&self) -> &KummerParams {
        &self.kp
    }

    fn tail_start(&self, at_least: f64) -> Result<f64> {
        let mut x = at_least.max(40.0);
        while x < 5.0e3 {
            if decaying_tail(&self.kp, x).is_some() {
                return Ok(x);
            }
            x *= 1.5;
        }
        Err(Error::Convergence {
            what: "large-x expansion of the decaying solution",
            value: x,
        })
    }

    /// u″ = q(x)u with u = √x F.
    fn q(&self, x: f64) -> f64 {
        let j = self.kp.j_abs;
        (j * j - 0.25) / (x * x) - self.kp.t / x + 0.25
    }

    fn rk4(&self, x: f64, u: f64, du: f64, h: f64) -> (f64, f64) {
        let k1u = du;
        let k1d = self.q(x) * u;
        let xm = x + 0.5 * h;
        let k2u = du + 0.5 * h * k1d;
        let k2d = self.q(xm) * (u + 0.5 * h * k1u);
        let k3u = du + 0.5 * h * k2d;
        let k3d = self.q(xm) * (u + 0.5 * h * k2u);
        let xe = x + h;
        let k4u = du + h * k3d;
        let k4d = self.q(xe) * (u + h * k3u);
        (
            u + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
            du + h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d),
        )
    }

    /// F at each x in `xs` (ascending, positive).
    pub fn evaluate(&self, xs: &[f64]) -> Result<Vec<f64>> {
        let mut out = alloc::vec![0.0; xs.len()];
        let split = xs.partition_point(|&x| x <= MATCH_X);
        for (slot, &x) in out.iter_mut().zip(xs).take(split) {
            if !(x > 0.0) {
                return Err(Error::Domain {
                    what: "x = 2κr",
                    value: x,
                });
            }
            *slot = two_term(x, self.coeffs, &self.kp)?;
        }
        if split == xs.len() {
            return Ok(out);
        }

        let x_far = self.tail_start(0.0)?;
        let (f_far, df_far) = decaying_tail(&self.kp, x_far).ok_or(Error::Convergence {
            what: "large-x expansion of the decaying solution",
            value: x_far,
        })?;
        let sq = libm::sqrt(x_far);
        let mut x = x_far;
        let mut u = sq * f_far;
        let mut du = f_far / (2.0 * sq) + sq * df_far;

        for idx in (split..xs.len()).rev() {
            let target = xs[idx];
            if target >= x_far {
                out[idx] = match decaying_tail(&self.kp, target) {
                    Some((f, _)) => f,
                    None => {
                        return Err(Error::Convergence {
                            what: "large-x expansion of the decaying solution",
                            value: target,
                        })
                    }
                };
                continue;
            }
            let span = x - target;
            if span > 0.0 {
                let steps = libm::ceil(span / RK4_STEP).max(1.0) as usize;
                let h = -span / steps as f64;
                for s in 0..steps {
                    let xs_now = x + s as f64 * h;
                    let (nu, ndu) = self.rk4(xs_now, u, du, h);
                    u = nu;
                    du = ndu;
                }
                x = target;
            }
            out[idx] = u / libm::sqrt(target);
        }
        Ok(out)
    }
}

/// Geometric radial mesh r_min · q^i.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

impl ProfileGrid {
    /// r from 1e-7/κ to 40/κ, 4001 points.
    pub fn for_kappa(kappa: f64) -> Self {
        Self {
            r_min: 1e-7 / kappa,
            r_max: 40.0 / kappa,
            points: 4001,
        }
    }

    pub fn radii(&self) -> Result<Vec<f64>> {
        if !(self.r_min > 0.0) || !(self.r_max > self.r_min) || self.points < 3 {
            return Err(Error::InvalidParameter {
                name: "profile grid",
                value: self.r_min,
            });
        }
        let ratio = libm::log(self.r_max / self.r_min) / (self.points - 1) as f64;
        Ok((0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.r_max
                } else {
                    self.r_min * libm::exp(ratio * i as f64)
                }
            })
            .collect())
    }
}

/// Profile of the closed-form level n on `branch` (the ₁F₁ terminates).
pub fn level_profile(
    n: u32,
    j: f64,
    branch: Branch,
    params: &PhysicalParams,
    grid: Option<ProfileGrid>,
) -> Result<RadialProfile> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
        });
    }
    if params.coulomb_scale() == 0.0 {
        return Err(Error::InvalidParameter {
            name: "eta",
            value: 0.0,
        });
    }
    let (kp, coeffs) = match branch {
        Branch::Regular => (KummerParams::regular_level(n, j, params)?, SolutionCoefficients::REGULAR),
        Branch::Irregular => (
            KummerParams::irregular_level(n, j, params)?,
            SolutionCoefficients::IRREGULAR,
        ),
    };
    let grid = grid.unwrap_or_else(|| ProfileGrid::for_kappa(kp.kappa));
    let mut samples = Vec::with_capacity(grid.points);
    for r in grid.radii()? {
        samples.push((r, radial_solution(r, coeffs, &kp)?));
    }
    Ok(RadialProfile {
        samples,
        kappa: kp.kappa,
        coeffs,
        j,
    })
}

/// Profile of a bound state found by the secular solver (0 < |j| < 1/2).
pub fn secular_profile(
    root: &SecularRoot,
    params: &PhysicalParams,
    grid: Option<ProfileGrid>,
) -> Result<RadialProfile> {
    let kp = KummerParams::new(root.kappa, root.j, params)?;
    let solution = DecayingSolution::new(kp)?;
    let grid = grid.unwrap_or_else(|| ProfileGrid::for_kappa(kp.kappa));
    let radii = grid.radii()?;
    let xs: Vec<f64> = radii.iter().map(|&r| kp.x(r)).collect();
    let values = solution.evaluate(&xs)?;
    Ok(RadialProfile {
        samples: radii.into_iter().zip(values).collect(),
        kappa: kp.kappa,
        coeffs: solution.coefficients(),
        j: root.j,
    })
}

/// ∫|F|² r dr over the profile and the number of sign changes of F.
///
/// The integral uses composite Simpson in s = ln r (weight r²) plus the
/// power-law piece below r_min, so graded meshes handle the r^{−2|j|}
/// behaviour at the origin. Zero samples are skipped when counting nodes;
/// a touch without a sign change is not a node.
pub fn normalize_and_count_nodes(profile: &RadialProfile) -> Result<(f64, usize)> {
    let pts = &profile.samples;
    if pts.len() < 3 {
        return Err(Error::InvalidParameter {
            name: "profile length",
            value: pts.len() as f64,
        });
    }
    for w in pts.windows(2) {
        if !(w[1].0 > w[0].0) || !(w[0].0 > 0.0) {
            return Err(Error::InvalidParameter {
                name: "profile radii",
                value: w[1].0,
            });
        }
    }
    if pts.iter().any(|p| !p.1.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "profile value",
            value: f64::NAN,
        });
    }

    let s: Vec<f64> = pts.iter().map(|p| libm::log(p.0)).collect();
    let g: Vec<f64> = pts.iter().map(|p| p.1 * p.1 * p.0 * p.0).collect();
    let mut norm = 0.0;
    let mut i = 0;
    while i + 2 < pts.len() {
        let h0 = s[i + 1] - s[i];
        let h1 = s[i + 2] - s[i + 1];
        norm += (h0 + h1) / 6.0
            * ((2.0 - h1 / h0) * g[i] + (h0 + h1) * (h0 + h1) / (h0 * h1) * g[i + 1] + (2.0 - h0 / h1) * g[i + 2]);
        i += 2;
    }
    if i + 1 < pts.len() {
        norm += 0.5 * (s[i + 1] - s[i]) * (g[i] + g[i + 1]);
    }
    // ∫_0^{r0} F² r dr with F ∝ r^p fitted from the first two samples
    let (r0, f0) = pts[0];
    let (r1, f1) = pts[1];
    if f0 != 0.0 && f1 != 0.0 {
        let p = libm::log(libm::fabs(f1 / f0)) / libm::log(r1 / r0);
        if !(2.0 * p + 2.0 > 0.0) {
            return Err(Error::Domain {
                what: "profile not square-integrable at the origin, exponent",
                value: p,
            });
        }
        norm += f0 * f0 * r0 * r0 / (2.0 * p + 2.0);
    }

    let peak = pts.iter().fold(0.0_f64, |m, p| m.max(libm::fabs(p.1)));
    let mut nodes = 0;
    let mut last: Option<(f64, f64)> = None;
    for &(r, f) in pts {
        if f == 0.0 {
            continue;
        }
        if let Some((_, fl)) = last {
            if (fl < 0.0) != (f < 0.0) {
                if libm::fabs(f - fl) > 0.1 * peak {
                    return Err(Error::Resolution { r });
                }
                nodes += 1;
            }
        }
        last = Some((r, f));
    }
    Ok((norm, nodes))
}
