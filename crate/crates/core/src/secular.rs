//! Bound states for an arbitrary self-adjoint extension λ.
//!
//! Near the origin the boundary condition fixes b_m/a_m = λ(2κ)^{2|j|}.
//! At infinity the eˣ pieces of both Kummer functions must cancel:
//! a_m Γ(b)/Γ(a) + b_m Γ(b′)/Γ(a′) = 0. Together:
//!
//! F(κ) = Γ(b)/Γ(a) + λ(2κ)^{2|j|} Γ(b′)/Γ(a′) = 0,
//!
//! written with 1/Γ so that it is entire in κ. λ = 0 reduces to the poles of
//! Γ(a) (regular ladder) and λ = ∞ to those of Γ(a′) (irregular ladder).
//! Roots are searched in t = m_e η′/κ, where both ladders are unit spaced.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::model::PhysicalParams;
use crate::specfun::{gamma, reciprocal_gamma};
use crate::{Error, Result};

/// Sampling density of the bracketing scan, per unit of t.
pub const SCAN_SAMPLES_PER_UNIT: f64 = 1.0e4;
/// Accepted |normalized residual| at a returned root.
pub const ROOT_RESIDUAL_TOL: f64 = 1.0e-10;

/// Self-adjoint extension parameter, −∞ < λ ≤ ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtensionParam {
    Finite(f64),
    Infinite,
}

impl ExtensionParam {
    pub fn finite(lambda: f64) -> Result<Self> {
        if lambda.is_finite() {
            Ok(ExtensionParam::Finite(lambda))
        } else if lambda == f64::INFINITY {
            Ok(ExtensionParam::Infinite)
        } else {
            Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
            })
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtensionParam::Infinite)
    }

    /// λ as an f64, with +∞ for the sentinel.
    pub fn value(&self) -> f64 {
        match *self {
            ExtensionParam::Finite(l) => l,
            ExtensionParam::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for ExtensionParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionParam::Finite(l) => write!(f, "{l}"),
            ExtensionParam::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtensionParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "inf" | "+inf" | "infinity" | "+infinity" | "Inf" | "INF" | "∞" => {
                Ok(ExtensionParam::Infinite)
            }
            _ => {
                let v: f64 = t.parse().map_err(|_| Error::InvalidParameter {
                    name: "lambda",
                    value: f64::NAN,
                })?;
                ExtensionParam::finite(v)
            }
        }
    }
}

/// Parameters of the two Kummer functions in the radial solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerParams {
    pub kappa: f64,
    /// |j|
    pub j_abs: f64,
    pub a: f64,
    pub b: f64,
    pub a_prime: f64,
    pub b_prime: f64,
    /// t = m_e η′/κ
    pub t: f64,
    pub l_plus: f64,
    pub l_minus: f64,
}

impl KummerParams {
    pub fn new(kappa: f64, j: f64, params: &PhysicalParams) -> Result<Self> {
        if !(kappa > 0.0) || !kappa.is_finite() {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: kappa,
            });
        }
        let t = params.coulomb_scale() / kappa;
        Ok(Self::from_t(kappa, libm::fabs(j), t))
    }

    fn from_t(kappa: f64, j_abs: f64, t: f64) -> Self {
        Self {
            kappa,
            j_abs,
            a: 0.5 + j_abs - t,
            b: 1.0 + 2.0 * j_abs,
            a_prime: 0.5 - j_abs - t,
            b_prime: 1.0 - 2.0 * j_abs,
            t,
            l_plus: j_abs + t,
            l_minus: j_abs - t,
        }
    }

    /// Regular level n: a = −(n − 1) exactly so ₁F₁(a, b, x) is a polynomial.
    pub fn regular_level(n: u32, j: f64, params: &PhysicalParams) -> Result<Self> {
        let j_abs = libm::fabs(j);
        let t = n as f64 - 0.5 + j_abs;
        let kappa = params.coulomb_scale() / t;
        let mut kp = Self::from_t(kappa, j_abs, t);
        kp.a = 1.0 - n as f64;
        Ok(kp)
    }

    /// Irregular level n: a′ = −(n − 1) exactly; needs |j| < 1/2.
    pub fn irregular_level(n: u32, j: f64, params: &PhysicalParams) -> Result<Self> {
        let j_abs = libm::fabs(j);
        if j_abs >= 0.5 {
            return Err(Error::Sector { j });
        }
        let t = n as f64 - 0.5 - j_abs;
        let kappa = params.coulomb_scale() / t;
        let mut kp = Self::from_t(kappa, j_abs, t);
        kp.a_prime = 1.0 - n as f64;
        Ok(kp)
    }

    /// x = 2κr
    pub fn x(&self, r: f64) -> f64 {
        2.0 * self.kappa * r
    }
}

/// Coefficients of the regular (a_m) and irregular (b_m) solutions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionCoefficients {
    pub a_m: f64,
    pub b_m: f64,
}

impl SolutionCoefficients {
    pub const REGULAR: Self = Self { a_m: 1.0, b_m: 0.0 };
    pub const IRREGULAR: Self = Self { a_m: 0.0, b_m: 1.0 };
}

/// A bound state of the extension λ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecularRoot {
    /// 1-based, ordered by decreasing κ.
    pub index: usize,
    pub kappa: f64,
    /// Normalized secular function at the root.
    pub residual: f64,
    pub lambda: ExtensionParam,
    pub j: f64,
}

fn check_sector(lambda: ExtensionParam, j: f64) -> Result<()> {
    let needs_sector = !matches!(lambda, ExtensionParam::Finite(l) if l == 0.0);
    if needs_sector && libm::fabs(j) >= 0.5 {
        return Err(Error::Sector { j });
    }
    Ok(())
}

/// b_m / a_m = λ(2κ)^{2|j|} imposed by the boundary condition at the origin.
pub fn coefficient_ratio(kappa: f64, lambda: ExtensionParam, j: f64, _params: &PhysicalParams) -> Result<f64> {
    if libm::fabs(j) >= 0.5 {
        return Err(Error::Sector { j });
    }
    if !(kappa > 0.0) {
        return Err(Error::InvalidParameter {
            name: "kappa",
            value: kappa,
        });
    }
    match lambda {
        ExtensionParam::Finite(l) => Ok(l * libm::pow(2.0 * kappa, 2.0 * libm::fabs(j))),
        ExtensionParam::Infinite => Err(Error::Domain {
            what: "coefficient ratio needs finite lambda",
            value: f64::INFINITY,
        }),
    }
}

/// Both pieces of the secular function and its normalization scale.
#[derive(Debug, Clone, Copy)]
struct SecularTerms {
    value: f64,
    scale: f64,
}

/// Precomputed constants for one (λ, j) pair.
#[derive(Debug, Clone, Copy)]
struct SecularProblem {
    lambda: ExtensionParam,
    j_abs: f64,
    gamma_b: f64,
    gamma_b_prime: f64,
    coulomb: f64,
}

impl SecularProblem {
    fn new(lambda: ExtensionParam, j: f64, params: &PhysicalParams) -> Result<Self> {
        check_sector(lambda, j)?;
        let j_abs = libm::fabs(j);
        let gamma_b = gamma(1.0 + 2.0 * j_abs)?;
        let gamma_b_prime = match lambda {
            ExtensionParam::Finite(0.0) => 0.0,
            _ => gamma(1.0 - 2.0 * j_abs)?,
        };
        Ok(Self {
            lambda,
            j_abs,
            gamma_b,
            gamma_b_prime,
            coulomb: params.coulomb_scale(),
        })
    }

    /// Secular function at κ with t = m_e η′/κ supplied separately so the
    /// scan can step uniformly in t.
    fn eval(&self, kappa: f64, t: f64) -> SecularTerms {
        let a = 0.5 + self.j_abs - t;
        let a_prime = 0.5 - self.j_abs - t;
        match self.lambda {
            ExtensionParam::Infinite => SecularTerms {
                value: self.gamma_b_prime * reciprocal_gamma(a_prime),
                scale: libm::fabs(self.gamma_b_prime),
            },
            ExtensionParam::Finite(l) => {
                let regular = self.gamma_b * reciprocal_gamma(a);
                if l == 0.0 {
                    return SecularTerms {
                        value: regular,
                        scale: libm::fabs(self.gamma_b),
                    };
                }
                let weight = l * libm::pow(2.0 * kappa, 2.0 * self.j_abs);
                SecularTerms {
                    value: regular + weight * self.gamma_b_prime * reciprocal_gamma(a_prime),
                    scale: libm::fabs(self.gamma_b) + libm::fabs(weight * self.gamma_b_prime),
                }
            }
        }
    }

    fn eval_t(&self, t: f64) -> SecularTerms {
        self.eval(self.coulomb / t, t)
    }
}

/// Γ(b)/Γ(a) + λ(2κ)^{2|j|} Γ(b′)/Γ(a′), or Γ(b′)/Γ(a′) for λ = ∞.
pub fn secular_function(kappa: f64, lambda: ExtensionParam, j: f64, params: &PhysicalParams) -> Result<f64> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidParameter {
            name: "kappa",
            value: kappa,
        });
    }
    let problem = SecularProblem::new(lambda, j, params)?;
    Ok(problem.eval(kappa, params.coulomb_scale() / kappa).value)
}

/// The secular function divided by |Γ(b)| + |λ(2κ)^{2|j|}Γ(b′)|, so that
/// residuals are comparable across λ and κ.
pub fn normalized_secular(kappa: f64, lambda: ExtensionParam, j: f64, params: &PhysicalParams) -> Result<f64> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidParameter {
            name: "kappa",
            value: kappa,
        });
    }
    let problem = SecularProblem::new(lambda, j, params)?;
    let terms = problem.eval(kappa, params.coulomb_scale() / kappa);
    Ok(terms.value / terms.scale)
}

/// Bisects a sign change of `f` on [lo, hi] down to adjacent doubles.
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, mut f_lo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    if libm::fabs(f(lo)) <= libm::fabs(f(hi)) {
        lo
    } else {
        hi
    }
}

/// The `count` most bound roots (smallest t, largest κ) of the secular
/// function for extension λ, ordered by decreasing κ.
///
/// Brackets come from sampling t = m_e η′/κ on a uniform grid of spacing
/// 1/[`SCAN_SAMPLES_PER_UNIT`] up to t = 10·(count + 1); each is bisected to
/// adjacent doubles. Fewer than `count` roots are returned only when the
/// scan range holds fewer (e.g. no Coulomb attraction).
pub fn solve_secular(
    lambda: ExtensionParam,
    j: f64,
    params: &PhysicalParams,
    count: usize,
) -> Result<Vec<SecularRoot>> {
    if count == 0 {
        return Err(Error::InvalidParameter {
            name: "count",
            value: 0.0,
        });
    }
    let problem = SecularProblem::new(lambda, j, params)?;
    if problem.coulomb == 0.0 {
        return solve_without_coulomb(&problem, j);
    }

    let f = |t: f64| problem.eval_t(t).value;
    let step = 1.0 / SCAN_SAMPLES_PER_UNIT;
    let samples = (10.0 * (count as f64 + 1.0) * SCAN_SAMPLES_PER_UNIT) as usize;

    let mut roots_t = Vec::with_capacity(count);
    let mut prev_t = step;
    let mut prev = f(prev_t);
    if prev == 0.0 {
        roots_t.push(prev_t);
    }
    for i in 2..=samples {
        if roots_t.len() == count {
            break;
        }
        let t = i as f64 * step;
        let cur = f(t);
        if cur == 0.0 {
            roots_t.push(t);
        } else if prev != 0.0 && (cur < 0.0) != (prev < 0.0) {
            roots_t.push(bisect(f, prev_t, t, prev));
        }
        prev_t = t;
        prev = cur;
    }

    let mut roots = Vec::with_capacity(roots_t.len());
    for (i, t) in roots_t.into_iter().enumerate() {
        let terms = problem.eval_t(t);
        let residual = terms.value / terms.scale;
        if !(libm::fabs(residual) <= ROOT_RESIDUAL_TOL) {
            return Err(Error::Convergence {
                what: "secular root refinement",
                value: residual,
            });
        }
        roots.push(SecularRoot {
            index: i + 1,
            kappa: problem.coulomb / t,
            residual,
            lambda,
            j,
        });
    }
    Ok(roots)
}

/// η′ = 0: t ≡ 0 and the condition is solvable in closed form,
/// (2κ)^{2|j|} = −Γ(b)Γ(a′) / (λ Γ(b′) Γ(a)) with a = 1/2 + |j|, a′ = 1/2 − |j|.
fn solve_without_coulomb(problem: &SecularProblem, j: f64) -> Result<Vec<SecularRoot>> {
    let l = match problem.lambda {
        ExtensionParam::Finite(l) if l != 0.0 => l,
        _ => return Ok(Vec::new()),
    };
    let j_abs = problem.j_abs;
    if j_abs == 0.0 {
        return Ok(Vec::new());
    }
    let regular = problem.gamma_b * reciprocal_gamma(0.5 + j_abs);
    let irregular = problem.gamma_b_prime * reciprocal_gamma(0.5 - j_abs);
    let power = -regular / (l * irregular);
    if !(power > 0.0) {
        return Ok(Vec::new());
    }
    let kappa = 0.5 * libm::pow(power, 1.0 / (2.0 * j_abs));
    let terms = problem.eval(kappa, 0.0);
    Ok(alloc::vec![SecularRoot {
        index: 1,
        kappa,
        residual: terms.value / terms.scale,
        lambda: problem.lambda,
        j,
    }])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atomic() -> PhysicalParams {
        PhysicalParams::atomic()
    }

    #[test]
    fn ratio_examples() {
        let p = atomic();
        assert_eq!(coefficient_ratio(0.7, ExtensionParam::Finite(0.0), 0.3, &p).unwrap(), 0.0);
        assert_eq!(coefficient_ratio(0.5, ExtensionParam::Finite(1.0), 0.2, &p).unwrap(), 1.0);
        let r = coefficient_ratio(1.0, ExtensionParam::Finite(2.0), 0.25, &p).unwrap();
        assert!(libm::fabs(r - 2.0 * libm::sqrt(2.0)) < 1e-15);
        assert!(matches!(
            coefficient_ratio(1.0, ExtensionParam::Finite(1.0), 0.5, &p),
            Err(Error::Sector { .. })
        ));
    }

    #[test]
    fn ladders_are_zeros() {
        let p = atomic();
        for n in 1..=5 {
            let k0 = 1.0 / (n as f64 - 0.5 + 0.3);
            let f = secular_function(k0, ExtensionParam::Finite(0.0), 0.3, &p).unwrap();
            assert!(libm::fabs(f) < 1e-14, "n={n}: {f}");
            let kinf = 1.0 / (n as f64 - 0.5 - 0.3);
            let g = secular_function(kinf, ExtensionParam::Infinite, 0.3, &p).unwrap();
            assert!(libm::fabs(g) < 1e-14, "n={n}: {g}");
        }
        // strictly between two regular levels the function is nonzero
        let mid = 1.0 / 1.3;
        assert!(libm::fabs(secular_function(mid, ExtensionParam::Finite(0.0), 0.3, &p).unwrap()) > 0.1);
    }

    #[test]
    fn solver_examples() {
        let p = atomic();
        let roots = solve_secular(ExtensionParam::Finite(0.0), 0.2, &p, 3).unwrap();
        let expected = [1.0 / 0.7, 1.0 / 1.7, 1.0 / 2.7];
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip(expected) {
            assert!(libm::fabs(r.kappa / e - 1.0) < 1e-12);
        }
        let roots = solve_secular(ExtensionParam::Infinite, 0.2, &p, 1).unwrap();
        assert!(libm::fabs(roots[0].kappa * 0.3 - 1.0) < 1e-12);
    }

    #[test]
    fn extension_param_parsing() {
        assert_eq!("inf".parse::<ExtensionParam>().unwrap(), ExtensionParam::Infinite);
        assert_eq!("-1.5".parse::<ExtensionParam>().unwrap(), ExtensionParam::Finite(-1.5));
        assert!("nan".parse::<ExtensionParam>().is_err());
        assert!("x".parse::<ExtensionParam>().is_err());
    }

    #[test]
    fn sector_enforced() {
        let p = atomic();
        assert!(solve_secular(ExtensionParam::Finite(1.0), 0.6, &p, 1).is_err());
        assert!(solve_secular(ExtensionParam::Infinite, 0.5, &p, 1).is_err());
        // λ = 0 is the ordinary regular problem for any j
        let roots = solve_secular(ExtensionParam::Finite(0.0), 0.75, &p, 1).unwrap();
        assert!(libm::fabs(roots[0].kappa - 0.8) < 1e-12);
        assert!(solve_secular(ExtensionParam::Finite(0.0), 0.2, &p, 0).is_err());
    }

    #[test]
    fn kummer_params_identities() {
        let p = atomic();
        let kp = KummerParams::new(0.8, -0.3, &p).unwrap();
        assert!(kp.b > 1.0);
        assert!(kp.b_prime > 0.0 && kp.b_prime <= 1.0);
        let lhs = kp.a - kp.b + kp.j_abs;
        let rhs = kp.a_prime - kp.b_prime - kp.j_abs;
        assert!(libm::fabs(lhs - rhs) < 1e-15);
        assert_eq!(KummerParams::regular_level(3, 0.2, &p).unwrap().a, -2.0);
        assert_eq!(KummerParams::irregular_level(2, 0.2, &p).unwrap().a_prime, -1.0);
        assert!(KummerParams::new(0.0, 0.2, &p).is_err());
    }
}
