//! Real special-function kernel: Γ, 1/Γ and the Kummer function ₁F₁.
//!
//! Everything here is plain double precision on the real line. ₁F₁ is summed
//! from its power series for |x| ≤ [`X_SWITCH`] and from the large-argument
//! expansion beyond that, with Kummer's transformation handling x < 0.

use core::f64::consts::PI;

use crate::{Error, Result};

/// Crossover between the power series and the asymptotic expansion of ₁F₁.
pub const X_SWITCH: f64 = 30.0;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Target accuracy for series and asymptotic summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalAccuracy {
    rel_tol: f64,
    max_terms: usize,
}

impl EvalAccuracy {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || !rel_tol.is_finite() {
            return Err(Error::InvalidParameter {
                name: "rel_tol",
                value: rel_tol,
            });
        }
        if max_terms == 0 {
            return Err(Error::InvalidParameter {
                name: "max_terms",
                value: 0.0,
            });
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for EvalAccuracy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 2000,
        }
    }
}

pub(crate) fn is_nonpositive_integer(z: f64) -> bool {
    z <= 0.0 && libm::floor(z) == z
}

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    if libm::floor(x) == x {
        return 0.0;
    }
    let y = x - 2.0 * libm::floor(x / 2.0);
    if y < 0.25 {
        libm::sin(PI * y)
    } else if y < 0.75 {
        libm::cos(PI * (y - 0.5))
    } else if y < 1.25 {
        libm::sin(PI * (1.0 - y))
    } else if y < 1.75 {
        -libm::cos(PI * (y - 1.5))
    } else {
        -libm::sin(PI * (2.0 - y))
    }
}

/// cos(πx) with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    let y = libm::fabs(x) - 2.0 * libm::floor(libm::fabs(x) / 2.0);
    if y < 0.25 {
        libm::cos(PI * y)
    } else if y < 0.75 {
        libm::sin(PI * (0.5 - y))
    } else if y < 1.25 {
        -libm::cos(PI * (y - 1.0))
    } else if y < 1.75 {
        libm::sin(PI * (y - 1.5))
    } else {
        libm::cos(PI * (2.0 - y))
    }
}

/// Lanczos sum for z ≥ 0.5.
fn gamma_lanczos(z: f64) -> f64 {
    let z = z - 1.0;
    let mut series = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // split the power so t^(z+1/2) does not overflow before Γ does
    let half = libm::pow(t, 0.5 * (z + 0.5));
    SQRT_2PI * half * libm::exp(-t) * half * series
}

/// Γ(z) for real z.
///
/// Relative error stays below 1e-12 for |z| ≤ 50. Nonpositive integers are
/// poles and return [`Error::Pole`].
pub fn gamma(z: f64) -> Result<f64> {
    if z.is_nan() {
        return Err(Error::InvalidParameter {
            name: "z",
            value: z,
        });
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { z });
    }
    if let Some(f) = small_factorial(z) {
        return Ok(f);
    }
    if z < 0.5 {
        Ok(PI / (sin_pi(z) * gamma_lanczos(1.0 - z)))
    } else {
        Ok(gamma_lanczos(z))
    }
}

/// Γ(n) = (n − 1)! exactly for integers 1 ≤ n ≤ 23.
fn small_factorial(z: f64) -> Option<f64> {
    if !(1.0..=23.0).contains(&z) || libm::floor(z) != z {
        return None;
    }
    let mut f = 1.0;
    let mut k = 2.0;
    while k < z {
        f *= k;
        k += 1.0;
    }
    Some(f)
}

/// 1/Γ(z), an entire function: exactly zero at 0, −1, −2, …
pub fn reciprocal_gamma(z: f64) -> f64 {
    if is_nonpositive_integer(z) {
        return 0.0;
    }
    if let Some(f) = small_factorial(z) {
        return 1.0 / f;
    }
    if z < 0.5 {
        sin_pi(z) * gamma_lanczos(1.0 - z) / PI
    } else {
        1.0 / gamma_lanczos(z)
    }
}

/// Result of summing a power series together with a rounding-error estimate.
#[derive(Debug, Clone, Copy)]
struct SeriesSum {
    value: f64,
    largest: f64,
    /// largest |term| / |sum|
    cancellation: f64,
}

impl SeriesSum {
    /// Rounding error is about ε·largest term; judged relative to |sum|,
    /// or absolutely once |sum| < 1 so zeros of M are not rejected.
    fn rounding_ok(&self, acc: &EvalAccuracy) -> bool {
        self.largest * f64::EPSILON * 2.0 <= acc.rel_tol * libm::fabs(self.value).max(1.0)
    }
}

/// Σ (a)_k x^k / ((b)_k k!), terminating exactly for nonpositive integer a.
fn power_series(a: f64, b: f64, x: f64, acc: &EvalAccuracy) -> Result<SeriesSum> {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut largest = 1.0_f64;
    for k in 0..acc.max_terms {
        let kf = k as f64;
        term *= (a + kf) * x / ((b + kf) * (kf + 1.0));
        if term == 0.0 {
            return Ok(finish_series(sum, largest));
        }
        sum += term;
        largest = largest.max(libm::fabs(term));
        // only stop once the term ratio is below one for good
        let past_peak = kf + 1.0 > libm::fabs(x) && kf + 1.0 > -a;
        if past_peak && libm::fabs(term) <= acc.rel_tol * libm::fabs(sum) * 0.5 {
            return Ok(finish_series(sum, largest));
        }
    }
    Err(Error::AccuracyUnreachable {
        terms: acc.max_terms,
    })
}

fn finish_series(sum: f64, largest: f64) -> SeriesSum {
    let cancellation = if sum == 0.0 {
        f64::INFINITY
    } else {
        largest / libm::fabs(sum)
    };
    SeriesSum {
        value: sum,
        largest,
        cancellation,
    }
}

/// Σ (p)_k (q)_k z^k / k! summed until terms are below `tol`·|sum| or begin
/// to grow. Returns (sum, smallest |term| seen, converged).
fn asymptotic_series(p: f64, q: f64, z: f64, tol: f64, max_terms: usize) -> (f64, f64, bool) {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut smallest = 1.0_f64;
    for k in 0..max_terms {
        let kf = k as f64;
        let next = term * (p + kf) * (q + kf) * z / (kf + 1.0);
        if next == 0.0 {
            return (sum, 0.0, true);
        }
        if libm::fabs(next) > libm::fabs(term) && k > 0 {
            return (sum, smallest, false);
        }
        term = next;
        sum += term;
        smallest = smallest.min(libm::fabs(term));
        if libm::fabs(term) <= tol * libm::fabs(sum) * 0.5 {
            return (sum, smallest, true);
        }
    }
    (sum, smallest, false)
}

/// Leading coefficients of the large-x form of ₁F₁(a, b, x):
/// ₁F₁ ≈ growing·eˣ + decaying, with growing = Γ(b)/Γ(a)·x^{a−b} and
/// decaying = Γ(b)/Γ(b−a)·(−x)^{−a}.
///
/// On the positive real axis (−x)^{−a} is read as its real part
/// cos(πa)·x^{−a}; for integer a that is exact, otherwise the term is
/// exponentially subdominant anyway.
pub fn kummer_asymptotic(a: f64, b: f64, x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "asymptotic argument x",
            value: x,
        });
    }
    let gamma_b = gamma(b)?;
    let growing = gamma_b * reciprocal_gamma(a) * libm::pow(x, a - b);
    let decaying = gamma_b * reciprocal_gamma(b - a) * cos_pi(a) * libm::pow(x, -a);
    Ok((growing, decaying))
}

/// ₁F₁(a, b, x) for x > 0 from the full large-argument expansion.
///
/// Fails with [`Error::AccuracyUnreachable`] when the divergent expansion
/// bottoms out before reaching the requested accuracy.
pub fn asymptotic_1f1(a: f64, b: f64, x: f64, acc: &EvalAccuracy) -> Result<f64> {
    let (growing, decaying) = kummer_asymptotic(a, b, x)?;
    let mut total = 0.0;
    let mut dominant_ok = true;
    if growing != 0.0 {
        let (s1, _, ok) = asymptotic_series(b - a, 1.0 - a, 1.0 / x, acc.rel_tol, acc.max_terms);
        dominant_ok = ok;
        total += growing * libm::exp(x) * s1;
    }
    if !dominant_ok {
        return Err(Error::AccuracyUnreachable {
            terms: acc.max_terms,
        });
    }
    if decaying != 0.0 {
        let (s2, smallest, ok) =
            asymptotic_series(a, a - b + 1.0, -1.0 / x, acc.rel_tol, acc.max_terms);
        let contribution = decaying * s2;
        let slack = libm::fabs(decaying) * smallest;
        if !ok && slack > acc.rel_tol * libm::fabs(total + contribution) {
            return Err(Error::AccuracyUnreachable {
                terms: acc.max_terms,
            });
        }
        total += contribution;
    }
    Ok(total)
}

fn series_checked(a: f64, b: f64, x: f64, acc: &EvalAccuracy) -> Result<f64> {
    let s = power_series(a, b, x, acc)?;
    if s.rounding_ok(acc) {
        Ok(s.value)
    } else {
        Err(Error::AccuracyUnreachable {
            terms: acc.max_terms,
        })
    }
}

/// ₁F₁ for x ≥ 0.
fn kummer_nonnegative(a: f64, b: f64, x: f64, acc: &EvalAccuracy) -> Result<f64> {
    if is_nonpositive_integer(a) {
        return Ok(power_series(a, b, x, acc)?.value);
    }
    if x <= X_SWITCH {
        return series_checked(a, b, x, acc);
    }
    asymptotic_1f1(a, b, x, acc).or_else(|_| series_checked(a, b, x, acc))
}

/// Confluent hypergeometric function ₁F₁(a, b, x) = M(a, b, x).
///
/// For nonpositive integer `a` the series terminates and the polynomial is
/// returned exactly. Negative `x` goes through Kummer's transformation
/// M(a, b, x) = eˣ M(b − a, b, −x) whenever that loses fewer digits than the
/// alternating series.
pub fn kummer_1f1(a: f64, b: f64, x: f64, acc: &EvalAccuracy) -> Result<f64> {
    if is_nonpositive_integer(b) {
        return Err(Error::Pole { z: b });
    }
    if !a.is_finite() || !b.is_finite() || !x.is_finite() {
        return Err(Error::InvalidParameter {
            name: "kummer argument",
            value: if x.is_finite() { a + b } else { x },
        });
    }
    if x == 0.0 || a == 0.0 {
        return Ok(1.0);
    }
    if a == b {
        return Ok(libm::exp(x));
    }
    if is_nonpositive_integer(a) {
        // finite polynomial: no truncation, rounding bounded by the terms
        return Ok(power_series(a, b, x, acc)?.value);
    }
    if x > 0.0 {
        return kummer_nonnegative(a, b, x, acc);
    }

    let c = b - a;
    if is_nonpositive_integer(c) || -x > X_SWITCH {
        return Ok(libm::exp(x) * kummer_nonnegative(c, b, -x, acc)?);
    }
    let direct = power_series(a, b, x, acc);
    let flipped = power_series(c, b, -x, acc);
    match (direct, flipped) {
        (Ok(d), Ok(f)) => {
            if d.cancellation <= f.cancellation {
                pick(d, acc)
            } else {
                Ok(libm::exp(x) * pick(f, acc)?)
            }
        }
        (Ok(d), Err(_)) => pick(d, acc),
        (Err(_), Ok(f)) => Ok(libm::exp(x) * pick(f, acc)?),
        (Err(e), Err(_)) => Err(e),
    }
}

fn pick(s: SeriesSum, acc: &EvalAccuracy) -> Result<f64> {
    if s.rounding_ok(acc) {
        Ok(s.value)
    } else {
        Err(Error::AccuracyUnreachable {
            terms: acc.max_terms,
        })
    }
}
