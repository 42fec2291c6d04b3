//! Normalized Bessel functions, the one-dimensional probability weight on
//! `[-1, 1]`, and the exponential kernel that replaces `e^{ixy}`.
//!
//! # The weight `Phi_k`
//!
//! For `k > 0` the density
//!
//! ```text
//!     Phi_k(t) = M_k (1+t)(1-t^2)^{k-1} = M_k (1-t)^{k-1} (1+t)^k,
//!     M_k = Gamma(k+1/2) / (Gamma(k) Gamma(1/2)),
//! ```
//!
//! is a probability measure on `[-1, 1]`. It is the one-dimensional
//! intertwining density: averaging `f(xt)` against `Phi_k(t) dt` maps ordinary
//! calculus to the reflection-weighted calculus. As `k -> 0` the mass
//! concentrates at `t = 1`, which is why every `k = 0` branch in the crate is
//! the classical one. [`JacobiRule`] packages Gauss–Jacobi nodes for `Phi_k`
//! (exponents `k-1` and `k`), so the endpoint singularity for `k < 1` is
//! absorbed into the rule and smooth integrands converge spectrally.
//!
//! # Normalized Bessel functions
//!
//! `j_a(z) = Gamma(a+1) (z/2)^{-a} J_a(z)` with `j_a(0) = 1`, even in `z`,
//! bounded by 1 on the real line for `a >= -1/2`. Three evaluation paths:
//! power series for `|z| <= 12`; for larger real argument either the
//! weighted-integral form `n_a int e^{izt} (1-t^2)^{a-1/2} dt` on a cached
//! Gauss–Jacobi rule (reference path, spectrally exact) or the Hankel
//! asymptotic expansion (fast path for transform matrices, absolute error
//! around 1e-12); for imaginary argument an all-positive series that never
//! cancels.
//!
//! # The kernel
//!
//! In one dimension, with `w = xy`,
//!
//! ```text
//!     E_k(ix, y) = j_{k-1/2}(w) + i w/(2k+1) j_{k+1/2}(w),
//! ```
//!
//! which also equals the quadrature form `int e^{iwt} Phi_k(t) dt`; the
//! agreement of the two routes is a verification target, not an assumption.
//! `|E_k(ix, y)| <= 1`, `E_0(ix, y) = e^{ixy}`, and the multi-dimensional
//! kernel is the product over axes. With both slots real the kernel is the
//! positive, exponentially growing object that appears inside translated heat
//! kernels; [`kernel_real_1d`] evaluates it through modified-Bessel series and
//! a cancellation-free sum/difference asymptotic for large arguments.

use num_complex::Complex64;

use crate::error::Error;
use crate::gamma::gamma;
use crate::measure::Multiplicity;
use crate::quad::{bucket_order, cached_jacobi};
use crate::Result;

/// Largest `|z|` handled by the plain power series before cancellation costs
/// more than a quadrature or asymptotic evaluation.
const SERIES_RADIUS: f64 = 12.0;

/// Largest argument for the all-positive modified series before `e^{|w|}`
/// pushes intermediate terms toward overflow.
const MODIFIED_SERIES_MAX: f64 = 600.0;

/// Normalization constant `M_k = Gamma(k+1/2) / (Gamma(k) Gamma(1/2))` of the
/// weight `Phi_k`. Rejects `k <= 0` (at `k = 0` the weight degenerates to a
/// point mass at `t = 1` and callers take the classical branch).
pub fn jacobi_norm_constant(kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidParameter {
            name: "kappa",
            message: format!("Phi_k normalization needs kappa > 0, got {kappa}"),
        });
    }
    Ok(gamma(kappa + 0.5) / (gamma(kappa) * std::f64::consts::PI.sqrt()))
}

/// Gauss–Jacobi rule for the probability weight `Phi_k` on `[-1, 1]`.
///
/// Weights sum to 1 up to roundoff because `M_k` is exactly the reciprocal of
/// the Jacobi mass with exponents `(k-1, k)`.
#[derive(Debug, Clone)]
pub struct JacobiRule {
    kappa: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl JacobiRule {
    /// Builds an `order`-node rule for `Phi_k`; requires `kappa > 0`.
    pub fn new(kappa: f64, order: usize) -> Result<Self> {
        let m = jacobi_norm_constant(kappa)?;
        let base = cached_jacobi(order, kappa - 1.0, kappa)?;
        Ok(Self {
            kappa,
            nodes: base.nodes.clone(),
            weights: base.weights.iter().map(|w| w * m).collect(),
        })
    }

    /// The multiplicity this rule belongs to.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// Quadrature nodes in `(-1, 1)`, strictly increasing.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Probability weights aligned with the nodes.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `int f dPhi_k`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(t))
            .sum()
    }

    /// `int f dPhi_k` for complex-valued `f`.
    pub fn integrate_complex(&self, mut f: impl FnMut(f64) -> Complex64) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| f(t) * w)
            .sum()
    }
}

fn series_complex(alpha: f64, z: Complex64) -> Complex64 {
    // j_a(z) = sum_m (-z^2/4)^m Gamma(a+1) / (m! Gamma(m+a+1))
    let ratio_base = -z * z * 0.25;
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = term;
    for m in 0..220 {
        let mf = m as f64;
        term *= ratio_base / ((mf + 1.0) * (mf + 1.0 + alpha));
        acc += term;
        if term.norm() <= 1e-18 * acc.norm().max(1e-300) {
            break;
        }
    }
    acc
}

/// All-positive series for `j_a(i w)` with real `w`: the modified normalized
/// Bessel function. No cancellation for any `|w| <= MODIFIED_SERIES_MAX`.
fn modified_series(alpha: f64, w: f64) -> f64 {
    let ratio_base = 0.25 * w * w;
    let mut term = 1.0;
    let mut acc = 1.0;
    for m in 0..4000 {
        let mf = m as f64;
        term *= ratio_base / ((mf + 1.0) * (mf + 1.0 + alpha));
        acc += term;
        if term <= 1e-18 * acc {
            break;
        }
    }
    acc
}

/// Weighted-integral evaluation of `j_a(z)` (valid for `a > -1/2`): spectrally
/// exact once the rule resolves the oscillation, so the node count scales with
/// `|z|`.
fn poisson_integral(alpha: f64, z: Complex64) -> Result<Complex64> {
    let n = bucket_order(24 + (1.4 * z.norm()).ceil() as usize);
    let rule = cached_jacobi(n, alpha - 0.5, alpha - 0.5)?;
    let norm = gamma(alpha + 1.0) / (gamma(alpha + 0.5) * std::f64::consts::PI.sqrt());
    let iz = Complex64::new(0.0, 1.0) * z;
    let mut acc = Complex64::new(0.0, 0.0);
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        acc += (iz * t).exp() * w;
    }
    Ok(acc * norm)
}

/// Hankel asymptotic expansion of `J_a(x)` for large real `x`.
fn bessel_j_asymptotic(alpha: f64, x: f64) -> f64 {
    let mu = 4.0 * alpha * alpha;
    let chi = x - alpha * std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4;
    let mut p = 1.0; // even terms, alternating
    let mut q = 0.0; // odd terms, alternating
    let mut a = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..=16usize {
        let kf = k as f64;
        a *= (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
        if a.abs() >= prev {
            break; // divergent tail reached; stop at the optimal truncation
        }
        prev = a.abs();
        let m = k / 2;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * a;
        } else {
            q += sign * a;
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Normalized Bessel function `j_a(z)`, reference path.
///
/// Requires `a >= -1/2`. Exact special cases at `a = -1/2` (cosine) and
/// `a = 1/2` (sinc); power series for `|z| <= 12`; the weighted-integral form
/// for larger arguments (for dominantly imaginary `z`, the cancellation-free
/// modified series).
pub fn normalized_bessel(alpha: f64, z: Complex64) -> Result<Complex64> {
    if !(alpha >= -0.5) || !alpha.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            message: format!("index must be >= -1/2, got {alpha}"),
        });
    }
    if alpha == -0.5 {
        return Ok(z.cos());
    }
    if alpha == 0.5 {
        return Ok(if z.norm() < 1e-30 {
            Complex64::new(1.0, 0.0)
        } else {
            z.sin() / z
        });
    }
    let r = z.norm();
    if r <= SERIES_RADIUS {
        return Ok(series_complex(alpha, z));
    }
    if z.re.abs() <= 1e-14 * r {
        // purely imaginary: all-positive series, no cancellation
        let w = z.im;
        if w.abs() <= MODIFIED_SERIES_MAX {
            return Ok(Complex64::new(modified_series(alpha, w), 0.0));
        }
    }
    poisson_integral(alpha, z)
}

/// `j_a(x)` for real `x`, fast path: series small, Hankel asymptotic large.
/// Absolute error around 1e-12 in the asymptotic region; used to assemble
/// transform matrices where spectral tolerances are microscopic but not
/// at the 1e-14 level of the reference path.
pub fn normalized_bessel_real_fast(alpha: f64, x: f64) -> f64 {
    let ax = x.abs();
    if ax <= SERIES_RADIUS {
        series_complex(alpha, Complex64::new(ax, 0.0)).re
    } else {
        gamma(alpha + 1.0) * (ax / 2.0).powf(-alpha) * bessel_j_asymptotic(alpha, ax)
    }
}

/// Modified normalized Bessel `j_a(i w)` for real `w`; positive and even.
pub fn modified_normalized_bessel(alpha: f64, w: f64) -> Result<f64> {
    if !(alpha >= -0.5) || !alpha.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            message: format!("index must be >= -1/2, got {alpha}"),
        });
    }
    let aw = w.abs();
    if aw <= MODIFIED_SERIES_MAX {
        Ok(modified_series(alpha, aw))
    } else {
        // I_a asymptotic: e^w/sqrt(2 pi w) * sum (-1)^k a_k(a)/w^k,
        // folded back into the normalized form.
        let mu = 4.0 * alpha * alpha;
        let mut term = 1.0;
        let mut s = 1.0;
        for k in 1..=12usize {
            let kf = k as f64;
            term *= -(mu - (2.0 * kf - 1.0).powi(2)) / (8.0 * aw * kf);
            s += term;
        }
        let log = aw - 0.5 * (2.0 * std::f64::consts::PI * aw).ln()
            + crate::gamma::ln_gamma(alpha + 1.0)
            - alpha * (aw / 2.0).ln();
        Ok((log + s.ln()).exp())
    }
}

/// `n`-th moment `int t^n dPhi_k(t)`.
///
/// Exact up to roundoff: Gauss quadrature of sufficient order integrates the
/// monomial exactly. At `k = 0` the weight is the point mass at `t = 1`, so
/// every moment equals 1. The first moment is `1/(2k+1)`.
pub fn phi_moment(kappa: f64, n: u32) -> Result<f64> {
    if kappa == 0.0 {
        return Ok(1.0);
    }
    let rule = JacobiRule::new(kappa, n as usize / 2 + 2)?;
    Ok(rule.integrate(|t| t.powi(n as i32)))
}

enum KernelRoute {
    Reference,
    Fast,
}

fn kernel_1d_with(kappa: f64, x: f64, y: f64, route: KernelRoute) -> Result<Complex64> {
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidMultiplicity(format!("kappa = {kappa}")));
    }
    let w = x * y;
    if kappa == 0.0 {
        return Ok(Complex64::new(w.cos(), w.sin()));
    }
    let (re, im_factor) = match route {
        KernelRoute::Reference => (
            normalized_bessel(kappa - 0.5, Complex64::new(w, 0.0))?.re,
            normalized_bessel(kappa + 0.5, Complex64::new(w, 0.0))?.re,
        ),
        KernelRoute::Fast => (
            normalized_bessel_real_fast(kappa - 0.5, w),
            normalized_bessel_real_fast(kappa + 0.5, w),
        ),
    };
    Ok(Complex64::new(re, w / (2.0 * kappa + 1.0) * im_factor))
}

/// One-dimensional kernel `E_k(ix, y)` for real `x, y`, reference path.
///
/// `E_0(ix, y) = e^{ixy}`; for `k > 0` the Bessel closed form with the
/// reference Bessel evaluation. `|E_k(ix, y)| <= 1` and `E_k(ix, 0) = 1`.
pub fn kernel_1d(kappa: f64, x: f64, y: f64) -> Result<Complex64> {
    kernel_1d_with(kappa, x, y, KernelRoute::Reference)
}

/// Fast-path variant of [`kernel_1d`] for bulk matrix assembly.
pub fn kernel_1d_fast(kappa: f64, x: f64, y: f64) -> Result<Complex64> {
    kernel_1d_with(kappa, x, y, KernelRoute::Fast)
}

/// Quadrature form `int_{-1}^{1} e^{ixyt} Phi_k(t) dt` of the same kernel,
/// on an `order`-node rule. This is the independent route used to certify the
/// Bessel closed form; the rule must resolve the oscillation (order of about
/// `1.4 |xy|` suffices).
pub fn kernel_1d_via_quadrature(kappa: f64, x: f64, y: f64, order: usize) -> Result<Complex64> {
    if kappa == 0.0 {
        let w = x * y;
        return Ok(Complex64::new(w.cos(), w.sin()));
    }
    let rule = JacobiRule::new(kappa, order)?;
    let w = x * y;
    Ok(rule.integrate_complex(|t| Complex64::new(0.0, w * t).exp()))
}

/// Tensor kernel `E_k(ix, y) = prod_j E_{k_j}(i x_j, y_j)`.
pub fn kernel(k: &Multiplicity, x: &[f64], y: &[f64]) -> Result<Complex64> {
    if x.len() != k.dim() || y.len() != k.dim() {
        return Err(Error::InvalidParameter {
            name: "x/y",
            message: "dimension mismatch with multiplicity".into(),
        });
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for j in 0..k.dim() {
        acc *= kernel_1d(k.kappa()[j], x[j], y[j])?;
    }
    Ok(acc)
}

/// Real-slot kernel `E_k(a, b)` for real `a, b`: the positive, exponentially
/// growing branch (`E_0(a, b) = e^{ab}`).
///
/// For `ab >= 0` this is a cancellation-free sum of modified Bessel terms.
/// For `ab < 0` the two terms cancel down to a factor of order `1/|ab|`; the
/// series loses only about `log2|ab|` bits, and beyond the series range a
/// dedicated difference asymptotic keeps full relative accuracy.
pub fn kernel_real_1d(kappa: f64, a: f64, b: f64) -> Result<f64> {
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidMultiplicity(format!("kappa = {kappa}")));
    }
    let w = a * b;
    if kappa == 0.0 {
        return Ok(w.exp());
    }
    let aw = w.abs();
    if aw <= MODIFIED_SERIES_MAX {
        let g_minus = modified_series(kappa - 0.5, aw);
        let g_plus = modified_series(kappa + 0.5, aw);
        Ok(g_minus + w / (2.0 * kappa + 1.0) * g_plus)
    } else {
        let (log, s) = kernel_real_log_asymptotic(kappa, w);
        Ok((log + s.ln()).exp())
    }
}

/// Log-magnitude asymptotic of `E_k(a, b)` for `|ab| > MODIFIED_SERIES_MAX`:
/// returns `(log_prefactor, series)` with the value `exp(log_prefactor) * series`.
///
/// Uses `E_k = Gamma(k+1/2) (W/2)^{1/2-k} [I_{k-1/2}(W) + sgn(w) I_{k+1/2}(W)]`
/// and sums the two Hankel tails jointly, so the `ab < 0` cancellation is done
/// term by term in exact arithmetic on the coefficients.
fn kernel_real_log_asymptotic(kappa: f64, w: f64) -> (f64, f64) {
    let aw = w.abs();
    let sign = if w >= 0.0 { 1.0 } else { -1.0 };
    let mu1 = (2.0 * kappa - 1.0).powi(2);
    let mu2 = (2.0 * kappa + 1.0).powi(2);
    let mut t1 = 1.0; // I_{k-1/2} expansion terms
    let mut t2 = 1.0; // I_{k+1/2} expansion terms
    let mut s = t1 + sign * t2;
    for k in 1..=14usize {
        let kf = k as f64;
        t1 *= -(mu1 - (2.0 * kf - 1.0).powi(2)) / (8.0 * aw * kf);
        t2 *= -(mu2 - (2.0 * kf - 1.0).powi(2)) / (8.0 * aw * kf);
        s += t1 + sign * t2;
    }
    let log = crate::gamma::ln_gamma(kappa + 0.5) + (0.5 - kappa) * (aw / 2.0).ln() + aw
        - 0.5 * (2.0 * std::f64::consts::PI * aw).ln();
    (log, s)
}

/// Stable `e^{-(u^2+v^2)/2} E_k(u, -v)`: the per-axis factor of a translated
/// Gaussian. Always finite and positive; combines exponent and kernel in log
/// space when either factor alone would leave the normal range.
pub fn gauss_kernel_factor(kappa: f64, u: f64, v: f64) -> Result<f64> {
    let quad = -0.5 * (u * u + v * v);
    if kappa == 0.0 {
        // e^{-(u+v)^2/2}
        return Ok((quad - u * v).exp());
    }
    let w = -(u * v);
    let aw = w.abs();
    if aw <= MODIFIED_SERIES_MAX && quad > -650.0 {
        return Ok(quad.exp() * kernel_real_1d(kappa, u, -v)?);
    }
    if aw <= MODIFIED_SERIES_MAX {
        // kernel value representable, exponent not: combine logs
        let e = kernel_real_1d(kappa, u, -v)?;
        return Ok((quad + e.ln()).exp());
    }
    let (log, s) = kernel_real_log_asymptotic(kappa, w);
    Ok((quad + log + s.ln()).exp())
}
