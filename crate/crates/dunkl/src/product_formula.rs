//! Triangle geometry, the product-formula kernel, and integration against the
//! translation measures.
//!
//! For `k > 0` and `x, y` both nonzero, the pointwise product of two kernels
//! `E_k(ix, l) E_k(iy, l)` equals `int E_k(il, z) dnu_{x,y}(z)` for a signed
//! measure `nu_{x,y}` of mass 1 and total variation at most 4, supported on
//! the two bands `±[||x|-|y||, |x|+|y|]`. Its density against the weighted
//! measure is `K_k(|x|,|y|,|z|) rho(x,y,z)` with
//!
//! ```text
//!     K_k(x,y,z)   = 2^{2k-2} M_k area(x,y,z)^{2k-2} / (xyz)^{2k-1}
//!                    on the band, 0 outside,
//!     rho(x,y,z)   = (1 - sigma_{x,y,z} + sigma_{z,x,y} + sigma_{z,y,x}) / 2,
//!     sigma_{x,y,z} = (x^2 + y^2 - z^2) / (2xy)   (0 if x = 0 or y = 0).
//! ```
//!
//! The even-in-`z` part of `nu` is a **positive probability measure** `nu⁺`
//! with density `K_k (1 - sigma_{x,y,z}) / 2`; its `d`-fold tensor product
//! `upsilon_{x,y}` drives the cube-averaged operators.
//!
//! # Integration strategy
//!
//! All quadrature happens in the substitution `z(t) = sqrt(x^2 + y^2 + 2xyt)`,
//! `t in [-1, 1]`, under which `sigma_{x,y,z(t)} = -t` **exactly** and the
//! density of `nu` pulls back to the Jacobi probability weight `Phi_k(t)`:
//!
//! ```text
//!     int f dnu   = int [ f_e(z(t)) + (x+y) f_o(z(t)) ] dPhi_k(t),
//!     int f dnu⁺  = int   f_e(z(t))                    dPhi_k(t),
//!     int d|nu|   = int max(1, |x+y| / z(t))           dPhi_k(t),
//! ```
//!
//! where `f_e(z) = (f(z)+f(-z))/2` and `f_o(z) = (f(z)-f(-z))/(2z)` are the
//! even part and the odd quotient (both smooth functions of `z^2` when `f` is
//! smooth, so Gauss–Jacobi rules converge spectrally even when the band
//! touches 0). The endpoint singularity `area^{2k-2}` for `k < 1` is absorbed
//! into the weight exactly — nothing singular is ever sampled. The direct
//! `z`-space quadrature of `K_k · rho` is kept as an independent oracle in the
//! tests, not as the production route.
//!
//! At `k = 0` the weight degenerates to the point mass at `t = 1` and every
//! integral collapses to classical evaluation at `x + y`; when `x = 0` or
//! `y = 0` the measure `nu` is the point mass at the surviving coordinate.

use num_complex::Complex64;

use crate::error::Error;
use crate::gamma::gamma;
use crate::measure::Multiplicity;
use crate::special::{jacobi_norm_constant, JacobiRule};
use crate::Result;

/// `sigma_{x,y,z} = (x^2 + y^2 - z^2) / (2xy)`, defined as 0 when `x = 0` or
/// `y = 0`. On the support band `|sigma| <= 1`; under `z = z(t)` it equals
/// `-t` exactly.
pub fn sigma(x: f64, y: f64, z: f64) -> f64 {
    if x == 0.0 || y == 0.0 {
        return 0.0;
    }
    (x * x + y * y - z * z) / (2.0 * x * y)
}

/// `rho(x,y,z) = (1 - sigma_{x,y,z} + sigma_{z,x,y} + sigma_{z,y,x}) / 2`,
/// the signed weight making `K_k rho` the density of `nu_{x,y}`. The two
/// `sigma_{z,..}` terms are odd in `z`, so `rho(x,y,z) + rho(x,y,-z) =
/// 1 - sigma_{x,y,z}` — twice the positive-part density factor.
pub fn rho(x: f64, y: f64, z: f64) -> f64 {
    0.5 * (1.0 - sigma(x, y, z) + sigma(z, x, y) + sigma(z, y, x))
}

/// Area of the triangle with side lengths `a, b, c` (Heron); 0 whenever the
/// triangle inequality fails, including on the degenerate boundary.
pub fn triangle_area(a: f64, b: f64, c: f64) -> f64 {
    let s = 0.5 * (a + b + c);
    let prod = s * (s - a) * (s - b) * (s - c);
    if prod <= 0.0 {
        0.0
    } else {
        prod.sqrt()
    }
}

/// Support band `[||x|-|y||, |x|+|y|]` of the positive half of `nu_{x,y}`.
pub fn support_band(x: f64, y: f64) -> (f64, f64) {
    ((x.abs() - y.abs()).abs(), x.abs() + y.abs())
}

/// Product-formula kernel
/// `K_k(x,y,z) = 2^{2k-2} M_k area(x,y,z)^{2k-2} / (xyz)^{2k-1}` on the band
/// `||x-y|| <= z <= x+y`, zero outside. Requires `k > 0` and positive
/// arguments.
///
/// At `k = 1` this is `1/(2xyz)` on the band: `2^{2k-2} = 1`, `M_1 = 1/2`,
/// and the area factor drops out.
pub fn kernel_k(kappa: f64, x: f64, y: f64, z: f64) -> Result<f64> {
    let m = jacobi_norm_constant(kappa)?;
    if !(x > 0.0 && y > 0.0 && z > 0.0) {
        return Err(Error::InvalidParameter {
            name: "x/y/z",
            message: format!("kernel arguments must be positive, got ({x}, {y}, {z})"),
        });
    }
    if z < (x - y).abs() || z > x + y {
        return Ok(0.0);
    }
    let area = triangle_area(x, y, z);
    // area^{2k-2} with 0^0 = 1 understood at k = 1 on the degenerate boundary
    let area_pow = if kappa == 1.0 {
        1.0
    } else {
        area.powf(2.0 * kappa - 2.0)
    };
    Ok(2f64.powf(2.0 * kappa - 2.0) * m * area_pow / (x * y * z).powf(2.0 * kappa - 1.0))
}

/// Shared core: integrates `t -> f_e(z(t)) + (x+y) f_o(z(t))` against
/// `Phi_k`, with the even/odd split chosen by `odd_scale` (1 for `nu`, 0 for
/// `nu⁺`).
fn nu_core<T>(
    kappa: f64,
    x: f64,
    y: f64,
    order: usize,
    odd_scale: f64,
    mut f: impl FnMut(f64) -> T,
    zero: T,
) -> Result<T>
where
    T: Copy
        + std::ops::Add<Output = T>
        + std::ops::Sub<Output = T>
        + std::ops::Mul<f64, Output = T>,
{
    let s = x + y;
    if kappa == 0.0 {
        // point mass at t = 1: z = |x+y|, and the signed combination
        // recovers plain evaluation at x + y
        let z = s.abs();
        if z == 0.0 {
            return Ok(f(0.0));
        }
        let (fp, fm) = (f(z), f(-z));
        let even = (fp + fm) * 0.5;
        let odd = (fp - fm) * (0.5 / z);
        return Ok(even + odd * (s * odd_scale));
    }
    let rule = JacobiRule::new(kappa, order)?;
    let x2y2 = x * x + y * y;
    let two_xy = 2.0 * x * y;
    let mut acc = zero;
    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
        let z = (x2y2 + two_xy * t).max(0.0).sqrt();
        let (fp, fm) = (f(z), f(-z));
        let even = (fp + fm) * 0.5;
        let term = if odd_scale == 0.0 || z == 0.0 {
            even
        } else {
            even + (fp - fm) * (0.5 / z) * (s * odd_scale)
        };
        acc = acc + term * w;
    }
    Ok(acc)
}

/// `int f dnu_{x,y}` for real-valued `f` on an `order`-node rule.
///
/// Point-mass branches: `y = 0` gives `f(x)`, `x = 0` gives `f(y)`, and
/// `k = 0` gives `f(x + y)`.
pub fn integrate_nu(
    kappa: f64,
    x: f64,
    y: f64,
    order: usize,
    mut f: impl FnMut(f64) -> f64,
) -> Result<f64> {
    if kappa > 0.0 {
        if y == 0.0 {
            return Ok(f(x));
        }
        if x == 0.0 {
            return Ok(f(y));
        }
    }
    nu_core(kappa, x, y, order, 1.0, f, 0.0)
}

/// Complex-valued variant of [`integrate_nu`].
pub fn integrate_nu_complex(
    kappa: f64,
    x: f64,
    y: f64,
    order: usize,
    mut f: impl FnMut(f64) -> Complex64,
) -> Result<Complex64> {
    if kappa > 0.0 {
        if y == 0.0 {
            return Ok(f(x));
        }
        if x == 0.0 {
            return Ok(f(y));
        }
    }
    nu_core(kappa, x, y, order, 1.0, f, Complex64::new(0.0, 0.0))
}

/// Total variation mass `int d|nu_{x,y}| = int max(1, |x+y|/z(t)) dPhi_k(t)`.
/// Always at least 1 and provably at most 4.
pub fn integrate_nu_abs(kappa: f64, x: f64, y: f64, order: usize) -> Result<f64> {
    if kappa == 0.0 || x == 0.0 || y == 0.0 {
        return Ok(1.0); // point masses have unit total variation
    }
    let rule = JacobiRule::new(kappa, order)?;
    let s = (x + y).abs();
    let x2y2 = x * x + y * y;
    let two_xy = 2.0 * x * y;
    Ok(rule.integrate(|t| {
        let z = (x2y2 + two_xy * t).max(0.0).sqrt();
        if z == 0.0 {
            1.0
        } else {
            (s / z).max(1.0)
        }
    }))
}

/// `int f dnu⁺_{x,y}`: the even-in-`z` part of `nu`, a positive probability
/// measure. Rejects `x = 0` or `y = 0` (the positive part is defined away
/// from the reflection hyperplane); `k = 0` takes the classical limit
/// `(f(|x+y|) + f(-|x+y|)) / 2`.
pub fn integrate_nu_plus(
    kappa: f64,
    x: f64,
    y: f64,
    order: usize,
    f: impl FnMut(f64) -> f64,
) -> Result<f64> {
    if x == 0.0 || y == 0.0 {
        return Err(Error::NonRegularPoint(format!(
            "positive-part measure needs x, y nonzero, got ({x}, {y})"
        )));
    }
    nu_core(kappa, x, y, order, 0.0, f, 0.0)
}

/// Discrete nodes `(z_i, w_i)` of the per-axis positive-part measure,
/// folded onto the nonnegative half-line: valid for integrating functions of
/// `z^2` (even integrands) only. `k = 0` or a zero coordinate degenerates to
/// the single point `|x + y|` with unit weight.
pub(crate) fn nu_plus_half_nodes(
    kappa: f64,
    x: f64,
    y: f64,
    order: usize,
) -> Result<Vec<(f64, f64)>> {
    if kappa == 0.0 || x == 0.0 || y == 0.0 {
        return Ok(vec![((x + y).abs(), 1.0)]);
    }
    let rule = JacobiRule::new(kappa, order)?;
    let x2y2 = x * x + y * y;
    let two_xy = 2.0 * x * y;
    Ok(rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .map(|(&t, &w)| ((x2y2 + two_xy * t).max(0.0).sqrt(), w))
        .collect())
}

/// `int f dupsilon_{x,y}`: tensor product of the per-axis positive-part
/// measures, for `x, y` with no zero coordinate. Axes with `k_j = 0` carry
/// the classical two-point limit.
pub fn integrate_upsilon(
    k: &Multiplicity,
    x: &[f64],
    y: &[f64],
    order: usize,
    mut f: impl FnMut(&[f64]) -> f64,
) -> Result<f64> {
    let d = k.dim();
    if x.len() != d || y.len() != d {
        return Err(Error::InvalidParameter {
            name: "x/y",
            message: "dimension mismatch with multiplicity".into(),
        });
    }
    if let Some(j) = (0..d).find(|&j| x[j] == 0.0 || y[j] == 0.0) {
        return Err(Error::NonRegularPoint(format!(
            "tensor measure needs regular points; coordinate {j} vanishes"
        )));
    }
    // per-axis node/weight lists: (±z_i, w_i/2)
    let mut axes: Vec<Vec<(f64, f64)>> = Vec::with_capacity(d);
    for j in 0..d {
        let kj = k.kappa()[j];
        let (xj, yj) = (x[j], y[j]);
        if kj == 0.0 {
            let z = (xj + yj).abs();
            axes.push(vec![(z, 0.5), (-z, 0.5)]);
        } else {
            let rule = JacobiRule::new(kj, order)?;
            let x2y2 = xj * xj + yj * yj;
            let two_xy = 2.0 * xj * yj;
            let mut pts = Vec::with_capacity(2 * rule.nodes().len());
            for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
                let z = (x2y2 + two_xy * t).max(0.0).sqrt();
                pts.push((z, 0.5 * w));
                pts.push((-z, 0.5 * w));
            }
            axes.push(pts);
        }
    }
    fn contract(
        axes: &[Vec<(f64, f64)>],
        point: &mut Vec<f64>,
        f: &mut impl FnMut(&[f64]) -> f64,
    ) -> f64 {
        let depth = point.len();
        if depth == axes.len() {
            return f(point);
        }
        let mut acc = 0.0;
        for &(z, w) in &axes[depth] {
            point.push(z);
            acc += w * contract(axes, point, f);
            point.pop();
        }
        acc
    }
    let mut point = Vec::with_capacity(d);
    Ok(contract(&axes, &mut point, &mut f))
}

/// Residual `|E_k(ix, l) E_k(iy, l) - int E_k(il, z) dnu_{x,y}(z)|` of the
/// product identity, on an `order`-node rule. Zero up to quadrature and
/// kernel-evaluation error.
pub fn product_formula_residual(
    kappa: f64,
    x: f64,
    y: f64,
    lambda: f64,
    order: usize,
) -> Result<f64> {
    let lhs = crate::special::kernel_1d(kappa, x, lambda)?
        * crate::special::kernel_1d(kappa, y, lambda)?;
    let rhs = integrate_nu_complex(kappa, x, y, order, |z| {
        crate::special::kernel_1d(kappa, lambda, z).expect("kernel evaluation")
    })?;
    Ok((lhs - rhs).norm())
}

/// Gaussian-normalization constant of the weighted measure family in the form
/// used by transform normalizations: `prod_j (2^{k_j + 1/2} Gamma(k_j + 1/2))`
/// is its reciprocal. Exposed here for the tests that tie the product
/// formula to the transform; the production constant lives in
/// [`crate::measure::gaussian_constant`].
pub fn closed_form_gaussian_constant(k: &Multiplicity) -> f64 {
    k.kappa()
        .iter()
        .map(|&kj| 1.0 / (2f64.powf(kj + 0.5) * gamma(kj + 0.5)))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::cached_jacobi;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Independent oracle: direct z-space quadrature of `g(z) K_k rho |z|^{2k} dz`
    /// over both bands, mapping each band to [-1, 1] and absorbing the
    /// endpoint factor `[(z - z_-)(z_+ - z)]^{k-1}` into a Gauss–Jacobi rule
    /// with exponents (k-1, k-1). Everything else is evaluated explicitly, so
    /// this route shares nothing with the t-parameterization.
    fn nu_integral_z_route(
        kappa: f64,
        x: f64,
        y: f64,
        order: usize,
        mut g: impl FnMut(f64) -> f64,
    ) -> f64 {
        let (lo, hi) = support_band(x, y);
        assert!(lo > 0.0, "z-route oracle keeps away from band-collapse");
        let rule = cached_jacobi(order, kappa - 1.0, kappa - 1.0).unwrap();
        let m = jacobi_norm_constant(kappa).unwrap();
        let mid = 0.5 * (hi + lo);
        let half = 0.5 * (hi - lo);
        let xa = x.abs();
        let ya = y.abs();
        let mut acc = 0.0;
        for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
            let z = mid + half * u;
            // K with the jacobi-absorbed factor divided out:
            //   K = 2^{2-2k} M ((z+lo)(hi+z))^{k-1} / (xyz)^{2k-1}
            //       * [(z-lo)(hi-z)]^{k-1}
            let regular = 2f64.powf(2.0 - 2.0 * kappa) * m
                * ((z + lo) * (hi + z)).powf(kappa - 1.0)
                / (xa * ya * z).powf(2.0 * kappa - 1.0);
            let dmu = z.powf(2.0 * kappa); // |z|^{2k}, same on both bands
            let both = g(z) * rho(x, y, z) + g(-z) * rho(x, y, -z);
            acc += w * regular * dmu * both;
        }
        // the mapped jacobi factor carries h^{2(k-1)} from each linear factor
        // and h from dz
        acc * half.powf(2.0 * kappa - 1.0)
    }

    #[test]
    fn sigma_examples() {
        assert_abs_diff_eq!(sigma(1.0, 1.0, 2f64.sqrt()), 0.0, epsilon = 1e-15);
        assert_eq!(sigma(0.0, 3.0, 1.0), 0.0);
        assert_eq!(sigma(3.0, 0.0, 1.0), 0.0);
        assert_relative_eq!(sigma(1.0, 1.0, 2.0), -1.0);
    }

    #[test]
    fn sigma_is_negated_parameter_on_band() {
        // z(t)^2 = x^2 + y^2 + 2xyt  =>  sigma_{x,y,z(t)} = -t exactly
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x: f64 = rng.gen_range(0.2..3.0);
            let y: f64 = rng.gen_range(-3.0..-0.2);
            let t: f64 = rng.gen_range(-0.999..0.999);
            let z = (x * x + y * y + 2.0 * x * y * t).sqrt();
            assert_relative_eq!(sigma(x, y, z), -t, max_relative = 1e-11, epsilon = 1e-12);
        }
    }

    #[test]
    fn rho_examples_and_parity() {
        assert_relative_eq!(rho(1.0, 1.0, 1.0), 0.75);
        // x = 0: only sigma_{z,y,x} survives
        let (y, z) = (2.0, 1.5);
        let expect = 0.5 * (1.0 + (z * z + y * y) / (2.0 * z * y));
        assert_relative_eq!(rho(0.0, y, z), expect);
        // z-parity: rho(x,y,z) + rho(x,y,-z) = 1 - sigma_{x,y,z}
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let x: f64 = rng.gen_range(-3.0..3.0);
            let y: f64 = rng.gen_range(0.1..3.0);
            let z: f64 = rng.gen_range(0.1..6.0);
            assert_relative_eq!(
                rho(x, y, z) + rho(x, y, -z),
                1.0 - sigma(x, y, z),
                max_relative = 1e-12,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn triangle_area_examples() {
        assert_relative_eq!(triangle_area(3.0, 4.0, 5.0), 6.0);
        assert_eq!(triangle_area(1.0, 1.0, 2.0), 0.0);
        assert_eq!(triangle_area(1.0, 1.0, 5.0), 0.0);
        assert_relative_eq!(triangle_area(1.0, 1.0, 1.0), 3f64.sqrt() / 4.0);
    }

    #[test]
    fn kernel_k_support_and_unit_kappa() {
        assert_eq!(kernel_k(0.7, 1.0, 2.0, 3.5).unwrap(), 0.0);
        assert_eq!(kernel_k(0.7, 1.0, 2.0, 0.5).unwrap(), 0.0);
        // at k = 1 the kernel is 1/(2xyz) on the band
        let (x, y, z) = (1.0, 2.0, 2.5);
        assert_relative_eq!(
            kernel_k(1.0, x, y, z).unwrap(),
            1.0 / (2.0 * x * y * z),
            max_relative = 1e-13
        );
        assert!(kernel_k(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(kernel_k(1.0, -1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn kernel_density_has_unit_mass_z_route() {
        // direct z-space normalization: int K rho dmu = 1; this certifies the
        // 2^{2k-2} M_k prefactor independently of the t-parameterization
        for &k in &[0.5, 1.0, 2.5] {
            for &(x, y) in &[(1.0, 2.0), (0.5, 3.0), (2.0, -0.7), (-1.5, -2.5)] {
                let mass = nu_integral_z_route(k, x, y, 300, |_| 1.0);
                assert_relative_eq!(mass, 1.0, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn z_route_consistency_check_against_kernel_k() {
        // the oracle's "regular part" times the jacobi endpoint factor must
        // reproduce kernel_k itself at interior points
        let (k, x, y) = (0.7, 1.0, 2.3);
        let (lo, hi) = support_band(x, y);
        let m = jacobi_norm_constant(k).unwrap();
        for &z in &[lo + 0.1, 0.5 * (lo + hi), hi - 0.1] {
            let regular = 2f64.powf(2.0 - 2.0 * k) * m * ((z + lo) * (hi + z)).powf(k - 1.0)
                / (x * y.abs() * z).powf(2.0 * k - 1.0);
            let endpoint = ((z - lo) * (hi - z)).powf(k - 1.0);
            assert_relative_eq!(
                regular * endpoint,
                kernel_k(k, x, y.abs(), z).unwrap(),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn nu_mass_is_one_and_tv_at_most_four() {
        let points: Vec<f64> = (1..=8).map(|i| -2.0 + 0.5 * i as f64).collect();
        for &k in &[0.3, 0.5, 1.0, 2.5] {
            for &x in &points {
                for &y in &points {
                    let mass = integrate_nu(k, x, y, 200, |_| 1.0).unwrap();
                    assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-12);
                    let tv = integrate_nu_abs(k, x, y, 200).unwrap();
                    assert!(tv <= 4.0 + 1e-6, "k={k} x={x} y={y} tv={tv}");
                    assert!(tv >= 1.0 - 1e-12);
                }
            }
        }
    }

    #[test]
    fn nu_point_mass_branches() {
        let f = |z: f64| z * z - 3.0 * z;
        assert_relative_eq!(integrate_nu(0.7, 1.5, 0.0, 50, f).unwrap(), f(1.5));
        assert_relative_eq!(integrate_nu(0.7, 0.0, -2.5, 50, f).unwrap(), f(-2.5));
        // classical limit: evaluation at x + y, both signs of the sum
        assert_relative_eq!(integrate_nu(0.0, 1.5, 0.7, 50, f).unwrap(), f(2.2), max_relative = 1e-12);
        assert_relative_eq!(integrate_nu(0.0, 0.5, -2.0, 50, f).unwrap(), f(-1.5), max_relative = 1e-12);
        assert_relative_eq!(integrate_nu(0.0, 1.0, -1.0, 50, f).unwrap(), f(0.0));
    }

    #[test]
    fn nu_matches_z_route_on_smooth_functions() {
        // dual routes: Rösler parameterization vs direct z-space density
        let cases: &[(f64, f64, f64)] = &[(0.5, 1.0, 2.0), (0.3, 0.8, -2.2), (1.0, 1.5, 2.5), (2.5, -1.0, -3.0)];
        for &(k, x, y) in cases {
            for f in [
                (|z: f64| (-z).exp().sin() + z * z) as fn(f64) -> f64,
                |z: f64| (0.7 * z).cos(),
                |z: f64| z.powi(3) - z,
            ] {
                let t_route = integrate_nu(k, x, y, 220, f).unwrap();
                let z_route = nu_integral_z_route(k, x, y, 320, f);
                assert_relative_eq!(t_route, z_route, max_relative = 1e-9, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn nu_is_symmetric_in_x_and_y() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..30 {
            let k = [0.3, 0.5, 1.0, 2.5][rng.gen_range(0..4)];
            let x: f64 = rng.gen_range(-2.5..2.5);
            let y: f64 = rng.gen_range(-2.5..2.5);
            let f = |z: f64| (z - 0.3).tanh() + 0.1 * z * z;
            let a = integrate_nu(k, x, y, 180, f).unwrap();
            let b = integrate_nu(k, y, x, 180, f).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn nu_vanishes_off_support() {
        // bump supported strictly outside both bands
        let (k, x, y) = (0.7, 1.0, 2.0);
        let (lo, hi) = support_band(x, y); // (1, 3)
        let bump = |z: f64| {
            let u: f64 = z.abs();
            if u > lo - 0.05 && u < hi + 0.05 {
                0.0
            } else {
                1.0 + z * z
            }
        };
        assert_eq!(integrate_nu(k, x, y, 150, bump).unwrap(), 0.0);
    }

    #[test]
    fn nu_plus_mass_positivity_and_even_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for &k in &[0.3, 0.5, 1.0, 2.5] {
            for _ in 0..10 {
                let x: f64 = rng.gen_range(0.2..2.5) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
                let y: f64 = rng.gen_range(0.2..2.5) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
                let mass = integrate_nu_plus(k, x, y, 150, |_| 1.0).unwrap();
                assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-12);
                // even f: nu⁺ and nu agree
                let f = |z: f64| (z * z).cos() + z.abs();
                let a = integrate_nu_plus(k, x, y, 200, f).unwrap();
                let b = integrate_nu(k, x, y, 200, f).unwrap();
                assert_abs_diff_eq!(a, b, epsilon = 1e-11);
                // monotone in the integrand
                let small = integrate_nu_plus(k, x, y, 150, |z| if z.abs() <= 1.0 { 1.0 } else { 0.0 }).unwrap();
                let large = integrate_nu_plus(k, x, y, 150, |z| if z.abs() <= 2.0 { 1.0 } else { 0.0 }).unwrap();
                assert!(small <= large + 1e-12);
            }
        }
        assert!(integrate_nu_plus(0.5, 0.0, 1.0, 50, |_| 1.0).is_err());
        assert!(integrate_nu_plus(0.5, 1.0, 0.0, 50, |_| 1.0).is_err());
    }

    #[test]
    fn nu_plus_density_is_nonnegative_in_z_space() {
        // the z-space density of nu⁺ is K_k (1 - sigma)/2 >= 0 on the band
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for &k in &[0.3, 0.5, 1.0, 2.5] {
            for _ in 0..20 {
                let x: f64 = rng.gen_range(0.2..2.5);
                let y: f64 = rng.gen_range(0.2..2.5) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
                let (lo, hi) = support_band(x, y);
                let z = rng.gen_range(lo.max(1e-6)..hi);
                let density =
                    0.5 * kernel_k(k, x.abs(), y.abs(), z).unwrap() * (1.0 - sigma(x, y, z));
                assert!(density >= -1e-14, "k={k} x={x} y={y} z={z} d={density}");
            }
        }
    }

    #[test]
    fn product_identity_residuals() {
        // lambda = 0: both sides are exactly 1
        assert!(product_formula_residual(0.5, 1.0, 2.0, 0.0, 100).unwrap() < 1e-14);
        // the spec-scale case
        assert!(product_formula_residual(0.5, 1.0, 2.0, 3.0, 400).unwrap() < 1e-8);
        // point-mass branch: kernel symmetry only
        assert!(product_formula_residual(0.5, 0.0, 2.0, 3.0, 100).unwrap() < 1e-12);
        // classical branch: exponential additivity
        assert!(product_formula_residual(0.0, 1.3, -0.4, 2.0, 10).unwrap() < 1e-14);
        // broader sweep at moderate order
        for &k in &[0.3, 1.0, 2.5] {
            for &(x, y, l) in &[(0.5, 0.5, 1.0), (1.0, -2.0, 2.0), (2.0, 2.0, 4.0)] {
                let r = product_formula_residual(k, x, y, l, 400).unwrap();
                assert!(r < 1e-8, "k={k} x={x} y={y} l={l} residual={r}");
            }
        }
    }

    #[test]
    fn upsilon_tensor_structure() {
        let k = Multiplicity::new(vec![0.5, 1.0]).unwrap();
        let x = [1.0, -0.7];
        let y = [0.8, 1.2];
        // unit mass
        let mass = integrate_upsilon(&k, &x, &y, 80, |_| 1.0).unwrap();
        assert_abs_diff_eq!(mass, 1.0, epsilon = 1e-12);
        // separable integrand factors into 1-D positive-part integrals
        let g = |z: f64| (0.4 * z).cos();
        let h = |z: f64| 1.0 / (1.0 + z * z);
        let tensor = integrate_upsilon(&k, &x, &y, 120, |z| g(z[0]) * h(z[1])).unwrap();
        let product = integrate_nu_plus(0.5, x[0], y[0], 120, g).unwrap()
            * integrate_nu_plus(1.0, x[1], y[1], 120, h).unwrap();
        assert_relative_eq!(tensor, product, max_relative = 1e-11);
        // ball indicator never exceeds cube indicator
        let r = 1.3;
        let ball = integrate_upsilon(&k, &x, &y, 150, |z| {
            if z.iter().map(|v| v * v).sum::<f64>().sqrt() <= r { 1.0 } else { 0.0 }
        })
        .unwrap();
        let cube = integrate_upsilon(&k, &x, &y, 150, |z| {
            if z.iter().all(|v| v.abs() <= r) { 1.0 } else { 0.0 }
        })
        .unwrap();
        assert!(ball <= cube + 1e-12);
        assert!((0.0..=1.0 + 1e-12).contains(&ball));
        // regularity is enforced
        assert!(integrate_upsilon(&k, &[0.0, 1.0], &y, 50, |_| 1.0).is_err());
        assert!(integrate_upsilon(&k, &x, &[0.8, 0.0], 50, |_| 1.0).is_err());
    }

    #[test]
    fn upsilon_classical_axis() {
        let k = Multiplicity::new(vec![0.0, 1.0]).unwrap();
        let x = [1.0, 0.9];
        let y = [0.5, 1.1];
        // axis 1 contributes (f(|x+y|) + f(-|x+y|))/2
        let f1 = |z: f64| z + 2.0 * z * z;
        let expect1 = 0.5 * (f1(1.5) + f1(-1.5));
        let got = integrate_upsilon(&k, &x, &y, 100, |z| f1(z[0])).unwrap();
        assert_relative_eq!(got, expect1, max_relative = 1e-12);
    }

    #[test]
    fn closed_form_constant_matches_measure_module() {
        for kappa in [vec![0.0], vec![0.5], vec![0.3, 1.0], vec![2.5, 0.0]] {
            let k = Multiplicity::new(kappa).unwrap();
            assert_relative_eq!(
                closed_form_gaussian_constant(&k),
                crate::measure::gaussian_constant(&k),
                max_relative = 1e-11
            );
        }
    }
}
