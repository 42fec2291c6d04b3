//! Generalized translation and convolution.
//!
//! The translation `tau_x f(y)` is the integral of `f` against the signed
//! product measure attached to `(x, y)`; for the classical multiplicity it is
//! the ordinary shift `f(x + y)`. This module provides
//!
//! * [`translate_1d`] — pointwise translation of an arbitrary scalar function
//!   through the one-dimensional product measure;
//! * [`translate_indicator_interval`] — the translated indicator of
//!   `[-r, r]`, reduced in closed form to a regularized incomplete beta value
//!   (the weight on `[-1, 1]` has an exact Beta CDF), so it is `O(1)` per
//!   call, lands exactly in `[0, 1]`, and vanishes *identically* outside the
//!   reachable annulus `| |x| - |y| | < r < |x| + |y|` extended by the two
//!   trivial regimes;
//! * [`translate_indicator_interval_quadrature`] — the same value through
//!   split Gauss–Jacobi rules, kept as an independent cross-check route;
//! * [`translate_indicator_cube`] / [`translate_indicator_ball`] — tensor
//!   products of the above, respectively the nonnegative-part tensor measure
//!   applied to a ball indicator;
//! * [`translate_grid`] — spectral translation of a grid function,
//!   `F^{-1}( E(i x, .) F f )`;
//! * [`convolve`] — spectral convolution `F^{-1}(F f . F g)`, normalized so
//!   the heat family is a semigroup: `q^t * q^s = q^{t+s}`.

use num_complex::Complex64;

use crate::error::Error;
use crate::gamma::regularized_incomplete_beta;
use crate::grid::GridFunction;
use crate::measure::Multiplicity;
use crate::product_formula::{integrate_nu, integrate_upsilon};
use crate::quad::cached_jacobi;
use crate::special::kernel_1d_fast;
use crate::transform::Transformer;
use crate::Result;

/// Pointwise translation `tau_x f(y)` in one dimension, by quadrature against
/// the product measure. For `kappa = 0` this is exactly `f(x + y)`.
pub fn translate_1d(
    kappa: f64,
    f: impl FnMut(f64) -> f64,
    x: f64,
    y: f64,
    order: usize,
) -> Result<f64> {
    integrate_nu(kappa, x, y, order, f)
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "r",
            message: format!("indicator radius must be positive and finite, got {r}"),
        });
    }
    Ok(())
}

/// Translated indicator of the symmetric interval: `tau_x chi_{[-r,r]}(y)`.
///
/// Exact-class evaluation: the value is the measure of a sub-level set of the
/// distance variable, which reduces to the regularized incomplete beta
/// `I_u(kappa+1, kappa)` at `u = (1 + t*)/2`, `t* = (r^2-x^2-y^2)/(2xy)`.
/// Returns exactly `0` outside the reachable set and exactly `1` when the
/// interval swallows it.
pub fn translate_indicator_interval(kappa: f64, r: f64, x: f64, y: f64) -> Result<f64> {
    check_radius(r)?;
    if kappa < 0.0 || !kappa.is_finite() {
        return Err(Error::InvalidMultiplicity(format!(
            "multiplicity must be finite and nonnegative, got {kappa}"
        )));
    }
    if kappa == 0.0 || x == 0.0 || y == 0.0 {
        // point mass at x + y
        return Ok(if (x + y).abs() <= r { 1.0 } else { 0.0 });
    }
    let lo = (x.abs() - y.abs()).abs();
    let hi = x.abs() + y.abs();
    if r >= hi {
        return Ok(1.0);
    }
    if r <= lo {
        return Ok(0.0);
    }
    let t_star = (r * r - x * x - y * y) / (2.0 * x * y);
    let u = 0.5 * (1.0 + t_star);
    let p = regularized_incomplete_beta(kappa + 1.0, kappa, u);
    Ok(if x * y > 0.0 { p } else { 1.0 - p })
}

/// The same translated interval indicator through split Gauss–Jacobi rules:
/// the distance sub-level set is an interval `[-1, a]` or `[a, 1]` in the
/// angular variable, and on each piece the weight's endpoint factor is
/// absorbed exactly by a mapped Jacobi rule. Kept as an independent
/// cross-check of [`translate_indicator_interval`].
pub fn translate_indicator_interval_quadrature(
    kappa: f64,
    r: f64,
    x: f64,
    y: f64,
    order: usize,
) -> Result<f64> {
    check_radius(r)?;
    if kappa == 0.0 || x == 0.0 || y == 0.0 {
        return Ok(if (x + y).abs() <= r { 1.0 } else { 0.0 });
    }
    let lo = (x.abs() - y.abs()).abs();
    let hi = x.abs() + y.abs();
    if r >= hi {
        return Ok(1.0);
    }
    if r <= lo {
        return Ok(0.0);
    }
    let a = (r * r - x * x - y * y) / (2.0 * x * y);
    let cdf = jacobi_weight_cdf(kappa, a, order)?;
    Ok(if x * y > 0.0 { cdf } else { 1.0 - cdf })
}

/// CDF of the normalized weight `M (1-t)^{k-1} (1+t)^k` on `[-1, 1]`,
/// evaluated as `int_{-1}^a` by a mapped Jacobi rule that absorbs the
/// endpoint factor exactly; for `a` near `+1` the complement is integrated
/// instead so the `(1-t)^{k-1}` singularity is always inside a rule weight.
fn jacobi_weight_cdf(kappa: f64, a: f64, order: usize) -> Result<f64> {
    let m = crate::special::jacobi_norm_constant(kappa)?;
    if a <= -1.0 {
        return Ok(0.0);
    }
    if a >= 1.0 {
        return Ok(1.0);
    }
    if a <= 0.0 {
        // int_{-1}^a M (1-t)^{k-1} (1+t)^k dt with (1+t)^k absorbed:
        // t = -1 + (a+1)(s+1)/2
        let rule = cached_jacobi(order, 0.0, kappa)?;
        let half = 0.5 * (a + 1.0);
        let mut acc = 0.0;
        for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
            let t = -1.0 + half * (s + 1.0);
            acc += w * (1.0 - t).powf(kappa - 1.0);
        }
        // weight already carries (1+s)^k; the map contributes half^{k+1}
        Ok(m * half.powf(kappa + 1.0) * acc)
    } else {
        // complement int_a^1 with (1-t)^{k-1} absorbed: t = a + (1-a)(s+1)/2
        let rule = cached_jacobi(order, kappa - 1.0, 0.0)?;
        let half = 0.5 * (1.0 - a);
        let mut acc = 0.0;
        for (&s, &w) in rule.nodes.iter().zip(&rule.weights) {
            let t = a + half * (s + 1.0);
            acc += w * (1.0 + t).powf(kappa);
        }
        Ok(1.0 - m * half.powf(kappa) * acc)
    }
}

/// Translated indicator of the cube `[-r, r]^d`: the translation tensorizes,
/// so this is the product of per-axis interval values.
pub fn translate_indicator_cube(k: &Multiplicity, r: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != k.dim() || y.len() != k.dim() {
        return Err(Error::InvalidParameter {
            name: "x/y",
            message: "dimension mismatch with multiplicity".into(),
        });
    }
    let mut value = 1.0;
    for j in 0..k.dim() {
        value *= translate_indicator_interval(k.kappa()[j], r, x[j], y[j])?;
        if value == 0.0 {
            return Ok(0.0);
        }
    }
    Ok(value)
}

/// Translated indicator of the Euclidean ball of radius `r`: the ball
/// indicator is even in every coordinate, so only the nonnegative tensor part
/// of the product measure contributes. Requires all coordinates of `x` and
/// `y` nonzero on axes with positive multiplicity (tensor-measure
/// regularity); quadrature accuracy is first-order in `order` because of the
/// jump across the sphere.
pub fn translate_indicator_ball(
    k: &Multiplicity,
    r: f64,
    x: &[f64],
    y: &[f64],
    order: usize,
) -> Result<f64> {
    check_radius(r)?;
    let r2 = r * r;
    integrate_upsilon(k, x, y, order, |z| {
        if z.iter().map(|v| v * v).sum::<f64>() <= r2 {
            1.0
        } else {
            0.0
        }
    })
}

/// Spectral translation of a grid function: `F^{-1}( E(i x, .) F f )`.
/// For `kappa = 0` this is the ordinary shift `y -> f(x + y)` up to spectral
/// truncation on the grid.
pub fn translate_grid(tr: &Transformer, f: &GridFunction, x: &[f64]) -> Result<GridFunction> {
    let grid = tr.grid();
    if x.len() != grid.dim() {
        return Err(Error::InvalidParameter {
            name: "x",
            message: "translation point dimension mismatch".into(),
        });
    }
    // per-axis phase columns E(i x_j, xi)
    let mut phases: Vec<Vec<Complex64>> = Vec::with_capacity(grid.dim());
    for (j, axis) in grid.axes().iter().enumerate() {
        let col: Result<Vec<Complex64>> = axis
            .nodes()
            .iter()
            .map(|&xi| kernel_1d_fast(axis.kappa(), x[j], xi))
            .collect();
        phases.push(col?);
    }
    let spectrum = tr.forward(f)?;
    let modulated: Vec<Complex64> = spectrum
        .values()
        .iter()
        .enumerate()
        .map(|(flat, &v)| {
            let idx = grid.unravel(flat);
            let mut phase = Complex64::new(1.0, 0.0);
            for (j, &n) in idx.iter().enumerate() {
                phase *= phases[j][n];
            }
            v * phase
        })
        .collect();
    tr.inverse(&GridFunction::from_values(grid, modulated)?)
}

/// Spectral convolution `F^{-1}(F f . F g)`. With the self-dual transform
/// normalization the heat kernels form a semigroup under this product:
/// `q^t * q^s = q^{t+s}`.
pub fn convolve(tr: &Transformer, f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    let ff = tr.forward(f)?;
    let fg = tr.forward(g)?;
    tr.inverse(&ff.zip_map(&fg, |a, b| a * b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Grid, WeightScheme};
    use crate::product_formula::integrate_nu_plus;
    use crate::quad::integrate_adaptive;
    use crate::transform::{heat_kernel, translated_heat_kernel};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn translation_at_origin_is_identity() {
        let f = |z: f64| (1.0 + z) * (-0.3 * z * z).exp();
        for &kappa in &[0.0, 0.5, 2.5] {
            assert_relative_eq!(
                translate_1d(kappa, f, 0.0, 1.3, 64).unwrap(),
                f(1.3),
                max_relative = 1e-13
            );
            assert_relative_eq!(
                translate_1d(kappa, f, 0.7, 0.0, 64).unwrap(),
                f(0.7),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn heat_translation_three_routes_agree() {
        let kappa = 0.6;
        let k = Multiplicity::new(vec![kappa]).unwrap();
        let t = 0.8_f64;
        let x = 1.37;
        let power = -(k.gamma() + 0.5);
        let profile = move |z: f64| (2.0 * t).powf(power) * (-z * z / (4.0 * t)).exp();

        let grid = Grid::new(&k, 256, 12.0).unwrap();
        let tr = Transformer::new(&grid).unwrap();
        let q = heat_kernel(&grid, t).unwrap();
        let shifted = translate_grid(&tr, &q, &[x]).unwrap();

        for &node_idx in &[40usize, 128, 200] {
            let y = grid.point(node_idx)[0];
            let a = translate_1d(kappa, profile, x, y, 200).unwrap();
            let b = translated_heat_kernel(&k, t, &[x], &[y]).unwrap();
            let c = shifted.values()[node_idx];
            assert_relative_eq!(a, b, max_relative = 1e-8);
            assert_abs_diff_eq!(c.re, b, epsilon = 1e-5);
            assert!(c.im.abs() <= 1e-5);
        }
    }

    #[test]
    fn interval_indicator_closed_form_matches_quadrature() {
        for &kappa in &[0.3, 0.5, 1.0, 2.5] {
            for &(x, y) in &[
                (0.8, 0.5),
                (1.0, -1.0),
                (2.0, 1.5),
                (-0.6, 2.2),
                (3.0, -2.9),
            ] {
                for &r in &[0.4, 1.0, 2.1, 3.4] {
                    let fast = translate_indicator_interval(kappa, r, x, y).unwrap();
                    let slow =
                        translate_indicator_interval_quadrature(kappa, r, x, y, 400).unwrap();
                    assert_abs_diff_eq!(fast, slow, epsilon = 1e-10);
                    assert!((0.0..=1.0).contains(&fast));
                }
            }
        }
    }

    #[test]
    fn interval_indicator_matches_adaptive_oracle() {
        // direct adaptive integration of the weight over the sub-level set
        let kappa = 1.3;
        let m = crate::special::jacobi_norm_constant(kappa).unwrap();
        let (x, y, r): (f64, f64, f64) = (1.1, 0.9, 1.4);
        let t_star = ((r * r - x * x - y * y) / (2.0 * x * y)).clamp(-1.0, 1.0);
        let oracle = integrate_adaptive(
            &mut |t: f64| m * (1.0 - t).powf(kappa - 1.0) * (1.0 + t).powf(kappa),
            -1.0,
            t_star,
            1e-12,
        );
        assert_relative_eq!(
            translate_indicator_interval(kappa, r, x, y).unwrap(),
            oracle,
            max_relative = 1e-9
        );
    }

    #[test]
    fn interval_indicator_support_is_exact() {
        let kappa = 0.7;
        // unreachable: r below | |x| - |y| |
        assert_eq!(
            translate_indicator_interval(kappa, 0.9, 3.0, 2.0).unwrap(),
            0.0
        );
        assert_eq!(
            translate_indicator_interval(kappa, 0.9, 3.0, -2.0).unwrap(),
            0.0
        );
        // swallowed: r at least |x| + |y|
        assert_eq!(
            translate_indicator_interval(kappa, 5.0, 3.0, 2.0).unwrap(),
            1.0
        );
        // classical point mass both ways
        assert_eq!(translate_indicator_interval(0.0, 1.0, 3.0, -2.5).unwrap(), 1.0);
        assert_eq!(translate_indicator_interval(0.0, 1.0, 3.0, 2.5).unwrap(), 0.0);
        // rejections
        assert!(translate_indicator_interval(0.5, 0.0, 1.0, 1.0).is_err());
        assert!(translate_indicator_interval(-0.5, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn interval_indicator_monotone_in_radius() {
        let kappa = 0.5;
        let (x, y) = (1.7, -1.1);
        let mut last = 0.0;
        for i in 1..40 {
            let r = 0.1 * i as f64;
            let v = translate_indicator_interval(kappa, r, x, y).unwrap();
            assert!(v >= last - 1e-14, "not monotone at r={r}: {v} < {last}");
            last = v;
        }
        assert_relative_eq!(last, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn interval_indicator_nu_plus_consistency() {
        // against the generic product-measure route; the jump costs accuracy,
        // so a large order and a loose tolerance
        let kappa = 0.5;
        let (x, y, r) = (1.0, 0.8, 1.3);
        let r2 = r * r;
        let generic = integrate_nu_plus(kappa, x, y, 800, |z| {
            if z * z <= r2 {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        let exact = translate_indicator_interval(kappa, r, x, y).unwrap();
        assert_abs_diff_eq!(generic, exact, epsilon = 2e-2);
    }

    #[test]
    fn cube_and_ball_indicators() {
        let k = Multiplicity::new(vec![0.5, 1.0]).unwrap();
        let x = [1.0, 0.7];
        let y = [-0.6, 1.1];
        let r = 1.5;
        let cube = translate_indicator_cube(&k, r, &x, &y).unwrap();
        let ball = translate_indicator_ball(&k, r, &x, &y, 400).unwrap();
        assert!((0.0..=1.0).contains(&cube));
        assert!((-1e-12..=1.0 + 1e-12).contains(&ball));
        // ball inside cube
        assert!(ball <= cube + 1e-10);
        // d = 1: ball = interval, up to the jump error of the generic route
        let k1 = Multiplicity::new(vec![0.5]).unwrap();
        let b1 = translate_indicator_ball(&k1, 1.3, &[1.0], &[0.8], 800).unwrap();
        let i1 = translate_indicator_interval(0.5, 1.3, 1.0, 0.8).unwrap();
        assert_abs_diff_eq!(b1, i1, epsilon = 2e-2);
        // classical axis: cube factor degenerates to a point evaluation
        let k_mixed = Multiplicity::new(vec![0.0, 0.5]).unwrap();
        let c = translate_indicator_cube(&k_mixed, 1.0, &[0.4, 1.0], &[0.5, 0.8]).unwrap();
        let expected = translate_indicator_interval(0.5, 1.0, 1.0, 0.8).unwrap();
        assert_relative_eq!(c, expected, max_relative = 1e-12);
        // regularity rejection for the ball on a positive-multiplicity axis
        assert!(translate_indicator_ball(&k, 1.0, &[0.0, 1.0], &[1.0, 1.0], 100).is_err());
    }

    #[test]
    fn double_translation_commutes() {
        let kappa = 0.8;
        let f = |z: f64| (-0.4 * z * z).exp() * (1.0 + 0.5 * z);
        let (x, y, w) = (0.9, -1.3, 0.6);
        let order = 80;
        let a = translate_1d(
            kappa,
            |u| translate_1d(kappa, f, y, u, order).unwrap(),
            x,
            w,
            order,
        )
        .unwrap();
        let b = translate_1d(
            kappa,
            |u| translate_1d(kappa, f, x, u, order).unwrap(),
            y,
            w,
            order,
        )
        .unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-10);
    }

    #[test]
    fn classical_grid_translation_is_a_shift() {
        let k = Multiplicity::new(vec![0.0]).unwrap();
        let grid = Grid::new(&k, 256, 12.0).unwrap();
        let tr = Transformer::new(&grid).unwrap();
        let f = GridFunction::from_real_fn(&grid, |x| (-(x[0] - 0.5) * (x[0] - 0.5)).exp());
        // shift by exactly 8 grid cells so the target lands on nodes
        let h = grid.axis(0).nodes()[1] - grid.axis(0).nodes()[0];
        let shift = 8.0 * h;
        let shifted = translate_grid(&tr, &f, &[shift]).unwrap();
        for idx in 0..grid.len() - 8 {
            let expect = f.values()[idx + 8].re; // f(x + shift) at node idx
            let got = shifted.values()[idx];
            assert_abs_diff_eq!(got.re, expect, epsilon = 1e-8);
            assert!(got.im.abs() <= 1e-8);
        }
    }

    #[test]
    fn grid_translation_preserves_l2_for_gaussian() {
        // |E(ix, xi)| <= 1 makes spectral translation an L^2 contraction
        let k = Multiplicity::new(vec![0.5]).unwrap();
        let grid = Grid::new(&k, 256, 12.0).unwrap();
        let tr = Transformer::new(&grid).unwrap();
        let q = heat_kernel(&grid, 0.7).unwrap();
        let base = q.norm_p(2.0, WeightScheme::Smooth);
        for &x in &[0.3, 1.9] {
            let shifted = translate_grid(&tr, &q, &[x]).unwrap();
            let ratio = shifted.norm_p(2.0, WeightScheme::Smooth) / base;
            assert!(ratio <= 1.0 + 1e-10, "ratio {ratio} at x={x}");
            assert!(ratio > 0.3, "ratio {ratio} suspiciously small at x={x}");
        }
    }

    #[test]
    fn heat_semigroup_under_convolution() {
        // N = 512 keeps the edge-frequency quadrature error near 1e-8;
        // coarser grids alias the most oscillatory kernel columns
        let k = Multiplicity::new(vec![0.5]).unwrap();
        let grid = Grid::new(&k, 512, 12.0).unwrap();
        let tr = Transformer::new(&grid).unwrap();
        let (t, s) = (0.4, 0.9);
        let conv = convolve(
            &tr,
            &heat_kernel(&grid, t).unwrap(),
            &heat_kernel(&grid, s).unwrap(),
        )
        .unwrap();
        let direct = heat_kernel(&grid, t + s).unwrap();
        let diff = conv.zip_map(&direct, |a, b| a - b).unwrap();
        let rel = diff.norm_p(2.0, WeightScheme::Smooth)
            / direct.norm_p(2.0, WeightScheme::Smooth);
        assert!(rel <= 1e-6, "semigroup relative error {rel}");
    }

    #[test]
    fn convolution_commutes_bitwise() {
        let k = Multiplicity::new(vec![0.7]).unwrap();
        let grid = Grid::new(&k, 128, 12.0).unwrap();
        let tr = Transformer::new(&grid).unwrap();
        let f = heat_kernel(&grid, 0.5).unwrap();
        let g = GridFunction::from_real_fn(&grid, |x| {
            (1.0 + x[0] * x[0]) * (-0.6 * x[0] * x[0]).exp()
        });
        let fg = convolve(&tr, &f, &g).unwrap();
        let gf = convolve(&tr, &g, &f).unwrap();
        assert_eq!(fg.values(), gf.values());
    }

    #[test]
    fn transform_factorizes_convolution() {
        let k = Multiplicity::new(vec![0.5]).unwrap();
        let grid = Grid::new(&k, 512, 12.0).unwrap();
        let tr = Transformer::new(&grid).unwrap();
        let f = heat_kernel(&grid, 0.5).unwrap();
        let g = heat_kernel(&grid, 0.75).unwrap();
        let lhs = tr.forward(&convolve(&tr, &f, &g).unwrap()).unwrap();
        let rhs = tr
            .forward(&f)
            .unwrap()
            .zip_map(&tr.forward(&g).unwrap(), |a, b| a * b)
            .unwrap();
        let diff = lhs.zip_map(&rhs, |a, b| a - b).unwrap();
        let rel = diff.norm_p(2.0, WeightScheme::Smooth)
            / rhs.norm_p(2.0, WeightScheme::Smooth);
        assert!(rel <= 1e-6, "factorization relative error {rel}");
    }

    #[test]
    fn convolution_with_heat_nearly_positive() {
        let k = Multiplicity::new(vec![0.5]).unwrap();
        let grid = Grid::new(&k, 512, 12.0).unwrap();
        let tr = Transformer::new(&grid).unwrap();
        let q = heat_kernel(&grid, 0.3).unwrap();
        let bump = GridFunction::from_real_fn(&grid, |x| {
            let u: f64 = 1.0 - (x[0] - 1.0) * (x[0] - 1.0);
            if u > 0.0 {
                u * u
            } else {
                0.0
            }
        });
        let smoothed = convolve(&tr, &q, &bump).unwrap();
        let floor = smoothed
            .values()
            .iter()
            .map(|v| v.re)
            .fold(f64::INFINITY, f64::min);
        let peak = smoothed.norm_sup();
        // positivity holds up to the spectral ringing of the C^3 bump
        assert!(
            floor >= -1e-7 * peak,
            "smoothed bump dips to {floor} against peak {peak}"
        );
    }
}
