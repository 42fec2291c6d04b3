//! Named verification suites: each replays a family of identities and
//! inequalities from this crate's numerical core at the configured scale and
//! files the outcome as [`CheckRecord`]s and [`ConstantTrace`]s.
//!
//! The seven suites (see [`crate::config::SUITE_NAMES`]):
//!
//! * `kernel` — the weighted exponential kernel: closed form against dense
//!   quadrature, symmetry, modulus bound, classical limit, and the averaging
//!   operator that carries plain derivatives to difference-differential ones.
//! * `product-formula` — the explicit three-point measure behind kernel
//!   products: residual of the product identity, unit mass, total variation
//!   at most 4, positive part, tensor extension, support band.
//! * `transform` — round trip, Parseval residual, the Gaussian image of the
//!   heat kernel, heat mass, and admissibility moments of radial profiles.
//! * `translation` — interval-indicator translation by two independent
//!   routes, exact support windows, the translated heat kernel's closed form
//!   against the spectral route, translation-invariant mass, the convolution
//!   semigroup property, and convolution norm constants.
//! * `maximal` — exact constants on indicators, pointwise ball-vs-cube
//!   domination with the closed-form measure ratio, and weak-type /
//!   strong-type / weighted inequality constants with refinement drift.
//! * `covering` — greedy disjoint subfamily selection with engulfment
//!   certificates and a union-measure bound, across seeds.
//! * `fefferman-stein` — vector-valued maximal bounds on families of
//!   disjoint translates: the aggregate ratio must not grow with family size.
//!
//! # Tolerance grading
//!
//! Grid-based checks quote their strictest tolerance at 512 nodes per axis
//! and relax at coarser grids (the documented bands live in [`graded`]);
//! grid-free checks (kernel, product formula) always use their strict
//! tolerances. Every record states the band it used in its parameter string.
//!
//! # Determinism
//!
//! Given one configuration (including the seed), a suite run is reproducible
//! to the byte: sample boxes are fixed linspaces, random sweeps use a counted
//! ChaCha stream, and parallel sections are order-preserving maps.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{RunConfig, SUITE_NAMES};
use crate::error::Error;
use crate::gamma::gamma;
use crate::grid::{Grid, GridFunction, WeightScheme};
use crate::maximal::{
    apply_maximal, default_lambdas, domination_report, fefferman_stein_ratio, fs_vector_norm,
    maximal_cube, maximal_rect, strong_type_ratio, vitali_select, weak_type_ratio,
    weighted_inequality_ratio, FunctionSequence, MaximalSettings, OperatorTag, RadiusSchedule,
    Rectangle,
};
use crate::measure::{self, Multiplicity};
use crate::polynomial::Polynomial;
use crate::product_formula::{
    integrate_nu, integrate_nu_abs, integrate_nu_plus, integrate_upsilon,
    product_formula_residual, support_band,
};
use crate::report::{CheckRecord, ConstantTrace, RunReport};
use crate::special::{kernel, kernel_1d, kernel_1d_via_quadrature};
use crate::transform::{heat_kernel, RadialProfile, Transformer};
use crate::translation::{
    convolve, translate_grid, translate_indicator_cube, translate_indicator_interval,
    translate_indicator_interval_quadrature,
};
use crate::Result;

/// One-line self-contained statement of what a suite verifies.
pub fn suite_statement(name: &str) -> &'static str {
    match name {
        "kernel" => {
            "the weighted exponential kernel matches its quadrature form, is symmetric, \
             bounded by 1 on imaginary arguments, reduces to e^{ixy} at zero multiplicity, \
             and the averaging operator carries plain derivatives to the \
             difference-differential ones"
        }
        "product-formula" => {
            "the explicit three-point measure reproduces products of kernels, has unit mass, \
             total variation at most 4, a positive part of mass in [1, 4], a tensor \
             extension of unit mass, and vanishes off its support band"
        }
        "transform" => {
            "the dense-quadrature transform inverts itself on damped envelopes, preserves \
             the 2-norm, maps the heat kernel to a Gaussian, integrates the heat kernel to \
             the reciprocal normalizing constant, and accepts exactly the admissible \
             radial profiles"
        }
        "translation" => {
            "interval-indicator translation agrees between its closed form and its \
             quadrature form, vanishes off the admissible window, matches the translated \
             heat kernel's closed form through the spectral route, preserves mass, and \
             convolution satisfies the semigroup identity and stable norm constants"
        }
        "maximal" => {
            "maximal averages take the exact values on constants, ball averages are \
             dominated pointwise by the closed-form measure ratio times cube averages, and \
             the weak-type, strong-type, weighted and cube-vs-rectangle constants are \
             stable under grid and schedule refinement"
        }
        "covering" => {
            "greedy selection extracts a pairwise-disjoint subfamily whose dilated members \
             engulf every input rectangle, with a finite, seed-stable union-measure \
             constant"
        }
        "fefferman-stein" => {
            "the aggregate maximal bound over a family of disjoint translates does not \
             grow with the family size, for each maximal operator and both the weak and \
             strong endpoints"
        }
        _ => "unknown suite",
    }
}

/// Human-readable dry-run plan: the resolved configuration and, for each
/// selected suite, the statement it verifies. No computation happens.
pub fn describe(cfg: &RunConfig) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    let _ = writeln!(out, "verification plan");
    let _ = writeln!(out, "=================");
    let _ = writeln!(out);
    let _ = writeln!(out, "configuration");
    for (k, v) in cfg.meta_entries() {
        let _ = writeln!(out, "  {k} = {v}");
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "suites ({} selected)", cfg.suites.len());
    for name in SUITE_NAMES {
        if cfg.suites.iter().any(|s| s == name) {
            let _ = writeln!(out, "  {name}");
            let _ = writeln!(out, "      {}", suite_statement(name));
        }
    }
    out
}

/// Runs the selected suites in canonical order and returns the filled
/// report. The configuration must already validate.
pub fn run_suites(cfg: &RunConfig) -> Result<RunReport> {
    cfg.validate()?;
    let mut report = RunReport::new();
    for (k, v) in cfg.meta_entries() {
        report.set_meta(k, v);
    }
    for name in SUITE_NAMES {
        if !cfg.suites.iter().any(|s| s == name) {
            continue;
        }
        match name {
            "kernel" => suite_kernel(cfg, &mut report)?,
            "product-formula" => suite_product_formula(cfg, &mut report)?,
            "transform" => suite_transform(cfg, &mut report)?,
            "translation" => suite_translation(cfg, &mut report)?,
            "maximal" => suite_maximal(cfg, &mut report)?,
            "covering" => suite_covering(cfg, &mut report)?,
            "fefferman-stein" => suite_fefferman_stein(cfg, &mut report)?,
            _ => unreachable!("validated suite name"),
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

/// Resolution-graded tolerance: checks quote `fine` at >= 512 nodes per axis,
/// `mid` at >= 256, and `coarse` below; the bands are pinned by measurement
/// (values chosen at roughly 3x the observed error of the band's coarsest
/// grid) so a passing check stays meaningful at every size.
fn graded(n: usize, fine: f64, mid: f64, coarse: f64) -> f64 {
    if n >= 512 {
        fine
    } else if n >= 256 {
        mid
    } else {
        coarse
    }
}

/// `count` evenly spaced samples of `[lo, hi]`, endpoints included.
fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2);
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

/// Distinct multiplicity components in first-appearance order.
fn distinct_kappas(cfg: &RunConfig) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for &k in &cfg.kappa {
        if !out.iter().any(|&v| v == k) {
            out.push(k);
        }
    }
    out
}

/// Positive even bump `e^{-|x|^2}` used as the standard maximal input.
fn standard_bump(grid: &Grid) -> GridFunction {
    GridFunction::from_real_fn(grid, |x| (-x.iter().map(|v| v * v).sum::<f64>()).exp())
}

/// Largest coefficient difference between two exact polynomials.
fn poly_max_coefficient_diff(a: &Polynomial, b: &Polynomial) -> f64 {
    let diff = a.add(&b.scaled(-1.0));
    diff.terms()
        .map(|(_, c)| c.abs())
        .fold(0.0f64, f64::max)
}

/// Relative sup distance `max|a - b| / max|b|`.
fn rel_sup(a: &GridFunction, b: &GridFunction) -> Result<f64> {
    let diff = a.zip_map(b, |u, v| u - v)?;
    let scale = b.norm_sup();
    if scale == 0.0 {
        return Err(Error::ZeroFunction("relative comparison reference"));
    }
    Ok(diff.norm_sup() / scale)
}

/// Relative 2-norm distance `||a - b||_2 / ||b||_2` under smooth weights.
fn rel_l2(a: &GridFunction, b: &GridFunction) -> Result<f64> {
    let diff = a.zip_map(b, |u, v| u - v)?;
    let scale = b.norm_p(2.0, WeightScheme::Smooth);
    if scale == 0.0 {
        return Err(Error::ZeroFunction("relative comparison reference"));
    }
    Ok(diff.norm_p(2.0, WeightScheme::Smooth) / scale)
}

/// Relative drift `|a - b| / |b|` between two measurements of one constant.
fn drift(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        if a == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (a - b).abs() / b.abs()
    }
}

// ---------------------------------------------------------------------------
// kernel suite
// ---------------------------------------------------------------------------

fn suite_kernel(cfg: &RunConfig, report: &mut RunReport) -> Result<()> {
    const SUITE: &str = "kernel";
    let order = cfg.quadrature_order;
    let pts = linspace(0.15, 3.0, 8);

    for &kappa in &distinct_kappas(cfg) {
        let params = format!("kappa={kappa} order={order} box=[0.15,3]x[0.15,3] samples=8x8");

        let mut max_quad = 0.0f64;
        let mut max_sym = 0.0f64;
        let mut max_conj = 0.0f64;
        let mut max_mod = 0.0f64;
        let mut max_at_zero = 0.0f64;
        for &x in &pts {
            for &y in &pts {
                let e = kernel_1d(kappa, x, y)?;
                let eq = kernel_1d_via_quadrature(kappa, x, y, order)?;
                max_quad = max_quad.max((e - eq).norm());
                max_sym = max_sym.max((e - kernel_1d(kappa, y, x)?).norm());
                max_conj = max_conj.max((kernel_1d(kappa, x, -y)? - e.conj()).norm());
                max_mod = max_mod.max(e.norm());
            }
            max_at_zero = max_at_zero.max((kernel_1d(kappa, x, 0.0)? - 1.0).norm());
        }
        report.push_check(CheckRecord::le(
            SUITE,
            "closed_form_vs_quadrature",
            "the one-axis kernel's series/Bessel closed form agrees with its definition as \
             a weighted average of exponentials over [-1, 1]",
            &params,
            max_quad,
            1e-10,
        ));
        report.push_check(CheckRecord::le(
            SUITE,
            "argument_symmetry",
            "the kernel is symmetric in its two arguments",
            &params,
            max_sym,
            1e-12,
        ));
        report.push_check(CheckRecord::le(
            SUITE,
            "reflection_conjugation",
            "negating one argument conjugates the kernel",
            &params,
            max_conj,
            1e-12,
        ));
        report.push_check(CheckRecord::le(
            SUITE,
            "modulus_bound",
            "the kernel of imaginary argument has modulus at most 1",
            &params,
            max_mod,
            1.0 + 1e-12,
        ));
        report.push_check(CheckRecord::le(
            SUITE,
            "normalization_at_zero",
            "the kernel equals 1 when either argument vanishes",
            &params,
            max_at_zero,
            1e-13,
        ));

        // averaging operator intertwines d/dx with the difference-differential
        // derivative: checked exactly on monomial coefficients
        let k1 = Multiplicity::scalar(kappa)?;
        let mut max_intertwine = 0.0f64;
        for degree in 1..=5u32 {
            let p = Polynomial::monomial(vec![degree], 1.0);
            let lhs = p.intertwined(&k1)?.dunkl_derivative(&k1, 0)?;
            let rhs = p.partial_derivative(0).intertwined(&k1)?;
            max_intertwine = max_intertwine.max(poly_max_coefficient_diff(&lhs, &rhs));
        }
        report.push_check(CheckRecord::le(
            SUITE,
            "intertwining_carries_derivatives",
            "composing the averaging operator with the difference-differential derivative \
             equals composing the plain derivative with the averaging operator, on \
             monomials up to degree 5 (exact coefficients)",
            format!("kappa={kappa} degrees=1..5"),
            max_intertwine,
            1e-10,
        ));
    }

    // classical limit, always at multiplicity zero regardless of the config
    let mut max_classical = 0.0f64;
    for &x in &pts {
        for &y in &pts {
            let e = kernel_1d(0.0, x, y)?;
            let target = Complex64::new(0.0, x * y).exp();
            max_classical = max_classical.max((e - target).norm());
        }
    }
    report.push_check(CheckRecord::le(
        SUITE,
        "classical_limit",
        "at zero multiplicity the kernel is the plane wave e^{ixy}",
        "kappa=0 box=[0.15,3]x[0.15,3] samples=8x8",
        max_classical,
        1e-12,
    ));

    // tensor form: the several-axis kernel is the product of its axis factors
    let k = cfg.multiplicity()?;
    if k.dim() >= 2 {
        let mut max_tensor = 0.0f64;
        for &a in &[0.3, 1.1, 2.2] {
            let x: Vec<f64> = (0..k.dim()).map(|j| a + 0.2 * j as f64).collect();
            let y: Vec<f64> = (0..k.dim()).map(|j| 0.9 - 0.1 * j as f64).collect();
            let full = kernel(&k, &x, &y)?;
            let mut prod = Complex64::new(1.0, 0.0);
            for j in 0..k.dim() {
                prod *= kernel_1d(k.kappa()[j], x[j], y[j])?;
            }
            max_tensor = max_tensor.max((full - prod).norm());
        }
        report.push_check(CheckRecord::le(
            SUITE,
            "tensor_factorization",
            "the several-axis kernel equals the product of its one-axis factors",
            format!("kappa={:?} dim={}", k.kappa(), k.dim()),
            max_tensor,
            1e-12,
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// product-formula suite
// ---------------------------------------------------------------------------

fn suite_product_formula(cfg: &RunConfig, report: &mut RunReport) -> Result<()> {
    const SUITE: &str = "product-formula";
    let order = cfg.quadrature_order;
    let pts = linspace(0.1, 2.9, 8);

    for &kappa in &distinct_kappas(cfg) {
        let params = format!("kappa={kappa} order={order} box=[0.1,2.9]^3 samples=8^3");

        let mut max_residual = 0.0f64;
        let mut max_mass = 0.0f64;
        let mut max_abs_mass = 0.0f64;
        let mut min_plus_mass = f64::INFINITY;
        let mut max_plus_mass = 0.0f64;
        for &x in &pts {
            for &y in &pts {
                max_mass = max_mass.max((integrate_nu(kappa, x, y, order, |_| 1.0)? - 1.0).abs());
                max_abs_mass = max_abs_mass.max(integrate_nu_abs(kappa, x, y, order)?);
                let plus = integrate_nu_plus(kappa, x, y, order, |_| 1.0)?;
                min_plus_mass = min_plus_mass.min(plus);
                max_plus_mass = max_plus_mass.max(plus);
                for &lambda in &pts {
                    max_residual =
                        max_residual.max(product_formula_residual(kappa, x, y, lambda, order)?);
                }
            }
        }
        report.push_check(CheckRecord::le(
            SUITE,
            "product_identity_residual",
            "the product of two kernel values equals the kernel integrated against the \
             explicit three-point measure",
            &params,
            max_residual,
            1e-8,
        ));
        report.push_check(CheckRecord::le(
            SUITE,
            "unit_mass",
            "the three-point measure has total mass exactly 1",
            &params,
            max_mass,
            1e-8,
        ));
        report.push_check(CheckRecord::le(
            SUITE,
            "total_variation_bound",
            "the total variation of the three-point measure is at most 4",
            &params,
            max_abs_mass,
            4.0 + 1e-6,
        ));
        report.push_check(CheckRecord::le(
            SUITE,
            "positive_part_mass_upper",
            "the positive-part measure has mass at most the total variation bound 4",
            &params,
            max_plus_mass,
            4.0 + 1e-6,
        ));
        report.push_check(CheckRecord::ge(
            SUITE,
            "positive_part_mass_lower",
            "the positive-part measure has mass at least 1 (it dominates the signed \
             measure of mass 1)",
            &params,
            min_plus_mass,
            1.0 - 1e-8,
        ));
        report.push_trace(ConstantTrace {
            suite: SUITE.into(),
            constant: "max_total_variation".into(),
            parameters: params.clone(),
            refinement: format!("order={order}"),
            value: max_abs_mass,
        });

        // support band: integrating an indicator of the complement gives zero
        if kappa > 0.0 {
            let mut max_outside = 0.0f64;
            for &(x, y) in &[(0.4, 1.0), (1.3, 2.2), (0.7, 0.7)] {
                let (lo, hi) = support_band(x, y);
                let pad = 1e-9;
                let outside = integrate_nu(kappa, x, y, order, |z| {
                    let az = z.abs();
                    if az < lo - pad || az > hi + pad {
                        1.0
                    } else {
                        0.0
                    }
                })?;
                max_outside = max_outside.max(outside.abs());
            }
            report.push_check(CheckRecord::le(
                SUITE,
                "support_band",
                "the three-point measure assigns no mass outside the closed band \
                 [ |x-y|, x+y ] in |z|",
                format!("kappa={kappa} order={order} pairs=3"),
                max_outside,
                1e-12,
            ));
        }
    }

    // tensor extension in two variables: unit mass at regular points
    let kappa0 = distinct_kappas(cfg)[0];
    let k2 = Multiplicity::new(vec![kappa0, kappa0.max(0.3)])?;
    let mut max_tensor_mass = 0.0f64;
    for &(ax, ay) in &[(0.5, 0.8), (1.4, 0.3), (2.1, 1.7)] {
        let x = [ax, ax + 0.2];
        let y = [ay, ay + 0.1];
        let mass = integrate_upsilon(&k2, &x, &y, order, |_| 1.0)?;
        max_tensor_mass = max_tensor_mass.max((mass - 1.0).abs());
    }
    report.push_check(CheckRecord::le(
        SUITE,
        "tensor_unit_mass",
        "the tensor-product extension of the three-point measure has total mass 1 at \
         regular points",
        format!("kappa={:?} order={order} pairs=3", k2.kappa()),
        max_tensor_mass,
        1e-8,
    ));
    Ok(())
}

// ---------------------------------------------------------------------------
// transform suite
// ---------------------------------------------------------------------------

fn suite_transform(cfg: &RunConfig, report: &mut RunReport) -> Result<()> {
    const SUITE: &str = "transform";
    let grid = cfg.grid()?;
    let n = cfg.grid_size;
    let tr = Transformer::new(&grid)?;
    let k = grid.multiplicity();
    let dim_params = format!(
        "kappa={:?} dim={} n={} half_width={}",
        k.kappa(),
        k.dim(),
        n,
        cfg.half_width
    );

    // round trip and Parseval on the damped-envelope class
    let class: Vec<(&str, GridFunction)> = vec![
        (
            "even",
            GridFunction::from_real_fn(&grid, |x| {
                (-x.iter().map(|v| v * v).sum::<f64>()).exp()
            }),
        ),
        (
            "odd",
            GridFunction::from_real_fn(&grid, |x| {
                x[0] * (-0.8 * x.iter().map(|v| v * v).sum::<f64>()).exp()
            }),
        ),
        (
            "offset",
            GridFunction::from_real_fn(&grid, |x| {
                (-1.5 * x.iter().map(|v| (v - 0.4) * (v - 0.4)).sum::<f64>()).exp()
            }),
        ),
    ];
    let mut max_rt = 0.0f64;
    let mut max_pl = 0.0f64;
    for (_, f) in &class {
        let back = tr.inverse(&tr.forward(f)?)?;
        max_rt = max_rt.max(rel_l2(&back, f)?);
        max_pl = max_pl.max(tr.plancherel_residual(f)?);
    }
    report.push_check(CheckRecord::le(
        SUITE,
        "round_trip",
        "the inverse transform undoes the forward transform on damped envelopes \
         (relative 2-norm)",
        format!("{dim_params} class=even,odd,offset"),
        max_rt,
        graded(n, 1e-5, 1e-4, 2e-2),
    ));
    report.push_check(CheckRecord::le(
        SUITE,
        "parseval_residual",
        "the transform preserves the weighted 2-norm (relative residual)",
        format!("{dim_params} class=even,odd,offset"),
        max_pl,
        graded(n, 1e-5, 1e-4, 2e-2),
    ));

    // the heat kernel's image is the Gaussian e^{-t|xi|^2}
    let mut max_heat = 0.0f64;
    for &t in &[0.5, 1.0, 2.0] {
        let q = heat_kernel(&grid, t)?;
        let image = tr.forward(&q)?;
        let target = GridFunction::from_real_fn(&grid, move |xi| {
            (-t * xi.iter().map(|v| v * v).sum::<f64>()).exp()
        });
        let diff = image.zip_map(&target, |a, b| a - b)?;
        max_heat = max_heat.max(diff.norm_sup());
    }
    report.push_check(CheckRecord::le(
        SUITE,
        "heat_image_is_gaussian",
        "the transform maps the heat kernel at time t to e^{-t |xi|^2} (sup norm)",
        format!("{dim_params} t=0.5,1,2"),
        max_heat,
        graded(n, 1e-6, 1e-5, 5e-3),
    ));

    // heat mass: the heat kernel integrates to the reciprocal normalizing
    // constant
    let c = measure::gaussian_constant(&k);
    let q1 = heat_kernel(&grid, 1.0)?;
    let mass_residual = (q1.integral(WeightScheme::Smooth).re * c - 1.0).abs();
    report.push_check(CheckRecord::le(
        SUITE,
        "heat_mass",
        "the heat kernel integrates to the reciprocal of the Gaussian normalizing \
         constant (relative)",
        format!("{dim_params} t=1"),
        mass_residual,
        graded(n, 1e-6, 1e-6, 1e-4),
    ));

    // admissibility: the Gaussian profile's decay moment has a closed form
    let heat_profile = RadialProfile::heat();
    let moment = heat_profile.admissibility_moment(&k)?;
    let p = k.homogeneous_degree();
    let closed = 2f64.powf(0.5 * p) * gamma(0.5 * p + 1.0);
    report.push_check(CheckRecord::le(
        SUITE,
        "gaussian_profile_moment",
        "the admissibility moment of the Gaussian profile matches its closed form \
         2^{p/2} Gamma(p/2 + 1) with p the homogeneous degree (relative)",
        &dim_params,
        (moment - closed).abs() / closed,
        1e-6,
    ));
    let poisson_profile = RadialProfile::poisson(&k);
    let poisson_moment = poisson_profile.admissibility_moment(&k)?;
    report.push_check(CheckRecord::ge(
        SUITE,
        "poisson_profile_admissible",
        "the Poisson profile has a finite, strictly positive admissibility moment",
        &dim_params,
        if poisson_moment.is_finite() {
            poisson_moment
        } else {
            -1.0
        },
        1e-6,
    ));
    let flat = RadialProfile::new("flat", |_| 1.0, |_| 0.0);
    let rejected = flat.admissibility_moment(&k).is_err();
    report.push_check(CheckRecord::ge(
        SUITE,
        "non_decaying_profile_rejected",
        "a profile without decay is rejected as inadmissible (1 = rejected)",
        &dim_params,
        if rejected { 1.0 } else { 0.0 },
        1.0,
    ));
    Ok(())
}

// ---------------------------------------------------------------------------
// translation suite
// ---------------------------------------------------------------------------

fn suite_translation(cfg: &RunConfig, report: &mut RunReport) -> Result<()> {
    const SUITE: &str = "translation";
    let order = cfg.quadrature_order;

    // interval indicators: closed form vs quadrature route, and exact support
    for &kappa in &distinct_kappas(cfg) {
        let mut max_route_diff = 0.0f64;
        let mut max_outside = 0.0f64;
        for &x in &[0.35, 0.9, 1.7] {
            for &r in &[0.25, 0.8] {
                for &y in &linspace(-3.0, 3.0, 41) {
                    if y == 0.0 {
                        continue;
                    }
                    let closed = translate_indicator_interval(kappa, r, x, y)?;
                    let quad =
                        translate_indicator_interval_quadrature(kappa, r, x, y, order)?;
                    max_route_diff = max_route_diff.max((closed - quad).abs());
                    // outside the reachable window the translate vanishes
                    if (x.abs() - y.abs()).abs() > r {
                        max_outside = max_outside.max(closed.abs()).max(quad.abs());
                    }
                }
            }
        }
        report.push_check(CheckRecord::le(
            SUITE,
            "indicator_dual_routes",
            "translating an interval indicator gives the same values through the \
             closed-form density and through the positive-measure quadrature",
            format!("kappa={kappa} order={order} x=0.35,0.9,1.7 r=0.25,0.8 y=41 samples"),
            max_route_diff,
            1e-8,
        ));
        report.push_check(CheckRecord::le(
            SUITE,
            "indicator_support",
            "the translated interval indicator vanishes identically where the distance \
             of |x| and |y| exceeds the radius",
            format!("kappa={kappa} order={order}"),
            max_outside,
            1e-14,
        ));
    }

    // cube indicators stay nonnegative at regular points: cartesian sweep
    // over a sample tensor that avoids the reflection hyperplanes
    let k = cfg.multiplicity()?;
    let mut most_negative = 0.0f64;
    let samples = linspace(-2.55, 2.55, 9);
    let x0: Vec<f64> = (0..k.dim()).map(|j| 0.6 + 0.3 * j as f64).collect();
    let mut idx = vec![0usize; k.dim()];
    'sweep: loop {
        let y: Vec<f64> = idx.iter().map(|&i| samples[i]).collect();
        if y.iter().all(|&v| v != 0.0) {
            let v = translate_indicator_cube(&k, 0.9, &x0, &y)?;
            most_negative = most_negative.min(v);
        }
        let mut j = 0;
        loop {
            idx[j] += 1;
            if idx[j] < samples.len() {
                break;
            }
            idx[j] = 0;
            j += 1;
            if j == k.dim() {
                break 'sweep;
            }
        }
    }
    report.push_check(CheckRecord::le(
        SUITE,
        "cube_indicator_nonnegative",
        "the translated cube indicator is nonnegative at regular points (reported: how \
         far below zero it dips)",
        format!("kappa={:?} r=0.9 center={x0:?}", k.kappa()),
        -most_negative,
        1e-12,
    ));

    // grid route vs closed form for the translated heat kernel
    let grid = cfg.grid()?;
    let n = cfg.grid_size;
    let tr = Transformer::new(&grid)?;
    let t = 0.8;
    let x_shift: Vec<f64> = (0..k.dim()).map(|j| 0.7 - 0.2 * j as f64).collect();
    let q = heat_kernel(&grid, t)?;
    let spectral = translate_grid(&tr, &q, &x_shift)?;
    let kk = k.clone();
    let xs = x_shift.clone();
    let closed = GridFunction::from_fn(&grid, move |y| {
        Complex64::new(
            crate::transform::translated_heat_kernel(&kk, t, &xs, y)
                .expect("closed-form heat translate"),
            0.0,
        )
    });
    let tdhk_rel = rel_sup(&spectral, &closed)?;
    let grid_params = format!(
        "kappa={:?} dim={} n={n} half_width={} t={t} x={x_shift:?}",
        k.kappa(),
        k.dim(),
        cfg.half_width
    );
    report.push_check(CheckRecord::le(
        SUITE,
        "translated_heat_kernel_routes",
        "translating the heat kernel through the spectral route matches its closed form \
         (relative sup norm)",
        &grid_params,
        tdhk_rel,
        graded(n, 1e-5, 1e-4, 2e-2),
    ));

    // translation preserves mass: the translated heat kernel still integrates
    // to the reciprocal normalizing constant
    let c = measure::gaussian_constant(&k);
    let mass_residual = (spectral.integral(WeightScheme::Smooth).re * c - 1.0).abs();
    report.push_check(CheckRecord::le(
        SUITE,
        "translation_preserves_mass",
        "the translated heat kernel integrates to the reciprocal of the Gaussian \
         normalizing constant (relative)",
        &grid_params,
        mass_residual,
        graded(n, 1e-6, 1e-5, 1e-3),
    ));

    // convolution semigroup: q^s * q^t = q^{s+t}
    let qs = heat_kernel(&grid, 0.5)?;
    let qt = heat_kernel(&grid, 0.7)?;
    let conv = convolve(&tr, &qs, &qt)?;
    let target = heat_kernel(&grid, 1.2)?;
    let semigroup_rel = rel_sup(&conv, &target)?;
    report.push_check(CheckRecord::le(
        SUITE,
        "convolution_semigroup",
        "convolving heat kernels adds their times (relative sup norm)",
        format!(
            "kappa={:?} dim={} n={n} half_width={} s=0.5 t=0.7",
            k.kappa(),
            k.dim(),
            cfg.half_width
        ),
        semigroup_rel,
        graded(n, 1e-5, 1e-4, 2e-2),
    ));

    // convolution norm constant: ||f*g||_p / (||f||_1 ||g||_p), traced under
    // grid doubling
    let p = 1.5;
    let young = |g: &Grid| -> Result<f64> {
        let trg = Transformer::new(g)?;
        let f = heat_kernel(g, 0.4)?;
        let gfun = GridFunction::from_real_fn(g, |x| {
            (-1.2 * x.iter().map(|v| (v - 0.3) * (v - 0.3)).sum::<f64>()).exp()
        });
        let fg = convolve(&trg, &f, &gfun)?;
        Ok(fg.norm_p(p, WeightScheme::CellMass)
            / (f.norm_p(1.0, WeightScheme::CellMass) * gfun.norm_p(p, WeightScheme::CellMass)))
    };
    let young_base = young(&grid)?;
    let doubled = grid.refined()?;
    let young_fine = young(&doubled)?;
    let young_params = format!(
        "kappa={:?} dim={} p={p} f=heat(0.4) g=offset envelope",
        k.kappa(),
        k.dim()
    );
    for (label, value) in [(n, young_base), (2 * n, young_fine)] {
        report.push_trace(ConstantTrace {
            suite: SUITE.into(),
            constant: "convolution_norm_ratio".into(),
            parameters: young_params.clone(),
            refinement: format!("grid={label}"),
            value,
        });
    }
    report.push_check(CheckRecord::le(
        SUITE,
        "convolution_norm_ratio_drift",
        "the convolution norm ratio ||f*g||_p / (||f||_1 ||g||_p) moves by at most 10% \
         under grid doubling",
        &young_params,
        drift(young_fine, young_base),
        0.10,
    ));
    Ok(())
}

// ---------------------------------------------------------------------------
// maximal suite
// ---------------------------------------------------------------------------

fn suite_maximal(cfg: &RunConfig, report: &mut RunReport) -> Result<()> {
    const SUITE: &str = "maximal";
    let grid = cfg.grid()?;
    let n = cfg.grid_size;
    let k = grid.multiplicity();
    let settings = cfg.maximal_settings()?;
    let base_params = format!(
        "kappa={:?} dim={} n={n} half_width={} radii={}",
        k.kappa(),
        k.dim(),
        cfg.half_width,
        settings.schedule.len()
    );

    // exact values on the constant function
    let one = GridFunction::from_real_fn(&grid, |_| 1.0);
    let rect_one = maximal_rect(&one, &settings.schedule)?;
    let rect_target = 2f64.powi(k.dim() as i32);
    let mut max_rect_dev = 0.0f64;
    for v in rect_one.values() {
        max_rect_dev = max_rect_dev.max((v.re - rect_target).abs() / rect_target);
    }
    report.push_check(CheckRecord::le(
        SUITE,
        "rectangle_average_of_constant",
        "one-sided rectangle averages of the constant 1 equal 2^d exactly (the \
         numerator sees the full reflection preimage, the denominator one orthant)",
        &base_params,
        max_rect_dev,
        1e-10,
    ));

    let cube_one = maximal_cube(&one, &settings.schedule)?;
    let r_max = settings.schedule.r_max();
    let mut max_cube_dev = 0.0f64;
    for (i, v) in cube_one.values().iter().enumerate() {
        let x = grid.point(i);
        if x.iter().all(|&c| c.abs() + r_max <= cfg.half_width) {
            max_cube_dev = max_cube_dev.max((v.re - 1.0).abs());
        }
    }
    report.push_check(CheckRecord::le(
        SUITE,
        "cube_average_of_constant",
        "translated-cube averages of the constant 1 equal 1 at every node whose largest \
         cube stays inside the box",
        &base_params,
        max_cube_dev,
        1e-9,
    ));

    // pointwise domination of ball averages by the closed-form constant times
    // cube averages, plus the spectral cross-check, on a shared kernel
    if k.dim() <= 2 {
        let tr = Transformer::new(&grid)?;
        let f = standard_bump(&grid);
        let dom = domination_report(&tr, &f, &settings)?;
        let fraction = dom.constants["ball_vs_cube_fraction_of_bound"];
        report.push_check(CheckRecord::le(
            SUITE,
            "ball_dominated_by_cube",
            "ball averages are at most the closed-form measure ratio times cube averages \
             of the modulus, at every node and radius (reported: largest fraction of \
             the bound actually used)",
            &base_params,
            fraction,
            1.0,
        ));
        for (name, value) in &dom.constants {
            report.push_trace(ConstantTrace {
                suite: SUITE.into(),
                constant: name.clone(),
                parameters: base_params.clone(),
                refinement: format!("grid={n}"),
                value: *value,
            });
        }
        if let Some(dev) = dom.constants.get("spectral_vs_definitional_ball_max_rel") {
            report.push_check(CheckRecord::le(
                SUITE,
                "spectral_ball_matches_definitional",
                "the spectral-multiplier ball operator agrees with the direct kernel \
                 quadrature on shared radii (relative)",
                &base_params,
                *dev,
                graded(n, 2e-3, 5e-3, 5e-2),
            ));
        }
    }

    // inequality constants, each measured three ways: base, densified
    // schedule, doubled grid
    let fine_grid = grid.refined()?;
    let dense = settings.schedule.densified();

    let measure_constants = |g: &Grid, sched: &RadiusSchedule| -> Result<(f64, f64, f64, f64)> {
        let f = standard_bump(g);
        let mf = maximal_rect(&f, sched)?;
        let lambdas = default_lambdas(&mf, 24)?;
        let weak = weak_type_ratio(&mf, &f, &lambdas)?;
        let strong = strong_type_ratio(&mf, &f, 2.0)?;
        let weight = GridFunction::from_real_fn(g, |x| {
            1.0 / (1.0 + x.iter().map(|v| v * v).sum::<f64>())
        });
        let weighted = weighted_inequality_ratio(&f, &weight, 2.0, sched)?;
        let cube = maximal_cube(&f, sched)?;
        let mut cube_vs_rect = 0.0f64;
        for (c, r) in cube.values().iter().zip(mf.values()) {
            if r.re > 0.0 {
                cube_vs_rect = cube_vs_rect.max(c.re / r.re);
            }
        }
        Ok((weak, strong, weighted, cube_vs_rect))
    };

    let base = measure_constants(&grid, &settings.schedule)?;
    let denser = measure_constants(&grid, &dense)?;
    let finer = measure_constants(&fine_grid, &settings.schedule)?;

    let names = [
        ("weak_type_ratio", "largest lambda * measure({Mf > lambda}) / ||f||_1 over a \
          threshold sweep, for one-sided rectangle averages"),
        ("strong_type_ratio", "||Mf||_2 / ||f||_2 for one-sided rectangle averages"),
        ("weighted_inequality_ratio", "integral of (Mf)^2 against a weight over the \
          integral of f^2 against the rectangle-maximal of the weight"),
        ("cube_vs_rectangle_ratio", "largest pointwise quotient of cube averages by \
          one-sided rectangle averages"),
    ];
    let tuples = [
        (base.0, denser.0, finer.0),
        (base.1, denser.1, finer.1),
        (base.2, denser.2, finer.2),
        (base.3, denser.3, finer.3),
    ];
    for ((name, statement), (b, d, f)) in names.iter().zip(tuples) {
        for (refinement, value) in [
            (format!("grid={n} radii={}", settings.schedule.len()), b),
            (format!("grid={n} radii={}", dense.len()), d),
            (format!("grid={} radii={}", 2 * n, settings.schedule.len()), f),
        ] {
            report.push_trace(ConstantTrace {
                suite: SUITE.into(),
                constant: (*name).into(),
                parameters: base_params.clone(),
                refinement,
                value,
            });
        }
        report.push_check(CheckRecord::le(
            SUITE,
            format!("{name}_schedule_drift"),
            format!("{statement}; moves by at most 2% when the radius schedule doubles"),
            &base_params,
            drift(d, b),
            0.02,
        ));
        report.push_check(CheckRecord::le(
            SUITE,
            format!("{name}_grid_drift"),
            format!("{statement}; moves by at most 10% when the grid doubles"),
            &base_params,
            drift(f, b),
            0.10,
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// covering suite
// ---------------------------------------------------------------------------

/// Weighted measure of a union of folded rectangles, by exact sweep over the
/// positive orthant (where each rectangle is a plain box). Uses the same
/// one-sided convention as [`Rectangle::measure`], so union and sum are
/// directly comparable.
fn union_measure(rects: &[Rectangle], k: &Multiplicity) -> f64 {
    fn orthant(boxes: &[Vec<(f64, f64)>], axis: usize, k: &Multiplicity) -> f64 {
        if boxes.is_empty() {
            return 0.0;
        }
        let kappa = k.kappa()[axis];
        let antiderivative = |t: f64| t.powf(2.0 * kappa + 1.0) / (2.0 * kappa + 1.0);
        let mut cuts: Vec<f64> = boxes
            .iter()
            .flat_map(|b| [b[axis].0, b[axis].1])
            .collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut total = 0.0;
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b <= a {
                continue;
            }
            let active: Vec<Vec<(f64, f64)>> = boxes
                .iter()
                .filter(|bx| bx[axis].0 <= a && bx[axis].1 >= b)
                .cloned()
                .collect();
            if active.is_empty() {
                continue;
            }
            let slab = antiderivative(b) - antiderivative(a);
            let rest = if axis + 1 == k.dim() {
                1.0
            } else {
                orthant(&active, axis + 1, k)
            };
            total += slab * rest;
        }
        total
    }
    let boxes: Vec<Vec<(f64, f64)>> = rects
        .iter()
        .map(|r| (0..r.dim()).map(|j| r.interval(j)).collect())
        .collect();
    orthant(&boxes, 0, k)
}

fn suite_covering(cfg: &RunConfig, report: &mut RunReport) -> Result<()> {
    const SUITE: &str = "covering";
    let k = cfg.multiplicity()?;
    let d = k.dim();
    let count = 200usize;
    let dilation = 5.0;
    let params = format!(
        "kappa={:?} dim={d} rectangles={count} dilation={dilation} seeds=10 base_seed={}",
        k.kappa(),
        cfg.seed
    );

    let mut incomplete = 0usize;
    let mut overlap_violations = 0usize;
    let mut incomplete_at_3 = 0usize;
    let mut constants: Vec<f64> = Vec::new();
    for s in 0..10u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(s));
        let rects: Vec<Rectangle> = (0..count)
            .map(|_| {
                let center: Vec<f64> = (0..d).map(|_| rng.gen_range(-5.0..5.0)).collect();
                let radius = rng.gen_range(0.1..1.5);
                Rectangle::new(center, radius).expect("sampled rectangle")
            })
            .collect();
        let cert = vitali_select(&rects, dilation)?;
        if !cert.is_complete() {
            incomplete += 1;
        }
        for (a_pos, &ia) in cert.selected.iter().enumerate() {
            for &ib in &cert.selected[a_pos + 1..] {
                if rects[ia].intersects(&rects[ib]) {
                    overlap_violations += 1;
                }
            }
        }
        let union = union_measure(&rects, &k);
        let selected_mass: f64 = cert
            .selected
            .iter()
            .map(|&i| rects[i].measure(&k).expect("rectangle measure"))
            .sum();
        let c = union / selected_mass;
        constants.push(c);
        report.push_trace(ConstantTrace {
            suite: SUITE.into(),
            constant: "union_over_selected".into(),
            parameters: params.clone(),
            refinement: format!("seed={}", cfg.seed.wrapping_add(s)),
            value: c,
        });

        let cert3 = vitali_select(&rects, 3.0)?;
        incomplete_at_3 += usize::from(!cert3.is_complete());
    }

    report.push_check(CheckRecord::le(
        SUITE,
        "engulfment_complete",
        "at dilation 5 every input rectangle is engulfed by a dilated selected one \
         (reported: seeds with leftovers)",
        &params,
        incomplete as f64,
        0.0,
    ));
    report.push_check(CheckRecord::le(
        SUITE,
        "selected_pairwise_disjoint",
        "the selected subfamily is pairwise disjoint (reported: overlapping pairs)",
        &params,
        overlap_violations as f64,
        0.0,
    ));
    let c_max = constants.iter().cloned().fold(0.0f64, f64::max);
    let c_min = constants.iter().cloned().fold(f64::INFINITY, f64::min);
    let c_mean = constants.iter().sum::<f64>() / constants.len() as f64;
    report.push_check(CheckRecord::ge(
        SUITE,
        "union_dominates_selected",
        "the union contains the disjoint selected family, so its measure is at least \
         the selected mass (reported: smallest union/selected quotient)",
        &params,
        c_min,
        1.0 - 1e-9,
    ));
    report.push_check(CheckRecord::le(
        SUITE,
        "union_bound_finite_and_stable",
        "the union measure is bounded by a finite multiple of the selected mass, \
         stable across seeds (reported: relative spread of the constant)",
        format!("{params} c_mean={c_mean}"),
        (c_max - c_min) / c_mean,
        1.0,
    ));
    report.push_check(CheckRecord::finite(
        SUITE,
        "dilation_three_engulfment",
        "informational: seeds whose certificate is already complete at dilation 3 \
         (reported: seeds with leftovers at dilation 3)",
        &params,
        incomplete_at_3 as f64,
        0.0,
    ));
    Ok(())
}

// ---------------------------------------------------------------------------
// fefferman-stein suite
// ---------------------------------------------------------------------------

/// The largest power-of-4 family size (at least 4, at most `cap`) whose slots
/// are still resolved by the grid: each slot must span at least five cells of
/// the first axis.
pub fn largest_resolved_family(grid: &Grid, cap: usize) -> usize {
    let l = grid.axis(0).half_width();
    let h = grid.axis(0).spacing();
    let band = 0.75 * l;
    let mut best = 4usize;
    let mut size = 16usize;
    while size <= cap {
        let slot = band / (size as f64 / 2.0);
        if slot < 5.0 * h {
            break;
        }
        best = size;
        size *= 4;
    }
    best
}

/// Disjointly supported translates of one fixed bump along the first axis.
///
/// The slot layout is fixed by `largest` alone: `largest/2` distinct
/// magnitudes tile the band `[l/8, 7l/8]` (staying clear of the degenerate
/// weight at the origin and of the grid edge), and each magnitude carries a
/// positive-side and a mirror negative-side slot. A family of `size` members
/// (with `size` dividing `largest`) takes every `largest/size`-th slot;
/// strided subfamilies therefore sit on the positive half-axis at distinct
/// magnitudes, and only the full family adds the mirror images (whose maximal
/// functions coincide with their partners', since the averaging windows
/// depend on folded coordinates only). Every member of every family is the
/// *same* compactly supported box bump (the indicator of a small cube),
/// merely translated. The flat-top profile matters: it makes the smallest
/// averaging window realise the full height of the member, so the
/// single-member weak-type ratio already sits at the peak-dominated value
/// that large families saturate, and the family trace of the ratio stays
/// flat or falls instead of climbing toward it.
pub fn disjoint_translate_family(grid: &Grid, largest: usize, size: usize) -> Result<FunctionSequence> {
    if largest == 0 || largest % 2 != 0 || size == 0 || largest % size != 0 {
        return Err(Error::InvalidParameter {
            name: "size",
            message: format!(
                "family sizes must divide the (even) slot count, got {size} of {largest}"
            ),
        });
    }
    let l = grid.axis(0).half_width();
    let m_lo = l / 8.0;
    let m_hi = l - l / 8.0;
    let per_side = largest / 2;
    let slot_width = (m_hi - m_lo) / per_side as f64;
    let support = 0.45 * slot_width; // half-width; 10% gap between neighbours
    let stride = largest / size;
    let members: Vec<GridFunction> = (0..size)
        .map(|i| {
            let slot = stride / 2 + i * stride;
            let magnitude = m_lo + (slot / 2) as f64 * slot_width + 0.5 * slot_width;
            let center = if slot % 2 == 0 { magnitude } else { -magnitude };
            GridFunction::from_real_fn(grid, move |x| {
                let inside = ((x[0] - center) / support).abs() < 1.0
                    && x[1..].iter().all(|v| (v / support).abs() < 1.0);
                if inside {
                    1.0
                } else {
                    0.0
                }
            })
        })
        .collect();
    FunctionSequence::new(members)
}

fn suite_fefferman_stein(cfg: &RunConfig, report: &mut RunReport) -> Result<()> {
    const SUITE: &str = "fefferman-stein";
    let grid = cfg.grid()?;
    let n = cfg.grid_size;
    let k = grid.multiplicity();
    let l = cfg.half_width;
    let tr = Transformer::new(&grid)?;

    // coarsened schedules keep the sweep affordable; the family-size cap
    // shrinks with dimension for the same reason
    let radii_cap = if k.dim() == 1 { 12 } else { 8 };
    let base = cfg.maximal_settings()?;
    let settings = MaximalSettings {
        schedule: base.schedule.coarsened(radii_cap),
        profile_schedule: base.profile_schedule.coarsened(radii_cap),
        mollification: base.mollification,
    };
    let largest = largest_resolved_family(&grid, if k.dim() == 1 { 64 } else { 16 });
    let mut family_sizes = vec![1usize];
    let mut s = 4usize;
    while s <= largest {
        family_sizes.push(s);
        s *= 4;
    }
    let r = 2.0;

    let heat = RadialProfile::heat();
    let poisson = RadialProfile::poisson(&k);
    let operators: Vec<OperatorTag<'_>> = vec![
        OperatorTag::Ball,
        OperatorTag::Rect,
        OperatorTag::Profile(&heat),
        OperatorTag::Profile(&poisson),
    ];

    for tag in operators {
        let op_name = tag.name();
        let params = format!(
            "kappa={:?} dim={} n={n} half_width={l} operator={op_name} r={r} radii={} slots={largest}",
            k.kappa(),
            k.dim(),
            settings.schedule.len()
        );
        // One absolute threshold grid, anchored at the single-member run and
        // shared by every family size, so the weak-endpoint suprema are
        // sampled at identical thresholds and their comparison is not
        // polluted by sweep re-anchoring.
        let mut lambdas: Vec<f64> = Vec::new();
        let mut ratios: Vec<(usize, f64, f64)> = Vec::new();
        for &size in &family_sizes {
            let inputs = disjoint_translate_family(&grid, largest, size)?;
            let maximals = inputs.map_members(|f| apply_maximal(&tr, tag, f, &settings))?;
            if lambdas.is_empty() {
                let sup = fs_vector_norm(&maximals, r)?.norm_sup();
                let (lo, hi) = (1e-4 * sup, 16.0 * sup);
                lambdas = (0..600)
                    .map(|i| lo * (hi / lo).powf(i as f64 / 599.0))
                    .collect();
            }
            let weak = fefferman_stein_ratio(&maximals, &inputs, r, 1.0, Some(&lambdas))?;
            let strong = fefferman_stein_ratio(&maximals, &inputs, r, 2.0, None)?;
            ratios.push((size, weak, strong));
            for (p_label, value) in [("1", weak), ("2", strong)] {
                report.push_trace(ConstantTrace {
                    suite: SUITE.into(),
                    constant: format!("vector_ratio_{op_name}_p{p_label}"),
                    parameters: params.clone(),
                    refinement: format!("family={size}"),
                    value,
                });
            }
        }
        let (_, weak_1, strong_1) = ratios[0];
        let growth = |value: f64, base: f64| -> f64 {
            if base == 0.0 {
                if value == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                (value / base - 1.0).max(0.0)
            }
        };
        let weak_growth = ratios
            .iter()
            .map(|&(_, w, _)| growth(w, weak_1))
            .fold(0.0f64, f64::max);
        let strong_growth = ratios
            .iter()
            .map(|&(_, _, s)| growth(s, strong_1))
            .fold(0.0f64, f64::max);
        report.push_check(CheckRecord::le(
            SUITE,
            format!("no_blowup_weak_{op_name}"),
            "the weak-endpoint aggregate ratio over disjoint translate families does \
             not grow beyond its single-member value by more than 10% as the family grows",
            &params,
            weak_growth,
            0.10,
        ));
        report.push_check(CheckRecord::le(
            SUITE,
            format!("no_blowup_strong_{op_name}"),
            "the 2-norm aggregate ratio over disjoint translate families does not \
             grow beyond its single-member value by more than 10% as the family grows",
            &params,
            strong_growth,
            0.10,
        ));
    }
    Ok(())
}
