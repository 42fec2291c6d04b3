//! The weighted measure family and its closed-form volumes.
//!
//! A multiplicity vector `k = (k_1, ..., k_d)` with `k_j >= 0` defines the
//! weight `h_k(x) = prod_j |x_j|^{k_j}` and the measure `dmu_k = h_k^2 dx`.
//! The weight is homogeneous of degree `gamma = sum_j k_j`, so every set scales
//! with exponent `2 gamma + d`. For cubes, balls, one-sided intervals and their
//! rectangle products the measure has closed forms, implemented here together
//! with the Gaussian normalization constant used by the transform.
//!
//! One-sided intervals deserve a comment since everything rectangle-shaped is
//! built from them: for a center `x` and radius `r > 0`,
//!
//! ```text
//!     I(x, r) = [ max(0, |x| - r), |x| + r )   (a subset of [0, inf))
//! ```
//!
//! and `mu_k(I(x,r))` means the one-sided weighted length
//! `((|x|+r)^{2k+1} - max(0,|x|-r)^{2k+1}) / (2k+1)`. The full preimage
//! `{ |t| in I(x,r) }` has twice that measure; the factor bookkeeping is the
//! caller's concern and is documented on each maximal operator.

use crate::error::Error;
use crate::quad::integrate_adaptive;
use crate::Result;

/// Multiplicity vector `k` with cached degree `gamma = sum_j k_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Multiplicity {
    kappa: Vec<f64>,
    gamma: f64,
}

impl Multiplicity {
    /// Validates `k_j >= 0` (finite) and builds the vector.
    pub fn new(kappa: Vec<f64>) -> Result<Self> {
        if kappa.is_empty() {
            return Err(Error::InvalidMultiplicity("empty vector".into()));
        }
        for (j, &k) in kappa.iter().enumerate() {
            if !k.is_finite() || k < 0.0 {
                return Err(Error::InvalidMultiplicity(format!(
                    "component {j} is {k}, must be finite and >= 0"
                )));
            }
        }
        let gamma = kappa.iter().sum();
        Ok(Self { kappa, gamma })
    }

    /// One-dimensional multiplicity.
    pub fn scalar(kappa: f64) -> Result<Self> {
        Self::new(vec![kappa])
    }

    /// The components `k_1, ..., k_d`.
    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    /// Space dimension `d`.
    pub fn dim(&self) -> usize {
        self.kappa.len()
    }

    /// `gamma = sum_j k_j`.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Homogeneity exponent `2 gamma + d` of the measure.
    pub fn homogeneous_degree(&self) -> f64 {
        2.0 * self.gamma + self.dim() as f64
    }

    /// True when every component vanishes (classical, unweighted case).
    pub fn is_classical(&self) -> bool {
        self.kappa.iter().all(|&k| k == 0.0)
    }
}

/// Regions with closed-form measure. Cubes and balls are centered at the
/// origin; intervals and rectangles are the one-sided sets described in the
/// module docs.
#[derive(Debug, Clone, PartialEq)]
pub enum Region {
    /// `[-r, r]^d`.
    Cube { radius: f64 },
    /// Euclidean ball of radius `r` about the origin.
    Ball { radius: f64 },
    /// One-sided interval `I(x, r)` on the half-line (requires `d = 1`).
    Interval { center: f64, radius: f64 },
    /// Product `prod_j I(z_j, r)` of one-sided intervals.
    Rectangle { center: Vec<f64>, radius: f64 },
}

impl Region {
    /// `mu_k` of the region.
    pub fn measure(&self, k: &Multiplicity) -> Result<f64> {
        match self {
            Region::Cube { radius } => cube(*radius, k),
            Region::Ball { radius } => ball(*radius, k),
            Region::Interval { center, radius } => {
                if k.dim() != 1 {
                    return Err(Error::InvalidParameter {
                        name: "region",
                        message: "interval region requires a 1-d multiplicity".into(),
                    });
                }
                interval(*center, *radius, k.kappa()[0])
            }
            Region::Rectangle { center, radius } => rectangle(center, *radius, k),
        }
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter {
            name: "radius",
            message: format!("must be finite and >= 0, got {r}"),
        });
    }
    Ok(())
}

/// The weight `h_k(x) = prod_j |x_j|^{k_j}`.
///
/// Vanishes on the reflection hyperplanes exactly when the corresponding
/// component of `k` is positive; components with `k_j = 0` contribute 1.
pub fn weight(x: &[f64], k: &Multiplicity) -> Result<f64> {
    if x.len() != k.dim() {
        return Err(Error::InvalidParameter {
            name: "x",
            message: format!("dimension {} does not match multiplicity {}", x.len(), k.dim()),
        });
    }
    let mut acc = 1.0;
    for (xj, &kj) in x.iter().zip(k.kappa()) {
        acc *= if kj == 0.0 { 1.0 } else { xj.abs().powf(kj) };
    }
    Ok(acc)
}

/// `mu_k([-r, r]^d) = 2^d prod_j (2k_j+1)^{-1} r^{2 gamma + d}`.
pub fn cube(r: f64, k: &Multiplicity) -> Result<f64> {
    check_radius(r)?;
    if r == 0.0 {
        return Ok(0.0);
    }
    let d = k.dim() as f64;
    let mut direct = 2f64.powi(k.dim() as i32) * r.powf(k.homogeneous_degree());
    for &kj in k.kappa() {
        direct /= 2.0 * kj + 1.0;
    }
    if direct.is_finite() && direct > 0.0 {
        return Ok(direct);
    }
    // log-space fallback for extreme exponents
    let mut log = d * 2f64.ln() + k.homogeneous_degree() * r.ln();
    for &kj in k.kappa() {
        log -= (2.0 * kj + 1.0).ln();
    }
    Ok(log.exp())
}

/// Surface integral of `h_k^2` over the unit sphere.
///
/// Convention: for `d = 1` the 0-sphere `{-1, 1}` carries counting measure, so
/// the integral is 2. For `d >= 2` the integral is computed by iterated
/// adaptive quadrature in angular coordinates, peeling one angle at a time:
/// the last coordinate contributes `int_0^pi sin^A cos^B` with
/// `A = 2(gamma - k_d) + d - 2` and `B = 2 k_d`.
pub fn sphere_weight_integral(k: &Multiplicity) -> f64 {
    let mut acc = 2.0;
    let mut gamma_head = k.kappa()[0];
    for (j, &kj) in k.kappa().iter().enumerate().skip(1) {
        let a = 2.0 * gamma_head + (j as f64 + 1.0) - 2.0;
        let b = 2.0 * kj;
        let angular = 2.0
            * integrate_adaptive(
                &mut |phi: f64| phi.sin().powf(a) * phi.cos().abs().powf(b),
                0.0,
                std::f64::consts::FRAC_PI_2,
                1e-13,
            );
        acc *= angular;
        gamma_head += kj;
    }
    acc
}

/// `mu_k(B_r) = (2 gamma + d)^{-1} (int_{S^{d-1}} h_k^2) r^{2 gamma + d}`.
pub fn ball(r: f64, k: &Multiplicity) -> Result<f64> {
    check_radius(r)?;
    if r == 0.0 {
        return Ok(0.0);
    }
    Ok(sphere_weight_integral(k) / k.homogeneous_degree() * r.powf(k.homogeneous_degree()))
}

/// One-sided interval measure
/// `mu_k(I(x,r)) = ((|x|+r)^{2k+1} - max(0, |x|-r)^{2k+1}) / (2k+1)`.
pub fn interval(x: f64, r: f64, kappa: f64) -> Result<f64> {
    check_radius(r)?;
    if !(kappa >= 0.0) || !kappa.is_finite() {
        return Err(Error::InvalidMultiplicity(format!("kappa = {kappa}")));
    }
    let p = 2.0 * kappa + 1.0;
    let hi = (x.abs() + r).powf(p);
    let lo = (x.abs() - r).max(0.0).powf(p);
    Ok((hi - lo) / p)
}

/// Product measure `mu_k(R(z, r)) = prod_j mu_{k_j}(I(z_j, r))`.
pub fn rectangle(center: &[f64], r: f64, k: &Multiplicity) -> Result<f64> {
    if center.len() != k.dim() {
        return Err(Error::InvalidParameter {
            name: "center",
            message: format!(
                "dimension {} does not match multiplicity {}",
                center.len(),
                k.dim()
            ),
        });
    }
    let mut acc = 1.0;
    for (&zj, &kj) in center.iter().zip(k.kappa()) {
        acc *= interval(zj, r, kj)?;
    }
    Ok(acc)
}

/// Scale-invariant ratio `mu_k(Q_r) / mu_k(B_r)`.
///
/// This is the explicit constant in the pointwise domination of the ball
/// maximal operator by the cube maximal operator.
pub fn cube_ball_ratio(k: &Multiplicity) -> f64 {
    let mut prod = 1.0;
    for &kj in k.kappa() {
        prod *= 2.0 * kj + 1.0;
    }
    2f64.powi(k.dim() as i32) * k.homogeneous_degree() / (prod * sphere_weight_integral(k))
}

/// Gaussian normalization constant `c_k`, defined by
/// `c_k^{-1} = int e^{-|x|^2/2} dmu_k(x)`.
///
/// Computed per axis by adaptive quadrature of `int_R e^{-t^2/2} |t|^{2k_j} dt`
/// and inverted; the product structure across axes is exact by construction.
pub fn gaussian_constant(k: &Multiplicity) -> f64 {
    let mut inv = 1.0;
    for &kj in k.kappa() {
        inv *= axis_gaussian_mass(kj);
    }
    1.0 / inv
}

/// `int_R e^{-t^2/2} |t|^{2 kappa} dt`, by quadrature on the half-line.
pub fn axis_gaussian_mass(kappa: f64) -> f64 {
    2.0 * integrate_adaptive(
        &mut |t: f64| (-0.5 * t * t).exp() * t.powf(2.0 * kappa),
        0.0,
        42.0,
        1e-13,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gamma;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Adaptive-quadrature oracle for per-axis interval mass.
    fn axis_mass_oracle(a: f64, b: f64, kappa: f64) -> f64 {
        integrate_adaptive(&mut |t: f64| t.abs().powf(2.0 * kappa), a, b, 1e-12)
    }

    #[test]
    fn multiplicity_validation() {
        assert!(Multiplicity::new(vec![]).is_err());
        assert!(Multiplicity::new(vec![-0.1]).is_err());
        assert!(Multiplicity::new(vec![f64::NAN]).is_err());
        let k = Multiplicity::new(vec![0.5, 1.0]).unwrap();
        assert_eq!(k.dim(), 2);
        assert_relative_eq!(k.gamma(), 1.5);
        assert_relative_eq!(k.homogeneous_degree(), 5.0);
        assert!(!k.is_classical());
        assert!(Multiplicity::scalar(0.0).unwrap().is_classical());
    }

    #[test]
    fn weight_values() {
        let k = Multiplicity::new(vec![1.0, 0.5]).unwrap();
        assert_relative_eq!(
            weight(&[2.0, 3.0], &k).unwrap(),
            2.0 * 3f64.sqrt(),
            max_relative = 1e-14
        );
        // zero coordinate with positive multiplicity kills the weight
        assert_eq!(weight(&[0.0, 3.0], &k).unwrap(), 0.0);
        // zero coordinate with zero multiplicity contributes 1
        let k0 = Multiplicity::new(vec![0.0, 0.5]).unwrap();
        assert_relative_eq!(weight(&[0.0, 4.0], &k0).unwrap(), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn cube_classical_and_weighted() {
        let k0 = Multiplicity::scalar(0.0).unwrap();
        assert_relative_eq!(cube(1.0, &k0).unwrap(), 2.0, max_relative = 1e-14);

        // d=2, kappa=(0.5, 1), r=2: product of per-axis masses 2 r^{2k+1}/(2k+1)
        let k = Multiplicity::new(vec![0.5, 1.0]).unwrap();
        let expect = (2.0 * 2f64.powi(2) / 2.0) * (2.0 * 2f64.powi(3) / 3.0);
        assert_relative_eq!(cube(2.0, &k).unwrap(), expect, max_relative = 1e-13);
        assert_relative_eq!(expect, 64.0 / 3.0, max_relative = 1e-14);

        // adaptive-quadrature oracle per axis
        let oracle = axis_mass_oracle(-2.0, 2.0, 0.5) * axis_mass_oracle(-2.0, 2.0, 1.0);
        assert_relative_eq!(cube(2.0, &k).unwrap(), oracle, max_relative = 1e-9);
    }

    #[test]
    fn sphere_integral_conventions() {
        let k1 = Multiplicity::scalar(2.5).unwrap();
        assert_eq!(sphere_weight_integral(&k1), 2.0);

        let k00 = Multiplicity::new(vec![0.0, 0.0]).unwrap();
        assert_relative_eq!(
            sphere_weight_integral(&k00),
            2.0 * std::f64::consts::PI,
            max_relative = 1e-11
        );

        let k11 = Multiplicity::new(vec![1.0, 1.0]).unwrap();
        assert_relative_eq!(
            sphere_weight_integral(&k11),
            std::f64::consts::PI / 4.0,
            max_relative = 1e-11
        );
    }

    #[test]
    fn sphere_integral_matches_gamma_closed_form() {
        // Independent oracle: 2 prod_j Gamma(k_j + 1/2) / Gamma(gamma + d/2).
        for kappa in [vec![0.3, 1.0], vec![0.5, 0.5], vec![2.5, 0.0], vec![1.0, 0.3]] {
            let k = Multiplicity::new(kappa).unwrap();
            let mut num = 2.0;
            for &kj in k.kappa() {
                num *= gamma(kj + 0.5);
            }
            let oracle = num / gamma(k.gamma() + k.dim() as f64 / 2.0);
            assert_relative_eq!(sphere_weight_integral(&k), oracle, max_relative = 1e-9);
        }
    }

    #[test]
    fn ball_classical_area() {
        let k = Multiplicity::new(vec![0.0, 0.0]).unwrap();
        assert_relative_eq!(ball(1.0, &k).unwrap(), std::f64::consts::PI, max_relative = 1e-11);
    }

    #[test]
    fn interval_values() {
        // kappa=1, x=2, r=1: integral of t^2 over [1, 3] = 26/3
        assert_relative_eq!(interval(2.0, 1.0, 1.0).unwrap(), 26.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(
            interval(2.0, 1.0, 1.0).unwrap(),
            axis_mass_oracle(1.0, 3.0, 1.0),
            max_relative = 1e-10
        );
        // classical: plain length of I(0,1) = [0,1)
        assert_relative_eq!(interval(0.0, 1.0, 0.0).unwrap(), 1.0, max_relative = 1e-14);
        // center inside the radius: lower endpoint truncates at 0
        assert_relative_eq!(
            interval(0.2, 1.0, 0.5).unwrap(),
            1.2f64.powi(2) / 2.0,
            max_relative = 1e-14
        );
        // sign of the center is irrelevant
        assert_relative_eq!(
            interval(-2.0, 1.0, 1.0).unwrap(),
            interval(2.0, 1.0, 1.0).unwrap(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn rectangle_is_axis_product() {
        let k = Multiplicity::new(vec![0.5, 1.0]).unwrap();
        let m = rectangle(&[1.0, -2.0], 0.7, &k).unwrap();
        let oracle =
            interval(1.0, 0.7, 0.5).unwrap() * interval(2.0, 0.7, 1.0).unwrap();
        assert_relative_eq!(m, oracle, max_relative = 1e-14);
    }

    #[test]
    fn cube_ball_ratio_values() {
        let k0 = Multiplicity::scalar(0.0).unwrap();
        assert_relative_eq!(cube_ball_ratio(&k0), 1.0, max_relative = 1e-12);

        let k = Multiplicity::new(vec![0.0, 0.0]).unwrap();
        assert_relative_eq!(cube_ball_ratio(&k), 4.0 / std::f64::consts::PI, max_relative = 1e-11);

        // ratio = cube/ball at any radius
        let kk = Multiplicity::new(vec![0.3, 1.5]).unwrap();
        let r = 1.7;
        assert_relative_eq!(
            cube_ball_ratio(&kk),
            cube(r, &kk).unwrap() / ball(r, &kk).unwrap(),
            max_relative = 1e-10
        );
        // cubes dominate their inscribed balls
        assert!(cube_ball_ratio(&kk) > 1.0);
    }

    #[test]
    fn gaussian_constant_matches_closed_form() {
        // closed form of the axis mass: 2^{k+1/2} Gamma(k+1/2)
        for &kj in &[0.0f64, 0.3, 0.5, 1.0, 2.5] {
            let k = Multiplicity::scalar(kj).unwrap();
            let closed = 1.0 / (2f64.powf(kj + 0.5) * gamma(kj + 0.5));
            assert_relative_eq!(gaussian_constant(&k), closed, max_relative = 1e-11);
        }
        let k0 = Multiplicity::scalar(0.0).unwrap();
        assert_relative_eq!(
            gaussian_constant(&k0),
            1.0 / (2.0 * std::f64::consts::PI).sqrt(),
            max_relative = 1e-12
        );
        // kappa = 1 happens to share the classical constant
        let k1 = Multiplicity::scalar(1.0).unwrap();
        assert_relative_eq!(
            gaussian_constant(&k1),
            1.0 / (2.0 * std::f64::consts::PI).sqrt(),
            max_relative = 1e-11
        );
        // product structure
        let k2 = Multiplicity::new(vec![0.5, 1.0]).unwrap();
        let prod = gaussian_constant(&Multiplicity::scalar(0.5).unwrap())
            * gaussian_constant(&Multiplicity::scalar(1.0).unwrap());
        assert_relative_eq!(gaussian_constant(&k2), prod, max_relative = 1e-12);
    }

    #[test]
    fn region_dispatch() {
        let k = Multiplicity::new(vec![0.5, 1.0]).unwrap();
        let q = Region::Cube { radius: 2.0 }.measure(&k).unwrap();
        assert_relative_eq!(q, cube(2.0, &k).unwrap());
        let b = Region::Ball { radius: 2.0 }.measure(&k).unwrap();
        assert_relative_eq!(b, ball(2.0, &k).unwrap());
        assert!(Region::Interval { center: 0.0, radius: 1.0 }.measure(&k).is_err());
        let r = Region::Rectangle { center: vec![1.0, 1.0], radius: 0.5 }
            .measure(&k)
            .unwrap();
        assert_relative_eq!(r, rectangle(&[1.0, 1.0], 0.5, &k).unwrap());
    }

    #[test]
    fn rejects_bad_radii() {
        let k = Multiplicity::scalar(0.5).unwrap();
        assert!(cube(-1.0, &k).is_err());
        assert!(ball(f64::NAN, &k).is_err());
        assert!(interval(0.0, f64::INFINITY, 0.5).is_err());
    }

    proptest! {
        #[test]
        fn scaling_law(r in 0.05f64..20.0, lambda in 0.1f64..10.0,
                       k1 in 0.0f64..2.5, k2 in 0.0f64..2.5) {
            let k = Multiplicity::new(vec![k1, k2]).unwrap();
            let deg = k.homogeneous_degree();
            let c = cube(lambda * r, &k).unwrap();
            let c0 = cube(r, &k).unwrap();
            prop_assert!((c / c0 - lambda.powf(deg)).abs() <= 1e-10 * lambda.powf(deg));
            let b = ball(lambda * r, &k).unwrap();
            let b0 = ball(r, &k).unwrap();
            prop_assert!((b / b0 - lambda.powf(deg)).abs() <= 1e-9 * lambda.powf(deg));
        }

        #[test]
        fn interval_matches_quadrature(x in -5.0f64..5.0, r in 0.01f64..4.0,
                                       kappa in 0.0f64..2.5) {
            let lo = (x.abs() - r).max(0.0);
            let hi = x.abs() + r;
            let oracle = axis_mass_oracle(lo, hi, kappa);
            let closed = interval(x, r, kappa).unwrap();
            prop_assert!((closed - oracle).abs() <= 1e-8 * closed.max(1e-12));
        }
    }
}
