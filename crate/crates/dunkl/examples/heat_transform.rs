//! The weighted spectral transform on a grid: round trip, Parseval residual,
//! and the Gaussian image of the heat kernel.
//!
//! ```text
//! cargo run --release -p dunkl --example heat_transform
//! ```

use num_complex::Complex64;

use dunkl::grid::{Grid, GridFunction, WeightScheme};
use dunkl::measure::{gaussian_constant, Multiplicity};
use dunkl::transform::{heat_kernel, poisson_kernel, RadialProfile, Transformer};

fn main() -> dunkl::Result<()> {
    let k = Multiplicity::new(vec![0.5])?;
    let grid = Grid::new(&k, 256, 12.0)?;
    let tr = Transformer::new(&grid)?;
    println!(
        "grid: {} nodes on [-{}, {}], kappa = {:?}",
        grid.len(),
        grid.axis(0).half_width(),
        grid.axis(0).half_width(),
        k.kappa()
    );
    println!();

    println!("round trip inverse(forward(f)) and Parseval residual:");
    let samples: Vec<(&str, GridFunction)> = vec![
        (
            "even Gaussian",
            GridFunction::from_real_fn(&grid, |x| (-x[0] * x[0]).exp()),
        ),
        (
            "odd envelope",
            GridFunction::from_real_fn(&grid, |x| x[0] * (-0.7 * x[0] * x[0]).exp()),
        ),
        (
            "offset bump",
            GridFunction::from_real_fn(&grid, |x| (-(x[0] - 1.5) * (x[0] - 1.5)).exp()),
        ),
    ];
    println!(
        "  {:<14}  {:>12}  {:>12}",
        "function", "rel L2 error", "Parseval"
    );
    for (name, f) in &samples {
        let back = tr.inverse(&tr.forward(f)?)?;
        let diff = f.zip_map(&back, |a, b| a - b)?;
        let rel = diff.norm_p(2.0, WeightScheme::Smooth) / f.norm_p(2.0, WeightScheme::Smooth);
        let parseval = tr.plancherel_residual(f)?;
        println!("  {name:<14}  {rel:>12.3e}  {parseval:>12.3e}");
    }
    println!();

    println!("heat kernel q^t transforms to e^(-t |xi|^2):");
    println!("  {:>5}  {:>14}  {:>14}", "t", "sup error", "mass residual");
    let c = gaussian_constant(&k);
    for t in [0.5, 1.0, 2.0] {
        let q = heat_kernel(&grid, t)?;
        let image = tr.forward(&q)?;
        let sup = image
            .values()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let xi = grid.point(i)[0];
                (v - Complex64::new((-t * xi * xi).exp(), 0.0)).norm()
            })
            .fold(0.0f64, f64::max);
        let mass = (c * q.integral(WeightScheme::Smooth).re - 1.0).abs();
        println!("  {t:>5}  {sup:>14.3e}  {mass:>14.3e}");
    }
    println!("  (the mass line checks c int q^t dmu = 1)");
    println!();

    println!("admissible radial profiles and their decay moments:");
    let heat = RadialProfile::heat();
    let poisson = RadialProfile::poisson(&k);
    for profile in [&heat, &poisson] {
        let moment = profile.admissibility_moment(&k)?;
        println!(
            "  {:<8}  int r^p |phi'(r)| dr = {moment:.9}  (p = {})",
            profile.label(),
            k.homogeneous_degree()
        );
    }
    let p = k.homogeneous_degree();
    let closed = 2f64.powf(0.5 * p) * dunkl::gamma::gamma(0.5 * p + 1.0);
    println!("  heat closed form 2^(p/2) Gamma(p/2 + 1) = {closed:.9}");
    println!();

    println!("Poisson kernel at t = 1: positive, unit c-weighted mass");
    let pk = poisson_kernel(&grid, 1.0)?;
    let min = pk.values().iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
    let mass = c * pk.integral(WeightScheme::Smooth).re;
    println!("  min value on grid = {min:.3e}");
    println!("  c-weighted mass   = {mass:.9} (tail truncation at the grid edge)");
    Ok(())
}
