//! Generalized translation and convolution: interval indicators by two
//! routes, the translated heat kernel, and the semigroup property.
//!
//! ```text
//! cargo run --release -p dunkl --example translation
//! ```

use dunkl::grid::{Grid, GridFunction, WeightScheme};
use dunkl::measure::{gaussian_constant, Multiplicity};
use dunkl::transform::{heat_kernel, translated_heat_kernel, Transformer};
use dunkl::translation::{
    convolve, translate_grid, translate_indicator_interval, translate_indicator_interval_quadrature,
};

fn main() -> dunkl::Result<()> {
    let kappa = 0.5;
    let k = Multiplicity::new(vec![kappa])?;

    println!("translated interval indicator tau_x 1_[-r,r](y), kappa = {kappa}:");
    println!("  closed form vs independent quadrature route");
    println!(
        "  {:>5} {:>5} {:>6}  {:>10}  {:>10}  {:>9}",
        "x", "r", "y", "closed", "quadrature", "diff"
    );
    for (x, r, y) in [
        (0.9, 0.5, 0.7),
        (0.9, 0.5, 1.3),
        (0.35, 0.25, -0.5),
        (1.7, 0.8, 2.2),
    ] {
        let closed = translate_indicator_interval(kappa, r, x, y)?;
        let quad = translate_indicator_interval_quadrature(kappa, r, x, y, 400)?;
        println!(
            "  {x:>5} {r:>5} {y:>6}  {closed:>10.6}  {quad:>10.6}  {:>9.2e}",
            (closed - quad).abs()
        );
    }
    println!();

    println!("exact support: the translate vanishes once ||x| - |y|| > r");
    let (x, r) = (0.9, 0.5);
    for y in [1.41, 1.6, 2.0] {
        let v = translate_indicator_interval(kappa, r, x, y)?;
        println!("  y = {y:>5}: tau value = {v:.3e}");
    }
    println!();

    let grid = Grid::new(&k, 256, 12.0)?;
    let tr = Transformer::new(&grid)?;
    let c = gaussian_constant(&k);

    println!("translated heat kernel: spectral route vs closed form, t = 0.8, x = 0.7");
    let t = 0.8;
    let x = [0.7];
    let q = heat_kernel(&grid, t)?;
    let spectral = translate_grid(&tr, &q, &x)?;
    let closed = GridFunction::from_fn(&grid, |y| {
        num_complex::Complex64::new(
            translated_heat_kernel(&k, t, &x, y).expect("closed form"),
            0.0,
        )
    });
    let diff = spectral.zip_map(&closed, |a, b| a - b)?;
    println!(
        "  sup difference   = {:.3e}  (sup of kernel = {:.6})",
        diff.norm_sup(),
        closed.norm_sup()
    );
    let mass = c * spectral.integral(WeightScheme::Smooth).re;
    println!("  translated mass  = {mass:.9} x (1/c), i.e. c x integral = {:.3e} from 1", (mass - 1.0).abs());
    println!();

    println!("convolution semigroup: q^s * q^t = q^(s+t)");
    let (s_t, t_t) = (0.5, 0.7);
    let qs = heat_kernel(&grid, s_t)?;
    let qt = heat_kernel(&grid, t_t)?;
    let conv = convolve(&tr, &qs, &qt)?;
    let direct = heat_kernel(&grid, s_t + t_t)?;
    let sup_err = conv
        .zip_map(&direct, |a, b| a - b)?
        .norm_sup();
    println!(
        "  sup |q^{s_t} * q^{t_t} - q^{}| = {sup_err:.3e}  (kernel sup = {:.6})",
        s_t + t_t,
        direct.norm_sup()
    );
    println!();

    println!("translation preserves positivity of the heat kernel:");
    for x0 in [0.0, 1.0, 2.5] {
        let translated = translate_grid(&tr, &q, &[x0])?;
        let min = translated
            .values()
            .iter()
            .map(|v| v.re)
            .fold(f64::INFINITY, f64::min);
        println!("  x = {x0:>4}: min over grid = {min:.3e}");
    }
    Ok(())
}
