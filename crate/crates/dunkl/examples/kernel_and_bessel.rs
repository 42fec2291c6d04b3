//! The weighted exponential kernel in one coordinate: closed form against
//! quadrature, symmetry, the modulus bound, and the classical limit.
//!
//! ```text
//! cargo run --release -p dunkl --example kernel_and_bessel
//! ```

use num_complex::Complex64;

use dunkl::measure::Multiplicity;
use dunkl::special::{kernel, kernel_1d, kernel_1d_via_quadrature, normalized_bessel};

fn main() -> dunkl::Result<()> {
    let kappa = 0.8;

    println!("normalized Bessel profile j_a(z) = Gamma(a+1) (z/2)^(-a) J_a(z), a = kappa - 1/2:");
    println!("  {:>5}  {:>22}  {:>12}", "z", "j_a(z)", "|j_a(z)|");
    for z in [0.0, 0.5, 1.5, 4.0, 9.0] {
        let v = normalized_bessel(kappa - 0.5, Complex64::new(z, 0.0))?;
        println!("  {z:>5}  {:>22.15}  {:>12.6}", v.re, v.norm());
    }
    println!();

    println!("one-coordinate kernel E(ix, y), kappa = {kappa}: closed form vs 200-node quadrature");
    println!(
        "  {:>5} {:>5}  {:>22}  {:>22}  {:>9}",
        "x", "y", "Re E", "Im E", "residual"
    );
    for (x, y) in [(0.3, 0.4), (1.0, 2.0), (2.5, 1.75), (3.0, 3.0)] {
        let closed = kernel_1d(kappa, x, y)?;
        let quad = kernel_1d_via_quadrature(kappa, x, y, 200)?;
        println!(
            "  {x:>5} {y:>5}  {:>22.15}  {:>22.15}  {:>9.2e}",
            closed.re,
            closed.im,
            (closed - quad).norm()
        );
    }
    println!();

    println!("symmetry and bound checks at (x, y) = (1.3, 2.1):");
    let e = kernel_1d(kappa, 1.3, 2.1)?;
    let swapped = kernel_1d(kappa, 2.1, 1.3)?;
    let reflected = kernel_1d(kappa, 1.3, -2.1)?;
    println!("  |E(ix,y) - E(iy,x)|      = {:.3e}", (e - swapped).norm());
    println!(
        "  |E(ix,-y) - conj E(ix,y)| = {:.3e}",
        (reflected - e.conj()).norm()
    );
    println!("  |E(ix,y)| = {:.12} (at most 1)", e.norm());
    println!("  E(i*0, y) = {:?} (exactly 1)", kernel_1d(kappa, 0.0, 2.1)?);
    println!();

    println!("classical limit: at kappa = 0 the kernel is the plane wave e^(ixy)");
    let classical = kernel_1d(0.0, 1.1, 0.9)?;
    let wave = Complex64::new(0.0, 1.1 * 0.9).exp();
    println!("  |E - e^(ixy)| = {:.3e}", (classical - wave).norm());
    println!();

    println!("product structure in two coordinates, k = (0.5, 1.5):");
    let k = Multiplicity::new(vec![0.5, 1.5])?;
    let x = [0.7, 1.2];
    let y = [1.9, 0.4];
    let tensor = kernel(&k, &x, &y)?;
    let factors = kernel_1d(0.5, x[0], y[0])? * kernel_1d(1.5, x[1], y[1])?;
    println!("  E_k(ix, y)          = {tensor:?}");
    println!("  product of factors  = {factors:?}");
    println!("  difference          = {:.3e}", (tensor - factors).norm());
    Ok(())
}
