//! The weighted measure family: closed-form volumes, homogeneous scaling,
//! doubling, and the cube/ball measure ratio.
//!
//! ```text
//! cargo run --release -p dunkl --example weights_and_measures
//! ```

use dunkl::measure::{self, Multiplicity};

fn main() -> dunkl::Result<()> {
    let k = Multiplicity::new(vec![0.5, 1.0])?;
    println!("multiplicity k = {:?}", k.kappa());
    println!("  gamma (sum)          = {}", k.gamma());
    println!("  homogeneous degree   = {}", k.homogeneous_degree());
    println!();

    println!("weight h(x)^2 = prod |x_j|^(2 k_j) at sample points:");
    for x in [[1.0, 1.0], [2.0, 0.5], [0.3, 1.7]] {
        println!("  h^2{x:?} = {:.6}", measure::weight(&x, &k)?);
    }
    println!();

    println!("closed-form measures at radius r (centered at the origin):");
    println!("  {:>6}  {:>12}  {:>12}  {:>12}", "r", "cube", "ball", "cube/ball");
    for r in [0.5, 1.0, 2.0, 4.0] {
        let q = measure::cube(r, &k)?;
        let b = measure::ball(r, &k)?;
        println!("  {r:>6}  {q:>12.6}  {b:>12.6}  {:>12.6}", q / b);
    }
    let ratio = measure::cube_ball_ratio(&k);
    println!("  closed-form cube/ball ratio  = {ratio:.6} (radius-free by homogeneity)");
    println!();

    println!("homogeneous scaling: measure(t r) / measure(r) = t^(2 gamma + d)");
    let degree = k.homogeneous_degree();
    for t in [2.0, 3.0] {
        let got = measure::ball(t * 1.2, &k)? / measure::ball(1.2, &k)?;
        let want = t.powf(degree);
        println!("  t = {t}: ratio = {got:.9}, t^degree = {want:.9}");
    }
    println!();

    println!("doubling for off-center rectangles R(x, r) (one-sided, reflected):");
    let x = [1.3, 0.4];
    for r in [0.25, 0.5, 1.0] {
        let small = measure::rectangle(&x, r, &k)?;
        let double = measure::rectangle(&x, 2.0 * r, &k)?;
        println!("  r = {r:>4}: mu(R(x,2r))/mu(R(x,r)) = {:.4}", double / small);
    }
    println!(
        "  (bounded by 2^(2 gamma + d) = {:.4})",
        2f64.powf(degree)
    );
    println!();

    println!("interval measure mu([x-r, x+r]) on one axis (kappa = 0.5):");
    for (x, r) in [(0.0, 1.0), (1.0, 0.5), (3.0, 0.25)] {
        println!(
            "  x = {x:>4}, r = {r:>5}: {:.6}",
            measure::interval(x, r, 0.5)?
        );
    }
    println!();

    let c = measure::gaussian_constant(&k);
    println!("Gaussian normalizing constant c (so that c int e^(-|x|^2/2) dmu = 1):");
    println!("  c = {c:.9}, and c < 1 always; 1/c = {:.9}", 1.0 / c);
    Ok(())
}
