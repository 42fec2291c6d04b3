//! The four maximal operators on one input, the pointwise ball-by-cube
//! domination with its closed-form constant, and inequality ratios.
//!
//! ```text
//! cargo run --release -p dunkl --example maximal_operators
//! ```

use dunkl::grid::{Grid, GridFunction};
use dunkl::maximal::{
    apply_maximal, default_lambdas, domination_report, strong_type_ratio, weak_type_ratio,
    weighted_inequality_ratio, MaximalSettings, OperatorTag,
};
use dunkl::measure::{cube_ball_ratio, Multiplicity};
use dunkl::transform::{RadialProfile, Transformer};

fn main() -> dunkl::Result<()> {
    let k = Multiplicity::new(vec![0.5])?;
    let grid = Grid::new(&k, 256, 12.0)?;
    let tr = Transformer::new(&grid)?;
    let settings = MaximalSettings::for_grid(&grid);
    let f = GridFunction::from_real_fn(&grid, |x| (-x[0] * x[0]).exp());

    println!("input: Gaussian bump on {} nodes, kappa = {:?}", grid.len(), k.kappa());
    println!(
        "radius schedule: {} radii in [{:.3}, {:.3}]",
        settings.schedule.len(),
        settings.schedule.r_min(),
        settings.schedule.r_max()
    );
    println!();

    let heat = RadialProfile::heat();
    let poisson = RadialProfile::poisson(&k);
    let operators = [
        OperatorTag::Ball,
        OperatorTag::Cube,
        OperatorTag::Rect,
        OperatorTag::Profile(&heat),
        OperatorTag::Profile(&poisson),
    ];

    println!("maximal function values at sample points:");
    println!(
        "  {:<16} {:>9} {:>9} {:>9} {:>9}  {:>9}",
        "operator", "x=0", "x=1", "x=3", "x=8", "sup"
    );
    let probe = [0.0, 1.0, 3.0, 8.0];
    let h = grid.axis(0).spacing();
    for tag in operators {
        let m = apply_maximal(&tr, tag, &f, &settings)?;
        let mut row = format!("  {:<16}", tag.name());
        for &p in &probe {
            // nearest grid node
            let idx = grid
                .axis(0)
                .nodes()
                .iter()
                .position(|&t| (t - p).abs() <= 0.5 * h)
                .expect("probe point on grid");
            row.push_str(&format!(" {:>9.5}", m.values()[idx].re));
        }
        row.push_str(&format!("  {:>9.5}", m.norm_sup()));
        println!("{row}");
    }
    println!();

    println!("pointwise domination: ball averages <= (cube/ball measure ratio) x cube averages of |f|");
    let report = domination_report(&tr, &f, &settings)?;
    println!("  closed-form measure ratio = {:.9}", cube_ball_ratio(&k));
    for (name, value) in &report.constants {
        println!("  {name:<40} = {value:.6}");
    }
    println!();

    println!("inequality ratios for the rectangle maximal operator:");
    let m_rect = apply_maximal(&tr, OperatorTag::Rect, &f, &settings)?;
    let lambdas = default_lambdas(&m_rect, 24)?;
    let weak = weak_type_ratio(&m_rect, &f, &lambdas)?;
    let strong = strong_type_ratio(&m_rect, &f, 2.0)?;
    let weight = GridFunction::from_real_fn(&grid, |x| 1.0 / (1.0 + x[0] * x[0]));
    let weighted = weighted_inequality_ratio(&f, &weight, 2.0, &settings.schedule)?;
    println!("  weak type (1,1):   sup_l l mu(M f > l) / |f|_1      = {weak:.6}");
    println!("  strong type p=2:   |M f|_2 / |f|_2                  = {strong:.6}");
    println!("  weighted, q=2:     int (Mf)^q W dmu / int |f|^q MW dmu = {weighted:.6}");
    Ok(())
}
