use dunkl::grid::{Grid, GridFunction};
use dunkl::maximal::*;
use dunkl::measure::Multiplicity;
use dunkl::transform::{RadialProfile, Transformer};

// All-positive slot family: `largest` slots tile the band [l/8, 7l/8] on the
// positive axis; a family of `size` takes every (largest/size)-th slot.
fn family(grid: &Grid, largest: usize, size: usize) -> dunkl::Result<FunctionSequence> {
    let l = grid.axes()[0].half_width();
    let m_lo = l / 8.0;
    let m_hi = l - l / 8.0;
    let slot_width = (m_hi - m_lo) / largest as f64;
    let support = 0.45 * slot_width;
    let stride = largest / size;
    let members: Vec<GridFunction> = (0..size)
        .map(|i| {
            let slot = stride / 2 + i * stride;
            let center = m_lo + (slot as f64 + 0.5) * slot_width;
            GridFunction::from_real_fn(grid, move |x| {
                let inside = ((x[0] - center) / support).abs() < 1.0
                    && x[1..].iter().all(|v| (v / support).abs() < 1.0);
                if inside { 1.0 } else { 0.0 }
            })
        })
        .collect();
    FunctionSequence::new(members)
}

fn main() -> dunkl::Result<()> {
    let t0 = std::time::Instant::now();
    let k = Multiplicity::new(vec![0.5])?;
    let grid = Grid::new(&k, 2048, 12.0)?;
    let tr = Transformer::new(&grid)?;
    let h = grid.axes()[0].spacing();
    println!("h = {h:.5}, support = {:.5} = {:.1} h", 0.45 * 9.0 / 64.0, 0.45 * 9.0 / 64.0 / h);
    let settings = MaximalSettings {
        schedule: RadiusSchedule::geometric(3.0 * h, 4.0, 12)?,
        profile_schedule: RadiusSchedule::geometric(3.0 * h, 4.0, 12)?,
        mollification: 1e-4,
    };
    let largest = 64usize;
    let heat = RadialProfile::heat();
    let poisson = RadialProfile::poisson(&k);
    let tags = [
        OperatorTag::Ball,
        OperatorTag::Rect,
        OperatorTag::Profile(&heat),
        OperatorTag::Profile(&poisson),
    ];
    for tag in tags {
        let mut lambdas: Vec<f64> = Vec::new();
        print!("{:<16} weak:", tag.name());
        let mut strongs = Vec::new();
        for size in [1usize, 4, 16, 64] {
            let inputs = family(&grid, largest, size)?;
            let maximals = inputs.map_members(|f| apply_maximal(&tr, tag, f, &settings))?;
            if lambdas.is_empty() {
                let sup = fs_vector_norm(&maximals, 2.0)?.norm_sup();
                let (lo, hi) = (1e-4 * sup, 16.0 * sup);
                lambdas = (0..600).map(|i| lo * (hi / lo).powf(i as f64 / 599.0)).collect();
            }
            let weak = fefferman_stein_ratio(&maximals, &inputs, 2.0, 1.0, Some(&lambdas))?;
            strongs.push(fefferman_stein_ratio(&maximals, &inputs, 2.0, 2.0, None)?);
            print!("  {weak:.4}");
        }
        print!("   strong:");
        for s in strongs {
            print!("  {s:.4}");
        }
        println!("   [{:?}]", t0.elapsed());
    }
    Ok(())
}
