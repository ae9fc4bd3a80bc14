// The one-part generating series F_γ(t, z), and the Hodge integrals read off it.

use hurwitz_hodge::hodge::{hodge_integral_one_part, one_part_f_series};
use hurwitz_hodge::rational::render_rational;
use hurwitz_hodge::rational::RenderFormat::Plain;
use hurwitz_hodge::{MonodromyVector, Result};

pub fn run_example() -> Result<()> {
    for gamma in ["a=1;", "a=2;", "a=3;1,1"] {
        let gamma: MonodromyVector = gamma.parse()?;
        println!("F for {gamma}:");
        println!("{}", one_part_f_series(&gamma, 4)?.render());
    }
    let trivial: MonodromyVector = "a=1;".parse()?;
    for g in 1..=3 {
        let value = hodge_integral_one_part(g, 0, &trivial)?;
        println!("∫ ψ^{} λ_{g} over M̄_{g},1 = {}", 2 * g - 2, render_rational(&value, Plain));
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
