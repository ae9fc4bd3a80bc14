// Linear Hodge integrals over M̄_{g,γ−μ}(BZ_a), and which result produced each.

use hurwitz_hodge::hodge::{combined_integral_za, genus0_lambda1_integral, IntegralQuery};
use hurwitz_hodge::rational::render_rational;
use hurwitz_hodge::rational::RenderFormat::Plain;
use hurwitz_hodge::{MonodromyVector, Result};

pub fn run_example() -> Result<()> {
    let cases = [
        (0, "a=2;1,1", "1,1"),
        (0, "a=2;1,1,1", "1"),
        (0, "a=2;", "2"),
        (1, "a=3;1,2", "3"),
        (2, "a=1;", "2,1"),
        (0, "a=6;1,2,3", "6"),
    ];
    for (g, gamma, mu) in cases {
        let q = IntegralQuery::connected(g, gamma.parse()?, mu.parse()?)?;
        let v = combined_integral_za(&q)?;
        println!("g={g} {gamma:<10} μ=({mu}): {:>8}  [{}]", render_rational(&v.value, Plain), v.branch.name());
    }
    let gamma: MonodromyVector = "a=2;1,1".parse()?;
    let lambda1 = genus0_lambda1_integral(&gamma, &"1,1".parse()?)?;
    println!("∫ λ₁ over M̄_0 with four Z_2 points = {}", render_rational(&lambda1, Plain));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
