// Hurwitz numbers for the wreath product Z_2 ≀ Σ_d: reduction to ordinary
// Hurwitz numbers against multiplication in the group itself.

use hurwitz_hodge::rational::render_rational;
use hurwitz_hodge::rational::RenderFormat::Plain;
use hurwitz_hodge::wreath::{wreath_double_hurwitz, wreath_hurwitz_bruteforce, FiniteAbelianGroup, WeightedPartition};
use hurwitz_hodge::Result;

pub fn run_example() -> Result<()> {
    let z2 = FiniteAbelianGroup::cyclic(2)?;
    for (g, nu, mu) in [(0, "2:0", "2:0"), (0, "2:1", "2:1"), (0, "2:1", "2:0"), (1, "2:1,1:0", "3:1"), (0, "1:1,1:1", "1:0,1:0")] {
        let nu = WeightedPartition::parse(nu, &z2)?;
        let mu = WeightedPartition::parse(mu, &z2)?;
        let reduced = wreath_double_hurwitz(g, &z2, &nu, &mu, true)?;
        assert_eq!(reduced, wreath_hurwitz_bruteforce(g, &z2, &nu, &mu, true)?);
        println!("H_{g},Z2({nu:?}, {mu:?}) = {}", render_rational(&reduced, Plain));
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
