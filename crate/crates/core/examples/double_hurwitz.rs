// Double Hurwitz numbers from characters, checked against a direct count of
// factorizations.

use hurwitz_hodge::hurwitz::{brute_force_hurwitz, double_hurwitz, HurwitzQuery};
use hurwitz_hodge::rational::render_rational;
use hurwitz_hodge::rational::RenderFormat::Plain;
use hurwitz_hodge::{Partition, Result};

pub fn run_example() -> Result<()> {
    for (g, nu, mu) in [(0, "3", "3"), (0, "1,1", "1,1"), (0, "2,1", "3"), (1, "3", "3"), (1, "2,2", "2,1,1")] {
        let (nu, mu): (Partition, Partition) = (nu.parse()?, mu.parse()?);
        let q = HurwitzQuery::new(g, nu.clone(), mu.clone(), true)?;
        let value = double_hurwitz(g, &nu, &mu, true)?;
        assert_eq!(value, brute_force_hurwitz(&q)?);
        println!(
            "H_{g}({nu}, {mu}) = {}  ({} simple branch points)",
            render_rational(&value, Plain),
            q.branch_points()
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
