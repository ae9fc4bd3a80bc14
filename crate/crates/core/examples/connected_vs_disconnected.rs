// Disconnected covers may have negative genus; the connected count removes
// the products of smaller covers.

use hurwitz_hodge::hurwitz::double_hurwitz;
use hurwitz_hodge::rational::render_rational;
use hurwitz_hodge::rational::RenderFormat::Plain;
use hurwitz_hodge::{Partition, Result};

pub fn run_example() -> Result<()> {
    let nu: Partition = "2,2".parse()?;
    let mu: Partition = "2,1,1".parse()?;
    println!("ν = {nu}, μ = {mu}");
    for g in -1..=2 {
        let disconnected = double_hurwitz(g, &nu, &mu, false)?;
        let connected = if g >= 0 { double_hurwitz(g, &nu, &mu, true)? } else { Default::default() };
        assert!(connected <= disconnected);
        println!(
            "g = {g:>2}: disconnected {:>8}  connected {:>8}",
            render_rational(&disconnected, Plain),
            render_rational(&connected, Plain)
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
