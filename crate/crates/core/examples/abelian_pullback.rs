// Integrals over M̄_g(BG) for abelian G, pulled back from BZ_a along a
// character, and the matching wreath Hurwitz numbers.

use hurwitz_hodge::hodge::{combined_integral_abelian, bg_integral_roundtrip, MarkedPoint};
use hurwitz_hodge::rational::render_rational;
use hurwitz_hodge::rational::RenderFormat::Plain;
use hurwitz_hodge::wreath::{analyze_character, weighted_partitions_of, AbelianCharacter, AbelianGroup, FiniteAbelianGroup};
use hurwitz_hodge::Result;

pub fn run_example() -> Result<()> {
    let v4 = FiniteAbelianGroup::parse("2x2")?;
    let projection = AbelianCharacter::new(&v4, &[1, 0])?;
    let point = MarkedPoint {
        monodromy: v4.element_of(&[1, 0])?,
        weight: 1,
    };
    let value = combined_integral_abelian(1, &v4, &projection, &[point.clone(), point], false)?;
    println!("G = Z2 x Z2, g = 1, two points (1.0, weight 1): {}", render_rational(&value.value, Plain));

    let info = analyze_character(&v4, &projection)?;
    println!("kernel of order {}, image of order {}", info.kernel.order(), info.image_order);
    for mu_bar in weighted_partitions_of(2, &info.kernel)? {
        let (hurwitz, from_integral) = bg_integral_roundtrip(0, &v4, &projection, &mu_bar)?;
        assert_eq!(hurwitz, from_integral);
        println!("  μ̄ = {mu_bar:?}: H = {}", render_rational(&hurwitz, Plain));
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
