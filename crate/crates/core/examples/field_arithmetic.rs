//! Log/antilog arithmetic in small Galois fields.

use slrc::Field;

fn main() -> slrc::Result<()> {
    let gf4 = Field::new(2, 2)?;
    println!("{}  generator β = {}", gf4.spec(), gf4.generator());
    for e in 0..3 {
        println!("  β^{e} = {}", gf4.beta_pow(e));
    }
    println!(
        "  2·3 = {}, 2+3 = {}, 3⁻¹ = {:?}",
        gf4.mul(2, 3),
        gf4.add(2, 3),
        gf4.inv(3)
    );

    let gf9 = Field::with_order(9)?;
    println!("{}  generator = {}", gf9.spec(), gf9.generator());
    let a = gf9.element(5)?;
    let b = gf9.element(7)?;
    println!(
        "  5·7 = {:?}, 5-7 = {:?}, 5⁻¹ = {:?}",
        a.mul(b)?.value(),
        a.sub(b)?.value(),
        a.inv()?.value()
    );

    // Elements of different fields never mix.
    let gf5 = Field::new(5, 1)?;
    println!("  GF(9) ⊕ GF(5): {}", a.add(gf5.element(1)?).unwrap_err());
    println!("  0⁻¹ in GF(9): {}", gf9.element(0)?.inv().unwrap_err());
    Ok(())
}
