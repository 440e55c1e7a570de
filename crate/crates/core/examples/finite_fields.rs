//! Arithmetic in GF(9) built from the irreducible modulus x^2 + 1 over GF(3).
//!
//! ```bash
//! cargo run --example finite_fields
//! ```

use toric_codes::gf::Field;

fn main() -> toric_codes::Result<()> {
    let gf9 = Field::new(9, Some(&[1, 0, 1]))?;
    let a = gf9.from_coeffs(&[0, 1])?; // the class of x, a square root of -1

    println!("{gf9:?}");
    println!("a^2 = {:?} (coefficients, constant first)", gf9.coeffs(gf9.mul(a, a)));

    // Every unit has order dividing 8; find a generator of the cyclic group.
    let generator = gf9
        .units()
        .into_iter()
        .find(|&u| (1..8).all(|e| gf9.pow(u, e) != gf9.one()))
        .expect("GF(9)^* is cyclic");
    let powers: Vec<String> = (0..8).map(|e| gf9.fmt_elem(gf9.pow(generator, e))).collect();
    println!("powers of {}: {}", gf9.fmt_elem(generator), powers.join(" "));

    for u in gf9.units() {
        let inv = gf9.inv(u)?;
        assert_eq!(gf9.mul(u, inv), gf9.one());
    }
    println!("every unit inverts; 1/0 is {:?}", gf9.inv(gf9.zero()).unwrap_err());

    // Elements carry their field, and mixing fields is refused.
    let x = gf9.element(a);
    let y = Field::prime(3)?.element(Field::prime(3)?.one());
    println!("a + 1 in GF(3)? {}", x.add(&y).unwrap_err());
    Ok(())
}
