//! Reduced Gröbner bases, ideal membership and elimination.
//!
//! ```bash
//! cargo run --example groebner_basis
//! ```

use toric_codes::gf::Field;
use toric_codes::groebner::{buchberger, eliminate, normal_form};
use toric_codes::mpoly::{MonomialOrder, Ring};

fn main() -> toric_codes::Result<()> {
    let ring = Ring::new(Field::prime(5)?, ["x", "y", "z"])?;
    let gens = [ring.parse("x^2 - y")?, ring.parse("x*y - z")?];

    for ord in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
        let gb = buchberger(&gens, ord)?;
        gb.verify_criterion()?;
        println!("{ord:?} basis:");
        for line in gb.display_lines() {
            println!("  {line}");
        }
    }

    let gb = buchberger(&gens, MonomialOrder::GrevLex)?;
    let member = ring.parse("x^3 - z")?;
    let outsider = ring.parse("x^3 - y")?;
    println!("x^3 - z in ideal: {}", gb.contains(&member)?);
    println!("x^3 - y reduces to {}", normal_form(&outsider, &gb)?);

    // The twisted cubic: eliminating the parameter s from (x - s, y - s^2, z - s^3).
    let param = Ring::new(Field::prime(5)?, ["s", "x", "y", "z"])?;
    let curve = ["x - s", "y - s^2", "z - s^3"]
        .iter()
        .map(|g| param.parse(g))
        .collect::<Result<Vec<_>, _>>()?;
    let implicit = eliminate(&curve, &param, 1)?;
    println!("implicit equations of the twisted cubic:");
    for line in implicit.display_lines() {
        println!("  {line}");
    }
    Ok(())
}
