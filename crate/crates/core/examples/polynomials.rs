//! Sparse polynomials: parsing, monomial orders, division and homogenization.
//!
//! ```bash
//! cargo run --example polynomials
//! ```

use toric_codes::gf::Field;
use toric_codes::mpoly::{MonomialOrder, Ring};

fn main() -> toric_codes::Result<()> {
    let ring = Ring::new(Field::prime(7)?, ["x", "y", "z"])?;
    let f = ring.parse("x*z^3 + y^4 + 3*x^2 - 2")?;

    for ord in [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::BlockElim(1)] {
        let (lm, lc) = f.leading_term(ord)?;
        println!(
            "{ord:?}: {}  leading term {} * {}",
            f.display(ord),
            lc.index(),
            ring.fmt_monomial(&lm)
        );
    }

    let divisors = [ring.parse("x*y - 1")?, ring.parse("y^2 - z")?];
    let (quotients, remainder) = f.divide(&divisors, MonomialOrder::GrevLex)?;
    for (q, g) in quotients.iter().zip(&divisors) {
        println!("quotient by {g}: {q}");
    }
    println!("remainder: {remainder}");

    let mut rebuilt = remainder.clone();
    for (q, g) in quotients.iter().zip(&divisors) {
        rebuilt = rebuilt.add(&q.mul(g)?)?;
    }
    assert_eq!(rebuilt, f);

    let ring_u = ring.extended("u")?;
    let g = ring.parse("x^3 - y + 1")?.map_variables(&ring_u, Some)?;
    let h = g.homogenization(3)?;
    println!("homogenization of {g}: {h}");
    assert_eq!(h.dehomogenize(3), g);
    Ok(())
}
