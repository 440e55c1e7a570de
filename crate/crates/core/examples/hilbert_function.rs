//! Hilbert functions from standard monomials, checked against the
//! inclusion-exclusion count.
//!
//! ```bash
//! cargo run --example hilbert_function
//! ```

use toric_codes::gf::Field;
use toric_codes::groebner::buchberger;
use toric_codes::hilbert::{hilbert_value_with, ring_degree, HilbertMethod};
use toric_codes::mpoly::{MonomialOrder, Ring};

fn main() -> toric_codes::Result<()> {
    // Three points of P^2 over GF(7): [1:0:0], [0:1:0], [0:0:1].
    let ring = Ring::with_prefix(Field::prime(7)?, "x", 3)?;
    let gens = ["x1*x2", "x1*x3", "x2*x3"]
        .map(|g| ring.parse(g))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let gb = buchberger(&gens, MonomialOrder::GrevLex)?;

    for d in 0..5 {
        let by_count = hilbert_value_with(&gb, d, HilbertMethod::Enumerate)?;
        let by_lcms = hilbert_value_with(&gb, d, HilbertMethod::InclusionExclusion)?;
        println!("H({d}) = {by_count}  (inclusion-exclusion: {by_lcms})");
    }
    println!("degree = {}", ring_degree(&gb)?);
    Ok(())
}
