//! Vanishing ideals of a toric point set over GF(5) parameterized by
//! `(y1 y2, y2 y3, y1 y3)`, together with its Hilbert function.
//!
//! ```bash
//! cargo run --example vanishing_ideals
//! ```

use toric_codes::gf::Field;
use toric_codes::groebner::BuchbergerOptions;
use toric_codes::hilbert::{default_stabilization_cap, hilbert_profile};
use toric_codes::ideals::{check_vanishing, enumerate_points, vanishing_ideals, ExponentMatrix};

fn main() -> toric_codes::Result<()> {
    let field = Field::prime(5)?;
    let matrix = ExponentMatrix::new(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]])?;
    let set = enumerate_points(&matrix, &field)?;
    println!("|X*| = {}", set.len());

    let ideals = vanishing_ideals(&set, BuchbergerOptions::default())?;
    println!("I(X*):");
    for g in ideals.affine.display_lines() {
        println!("  {g}");
    }
    println!("I(Y):");
    for g in ideals.projective.display_lines() {
        println!("  {g}");
    }
    check_vanishing(&ideals.affine, set.affine_points())?;
    check_vanishing(&ideals.projective, &set.projective_reps())?;

    let profile = hilbert_profile(&ideals.projective, 0, default_stabilization_cap(&ideals.projective))?;
    let values: Vec<String> = profile.values.values().map(u64::to_string).collect();
    println!("H_Y(0..) = {}", values.join(", "));
    println!("degree of S[u]/I(Y) = {}", profile.degree_of_ring.unwrap());
    Ok(())
}
