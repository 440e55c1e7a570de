//! Codes on the affine torus (F_11^*)^2: closed forms against the Gröbner
//! pipeline, and an exhaustive distance check in degree 1.
//!
//! ```bash
//! cargo run --release --example torus_codes
//! ```

use toric_codes::codes::{torus_table, CodeAnalysis, PipelineOptions};
use toric_codes::gf::Field;
use toric_codes::ideals::{enumerate_points, ExponentMatrix};

fn main() -> toric_codes::Result<()> {
    let formulas = torus_table(11, 2, 1..=13)?;
    let set = enumerate_points(&ExponentMatrix::identity(2)?, &Field::prime(11)?)?;
    let analysis = CodeAnalysis::new(
        set,
        PipelineOptions {
            md_budget: 2_000,
            ..PipelineOptions::default()
        },
    )?;

    println!(" d  length  dim  delta  pipeline dim  pipeline delta");
    for p in &formulas {
        let computed = analysis.parameters(p.d)?;
        assert_eq!(computed.dimension, p.dimension);
        println!(
            "{:>2}  {:>6}  {:>3}  {:>5}  {:>12}  {:>14}",
            p.d, p.length, p.dimension, p.min_distance, computed.dimension, computed.min_distance
        );
    }
    Ok(())
}
