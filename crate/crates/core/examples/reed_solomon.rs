//! Reed-Solomon codes are the toric codes of the one-dimensional torus.
//! Their distances are found by search and compared with `q - 1 - d`.
//!
//! ```bash
//! cargo run --example reed_solomon
//! ```

use toric_codes::codes::{is_mds, parameter_table, torus_min_distance, PipelineOptions};
use toric_codes::gf::Field;
use toric_codes::ideals::{enumerate_points, ExponentMatrix};

fn main() -> toric_codes::Result<()> {
    for q in [5u64, 7, 8] {
        let field = match q {
            8 => Field::new(8, Some(&[1, 1, 0, 1]))?,
            _ => Field::new(q, None)?,
        };
        let set = enumerate_points(&ExponentMatrix::identity(1)?, &field)?;
        println!("GF({q}):");
        for p in parameter_table(&set, 1..=q as u32 - 1, PipelineOptions::default())? {
            let formula = torus_min_distance(q, 1, p.d as u64)?;
            assert_eq!(p.min_distance.value(), Some(formula));
            println!(
                "  d = {}: [{}, {}, {}]  MDS: {}",
                p.d,
                p.length,
                p.dimension,
                formula,
                is_mds(&p)?
            );
        }
    }
    Ok(())
}
