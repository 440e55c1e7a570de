//! The full pipeline on a user-supplied instance, printed through the same
//! renderer as the command line tool.
//!
//! ```bash
//! cargo run --release --example parameter_table -- 7 "1,2;2,1" 1..6
//! ```

use toric_codes::cli::{parse_degrees, parse_matrix, render_table, OutputFormat};
use toric_codes::codes::{parameter_table, PipelineOptions};
use toric_codes::gf::Field;
use toric_codes::ideals::{enumerate_points, ExponentMatrix};

fn main() -> toric_codes::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let q: u64 = args.first().map_or(Ok(5), |s| s.parse()).expect("q must be an integer");
    let matrix = parse_matrix(args.get(1).map_or("1,1,0;0,1,1;1,0,1", String::as_str))?;
    let degrees = parse_degrees(args.get(2).map_or("1..5", String::as_str))?;

    let set = enumerate_points(&ExponentMatrix::new(matrix)?, &Field::new(q, None)?)?;
    let options = PipelineOptions {
        verify: true,
        threads: 4,
        ..PipelineOptions::default()
    };
    let table = parameter_table(&set, degrees, options)?;
    print!("{}", render_table(&table, OutputFormat::Table));
    Ok(())
}
