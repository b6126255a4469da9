//! Colors ER_{q0²} with at most 4·q0 + 1 colors and checks the degree
//! bounds on the residual set.
//!
//!     cargo run --release --example square_coloring -- 5

use erpolar::colorsq::{color_square, verify_claims_sq};
use erpolar::ff::GaloisField;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q0: u64 = std::env::args().nth(1).map_or(Ok(5), |s| s.parse())?;
    let base = GaloisField::new(q0)?;
    let c = color_square(&base)?;
    println!(
        "ER_{}: {} colors (bound {}), S/X sizes {:?}, proper = {}",
        q0 * q0,
        c.palette_size,
        c.bound,
        c.class_sizes,
        c.proper
    );
    let cl = verify_claims_sq(&base)?;
    println!("max degree in one X_s: {} (<= {q0})", cl.claim1_max);
    println!("max degree in X:       {} (<= {})", cl.claim2_max, 2 * q0 - 1);
    println!("unique neighbors: {}", cl.unique_neighbor_ok);
    Ok(())
}
