//! Colors ER_{q³} through the S / pulled-back layers / Z decomposition.
//! Takes a while at q = 7 (about 118k vertices).
//!
//!     cargo run --release --example odd_coloring -- 7

use erpolar::colorodd::{color_odd, DEFAULT_BUDGET};
use erpolar::ff::GaloisField;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u64 = std::env::args().nth(1).map_or(Ok(7), |s| s.parse())?;
    let c = color_odd(&GaloisField::new(q)?, 1, DEFAULT_BUDGET)?;
    println!("mu = {}", c.mu);
    println!("layer sizes {:?}, |Z| = {}", c.layer_sizes, c.z_size);
    println!("colors on S and layers: {} (bound {})", c.layer_colors, c.layer_bound);
    println!("colors on Z: {}, max degree in Z: {}", c.z_colors, c.z_max_degree);
    println!("palette {} of at most {}, proper = {}", c.palette_size, c.palette_bound, c.proper);
    Ok(())
}
