//! Checks that φ maps H_q isomorphically onto ER_q with G_q induced.
//!
//!     cargo run --example embedding -- 9

use erpolar::ff::GaloisField;
use erpolar::polarity::verify_embedding;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: u64 = std::env::args().nth(1).map_or(Ok(9), |s| s.parse())?;
    let r = verify_embedding(&GaloisField::new(q)?)?;
    println!("{}", serde_json::to_string_pretty(&r)?);
    Ok(())
}
