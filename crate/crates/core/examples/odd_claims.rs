//! Verifies the coordinate identities of the odd decomposition, exhaustively
//! at q = 7 and by sampling at q = 13.
//!
//!     cargo run --release --example odd_claims

use erpolar::colorodd::{verify_claims_odd, verify_claims_odd_with, ClaimMode};
use erpolar::ff::GaloisField;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let exhaustive = verify_claims_odd(&GaloisField::new(7)?, 1)?;
    println!("{}", serde_json::to_string_pretty(&exhaustive)?);
    let sampled = verify_claims_odd_with(&GaloisField::new(13)?, 1, ClaimMode::Sampled { samples: 20_000, seed: 1 })?;
    println!("q = 13 sampled: ok = {}, |Z| = {:?}", sampled.ok, sampled.z_size);
    Ok(())
}
