//! Quadratic character sums: the exact value for quadratics and the
//! square-root bound for random squarefree cubics and quartics.
//!
//!     cargo run --release --example character_sums

use erpolar::chrom4::{char_sum_quadratic, verify_quadratic_sums, verify_weil};
use erpolar::ff::{Fe, GaloisField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = GaloisField::new(13)?;
    let s = char_sum_quadratic(&f, Fe(2), Fe(1), Fe(6))?;
    println!("sum of chi(2c² + c + 6) over GF(13) = {s}");
    println!("{}", serde_json::to_string(&verify_quadratic_sums(&f))?);

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for q in [25u64, 49, 121] {
        for degree in [3, 4] {
            let r = verify_weil(&GaloisField::new(q)?, degree, 2_000, &mut rng)?;
            println!(
                "q = {q}, degree {degree}: {} samples, {} violations, max |S|/bound = {:.3}",
                r.samples,
                r.violations,
                r.max_ratio_milli as f64 / 1000.0
            );
        }
    }
    Ok(())
}
