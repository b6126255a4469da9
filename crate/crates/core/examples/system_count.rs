//! Counts solutions of the homogeneous quadratic system behind Z and
//! compares them with the closed-form bound.
//!
//!     cargo run --release --example system_count

use erpolar::colorodd::{solution_bound, QuadraticSystem};
use erpolar::ff::{binomial_irreducible, GaloisField};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [3u64, 5, 7, 13] {
        let f = GaloisField::new(q)?;
        for mu in f.nonzero() {
            let n = QuadraticSystem::new(&f, 1, mu)?.count_solutions()?;
            let irr = binomial_irreducible(&f, 3, mu)?;
            println!(
                "q = {q:>2}, mu = {:>2}: {n:>3} solutions (bound {}), x³ - mu irreducible: {irr}",
                mu.0,
                solution_bound(q, 1)
            );
        }
    }
    Ok(())
}
