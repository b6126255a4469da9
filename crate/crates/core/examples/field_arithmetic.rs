//! Arithmetic in GF(9) and a cubic tower over GF(7).
//!
//!     cargo run --example field_arithmetic

use erpolar::ff::{Fe, GaloisField, TowerSpec};

fn digits(f: &GaloisField, x: Fe) -> Vec<u64> {
    f.coeffs(x).iter().map(|c| c.0).collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = GaloisField::new(9)?;
    println!("GF(9) as {}", f.descriptor());
    let (a, b) = (Fe(4), Fe(7));
    println!("a = {:?}, b = {:?}", digits(&f, a), digits(&f, b));
    println!("a + b = {:?}", digits(&f, f.add(a, b)));
    println!("a * b = {:?}", digits(&f, f.mul(a, b)));
    println!("a^-1  = {:?}", digits(&f, f.inv(a)?));
    println!("order of a = {}", f.element_order(a)?);
    for x in f.nonzero() {
        println!("  {:>2}: chi = {:+}, sign = {:?}", x.0, f.quad_char(x), f.sign(x).unwrap());
    }

    let base = GaloisField::new(7)?;
    let tower = TowerSpec::find_binomial(&base, 3)?.expect("3 divides 6");
    let theta = tower.theta();
    let big = tower.field();
    println!("GF(343) = GF(7)[θ], θ³ = {}", tower.mu().unwrap());
    println!("θ⁴ in the basis 1, θ, θ²: {:?}", tower.coeffs(big.pow(theta, 4)).iter().map(|c| c.0).collect::<Vec<_>>());
    Ok(())
}
