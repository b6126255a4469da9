//! Builds ER_q, G_q and H_q and writes ER_q in DIMACS format.
//!
//!     cargo run --example build_graphs -- 7 /tmp/er7.col

use erpolar::ff::GaloisField;
use erpolar::graph::write_dimacs;
use erpolar::polarity::{build_er, build_gq, build_hq};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let q: u64 = args.next().map_or(Ok(7), |s| s.parse())?;
    let f = GaloisField::new(q)?;
    for (name, g) in [("ER", build_er(&f)?), ("G", build_gq(&f)?), ("H", build_hq(&f)?)] {
        let st = g.graph.stats();
        println!("{name}_{q}: n = {}, m = {}, max degree = {}, loops = {}", st.n, st.m, st.max_degree, st.loop_count);
    }
    if let Some(path) = args.next() {
        let er = build_er(&f)?;
        write_dimacs(&er.graph, std::io::BufWriter::new(std::fs::File::create(&path)?))?;
        println!("wrote {path}");
    }
    Ok(())
}
