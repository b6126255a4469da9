//! Exact k-colorability by backtracking on small graphs.
//!
//!     cargo run --example exact_coloring

use erpolar::ff::GaloisField;
use erpolar::graph::{exact_k_colorable, Graph, KColorability};
use erpolar::polarity::build_er;

fn report(name: &str, g: &Graph, k: usize) -> Result<(), Box<dyn std::error::Error>> {
    match exact_k_colorable(g, k)? {
        KColorability::Colorable(c) => println!("{name}: {k}-colorable, e.g. {:?}", c.colors()),
        KColorability::NotColorable { nodes, .. } => println!("{name}: not {k}-colorable ({nodes} nodes)"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (i + 5, (i + 2) % 5 + 5));
    let petersen = Graph::from_edges(10, outer.chain(spokes).chain(inner))?;
    report("Petersen", &petersen, 2)?;
    report("Petersen", &petersen, 3)?;

    let wheel = Graph::from_edges(6, (0..5).map(|i| (i, (i + 1) % 5)).chain((0..5).map(|i| (i, 5))))?;
    report("W5", &wheel, 3)?;

    let er = build_er(&GaloisField::new(3)?)?;
    report("ER_3", &er.graph, 3)?;
    Ok(())
}
