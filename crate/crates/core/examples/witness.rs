//! Builds the 36-vertex subgraph of H_491 that needs four colors, writes the
//! certificate and replays it.
//!
//!     cargo run --release --example witness -- /tmp/w491.txt

use erpolar::chrom4::{build_witness, replay_witness, write_witness};
use erpolar::ff::GaloisField;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = build_witness(&GaloisField::new(491)?)?;
    let alphas: Vec<u64> = w.quintuple.alphas.iter().map(|a| a.0).collect();
    println!("alphas {alphas:?}: {} vertices, {} edges", w.size(), w.graph.m());
    println!("no 3-coloring: {} + {} search nodes", w.nodes, w.recheck_nodes);
    let text = write_witness(&w);
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, &text)?;
        println!("wrote {path}");
    }
    let replay = replay_witness(&text)?;
    println!("replay ok: {}", replay.ok);
    Ok(())
}
