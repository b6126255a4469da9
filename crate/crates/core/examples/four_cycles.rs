//! Polarity graphs have no 4-cycles; adding one edge to ER_5 creates one.
//!
//!     cargo run --example four_cycles

use erpolar::ff::GaloisField;
use erpolar::graph::Graph;
use erpolar::polarity::build_er;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [3, 5, 7, 9, 11, 13, 25, 27] {
        let er = build_er(&GaloisField::new(q)?)?;
        println!("ER_{q:<2} has a 4-cycle: {}", er.graph.has_c4());
    }

    let er = build_er(&GaloisField::new(5)?)?;
    let g = &er.graph;
    // join two vertices at distance 2 through different neighbors of a third
    let v = 0;
    let (a, b) = (g.neighbors(v)[0] as usize, g.neighbors(v)[1] as usize);
    let c = g.neighbors(a).iter().map(|&w| w as usize).find(|&w| w != v && !g.has_edge(w, b)).unwrap();
    let edges: Vec<_> = g.edges().chain([(c, b)]).collect();
    let h = Graph::from_edges(g.n(), edges)?;
    println!("ER_5 plus {c}-{b}: 4-cycle {:?}", h.find_c4());
    Ok(())
}
