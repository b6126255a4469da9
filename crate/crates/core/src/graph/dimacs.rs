//! DIMACS `edge` format: `p edge n m`, then `e u v` lines, 1-based.
//! Loops are not edges here; they travel in a `c loops: …` comment.

use std::io::{self, Write};

use super::{Graph, GraphError};

pub fn write_dimacs<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    writeln!(w, "p edge {} {}", g.n(), g.m())?;
    if !g.loops().is_empty() {
        let list: Vec<String> = g.loops().iter().map(|v| (v + 1).to_string()).collect();
        writeln!(w, "c loops: {}", list.join(" "))?;
    }
    for (u, v) in g.edges() {
        writeln!(w, "e {} {}", u + 1, v + 1)?;
    }
    Ok(())
}

pub fn to_dimacs(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_dimacs(g, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

pub fn parse_dimacs(text: &str) -> Result<Graph, GraphError> {
    let err = |line: usize, msg: &str| GraphError::Parse(format!("line {line}: {msg}"));
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut loops = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("c") => {
                if let Some(rest) = line.strip_prefix("c loops:") {
                    for tok in rest.split_whitespace() {
                        let v: usize = tok.parse().map_err(|_| err(ln, "bad loop vertex"))?;
                        loops.push(v);
                    }
                }
            }
            Some("p") => {
                if header.is_some() {
                    return Err(err(ln, "duplicate problem line"));
                }
                if parts.next() != Some("edge") {
                    return Err(err(ln, "expected 'p edge'"));
                }
                let n = parts.next().and_then(|t| t.parse().ok()).ok_or_else(|| err(ln, "bad vertex count"))?;
                let m = parts.next().and_then(|t| t.parse().ok()).ok_or_else(|| err(ln, "bad edge count"))?;
                header = Some((n, m));
            }
            Some("e") => {
                if header.is_none() {
                    return Err(err(ln, "edge before problem line"));
                }
                let mut endpoint = || -> Result<usize, GraphError> {
                    let v: usize = parts.next().and_then(|t| t.parse().ok()).ok_or_else(|| err(ln, "bad endpoint"))?;
                    v.checked_sub(1).ok_or_else(|| err(ln, "vertices are 1-based"))
                };
                let u = endpoint()?;
                let v = endpoint()?;
                edges.push((u, v));
            }
            _ => return Err(err(ln, "unknown line type")),
        }
    }
    let (n, m) = header.ok_or_else(|| GraphError::Parse("missing problem line".into()))?;
    let mut all: Vec<(usize, usize)> = edges;
    for v in loops {
        let v = v.checked_sub(1).ok_or_else(|| GraphError::Parse("loop vertices are 1-based".into()))?;
        all.push((v, v));
    }
    let g = Graph::from_edges(n, all)?;
    if g.m() != m {
        return Err(GraphError::Parse(format!("header declares {m} edges, found {}", g.m())));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_loops() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 2)]).unwrap();
        let text = to_dimacs(&g);
        assert!(text.starts_with("p edge 4 4\nc loops: 3\n"));
        let h = parse_dimacs(&text).unwrap();
        assert_eq!(h.stats(), g.stats());
        assert_eq!(h.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        assert_eq!(h.loops(), g.loops());
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 0 1\n").is_err());
        assert!(parse_dimacs("p edge 2 2\ne 1 2\n").is_err());
        assert!(parse_dimacs("p col 2 1\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_dimacs("c nothing\n").is_err());
    }
}
