use super::{Graph, GraphError};

/// `forward[v]` is the image of vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    pub forward: Vec<usize>,
}

impl VertexMap {
    pub fn new(forward: Vec<usize>) -> Self {
        VertexMap { forward }
    }

    pub fn identity(n: usize) -> Self {
        VertexMap { forward: (0..n).collect() }
    }

    pub fn image(&self, v: usize) -> usize {
        self.forward[v]
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapMode {
    /// Bijection preserving adjacency and non-adjacency.
    Isomorphism,
    /// Injection onto an induced subgraph.
    InducedEmbedding,
}

/// Checks `uv ∈ E(G) ⇔ f(u)f(v) ∈ E(H)` for all pairs, plus injectivity
/// (and surjectivity in isomorphism mode). Loops are not compared.
pub fn verify_vertex_map(g: &Graph, h: &Graph, f: &VertexMap, mode: MapMode) -> Result<bool, GraphError> {
    if f.len() != g.n() {
        return Err(GraphError::NotTotal(format!("map has {} entries, source has {} vertices", f.len(), g.n())));
    }
    if let Some(&bad) = f.forward.iter().find(|&&x| x >= h.n()) {
        return Err(GraphError::NotTotal(format!("image {bad} outside target of {} vertices", h.n())));
    }
    if mode == MapMode::Isomorphism && g.n() != h.n() {
        return Ok(false);
    }
    let mut preimage = vec![usize::MAX; h.n()];
    for (v, &x) in f.forward.iter().enumerate() {
        if preimage[x] != usize::MAX {
            return Ok(false);
        }
        preimage[x] = v;
    }
    for u in 0..g.n() {
        let fu = f.forward[u];
        if g.neighbors(u).iter().any(|&v| !h.has_edge(fu, f.forward[v as usize])) {
            return Ok(false);
        }
        // every edge at f(u) inside the image must come from an edge at u
        let inside = h.neighbors(fu).iter().filter(|&&x| preimage[x as usize] != usize::MAX).count();
        if inside != g.degree(u) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn identity_is_isomorphism() {
        let g = path(5);
        assert!(verify_vertex_map(&g, &g, &VertexMap::identity(5), MapMode::Isomorphism).unwrap());
    }

    #[test]
    fn reversal_is_isomorphism_swap_is_not() {
        let g = path(4);
        assert!(verify_vertex_map(&g, &g, &VertexMap::new(vec![3, 2, 1, 0]), MapMode::Isomorphism).unwrap());
        assert!(!verify_vertex_map(&g, &g, &VertexMap::new(vec![1, 0, 2, 3]), MapMode::Isomorphism).unwrap());
        assert!(!verify_vertex_map(&g, &g, &VertexMap::new(vec![0, 0, 2, 3]), MapMode::Isomorphism).unwrap());
    }

    #[test]
    fn induced_embedding_rejects_extra_edges() {
        let p3 = path(3);
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let p5 = path(5);
        assert!(verify_vertex_map(&p3, &p5, &VertexMap::new(vec![1, 2, 3]), MapMode::InducedEmbedding).unwrap());
        assert!(!verify_vertex_map(&p3, &tri, &VertexMap::identity(3), MapMode::InducedEmbedding).unwrap());
    }

    #[test]
    fn partial_map_is_an_error() {
        let g = path(3);
        assert!(matches!(
            verify_vertex_map(&g, &g, &VertexMap::new(vec![0, 1]), MapMode::Isomorphism),
            Err(GraphError::NotTotal(_))
        ));
    }
}
