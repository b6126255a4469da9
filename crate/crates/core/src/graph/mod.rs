//! Immutable simple graphs with out-of-band loops.
//!
//! Adjacency is kept as sorted neighbor lists (CSR). Graphs small enough for
//! an `n × n` bit matrix to be cheap also carry dense bitset rows, which
//! back constant-time `has_edge` and the popcount C4 scan.

mod color;
mod dimacs;
mod map;

use serde::Serialize;
use thiserror::Error;

pub use color::{
    degeneracy_order, exact_k_colorable, exact_k_colorable_with_order, greedy_color, Coloring, KColorability,
    REFUTATION_LIMIT,
};
pub use dimacs::{parse_dimacs, to_dimacs, write_dimacs};
pub use map::{verify_vertex_map, MapMode, VertexMap};

/// Graphs with at most this many vertices get dense bitset rows.
pub const DENSE_LIMIT: usize = 16_384;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("adjacency is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("order is not a permutation of the vertex set")]
    BadOrder,
    #[error("vertex map is not total: {0}")]
    NotTotal(String),
    #[error("coloring has {got} entries, graph has {n} vertices")]
    ColoringLength { got: usize, n: usize },
    #[error("exact search on {n} vertices exceeds the refutation limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("{0} colors requested, at most 64 supported")]
    TooManyColors(usize),
    #[error("dimacs: {0}")]
    Parse(String),
}

#[derive(Clone, Debug)]
struct BitRows {
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    fn row(&self, v: usize) -> &[u64] {
        &self.data[v * self.words..(v + 1) * self.words]
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    offsets: Vec<usize>,
    adj: Vec<u32>,
    rows: Option<BitRows>,
    loops: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub loop_count: usize,
}

/// Four vertices `a b c d` with edges `ab, bc, cd, da`.
pub type FourCycle = [usize; 4];

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self::assemble(vec![Vec::new(); n], Vec::new())
    }

    /// Builds from an edge list. Pairs `(v, v)` become loops; repeated
    /// edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut lists = vec![Vec::new(); n];
        let mut loops = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            if u == v {
                loops.push(u as u32);
            } else {
                lists[u].push(v as u32);
                lists[v].push(u as u32);
            }
        }
        Ok(Self::assemble(lists, loops))
    }

    /// Builds from a neighbor oracle. `fill(u, out)` must push every
    /// neighbor of `u` (pushing `u` itself records a loop). The relation is
    /// checked for symmetry.
    pub fn from_neighbors<F>(n: usize, mut fill: F) -> Result<Self, GraphError>
    where
        F: FnMut(usize, &mut Vec<usize>),
    {
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut adj: Vec<u32> = Vec::new();
        let mut loops = Vec::new();
        let mut buf = Vec::new();
        for u in 0..n {
            buf.clear();
            fill(u, &mut buf);
            buf.sort_unstable();
            buf.dedup();
            for &v in &buf {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { v, n });
                }
                if v == u {
                    loops.push(u as u32);
                } else {
                    adj.push(v as u32);
                }
            }
            offsets.push(adj.len());
        }
        let g = Self::finish(offsets, adj, loops);
        for u in 0..n {
            for &v in g.neighbors(u) {
                if g.neighbors(v as usize).binary_search(&(u as u32)).is_err() {
                    return Err(GraphError::Asymmetric(u, v as usize));
                }
            }
        }
        Ok(g)
    }

    fn assemble(mut lists: Vec<Vec<u32>>, loops: Vec<u32>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut adj = Vec::new();
        for l in lists.iter_mut() {
            l.sort_unstable();
            l.dedup();
            adj.extend_from_slice(l);
            offsets.push(adj.len());
        }
        Self::finish(offsets, adj, loops)
    }

    fn finish(offsets: Vec<usize>, adj: Vec<u32>, mut loops: Vec<u32>) -> Self {
        loops.sort_unstable();
        loops.dedup();
        let n = offsets.len() - 1;
        let rows = (n <= DENSE_LIMIT && n > 0).then(|| {
            let words = n.div_ceil(64);
            let mut data = vec![0u64; n * words];
            for u in 0..n {
                for &v in &adj[offsets[u]..offsets[u + 1]] {
                    data[u * words + v as usize / 64] |= 1 << (v % 64);
                }
            }
            BitRows { words, data }
        });
        Graph { offsets, adj, rows, loops }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.adj.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.rows {
            Some(r) => r.row(u)[v / 64] >> (v % 64) & 1 == 1,
            None => self.neighbors(u).binary_search(&(v as u32)).is_ok(),
        }
    }

    pub fn has_dense_rows(&self) -> bool {
        self.rows.is_some()
    }

    /// Vertices carrying a loop, ascending.
    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    pub fn is_loop(&self, v: usize) -> bool {
        self.loops.binary_search(&(v as u32)).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u).iter().filter(move |&&v| v as usize > u).map(move |&v| (u, v as usize))
        })
    }

    pub fn stats(&self) -> GraphStats {
        GraphStats { n: self.n(), m: self.m(), max_degree: self.max_degree(), loop_count: self.loops.len() }
    }

    /// Some 4-cycle if one exists: a pair of distinct vertices with two
    /// common neighbors.
    pub fn find_c4(&self) -> Option<FourCycle> {
        if self.rows.is_some() {
            self.find_c4_bitset()
        } else {
            self.find_c4_wedges()
        }
    }

    pub fn has_c4(&self) -> bool {
        self.find_c4().is_some()
    }

    fn find_c4_bitset(&self) -> Option<FourCycle> {
        let rows = self.rows.as_ref()?;
        let n = self.n();
        for u in 0..n {
            let ru = rows.row(u);
            for v in (u + 1)..n {
                let rv = rows.row(v);
                let mut count = 0;
                for (a, b) in ru.iter().zip(rv) {
                    count += (a & b).count_ones();
                    if count >= 2 {
                        break;
                    }
                }
                if count >= 2 {
                    return Some(self.complete_c4(u, v));
                }
            }
        }
        None
    }

    pub(crate) fn find_c4_wedges(&self) -> Option<FourCycle> {
        let n = self.n();
        let mut stamp = vec![usize::MAX; n];
        let mut via = vec![0u32; n];
        for u in 0..n {
            for &w in self.neighbors(u) {
                for &v in self.neighbors(w as usize) {
                    let v = v as usize;
                    if v <= u {
                        continue;
                    }
                    if stamp[v] == u {
                        return Some([u, via[v] as usize, v, w as usize]);
                    }
                    stamp[v] = u;
                    via[v] = w;
                }
            }
        }
        None
    }

    fn complete_c4(&self, u: usize, v: usize) -> FourCycle {
        let common: Vec<usize> =
            self.neighbors(u).iter().map(|&w| w as usize).filter(|&w| self.has_edge(v, w)).take(2).collect();
        [u, common[0], v, common[1]]
    }

    /// Number of common neighbors of `u` and `v`.
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        if let Some(r) = &self.rows {
            return r.row(u).iter().zip(r.row(v)).map(|(a, b)| (a & b).count_ones() as usize).sum();
        }
        let (a, b) = (self.neighbors(u), self.neighbors(v));
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    pub fn is_independent(&self, vs: &[usize]) -> bool {
        let mut inside = vec![false; self.n()];
        for &v in vs {
            inside[v] = true;
        }
        vs.iter().all(|&v| self.neighbors(v).iter().all(|&w| !inside[w as usize]))
    }

    /// `G[vs]`; vertex `i` of the result is `vs[i]` (duplicates dropped,
    /// first occurrence kept).
    pub fn induced(&self, vs: &[usize]) -> InducedSubgraph {
        let mut local = vec![u32::MAX; self.n()];
        let mut vertices = Vec::with_capacity(vs.len());
        for &v in vs {
            if local[v] == u32::MAX {
                local[v] = vertices.len() as u32;
                vertices.push(v);
            }
        }
        let lists: Vec<Vec<u32>> = vertices
            .iter()
            .map(|&v| self.neighbors(v).iter().map(|&w| local[w as usize]).filter(|&w| w != u32::MAX).collect())
            .collect();
        let loops = vertices.iter().enumerate().filter(|(_, &v)| self.is_loop(v)).map(|(i, _)| i as u32).collect();
        InducedSubgraph { graph: Self::assemble(lists, loops), vertices }
    }
}

/// An induced subgraph together with its vertex relabeling.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `vertices[i]` is the parent id of local vertex `i`.
    pub vertices: Vec<usize>,
}

/// `G[vs]` with its stable relabeling.
pub fn subgraph_induced(g: &Graph, vs: &[usize]) -> InducedSubgraph {
    g.induced(vs)
}
