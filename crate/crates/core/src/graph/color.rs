use serde::Serialize;

use super::{Graph, GraphError};

/// Exact searches that may have to exhaust the space are limited to graphs
/// this small.
pub const REFUTATION_LIMIT: usize = 64;

/// Above the refutation limit the search gives up after this many nodes.
const LARGE_NODE_CAP: u64 = 10_000_000;

/// A total vertex coloring. Colors are arbitrary `u32` labels;
/// `palette_size` counts the distinct ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    colors: Vec<u32>,
    palette_size: usize,
}

impl Coloring {
    pub fn new(colors: Vec<u32>) -> Self {
        let mut seen: Vec<u32> = colors.clone();
        seen.sort_unstable();
        seen.dedup();
        Coloring { palette_size: seen.len(), colors }
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> u32 {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    /// First monochromatic edge, if any. Loops are ignored.
    pub fn conflict(&self, g: &Graph) -> Result<Option<(usize, usize)>, GraphError> {
        if self.colors.len() != g.n() {
            return Err(GraphError::ColoringLength { got: self.colors.len(), n: g.n() });
        }
        Ok(g.edges().find(|&(u, v)| self.colors[u] == self.colors[v]))
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        matches!(self.conflict(g), Ok(None))
    }

    /// Vertices grouped by color, classes in ascending color order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut pairs: Vec<(u32, usize)> = self.colors.iter().enumerate().map(|(v, &c)| (c, v)).collect();
        pairs.sort_unstable();
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut last = None;
        for (c, v) in pairs {
            if last != Some(c) {
                out.push(Vec::new());
                last = Some(c);
            }
            out.last_mut().unwrap().push(v);
        }
        out
    }
}

fn check_permutation(n: usize, order: &[usize]) -> Result<(), GraphError> {
    if order.len() != n {
        return Err(GraphError::BadOrder);
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(GraphError::BadOrder);
        }
    }
    Ok(())
}

/// First-fit coloring along `order`.
pub fn greedy_color(g: &Graph, order: &[usize]) -> Result<Coloring, GraphError> {
    check_permutation(g.n(), order)?;
    const NONE: u32 = u32::MAX;
    let mut colors = vec![NONE; g.n()];
    let mut stamp = vec![usize::MAX; g.max_degree() + 2];
    for (i, &v) in order.iter().enumerate() {
        for &w in g.neighbors(v) {
            let c = colors[w as usize];
            if (c as usize) < stamp.len() {
                stamp[c as usize] = i;
            }
        }
        let c = (0..stamp.len()).find(|&c| stamp[c] != i).unwrap();
        colors[v] = c as u32;
    }
    Ok(Coloring::new(colors))
}

/// Smallest-last order and the degeneracy it certifies.
pub fn degeneracy_order(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let maxd = deg.iter().copied().max().unwrap_or(0);
    // doubly linked buckets keyed by current degree
    let mut head = vec![usize::MAX; maxd + 1];
    let mut next = vec![usize::MAX; n];
    let mut prev = vec![usize::MAX; n];
    let link = |v: usize, d: usize, head: &mut [usize], next: &mut [usize], prev: &mut [usize]| {
        next[v] = head[d];
        prev[v] = usize::MAX;
        if head[d] != usize::MAX {
            prev[head[d]] = v;
        }
        head[d] = v;
    };
    let unlink = |v: usize, d: usize, head: &mut [usize], next: &mut [usize], prev: &mut [usize]| {
        if prev[v] != usize::MAX {
            next[prev[v]] = next[v];
        } else {
            head[d] = next[v];
        }
        if next[v] != usize::MAX {
            prev[next[v]] = prev[v];
        }
    };
    for v in (0..n).rev() {
        link(v, deg[v], &mut head, &mut next, &mut prev);
    }
    let mut removed = vec![false; n];
    let mut removal = Vec::with_capacity(n);
    let mut degeneracy = 0;
    let mut low = 0usize;
    for _ in 0..n {
        low = low.saturating_sub(1);
        while head[low] == usize::MAX {
            low += 1;
        }
        let v = head[low];
        unlink(v, low, &mut head, &mut next, &mut prev);
        removed[v] = true;
        degeneracy = degeneracy.max(low);
        removal.push(v);
        for &w in g.neighbors(v) {
            let w = w as usize;
            if !removed[w] {
                unlink(w, deg[w], &mut head, &mut next, &mut prev);
                deg[w] -= 1;
                link(w, deg[w], &mut head, &mut next, &mut prev);
            }
        }
    }
    removal.reverse();
    (removal, degeneracy)
}

/// Outcome of an exact k-coloring search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KColorability {
    Colorable(Coloring),
    /// The search space was exhausted; `nodes` counts color assignments tried.
    NotColorable {
        nodes: u64,
        order: Vec<usize>,
    },
}

impl KColorability {
    pub fn is_colorable(&self) -> bool {
        matches!(self, KColorability::Colorable(_))
    }
}

/// Exact k-colorability with the default order: repeatedly pick the
/// unplaced vertex with most already-placed neighbors, ties by degree then
/// index.
pub fn exact_k_colorable(g: &Graph, k: usize) -> Result<KColorability, GraphError> {
    exact_k_colorable_with_order(g, k, &connected_order(g))
}

fn connected_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !placed[v]).max_by_key(|&v| (links[v], g.degree(v), std::cmp::Reverse(v))).unwrap();
        placed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            links[w as usize] += 1;
        }
    }
    order
}

/// Backtracking over `order` with value symmetry broken: the vertex at
/// position `i` may only open color `max_used + 1`, never a later one.
pub fn exact_k_colorable_with_order(g: &Graph, k: usize, order: &[usize]) -> Result<KColorability, GraphError> {
    let n = g.n();
    check_permutation(n, order)?;
    if k > 64 {
        return Err(GraphError::TooManyColors(k));
    }
    if n == 0 {
        return Ok(KColorability::Colorable(Coloring::new(Vec::new())));
    }
    if k == 0 {
        return if n <= REFUTATION_LIMIT {
            Ok(KColorability::NotColorable { nodes: 0, order: order.to_vec() })
        } else {
            Err(GraphError::TooLarge { n, limit: REFUTATION_LIMIT })
        };
    }
    let cap = if n <= REFUTATION_LIMIT { u64::MAX } else { LARGE_NODE_CAP };
    const NONE: i32 = -1;
    let mut color = vec![NONE; n];
    let mut tried = vec![NONE; n];
    // max color used among positions < i
    let mut max_used = vec![NONE; n + 1];
    let mut nodes = 0u64;
    let mut i = 0usize;
    loop {
        if i == n {
            return Ok(KColorability::Colorable(Coloring::new(color.iter().map(|&c| c as u32).collect())));
        }
        let v = order[i];
        let mut blocked = 0u64;
        for &w in g.neighbors(v) {
            let c = color[w as usize];
            if c >= 0 {
                blocked |= 1 << c;
            }
        }
        let limit = ((max_used[i] + 1) as usize).min(k - 1) as i32;
        let next = ((tried[i] + 1)..=limit).find(|&c| blocked >> c & 1 == 0);
        nodes += 1;
        if nodes > cap {
            return Err(GraphError::TooLarge { n, limit: REFUTATION_LIMIT });
        }
        match next {
            Some(c) => {
                color[v] = c;
                tried[i] = c;
                max_used[i + 1] = max_used[i].max(c);
                i += 1;
                if i < n {
                    tried[i] = NONE;
                }
            }
            None => {
                color[v] = NONE;
                tried[i] = NONE;
                if i == 0 {
                    break;
                }
                i -= 1;
                color[order[i]] = NONE;
            }
        }
    }
    if n > REFUTATION_LIMIT {
        return Err(GraphError::TooLarge { n, limit: REFUTATION_LIMIT });
    }
    Ok(KColorability::NotColorable { nodes, order: order.to_vec() })
}
