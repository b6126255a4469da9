//! Explicit coloring of `G_{q²}` and `ER_{q²}` from the tower
//! `GF(q²) = GF(q)[θ]`, `θ² = μ₁θ + μ₀`.
//!
//! A vertex `(s, t)` with `s = s₀ + s₁θ`, `t = t₀ + t₁θ` lies in the
//! translate `ψ_{s₁θ}(J)` exactly when `y₁ = t₁ − 4s₁s₀ − 2s₁²μ₁ ≠ 0`; it
//! then gets the color `(s₁, sign y₁)`. The remaining vertices form
//! `X = ⋃ X_s`, whose induced graph has maximum degree at most `2q − 1` and
//! is colored greedily with a fresh palette.

use serde::Serialize;
use thiserror::Error;

use crate::ff::{Fe, FieldError, GaloisField, Sign, TowerSpec};
use crate::graph::{degeneracy_order, greedy_color, Coloring, Graph, GraphError};
use crate::polarity::{build_er, build_gq, extend_to_er, PolarityError};

pub use crate::polarity::{phi_auto, psi_auto};

/// Largest `q0²` for which the exhaustive claim checks run.
pub const EXHAUSTIVE_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SquareError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Polarity(#[from] PolarityError),
    #[error("target class equals the source class")]
    SameClass,
    #[error("vertex is not in X")]
    NotInX,
    #[error("tower must have degree 2")]
    NotQuadratic,
    #[error("q0² = {0} exceeds the exhaustive limit")]
    TooLarge(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SquareLabel {
    /// In `ψ_{kθ}(J)` on the `sign` side.
    S { k: Fe, sign: Sign },
    /// In `X_s`.
    X { s: Fe },
}

/// A vertex of `G_{q²}` as a pair of `GF(q²)` indices.
pub type Vertex = (Fe, Fe);

#[derive(Clone, Debug)]
pub struct SquareDecomposition {
    tower: TowerSpec,
    mu1: Fe,
    mu0: Fe,
}

impl SquareDecomposition {
    /// Uses the canonical quadratic tower over `base`.
    pub fn new(base: &GaloisField) -> Result<Self, SquareError> {
        Self::with_tower(TowerSpec::quadratic(base)?)
    }

    pub fn with_tower(tower: TowerSpec) -> Result<Self, SquareError> {
        let (mu1, mu0) = tower.quadratic_params().ok_or(SquareError::NotQuadratic)?;
        Ok(SquareDecomposition { tower, mu1, mu0 })
    }

    pub fn tower(&self) -> &TowerSpec {
        &self.tower
    }

    pub fn base(&self) -> &GaloisField {
        self.tower.base()
    }

    /// `GF(q²)`.
    pub fn field(&self) -> &GaloisField {
        self.tower.field()
    }

    pub fn mu(&self) -> (Fe, Fe) {
        (self.mu1, self.mu0)
    }

    fn split(&self, x: Fe) -> (Fe, Fe) {
        let c = self.tower.coeffs(x);
        (c[0], c[1])
    }

    /// `t₁ − 4s₁s₀ − 2s₁²μ₁`; zero exactly on `X`.
    fn residual(&self, (s, t): Vertex) -> (Fe, Fe, Fe) {
        let b = self.base();
        let (s0, s1) = self.split(s);
        let (_, t1) = self.split(t);
        let y1 = b.sub(b.sub(t1, b.scale(4, b.mul(s1, s0))), b.scale(2, b.mul(b.square(s1), self.mu1)));
        (s0, s1, y1)
    }

    pub fn classify(&self, v: Vertex) -> SquareLabel {
        let (_, s1, y1) = self.residual(v);
        match self.base().sign(y1) {
            Some(sign) => SquareLabel::S { k: s1, sign },
            None => SquareLabel::X { s: s1 },
        }
    }

    /// For an `S` vertex, the point of `J` that `ψ_{s₁θ}` maps onto it.
    pub fn j_preimage(&self, v: Vertex) -> Option<Vertex> {
        let (s0, s1, y1) = self.residual(v);
        if y1.is_zero() {
            return None;
        }
        let b = self.base();
        let (t0, _) = self.split(v.1);
        let z = b.sub(t0, b.scale(2, b.mul(b.square(s1), self.mu0)));
        Some((self.tower.assemble(&[s0]), self.tower.assemble(&[z, y1])))
    }

    /// `(sθ + s₂, (2s²μ₁ + 4s·s₂)θ + t₂) ∈ X_s`.
    pub fn x_vertex(&self, s: Fe, s2: Fe, t2: Fe) -> Vertex {
        let b = self.base();
        let t1 = b.add(b.scale(2, b.mul(b.square(s), self.mu1)), b.scale(4, b.mul(s, s2)));
        (self.tower.assemble(&[s2, s]), self.tower.assemble(&[t2, t1]))
    }

    /// The neighbor of `v ∈ X_s` inside `X_t`, `t ≠ s`.
    pub fn unique_neighbor_xt(&self, v: Vertex, t: Fe) -> Result<Vertex, SquareError> {
        let SquareLabel::X { s } = self.classify(v) else {
            return Err(SquareError::NotInX);
        };
        if s == t {
            return Err(SquareError::SameClass);
        }
        let b = self.base();
        let (s2, _) = self.split(v.0);
        let (t2, _) = self.split(v.1);
        let shift = b.mul(b.mul(b.half(), self.mu1), b.sub(s, t));
        let u2 = b.add(shift, s2);
        let w = b.add(b.scale(2, s2), shift);
        let v2 = b.sub(b.add(b.mul(b.square(b.add(s, t)), self.mu0), b.square(w)), t2);
        Ok(self.x_vertex(t, u2, v2))
    }

    /// Color of an `S` vertex in `0 .. 2q`.
    pub fn s_color(&self, label: SquareLabel) -> Option<u32> {
        match label {
            SquareLabel::S { k, sign } => Some(2 * k.0 as u32 + (sign == Sign::Minus) as u32),
            SquareLabel::X { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareColoring {
    pub q0: u64,
    pub mu1: u64,
    pub mu0: u64,
    pub palette_size: usize,
    pub bound: usize,
    pub s_colors: usize,
    pub x_colors: usize,
    pub x_degeneracy: usize,
    /// `[|S|, |X|]`.
    pub class_sizes: [usize; 2],
    pub proper: bool,
    #[serde(skip)]
    pub coloring: Coloring,
}

/// Vertices of `G_{q²}` in `X`, in index order, and the induced graph.
fn x_subgraph(d: &SquareDecomposition) -> Result<(Vec<usize>, Graph), SquareError> {
    let f = d.field();
    let q = f.order();
    let mut local = vec![u32::MAX; (q * q) as usize];
    let mut xs = Vec::new();
    for s in f.elements() {
        for t in f.elements() {
            if let SquareLabel::X { .. } = d.classify((s, t)) {
                let i = (s.0 * q + t.0) as usize;
                local[i] = xs.len() as u32;
                xs.push(i);
            }
        }
    }
    let g = Graph::from_neighbors(xs.len(), |u, out| {
        let v = xs[u] as u64;
        let (x1, x2) = (Fe(v / q), Fe(v % q));
        for y1 in f.elements() {
            let y2 = f.sub(f.square(f.add(x1, y1)), x2);
            let w = local[(y1.0 * q + y2.0) as usize];
            if w != u32::MAX {
                out.push(w as usize);
            }
        }
    })?;
    Ok((xs, g))
}

/// Colors `G_{q²}`; the result is indexed like `build_gq` over `GF(q²)`.
pub fn color_gq_square(d: &SquareDecomposition) -> Result<(Vec<u32>, usize, usize), SquareError> {
    let f = d.field();
    let q = f.order();
    let q0 = d.base().order() as u32;
    let mut colors = vec![u32::MAX; (q * q) as usize];
    for s in f.elements() {
        for t in f.elements() {
            if let Some(c) = d.s_color(d.classify((s, t))) {
                colors[(s.0 * q + t.0) as usize] = c;
            }
        }
    }
    let (xs, gx) = x_subgraph(d)?;
    let (order, degeneracy) = degeneracy_order(&gx);
    let xc = greedy_color(&gx, &order)?;
    for (i, &v) in xs.iter().enumerate() {
        colors[v] = 2 * q0 + xc.color(i);
    }
    Ok((colors, xc.palette_size(), degeneracy))
}

/// Full pipeline: colors `ER_{q0²}` and re-checks properness on the graph.
pub fn color_square(base: &GaloisField) -> Result<SquareColoring, SquareError> {
    let d = SquareDecomposition::new(base)?;
    let q0 = base.order();
    let (gq_colors, x_colors, x_degeneracy) = color_gq_square(&d)?;
    let q0u = q0 as u32;
    let s_colors = {
        let mut used: Vec<u32> = gq_colors.iter().copied().filter(|&c| c < 2 * q0u).collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    };
    let x_size = gq_colors.iter().filter(|&&c| c >= 2 * q0u).count();
    let coloring = extend_to_er(d.field(), &gq_colors)?;
    let er = build_er(d.field())?;
    let proper = coloring.is_proper(&er.graph);
    Ok(SquareColoring {
        q0,
        mu1: d.mu1.0,
        mu0: d.mu0.0,
        palette_size: coloring.palette_size(),
        bound: 4 * q0 as usize + 1,
        s_colors,
        x_colors,
        x_degeneracy,
        class_sizes: [gq_colors.len() - x_size, x_size],
        proper,
        coloring,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SquareClaims {
    pub q0: u64,
    pub x_size: usize,
    pub x_class_sizes: Vec<usize>,
    pub partition_ok: bool,
    pub claim1_max: usize,
    pub claim1_ok: bool,
    pub claim2_max: usize,
    pub claim2_ok: bool,
    pub unique_neighbor_ok: bool,
    pub i_plus_independent: bool,
    pub i_minus_independent: bool,
    pub translates_two_colored: bool,
    pub ok: bool,
}

/// Exhaustive checks of the structure of `X` on `G_{q0²}` built as a graph.
pub fn verify_claims_sq(base: &GaloisField) -> Result<SquareClaims, SquareError> {
    let q0 = base.order();
    if q0 * q0 > EXHAUSTIVE_LIMIT {
        return Err(SquareError::TooLarge(q0 * q0));
    }
    let d = SquareDecomposition::new(base)?;
    let f = d.field();
    let q = f.order();
    let g = build_gq(f)?.graph;
    let vertex = |i: usize| (Fe(i as u64 / q), Fe(i as u64 % q));
    let index = |(a, b): Vertex| (a.0 * q + b.0) as usize;
    let labels: Vec<SquareLabel> = (0..g.n()).map(|i| d.classify(vertex(i))).collect();
    let class_of = |i: usize| match labels[i] {
        SquareLabel::X { s } => Some(s),
        _ => None,
    };

    let mut x_class_sizes = vec![0usize; q0 as usize];
    for i in 0..g.n() {
        if let Some(s) = class_of(i) {
            x_class_sizes[s.0 as usize] += 1;
        }
    }
    let x_size: usize = x_class_sizes.iter().sum();
    // the S parametrization must reproduce every S vertex
    let partition_ok = x_size as u64 == q0 * q0 * q0
        && x_class_sizes.iter().all(|&c| c as u64 == q0 * q0)
        && (0..g.n()).all(|i| match labels[i] {
            SquareLabel::X { .. } => d.j_preimage(vertex(i)).is_none(),
            SquareLabel::S { k, .. } => {
                let j = d.j_preimage(vertex(i)).expect("S vertex");
                psi_auto(f, d.tower.assemble(&[Fe::ZERO, k]), j) == vertex(i)
            }
        });

    let mut claim1_max = 0;
    let mut claim2_max = 0;
    let mut unique_neighbor_ok = true;
    for i in 0..g.n() {
        let Some(s) = class_of(i) else { continue };
        let mut same = 0;
        let mut per_class = vec![Vec::new(); q0 as usize];
        for &w in g.neighbors(i) {
            if let Some(t) = class_of(w as usize) {
                per_class[t.0 as usize].push(w as usize);
                if t == s {
                    same += 1;
                }
            }
        }
        claim1_max = claim1_max.max(same);
        claim2_max = claim2_max.max(per_class.iter().map(Vec::len).sum());
        for t in base.elements().filter(|&t| t != s) {
            let hit = &per_class[t.0 as usize];
            let predicted = index(d.unique_neighbor_xt(vertex(i), t)?);
            unique_neighbor_ok &= hit.len() == 1 && hit[0] == predicted;
        }
    }

    // J and its translates
    let theta = d.tower.theta();
    let side = |sign: Sign| -> Vec<usize> {
        let mut out = Vec::new();
        for x in base.elements() {
            for z in base.elements() {
                for y in base.nonzero().filter(|&y| base.sign(y) == Some(sign)) {
                    out.push(index((x, d.tower.assemble(&[z, y]))));
                }
            }
        }
        out
    };
    let (plus, minus) = (side(Sign::Plus), side(Sign::Minus));
    let i_plus_independent = g.is_independent(&plus);
    let i_minus_independent = g.is_independent(&minus);
    let translates_two_colored = base.elements().all(|k| {
        let shift = f.mul(k, theta);
        let image =
            |set: &[usize]| -> Vec<usize> { set.iter().map(|&i| index(psi_auto(f, shift, vertex(i)))).collect() };
        g.is_independent(&image(&plus)) && g.is_independent(&image(&minus))
    });

    let claim1_ok = claim1_max as u64 <= q0;
    let claim2_ok = claim2_max as u64 <= 2 * q0 - 1;
    let ok = partition_ok
        && claim1_ok
        && claim2_ok
        && unique_neighbor_ok
        && i_plus_independent
        && i_minus_independent
        && translates_two_colored;
    Ok(SquareClaims {
        q0,
        x_size,
        x_class_sizes,
        partition_ok,
        claim1_max,
        claim1_ok,
        claim2_max,
        claim2_ok,
        unique_neighbor_ok,
        i_plus_independent,
        i_minus_independent,
        translates_two_colored,
        ok,
    })
}
