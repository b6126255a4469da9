//! Explicit coloring of `G_{q^t}` and `ER_{q^t}` for odd `t = 2r + 1`,
//! using the tower `GF(q^t) = GF(q)[θ]`, `θ^t = μ`.
//!
//! Vertices split into `S` (translates of `J`, two colors per translate),
//! layers `L_1 … L_{2r}` (vertices that `φ_{θ^l}` moves into `S`, colored by
//! pulling the `S` coloring back with a fresh block each), and the residue
//! `Z`, which is colored greedily.

pub mod claims;
pub mod system;

use serde::Serialize;
use thiserror::Error;

use crate::ff::{Fe, FieldError, GaloisField, Sign, TowerSpec};
use crate::graph::{degeneracy_order, greedy_color, Coloring, Graph, GraphError};
use crate::polarity::{build_er, extend_to_er, PolarityError};

pub use claims::{verify_claims_odd, verify_claims_odd_with, ClaimMode, OddClaims, DEFAULT_SAMPLES};
pub use system::{solution_bound, PairTables, QuadraticSystem, COUNT_LIMIT};

/// Default cap on `|V(G_{q^t})| = q^{2t}` for anything that walks the graph.
pub const DEFAULT_BUDGET: u64 = 150_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OddError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Polarity(#[from] PolarityError),
    #[error("x^{t} - mu is reducible over GF({q}) for every mu")]
    NoBinomial { q: u64, t: usize },
    #[error("expected {expected} coordinates, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("r must be at least 1 (got {0})")]
    BadRank(usize),
    #[error("{what}: {n} exceeds the limit {limit}")]
    TooLarge { what: &'static str, n: u64, limit: u64 },
}

/// `2z_r² + 4 Σ_{j<r} z_j z_{2r−j}` for `z` of odd length `2r + 1 ≥ 3`.
pub fn alpha(field: &GaloisField, z: &[Fe]) -> Result<Fe, OddError> {
    if z.len() < 3 || z.len().is_multiple_of(2) {
        return Err(OddError::BadLength { expected: (z.len() | 1).max(3), got: z.len() });
    }
    let r = z.len() / 2;
    let f = field;
    let cross = (0..r).fold(Fe::ZERO, |acc, j| f.add(acc, f.mul(z[j], z[2 * r - j])));
    Ok(f.add(f.scale(2, f.square(z[r])), f.scale(4, cross)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Layer {
    S,
    /// `L_l`, `1 ≤ l ≤ 2r`.
    Pullback(usize),
    Z,
}

pub type Vertex = (Fe, Fe);

#[derive(Clone, Debug)]
pub struct OddDecomposition {
    tower: TowerSpec,
    r: usize,
    mu: Fe,
    tables: PairTables,
    /// `θ^l` for `0 ≤ l ≤ 2r`.
    theta_pow: Vec<Fe>,
    /// `θ^{2l}` for `0 ≤ l ≤ 2r`.
    theta_pow2: Vec<Fe>,
    digit: Vec<u64>,
}

impl OddDecomposition {
    /// Uses the smallest `μ` making `x^{2r+1} − μ` irreducible.
    pub fn new(base: &GaloisField, r: usize) -> Result<Self, OddError> {
        if r == 0 {
            return Err(OddError::BadRank(r));
        }
        let t = 2 * r + 1;
        let tower = TowerSpec::find_binomial(base, t)?.ok_or(OddError::NoBinomial { q: base.order(), t })?;
        Self::from_tower(tower)
    }

    pub fn with_mu(base: &GaloisField, r: usize, mu: Fe) -> Result<Self, OddError> {
        if r == 0 {
            return Err(OddError::BadRank(r));
        }
        Self::from_tower(TowerSpec::binomial(base, 2 * r + 1, mu)?)
    }

    fn from_tower(tower: TowerSpec) -> Result<Self, OddError> {
        let t = tower.degree();
        let mu = tower.mu().ok_or(OddError::NoBinomial { q: tower.base().order(), t })?;
        if t.is_multiple_of(2) {
            return Err(OddError::BadLength { expected: t + 1, got: t });
        }
        let r = t / 2;
        let f = tower.field();
        let theta = tower.theta();
        let theta_pow: Vec<Fe> = (0..t as u64).map(|l| f.pow(theta, l)).collect();
        let theta_pow2 = theta_pow.iter().map(|&x| f.square(x)).collect();
        let q = tower.base().order();
        let digit = (0..t as u32).map(|i| q.pow(i)).collect();
        Ok(OddDecomposition { tables: PairTables::new(r), tower, r, mu, theta_pow, theta_pow2, digit })
    }

    pub fn tower(&self) -> &TowerSpec {
        &self.tower
    }

    pub fn base(&self) -> &GaloisField {
        self.tower.base()
    }

    /// `GF(q^t)`.
    pub fn field(&self) -> &GaloisField {
        self.tower.field()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn t(&self) -> usize {
        2 * self.r + 1
    }

    pub fn mu(&self) -> Fe {
        self.mu
    }

    pub fn tables(&self) -> &PairTables {
        &self.tables
    }

    /// `θ^l`, `0 ≤ l ≤ 2r`.
    pub fn theta_pow(&self, l: usize) -> Fe {
        self.theta_pow[l]
    }

    /// The `θ^i` coordinate of `x`.
    #[inline]
    pub fn coeff(&self, x: Fe, i: usize) -> Fe {
        Fe(x.0 / self.digit[i] % self.base().order())
    }

    pub fn coords(&self, x: Fe) -> Vec<Fe> {
        (0..self.t()).map(|i| self.coeff(x, i)).collect()
    }

    pub fn alpha_of(&self, s: Fe) -> Fe {
        alpha(self.base(), &self.coords(s)).expect("odd length")
    }

    /// `t_{2r} − α(s)`; zero exactly on `X`.
    pub fn residual(&self, (s, t): Vertex) -> Fe {
        self.base().sub(self.coeff(t, 2 * self.r), self.alpha_of(s))
    }

    pub fn in_x(&self, v: Vertex) -> bool {
        self.residual(v).is_zero()
    }

    /// Index of the translate `(s_r, …, s_{2r})` in `0 .. q^{r+1}`.
    pub fn translate_index(&self, s: Fe) -> u64 {
        s.0 / self.digit[self.r]
    }

    /// `(translate, sign)` for an `S` vertex.
    pub fn s_label(&self, v: Vertex) -> Option<(u64, Sign)> {
        let sign = self.base().sign(self.residual(v))?;
        Some((self.translate_index(v.0), sign))
    }

    /// Colors per block: `2q^{r+1}`.
    pub fn block(&self) -> u32 {
        2 * self.digit[self.r] as u32 * self.base().order() as u32
    }

    /// First color handed to `Z`.
    pub fn z_offset(&self) -> u32 {
        self.t() as u32 * self.block()
    }

    pub fn s_color(&self, v: Vertex) -> Option<u32> {
        self.s_label(v).map(|(k, sign)| 2 * k as u32 + (sign == Sign::Minus) as u32)
    }

    /// `φ_{θ^l}(s, t) = (θ^l s, θ^{2l} t)`.
    pub fn phi_theta(&self, l: usize, (s, t): Vertex) -> Vertex {
        let f = self.field();
        (f.mul(self.theta_pow[l], s), f.mul(self.theta_pow2[l], t))
    }

    pub fn layer(&self, v: Vertex) -> Layer {
        if !self.in_x(v) {
            return Layer::S;
        }
        (1..self.t()).find(|&l| !self.in_x(self.phi_theta(l, v))).map_or(Layer::Z, Layer::Pullback)
    }

    /// Color from the fixed blocks; `None` on `Z`.
    pub fn color_of(&self, v: Vertex) -> Option<u32> {
        match self.layer(v) {
            Layer::S => self.s_color(v),
            Layer::Pullback(l) => self.s_color(self.phi_theta(l, v)).map(|c| l as u32 * self.block() + c),
            Layer::Z => None,
        }
    }

    /// The only `t` with `(s, t)` possibly in `Z`, coordinate by coordinate.
    pub fn expected_t_for_z(&self, s: Fe) -> Fe {
        let b = self.base();
        let r = self.r;
        let c = self.coords(s);
        let mut t = vec![Fe::ZERO; self.t()];
        for l in 1..=r {
            let k = 2 * l - 1;
            let diag = b.scale(2, b.mul(self.mu, b.square(c[l + r])));
            t[k] = b.add(diag, b.scale(4, self.tables.pair_sum(b, self.mu, k, &c, &c)));
        }
        for l in 0..r {
            let k = 2 * l;
            let diag = b.scale(2, b.square(c[l]));
            t[k] = b.add(diag, b.scale(4, self.tables.pair_sum(b, self.mu, k, &c, &c)));
        }
        t[2 * r] = alpha(b, &c).expect("odd length");
        self.tower.assemble(&t)
    }

    pub fn system(&self) -> QuadraticSystem {
        QuadraticSystem::new(self.base(), self.r, self.mu).expect("r >= 1")
    }

    /// Left-hand sides of the homogeneous system at `z = s − x`.
    pub fn residual_system(&self, z: &[Fe]) -> Result<Vec<Fe>, OddError> {
        self.system().residuals(z)
    }

    pub fn count_system_solutions(&self) -> Result<u64, OddError> {
        self.system().count_solutions()
    }

    fn vertex_count(&self) -> u64 {
        let n = self.field().order();
        n * n
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OddColoring {
    pub q: u64,
    pub r: usize,
    pub mu: u64,
    pub palette_size: usize,
    /// Distinct colors used on `S` and the layers.
    pub layer_colors: usize,
    /// `(2r + 1) · 2q^{r+1}`.
    pub layer_bound: usize,
    /// `[|S|, |L_1|, …, |L_{2r}|]`.
    pub layer_sizes: Vec<usize>,
    pub z_size: usize,
    pub z_max_degree: usize,
    pub z_colors: usize,
    pub system_solution_count: u64,
    pub solution_bound: u64,
    /// `solution_bound + 1 + layer_bound + 1`.
    pub palette_bound: u64,
    pub bound_ok: bool,
    pub proper: bool,
    #[serde(skip)]
    pub coloring: Coloring,
}

/// Colors `G_{q^t}`; indexed like `build_gq` over `GF(q^t)`.
/// Returns the colors, the `Z` vertices and the induced graph on them.
pub fn color_gq_odd(d: &OddDecomposition) -> Result<(Vec<u32>, Vec<usize>, Graph), OddError> {
    let f = d.field();
    let q = f.order();
    let mut colors = vec![u32::MAX; (q * q) as usize];
    let mut zs = Vec::new();
    let mut local = vec![u32::MAX; (q * q) as usize];
    for s in f.elements() {
        for t in f.elements() {
            let i = (s.0 * q + t.0) as usize;
            match d.color_of((s, t)) {
                Some(c) => colors[i] = c,
                None => {
                    local[i] = zs.len() as u32;
                    zs.push(i);
                }
            }
        }
    }
    let gz = Graph::from_neighbors(zs.len(), |u, out| {
        let v = zs[u] as u64;
        let (x1, x2) = (Fe(v / q), Fe(v % q));
        for y1 in f.elements() {
            let y2 = f.sub(f.square(f.add(x1, y1)), x2);
            let w = local[(y1.0 * q + y2.0) as usize];
            if w != u32::MAX {
                out.push(w as usize);
            }
        }
    })?;
    let (order, _) = degeneracy_order(&gz);
    let zc = greedy_color(&gz, &order)?;
    for (i, &v) in zs.iter().enumerate() {
        colors[v] = d.z_offset() + zc.color(i);
    }
    Ok((colors, zs, gz))
}

/// Full pipeline over `GF(q^{2r+1})`, with properness re-checked on `ER`.
pub fn color_odd(base: &GaloisField, r: usize, budget: u64) -> Result<OddColoring, OddError> {
    let d = OddDecomposition::new(base, r)?;
    let n = d.vertex_count();
    if n > budget {
        return Err(OddError::TooLarge { what: "vertices of G_{q^t}", n, limit: budget });
    }
    let f = d.field();
    let q = f.order();
    let (gq_colors, zs, gz) = color_gq_odd(&d)?;

    let mut layer_sizes = vec![0usize; d.t()];
    for s in f.elements() {
        for t in f.elements() {
            match d.layer((s, t)) {
                Layer::S => layer_sizes[0] += 1,
                Layer::Pullback(l) => layer_sizes[l] += 1,
                Layer::Z => {}
            }
        }
    }
    let mut used: Vec<u32> = gq_colors.iter().copied().filter(|&c| c < d.z_offset()).collect();
    used.sort_unstable();
    used.dedup();
    let z_colors = {
        let mut zc: Vec<u32> = zs.iter().map(|&v| gq_colors[v]).collect();
        zc.sort_unstable();
        zc.dedup();
        zc.len()
    };

    let coloring = extend_to_er(f, &gq_colors)?;
    let er = build_er(f)?;
    let proper = coloring.is_proper(&er.graph);
    debug_assert_eq!(er.graph.n() as u64, q * q + q + 1);

    let count = d.count_system_solutions()?;
    let bound = solution_bound(base.order(), r);
    let layer_bound = d.z_offset() as usize;
    let palette_bound = bound + 1 + layer_bound as u64 + 1;
    let z_max_degree = gz.max_degree();
    let bound_ok = used.len() <= layer_bound
        && z_colors as u64 <= bound + 1
        && z_max_degree as u64 + 1 <= count
        && count <= bound
        && coloring.palette_size() as u64 <= palette_bound;
    Ok(OddColoring {
        q: base.order(),
        r,
        mu: d.mu.0,
        palette_size: coloring.palette_size(),
        layer_colors: used.len(),
        layer_bound,
        layer_sizes,
        z_size: zs.len(),
        z_max_degree,
        z_colors,
        system_solution_count: count,
        solution_bound: bound,
        palette_bound,
        bound_ok,
        proper,
        coloring,
    })
}
