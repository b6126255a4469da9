//! The orthogonal polarity graph `ER_q` on `PG(2, q)`, its affine part
//! `G_q` on `GF(q)²`, the cone `H_q` over `G_q`, and the explicit
//! isomorphism `H_q → ER_q`.
//!
//! Vertex numbering is fixed and shared by every module:
//!
//! * `ER_q`: `(0,0,1) ↦ 0`, `(0,1,b) ↦ 1 + b`, `(1,a,b) ↦ 1 + q + aq + b`.
//! * `G_q`: `(x1, x2) ↦ x1·q + x2`.
//! * `H_q`: `G_q` first, then `z_1 … z_q` at `q² + i − 1`, then the apex at `q² + q`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::ff::{Fe, FieldError, GaloisField};
use crate::graph::{verify_vertex_map, Coloring, Graph, GraphError, MapMode, VertexMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolarityError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{0} is not a vertex of H_q")]
    NotHVertex(String),
    #[error("scaling by zero is not an automorphism")]
    ZeroScale,
    #[error("cannot parse vertex name {0:?}")]
    BadName(String),
    #[error("coloring covers {got} vertices, G_q has {want}")]
    ColoringLength { got: usize, want: usize },
}

/// A point of `PG(2, q)` with first nonzero coordinate equal to one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProjectivePoint(pub [Fe; 3]);

impl ProjectivePoint {
    /// Canonical representative of the span of `v`, `None` for the zero vector.
    pub fn normalize(field: &GaloisField, v: [Fe; 3]) -> Option<Self> {
        let lead = v.iter().copied().find(|c| !c.is_zero())?;
        let inv = field.inv(lead).ok()?;
        Some(ProjectivePoint(v.map(|c| field.mul(c, inv))))
    }

    pub fn coords(&self) -> [Fe; 3] {
        self.0
    }

    pub fn index(&self, q: u64) -> usize {
        let [x0, x1, x2] = self.0.map(|c| c.0);
        let idx = if x0 == 1 {
            1 + q + x1 * q + x2
        } else if x1 == 1 {
            1 + x2
        } else {
            0
        };
        idx as usize
    }

    pub fn from_index(q: u64, idx: usize) -> Self {
        let i = idx as u64;
        let c = if i == 0 {
            [0, 0, 1]
        } else if i <= q {
            [0, 1, i - 1]
        } else {
            let r = i - 1 - q;
            [1, r / q, r % q]
        };
        ProjectivePoint(c.map(Fe))
    }

    /// `⟨u, v⟩ = u2·v0 + u0·v2 − u1·v1`; adjacency in `ER_q` is `⟨u, v⟩ = 0`.
    pub fn form(field: &GaloisField, u: [Fe; 3], v: [Fe; 3]) -> Fe {
        let f = field;
        f.sub(f.add(f.mul(u[2], v[0]), f.mul(u[0], v[2])), f.mul(u[1], v[1]))
    }
}

/// A vertex of one of the graphs in this module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PolarityVertex {
    Affine(Fe, Fe),
    /// `z_i`, `1 ≤ i ≤ q`.
    Coset(usize),
    Apex,
    Point(ProjectivePoint),
}

impl fmt::Display for PolarityVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolarityVertex::Affine(a, b) => write!(f, "a:{},{}", a.0, b.0),
            PolarityVertex::Coset(i) => write!(f, "z:{i}"),
            PolarityVertex::Apex => write!(f, "y"),
            PolarityVertex::Point(p) => write!(f, "p:{},{},{}", p.0[0].0, p.0[1].0, p.0[2].0),
        }
    }
}

impl FromStr for PolarityVertex {
    type Err = PolarityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PolarityError::BadName(s.to_string());
        let nums = |t: &str| -> Result<Vec<u64>, PolarityError> {
            t.split(',').map(|x| x.trim().parse::<u64>().map_err(|_| bad())).collect()
        };
        if s == "y" {
            return Ok(PolarityVertex::Apex);
        }
        let (tag, rest) = s.split_once(':').ok_or_else(bad)?;
        match tag {
            "a" => match nums(rest)?[..] {
                [a, b] => Ok(PolarityVertex::Affine(Fe(a), Fe(b))),
                _ => Err(bad()),
            },
            "z" => {
                let i: usize = rest.parse().map_err(|_| bad())?;
                if i == 0 {
                    return Err(bad());
                }
                Ok(PolarityVertex::Coset(i))
            }
            "p" => match nums(rest)?[..] {
                [a, b, c] => Ok(PolarityVertex::Point(ProjectivePoint([Fe(a), Fe(b), Fe(c)]))),
                _ => Err(bad()),
            },
            _ => Err(bad()),
        }
    }
}

/// The enumeration `b_1, …, b_q` of the field: index order with zero moved
/// to the last slot.
pub fn b_enumeration(field: &GaloisField) -> Vec<Fe> {
    let mut b: Vec<Fe> = field.elements().collect();
    let last = b.len() - 1;
    b.swap(0, last);
    b
}

/// Position `i` (1-based) with `b_i = alpha`.
pub fn coset_index(field: &GaloisField, alpha: Fe) -> usize {
    let q = field.order();
    match alpha.0 {
        0 => q as usize,
        a if a == q - 1 => 1,
        a => a as usize + 1,
    }
}

/// A constructed graph together with its field.
#[derive(Clone, Debug)]
pub struct PolarityGraph {
    pub field: GaloisField,
    pub graph: Graph,
    pub kind: GraphKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Er,
    Gq,
    Hq,
}

impl PolarityGraph {
    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn vertex(&self, idx: usize) -> PolarityVertex {
        let q = self.q();
        match self.kind {
            GraphKind::Er => PolarityVertex::Point(ProjectivePoint::from_index(q, idx)),
            GraphKind::Gq | GraphKind::Hq => h_vertex(q, idx),
        }
    }

    pub fn index_of(&self, v: &PolarityVertex) -> Option<usize> {
        let q = self.q();
        match (self.kind, v) {
            (GraphKind::Er, PolarityVertex::Point(p)) => {
                let ok = ProjectivePoint::normalize(&self.field, p.0) == Some(*p);
                ok.then(|| p.index(q))
            }
            (GraphKind::Gq, PolarityVertex::Affine(..)) | (GraphKind::Hq, _) => h_index(q, v),
            _ => None,
        }
    }

    /// Vertices carrying a self-relation (absolute points for `ER_q`).
    pub fn absolute(&self) -> &[u32] {
        self.graph.loops()
    }
}

pub fn h_vertex(q: u64, idx: usize) -> PolarityVertex {
    let (q, i) = (q as usize, idx);
    if i < q * q {
        PolarityVertex::Affine(Fe((i / q) as u64), Fe((i % q) as u64))
    } else if i < q * q + q {
        PolarityVertex::Coset(i - q * q + 1)
    } else {
        PolarityVertex::Apex
    }
}

pub fn h_index(q: u64, v: &PolarityVertex) -> Option<usize> {
    let qq = q as usize;
    match *v {
        PolarityVertex::Affine(a, b) if a.0 < q && b.0 < q => Some(a.0 as usize * qq + b.0 as usize),
        PolarityVertex::Coset(i) if (1..=qq).contains(&i) => Some(qq * qq + i - 1),
        PolarityVertex::Apex => Some(qq * qq + qq),
        _ => None,
    }
}

/// Appends the `q + 1` points on the line `a·y0 + b·y1 + c·y2 = 0`.
fn points_on_line(field: &GaloisField, [a, b, c]: [Fe; 3], out: &mut Vec<usize>) {
    let f = field;
    let q = f.order();
    let idx = |p: [Fe; 3]| ProjectivePoint(p).index(q);
    if c.is_zero() {
        out.push(0);
        if b.is_zero() {
            for y2 in f.elements() {
                out.push(idx([Fe::ZERO, Fe::ONE, y2]));
            }
        } else {
            let y1 = f.neg(f.div(a, b).expect("b != 0"));
            for y2 in f.elements() {
                out.push(idx([Fe::ONE, y1, y2]));
            }
        }
    } else {
        let cinv = f.inv(c).expect("c != 0");
        out.push(idx([Fe::ZERO, Fe::ONE, f.neg(f.mul(b, cinv))]));
        for y1 in f.elements() {
            let y2 = f.neg(f.mul(f.add(a, f.mul(b, y1)), cinv));
            out.push(idx([Fe::ONE, y1, y2]));
        }
    }
}

/// `ER_q`: normalized points, `u ~ v` iff `u2v0 + u0v2 = u1v1`.
pub fn build_er(field: &GaloisField) -> Result<PolarityGraph, PolarityError> {
    let q = field.order();
    let n = (q * q + q + 1) as usize;
    let graph = Graph::from_neighbors(n, |u, out| {
        let [x0, x1, x2] = ProjectivePoint::from_index(q, u).0;
        points_on_line(field, [x2, field.neg(x1), x0], out);
    })?;
    Ok(PolarityGraph { field: field.clone(), graph, kind: GraphKind::Er })
}

#[inline]
fn gq_fill(field: &GaloisField, u: usize, out: &mut Vec<usize>) {
    let f = field;
    let q = f.order();
    let (x1, x2) = (Fe(u as u64 / q), Fe(u as u64 % q));
    for y1 in f.elements() {
        let y2 = f.sub(f.square(f.add(x1, y1)), x2);
        out.push((y1.0 * q + y2.0) as usize);
    }
}

/// `G_q` on `GF(q)²`, `u ~ v` iff `(u1 + v1)² = u2 + v2`. The loop set is
/// `{(x, 2x²)}`.
pub fn build_gq(field: &GaloisField) -> Result<PolarityGraph, PolarityError> {
    let q = field.order() as usize;
    let graph = Graph::from_neighbors(q * q, |u, out| gq_fill(field, u, out))?;
    Ok(PolarityGraph { field: field.clone(), graph, kind: GraphKind::Gq })
}

/// `H_q`: `G_q` plus `z_i` joined to the coset `{(b_i, t)}` and the apex
/// joined to every `z_i`. Loops of `G_q` are kept out-of-band.
pub fn build_hq(field: &GaloisField) -> Result<PolarityGraph, PolarityError> {
    let qq = field.order();
    let q = qq as usize;
    let b = b_enumeration(field);
    let apex = q * q + q;
    let graph = Graph::from_neighbors(q * q + q + 1, |u, out| {
        if u < q * q {
            gq_fill(field, u, out);
            let i = coset_index(field, Fe(u as u64 / qq));
            out.push(q * q + i - 1);
        } else if u < apex {
            let bi = b[u - q * q].0 as usize;
            out.extend((0..q).map(|t| bi * q + t));
            out.push(apex);
        } else {
            out.extend(q * q..apex);
        }
    })?;
    Ok(PolarityGraph { field: field.clone(), graph, kind: GraphKind::Hq })
}

/// Adjacency in `H_q` decided from the construction rules alone.
pub fn hq_adjacent(field: &GaloisField, u: &PolarityVertex, v: &PolarityVertex) -> bool {
    use PolarityVertex::*;
    let f = field;
    let b = |i: usize| i.checked_sub(1).and_then(|j| b_enumeration(f).get(j).copied());
    match (*u, *v) {
        (Affine(x1, x2), Affine(y1, y2)) => (x1, x2) != (y1, y2) && f.square(f.add(x1, y1)) == f.add(x2, y2),
        (Affine(x1, _), Coset(i)) | (Coset(i), Affine(x1, _)) => b(i) == Some(x1),
        (Coset(_), Apex) | (Apex, Coset(_)) => true,
        _ => false,
    }
}

/// The isomorphism `H_q → ER_q`.
pub fn phi(field: &GaloisField, v: &PolarityVertex) -> Result<ProjectivePoint, PolarityError> {
    let f = field;
    let q = f.order();
    let half = f.half();
    let p = match *v {
        PolarityVertex::Affine(a, b) if a.0 < q && b.0 < q => {
            if a.is_zero() {
                [Fe::ONE, Fe::ZERO, f.mul(half, b)]
            } else {
                [Fe::ONE, a, f.mul(half, f.sub(b, f.square(a)))]
            }
        }
        PolarityVertex::Apex => [Fe::ZERO, Fe::ZERO, Fe::ONE],
        PolarityVertex::Coset(i) if (1..=q as usize).contains(&i) => [Fe::ZERO, Fe::ONE, b_enumeration(f)[i - 1]],
        other => return Err(PolarityError::NotHVertex(other.to_string())),
    };
    Ok(ProjectivePoint(p))
}

/// `φ` as a map from `H_q` indices to `ER_q` indices.
pub fn phi_map(field: &GaloisField) -> VertexMap {
    let q = field.order();
    let n = (q * q + q + 1) as usize;
    VertexMap::new((0..n).map(|i| phi(field, &h_vertex(q, i)).expect("H_q vertex").index(q)).collect())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub q: u64,
    pub isomorphism: bool,
    pub induced_gq: bool,
    pub case1_neighborhoods: bool,
    pub apex_neighborhood: bool,
    pub ok: bool,
}

/// Builds `H_q`, `G_q` and `ER_q` and checks that `φ` is an isomorphism
/// `H_q → ER_q` restricting to an induced embedding of `G_q`.
pub fn verify_embedding(field: &GaloisField) -> Result<EmbeddingReport, PolarityError> {
    let f = field;
    let q = f.order();
    let er = build_er(f)?;
    let hq = build_hq(f)?;
    let gq = build_gq(f)?;
    let map = phi_map(f);
    let isomorphism = verify_vertex_map(&hq.graph, &er.graph, &map, MapMode::Isomorphism)?;
    let affine = VertexMap::new(map.forward[..(q * q) as usize].to_vec());
    let induced_gq = verify_vertex_map(&gq.graph, &er.graph, &affine, MapMode::InducedEmbedding)?;

    // N((1, 0, b/2)) = {(0,1,0)} ∪ {(1, x, −b/2)}
    let half = f.half();
    let case1_neighborhoods = f.elements().all(|b| {
        let p = ProjectivePoint([Fe::ONE, Fe::ZERO, f.mul(half, b)]).index(q);
        let mut expect: Vec<u32> = vec![ProjectivePoint([Fe::ZERO, Fe::ONE, Fe::ZERO]).index(q) as u32];
        let c = f.neg(f.mul(half, b));
        expect.extend(f.elements().map(|x| ProjectivePoint([Fe::ONE, x, c]).index(q) as u32));
        expect.sort_unstable();
        expect.retain(|&v| v as usize != p);
        er.graph.neighbors(p) == expect.as_slice()
    });
    let apex = (q * q + q) as usize;
    let mut img: Vec<u32> = hq.graph.neighbors(apex).iter().map(|&v| map.forward[v as usize] as u32).collect();
    img.sort_unstable();
    let apex_neighborhood = er.graph.neighbors(map.forward[apex]) == img.as_slice();
    let ok = isomorphism && induced_gq && case1_neighborhoods && apex_neighborhood;
    Ok(EmbeddingReport { q, isomorphism, induced_gq, case1_neighborhoods, apex_neighborhood, ok })
}

/// `ψ_k(x, y) = (x + k, y + 4kx + 2k²)`.
pub fn psi_auto(field: &GaloisField, k: Fe, (x, y): (Fe, Fe)) -> (Fe, Fe) {
    let f = field;
    let kx4 = f.scale(4, f.mul(k, x));
    (f.add(x, k), f.add(f.add(y, kx4), f.scale(2, f.square(k))))
}

/// `φ_k(x, y) = (kx, k²y)`.
pub fn phi_auto(field: &GaloisField, k: Fe, (x, y): (Fe, Fe)) -> Result<(Fe, Fe), PolarityError> {
    if k.is_zero() {
        return Err(PolarityError::ZeroScale);
    }
    Ok((field.mul(k, x), field.mul(field.square(k), y)))
}

/// Lifts a proper coloring of `G_q` (indexed as above) to `ER_q`: one
/// fresh color for all `z_i`, and the apex reuses the smallest color of
/// `G_q`. Returned in `ER_q` numbering.
pub fn extend_to_er(field: &GaloisField, gq_colors: &[u32]) -> Result<Coloring, PolarityError> {
    let q = field.order() as usize;
    if gq_colors.len() != q * q {
        return Err(PolarityError::ColoringLength { got: gq_colors.len(), want: q * q });
    }
    let fresh = gq_colors.iter().copied().max().map_or(0, |c| c + 1);
    let apex = gq_colors.iter().copied().min().unwrap_or(0);
    let map = phi_map(field);
    let mut er = vec![0u32; q * q + q + 1];
    for (h, &e) in map.forward.iter().enumerate() {
        er[e] = match h {
            h if h < q * q => gq_colors[h],
            h if h < q * q + q => fresh,
            _ => apex,
        };
    }
    Ok(Coloring::new(er))
}
