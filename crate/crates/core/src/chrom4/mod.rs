//! A small subgraph of `ER_q` with no proper 3-coloring.
//!
//! Character sums, the search for five field elements whose pairwise sums
//! are nonzero squares, triangle construction, and the assembled witness.

pub mod witness;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::ff::{Fe, FieldError, GaloisField, Poly, PolyRing};
use crate::graph::GraphError;
use crate::polarity::PolarityError;

pub use witness::{
    build_witness, certify, induced_hq, literal_witness_vertices, parse_witness, replay_witness, witness_vertices,
    write_witness, ReplayReport, WitnessFile, WitnessSubgraph,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Chrom4Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Polarity(#[from] PolarityError),
    #[error("quadratic is degenerate (character sum {sum})")]
    DegenerateQuadratic { sum: i64 },
    #[error("polynomial is a constant times a square")]
    IsSquare,
    #[error("no five elements with pairwise nonzero square sums in GF({0})")]
    SearchExhausted(u64),
    #[error("witness graph is 3-colorable")]
    NotFourChromatic,
    #[error("witness file: {0}")]
    Parse(String),
}

fn chi(f: &GaloisField, a: Fe) -> i64 {
    f.quad_char(a) as i64
}

/// `Σ_c χ(a2 c² + a1 c + a0)`. Errors (carrying the sum) when `a2 = 0` or
/// the discriminant vanishes.
pub fn char_sum_quadratic(field: &GaloisField, a2: Fe, a1: Fe, a0: Fe) -> Result<i64, Chrom4Error> {
    let f = field;
    let sum = f.elements().map(|c| chi(f, f.add(f.mul(f.add(f.mul(a2, c), a1), c), a0))).sum();
    let disc = f.sub(f.square(a1), f.scale(4, f.mul(a0, a2)));
    if a2.is_zero() || disc.is_zero() {
        return Err(Chrom4Error::DegenerateQuadratic { sum });
    }
    Ok(sum)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct QuadraticSumReport {
    pub q: u64,
    pub checked: u64,
    pub degenerate: u64,
    pub violations: u64,
}

/// Every quadratic `a2 ≠ 0` over the field against `−χ(a2)`.
pub fn verify_quadratic_sums(field: &GaloisField) -> QuadraticSumReport {
    let f = field;
    let mut r = QuadraticSumReport { q: f.order(), checked: 0, degenerate: 0, violations: 0 };
    for a2 in f.nonzero() {
        for a1 in f.elements() {
            for a0 in f.elements() {
                match char_sum_quadratic(f, a2, a1, a0) {
                    Ok(sum) => {
                        r.checked += 1;
                        r.violations += (sum != -chi(f, a2)) as u64;
                    }
                    Err(_) => r.degenerate += 1,
                }
            }
        }
    }
    r
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq)]
pub struct WeilResult {
    pub sum: i64,
    pub degree: usize,
    pub bound: f64,
    pub ok: bool,
}

/// `|Σ_c χ(f(c))|` against `(d − 1)√q`, compared exactly as
/// `sum² ≤ (d − 1)² q`.
pub fn weil_check(field: &GaloisField, f: &[Fe]) -> Result<WeilResult, Chrom4Error> {
    let ring = PolyRing::new(field);
    let f = ring.trim(f.to_vec());
    let degree = ring.degree(&f).ok_or(Chrom4Error::IsSquare)?;
    if degree == 0 || ring.square_root(&f).is_some() {
        return Err(Chrom4Error::IsSquare);
    }
    let sum: i64 = field.elements().map(|c| chi(field, ring.eval(&f, c))).sum();
    let q = field.order() as i128;
    let d1 = degree as i128 - 1;
    let ok = (sum as i128).pow(2) <= d1 * d1 * q;
    Ok(WeilResult { sum, degree, bound: d1 as f64 * (q as f64).sqrt(), ok })
}

/// Random polynomial of the given degree with `gcd(f, f') = 1`.
pub fn random_squarefree<R: Rng>(field: &GaloisField, degree: usize, rng: &mut R) -> Poly {
    let ring = PolyRing::new(field);
    let q = field.order();
    loop {
        let mut f: Poly = (0..degree).map(|_| Fe(rng.gen_range(0..q))).collect();
        f.push(Fe(rng.gen_range(1..q)));
        let g = ring.gcd(&f, &ring.derivative(&f));
        if ring.degree(&g) == Some(0) {
            return f;
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WeilReport {
    pub q: u64,
    pub degree: usize,
    pub samples: usize,
    pub violations: usize,
    /// Largest `|sum| / ((d − 1)√q)` seen.
    pub max_ratio_milli: u64,
}

pub fn verify_weil<R: Rng>(
    field: &GaloisField,
    degree: usize,
    samples: usize,
    rng: &mut R,
) -> Result<WeilReport, Chrom4Error> {
    let mut violations = 0;
    let mut max_ratio: f64 = 0.0;
    for _ in 0..samples {
        let f = random_squarefree(field, degree, rng);
        let w = weil_check(field, &f)?;
        violations += (!w.ok) as usize;
        max_ratio = max_ratio.max(w.sum.unsigned_abs() as f64 / w.bound);
    }
    Ok(WeilReport {
        q: field.order(),
        degree,
        samples,
        violations,
        max_ratio_milli: (max_ratio * 1000.0).round() as u64,
    })
}

/// Five distinct nonzero elements with every pairwise sum a nonzero square,
/// and the smallest-index square root of each sum.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AlphaQuintuple {
    pub alphas: [Fe; 5],
    /// `a_{ij}` for `i < j` in lexicographic pair order.
    pub roots: [Fe; 10],
}

pub const PAIRS: [(usize, usize); 10] =
    [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

impl AlphaQuintuple {
    pub fn from_alphas(field: &GaloisField, alphas: [Fe; 5]) -> Option<Self> {
        let mut roots = [Fe::ZERO; 10];
        for (slot, &(i, j)) in PAIRS.iter().enumerate() {
            let s = field.add(alphas[i], alphas[j]);
            if field.quad_char(s) != 1 {
                return None;
            }
            roots[slot] = field.sqrt_scan(s)?;
        }
        Some(AlphaQuintuple { alphas, roots })
    }

    /// `a_{ij}` for `i ≠ j` (0-based).
    pub fn root(&self, i: usize, j: usize) -> Fe {
        let key = (i.min(j), i.max(j));
        self.roots[PAIRS.iter().position(|&p| p == key).expect("distinct indices below 5")]
    }

    pub fn is_valid(&self, field: &GaloisField) -> bool {
        let distinct = (0..5).all(|i| (i + 1..5).all(|j| self.alphas[i] != self.alphas[j]));
        distinct
            && self.alphas.iter().all(|a| !a.is_zero())
            && PAIRS.iter().all(|&(i, j)| {
                let s = field.add(self.alphas[i], self.alphas[j]);
                let a = self.root(i, j);
                field.quad_char(s) == 1 && field.square(a) == s
            })
    }
}

/// Depth-first over increasing index sequences. The first branch explored
/// is the plain greedy choice; backtracking only happens if it dead-ends.
pub fn find_alphas(field: &GaloisField) -> Result<AlphaQuintuple, Chrom4Error> {
    fn extend(f: &GaloisField, chosen: &mut Vec<Fe>, from: u64) -> bool {
        if chosen.len() == 5 {
            return true;
        }
        for b in from..f.order() {
            let beta = Fe(b);
            if chosen.iter().all(|&a| f.quad_char(f.add(a, beta)) == 1) {
                chosen.push(beta);
                if extend(f, chosen, b + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(5);
    if !extend(field, &mut chosen, 1) {
        return Err(Chrom4Error::SearchExhausted(field.order()));
    }
    let alphas: [Fe; 5] = chosen.try_into().expect("five elements");
    AlphaQuintuple::from_alphas(field, alphas).ok_or(Chrom4Error::SearchExhausted(field.order()))
}

/// The unique `(x, y, z)` with `x + y = a`, `y + z = b`, `z + x = c`.
pub fn triangle_solve(field: &GaloisField, a: Fe, b: Fe, c: Fe) -> (Fe, Fe, Fe) {
    let f = field;
    let h = f.half();
    (f.mul(h, f.sub(f.add(a, c), b)), f.mul(h, f.sub(f.add(a, b), c)), f.mul(h, f.sub(f.add(b, c), a)))
}
