//! Index tables for products in `GF(q)[θ]/(θ^{2r+1} − μ)` and the
//! homogeneous quadratic system built from them.

use crate::ff::{Fe, GaloisField};

use super::OddError;

/// Exhaustive counting is refused above this many tuples.
pub const COUNT_LIMIT: u64 = 1_000_000;

/// `U_k = {{i, j} : i ≠ j, i + j ≡ k (mod 2r + 1)}` for `0 ≤ k ≤ 2r`,
/// each pair stored as `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTables {
    r: usize,
    u: Vec<Vec<(usize, usize)>>,
}

impl PairTables {
    pub fn new(r: usize) -> Self {
        let t = 2 * r + 1;
        let mut u = vec![Vec::new(); t];
        for i in 0..t {
            for j in (i + 1)..t {
                u[(i + j) % t].push((i, j));
            }
        }
        PairTables { r, u }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn pairs(&self, k: usize) -> &[(usize, usize)] {
        &self.u[k]
    }

    /// Whether the pair picks up a factor `μ` (its index sum wraps).
    #[inline]
    pub fn wraps(&self, i: usize, j: usize) -> bool {
        i + j > 2 * self.r
    }

    /// `Σ_{{i,j} ∈ U_k} μ_{ij} a_i b_j`, symmetrized: for `a = b` this is
    /// the plain pair sum.
    pub fn pair_sum(&self, field: &GaloisField, mu: Fe, k: usize, a: &[Fe], b: &[Fe]) -> Fe {
        let f = field;
        let mut plain = Fe::ZERO;
        let mut wrapped = Fe::ZERO;
        for &(i, j) in &self.u[k] {
            let term = if std::ptr::eq(a, b) {
                f.mul(a[i], a[j])
            } else {
                f.mul(f.add(f.mul(a[i], b[j]), f.mul(a[j], b[i])), f.half())
            };
            if self.wraps(i, j) {
                wrapped = f.add(wrapped, term);
            } else {
                plain = f.add(plain, term);
            }
        }
        f.add(plain, f.mul(mu, wrapped))
    }

    /// The `θ^l` coefficient of `w²` written out through the tables.
    pub fn square_coeff(&self, field: &GaloisField, mu: Fe, l: usize, w: &[Fe]) -> Fe {
        let f = field;
        let diag =
            if l.is_multiple_of(2) { f.square(w[l / 2]) } else { f.mul(mu, f.square(w[self.r + l.div_ceil(2)])) };
        f.add(diag, f.scale(2, self.pair_sum(f, mu, l, w, w)))
    }
}

/// The system `μ z_{l+r}² + 2 Σ_{U_{2l−1}} μ_{ij} z_i z_j = 0` (`1 ≤ l ≤ r`),
/// `z_l² + 2 Σ_{U_{2l}} μ_{ij} z_i z_j = 0` (`0 ≤ l ≤ r`) over `GF(q)`.
///
/// `μ` is arbitrary here; the binomial need not be irreducible.
#[derive(Clone, Debug)]
pub struct QuadraticSystem {
    field: GaloisField,
    mu: Fe,
    tables: PairTables,
}

impl QuadraticSystem {
    pub fn new(field: &GaloisField, r: usize, mu: Fe) -> Result<Self, OddError> {
        if r == 0 {
            return Err(OddError::BadRank(r));
        }
        Ok(QuadraticSystem { field: field.clone(), mu, tables: PairTables::new(r) })
    }

    pub fn r(&self) -> usize {
        self.tables.r
    }

    pub fn mu(&self) -> Fe {
        self.mu
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn tables(&self) -> &PairTables {
        &self.tables
    }

    /// Left-hand sides indexed by the coefficient they come from: entry
    /// `2l − 1` is the odd equation for `l`, entry `2l` the even one.
    pub fn residuals(&self, z: &[Fe]) -> Result<Vec<Fe>, OddError> {
        let t = 2 * self.r() + 1;
        if z.len() != t {
            return Err(OddError::BadLength { expected: t, got: z.len() });
        }
        Ok((0..t).map(|k| self.tables.square_coeff(&self.field, self.mu, k, z)).collect())
    }

    /// Number of solutions in `GF(q)^{2r+1}`, by enumeration.
    pub fn count_solutions(&self) -> Result<u64, OddError> {
        let t = 2 * self.r() + 1;
        let q = self.field.order();
        let total = crate::ff::nt::checked_pow(q, t as u32).filter(|&n| n <= COUNT_LIMIT);
        let total = total.ok_or(OddError::TooLarge { what: "system enumeration", n: u64::MAX, limit: COUNT_LIMIT })?;
        let mut z = vec![Fe::ZERO; t];
        let mut count = 0;
        for idx in 0..total {
            let mut k = idx;
            for c in z.iter_mut() {
                *c = Fe(k % q);
                k /= q;
            }
            if (0..t).all(|l| self.tables.square_coeff(&self.field, self.mu, l, &z).is_zero()) {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// `⌊(2r+5)/3 · q^{4r/3 + 1}⌋`, exactly: the largest `k` with
/// `27k³ ≤ (2r+5)³ q^{4r+3}`.
pub fn solution_bound(q: u64, r: usize) -> u64 {
    let a = (2 * r as u128 + 5).pow(3) * (q as u128).pow(4 * r as u32 + 3);
    let (mut lo, mut hi) = (0u128, 1u128);
    while 27 * hi * hi * hi <= a {
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if 27 * mid * mid * mid <= a {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::PolyRing;

    #[test]
    fn tables_r1_r2() {
        let t = PairTables::new(1);
        assert_eq!(t.pairs(0), &[(1, 2)]);
        assert_eq!(t.pairs(1), &[(0, 1)]);
        assert_eq!(t.pairs(2), &[(0, 2)]);
        for r in 1..5 {
            let t = PairTables::new(r);
            let m = 2 * r + 1;
            for k in 0..m {
                for &(i, j) in t.pairs(k) {
                    assert!(i < j && (i + j) % m == k && (1..=4 * r - 1).contains(&(i + j)));
                }
            }
            let total: usize = (0..m).map(|k| t.pairs(k).len()).sum();
            assert_eq!(total, m * (m - 1) / 2);
        }
    }

    #[test]
    fn bound_values() {
        assert_eq!(solution_bound(3, 1), 30);
        assert_eq!(solution_bound(5, 1), 99);
        assert_eq!(solution_bound(7, 1), 218);
        // float cross-check away from integer boundaries
        for (q, r) in [(3u64, 2usize), (11, 1), (11, 2), (13, 1)] {
            let x = (2.0 * r as f64 + 5.0) / 3.0 * (q as f64).powf(4.0 * r as f64 / 3.0 + 1.0);
            assert_eq!(solution_bound(q, r), x.floor() as u64, "q={q} r={r}");
        }
    }

    #[test]
    fn homogeneity() {
        let f = GaloisField::prime(7).unwrap();
        let sys = QuadraticSystem::new(&f, 1, Fe(2)).unwrap();
        let z = [Fe(3), Fe(1), Fe(5)];
        let base = sys.residuals(&z).unwrap();
        for lam in f.elements() {
            let scaled: Vec<Fe> = z.iter().map(|&c| f.mul(lam, c)).collect();
            let want: Vec<Fe> = base.iter().map(|&c| f.mul(f.square(lam), c)).collect();
            assert_eq!(sys.residuals(&scaled).unwrap(), want);
        }
        assert_eq!(sys.residuals(&[Fe(0); 3]).unwrap(), vec![Fe(0); 3]);
        assert_eq!(sys.residuals(&[Fe(0); 2]), Err(OddError::BadLength { expected: 3, got: 2 }));
    }

    /// Counts `z` with `z² ≡ 0 (mod θ^t − μ)` by polynomial arithmetic.
    fn square_zero_count(q: u64, t: usize, mu: Fe) -> u64 {
        let f = GaloisField::prime(q).unwrap();
        let ring = PolyRing::new(&f);
        let mut m = vec![Fe::ZERO; t + 1];
        m[0] = f.neg(mu);
        m[t] = Fe::ONE;
        let mut count = 0;
        for idx in 0..q.pow(t as u32) {
            let z: Vec<Fe> = (0..t).map(|i| Fe(idx / q.pow(i as u32) % q)).collect();
            if ring.rem(&ring.mul(&z, &z), &m).is_empty() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn counts_match_ring_oracle() {
        for q in [3u64, 5, 7] {
            let f = GaloisField::prime(q).unwrap();
            for mu in f.nonzero() {
                let sys = QuadraticSystem::new(&f, 1, mu).unwrap();
                assert_eq!(sys.count_solutions().unwrap(), square_zero_count(q, 3, mu), "q={q} mu={mu}");
            }
        }
    }

    #[test]
    fn too_large_refused() {
        let f = GaloisField::prime(13).unwrap();
        let sys = QuadraticSystem::new(&f, 3, Fe(2)).unwrap();
        assert!(matches!(sys.count_solutions(), Err(OddError::TooLarge { .. })));
    }
}
