//! Dense univariate polynomials over a [`GaloisField`], constant term first.
//!
//! Only what the rest of the crate needs: ring operations, division,
//! gcd, modular powering, irreducibility tests and perfect-square detection.

use super::field::{Fe, GaloisField};

pub type Poly = Vec<Fe>;

/// Polynomial arithmetic over a fixed coefficient field. All returned
/// polynomials are trimmed (no trailing zero coefficients; zero is `[]`).
#[derive(Clone, Debug)]
pub struct PolyRing<'a> {
    field: &'a GaloisField,
}

impl<'a> PolyRing<'a> {
    pub fn new(field: &'a GaloisField) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &GaloisField {
        self.field
    }

    pub fn trim(&self, mut f: Poly) -> Poly {
        while f.last().is_some_and(|c| c.is_zero()) {
            f.pop();
        }
        f
    }

    pub fn degree(&self, f: &[Fe]) -> Option<usize> {
        f.iter().rposition(|c| !c.is_zero())
    }

    pub fn x(&self) -> Poly {
        vec![Fe::ZERO, Fe::ONE]
    }

    pub fn add(&self, a: &[Fe], b: &[Fe]) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or_default();
                let y = b.get(i).copied().unwrap_or_default();
                self.field.add(x, y)
            })
            .collect();
        self.trim(out)
    }

    pub fn sub(&self, a: &[Fe], b: &[Fe]) -> Poly {
        let nb: Poly = b.iter().map(|&c| self.field.neg(c)).collect();
        self.add(a, &nb)
    }

    pub fn mul(&self, a: &[Fe], b: &[Fe]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let f = self.field;
        let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        self.trim(out)
    }

    pub fn scale(&self, c: Fe, a: &[Fe]) -> Poly {
        self.trim(a.iter().map(|&x| self.field.mul(c, x)).collect())
    }

    /// Quotient and remainder. Panics on division by the zero polynomial.
    pub fn divrem(&self, a: &[Fe], d: &[Fe]) -> (Poly, Poly) {
        let f = self.field;
        let dd = self.degree(d).expect("division by zero polynomial");
        let lead_inv = f.inv(d[dd]).expect("nonzero leading coefficient");
        let mut r = self.trim(a.to_vec());
        if r.len() <= dd {
            return (Vec::new(), r);
        }
        let mut q = vec![Fe::ZERO; r.len() - dd];
        while let Some(rd) = self.degree(&r) {
            if rd < dd {
                break;
            }
            let c = f.mul(r[rd], lead_inv);
            let shift = rd - dd;
            q[shift] = c;
            for (i, &di) in d.iter().enumerate().take(dd + 1) {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, di));
            }
            r = self.trim(r);
        }
        (self.trim(q), r)
    }

    pub fn rem(&self, a: &[Fe], d: &[Fe]) -> Poly {
        self.divrem(a, d).1
    }

    pub fn monic(&self, a: &[Fe]) -> Poly {
        match self.degree(a) {
            None => Vec::new(),
            Some(d) => {
                let inv = self.field.inv(a[d]).expect("nonzero");
                self.scale(inv, &a[..=d])
            }
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, a: &[Fe], b: &[Fe]) -> Poly {
        let mut x = self.trim(a.to_vec());
        let mut y = self.trim(b.to_vec());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    pub fn derivative(&self, a: &[Fe]) -> Poly {
        let out = a.iter().enumerate().skip(1).map(|(i, &c)| self.field.mul(self.field.int(i as i64), c)).collect();
        self.trim(out)
    }

    pub fn eval(&self, a: &[Fe], x: Fe) -> Fe {
        a.iter().rev().fold(Fe::ZERO, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// `base^e mod m`.
    pub fn powmod(&self, base: &[Fe], mut e: u64, m: &[Fe]) -> Poly {
        let mut acc = self.rem(&[Fe::ONE], m);
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
            b = self.rem(&self.mul(&b, &b), m);
            e >>= 1;
        }
        acc
    }

    /// Ben-Or style test: `f` of degree `n` is irreducible iff
    /// `gcd(f, x^{Q^i} − x) = 1` for `1 <= i <= n/2`.
    pub fn is_irreducible(&self, f: &[Fe]) -> bool {
        let n = match self.degree(f) {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let q = self.field.order();
        let x = self.x();
        let mut h = self.rem(&x, f);
        for _ in 0..n / 2 {
            h = self.powmod(&h, q, f);
            let g = self.gcd(f, &self.sub(&h, &x));
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

    /// Trial division by every monic polynomial of degree `1..=n/2`.
    pub fn is_irreducible_brute(&self, f: &[Fe]) -> bool {
        let n = match self.degree(f) {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let q = self.field.order();
        for d in 1..=n / 2 {
            let count = q.pow(d as u32);
            for low in 0..count {
                let mut cand: Poly = Vec::with_capacity(d + 1);
                let mut k = low;
                for _ in 0..d {
                    cand.push(Fe(k % q));
                    k /= q;
                }
                cand.push(Fe::ONE);
                if self.rem(f, &cand).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// If `f = c·g²` for a constant `c` and a monic `g`, returns `(c, g)`.
    pub fn square_root(&self, f: &[Fe]) -> Option<(Fe, Poly)> {
        let fld = self.field;
        let n = self.degree(f)?;
        if n % 2 == 1 {
            return None;
        }
        let c = f[n];
        let m = self.monic(f);
        let d = n / 2;
        // g = x^d + g_{d-1} x^{d-1} + ... ; match coefficients of m from the top.
        let mut g = vec![Fe::ZERO; d + 1];
        g[d] = Fe::ONE;
        let two_inv = fld.half();
        for k in (0..d).rev() {
            // coefficient of x^{d+k} in g² is 2 g_k + Σ_{i+j=d+k, k<i,j<=d... } g_i g_j
            let mut acc = Fe::ZERO;
            for i in (k + 1)..=d {
                let j = d + k - i;
                if j > k && j <= d {
                    acc = fld.add(acc, fld.mul(g[i], g[j]));
                }
            }
            g[k] = fld.mul(two_inv, fld.sub(m[d + k], acc));
        }
        if self.mul(&g, &g) == m {
            Some((c, g))
        } else {
            None
        }
    }
}
