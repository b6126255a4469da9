use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::nt;
use super::poly::PolyRing;
use super::spec::FieldSpec;
use super::FieldError;

/// Fields up to this order get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 21;
/// Fields up to this order answer the quadratic character from a table.
const CHI_TABLE_LIMIT: u64 = 10_000;

/// A field element, identified by its canonical index.
///
/// The index is the base-`Q` evaluation of the coefficient vector over the
/// ground field, where `Q` is the ground order. For an absolute field
/// `GF(p)[x]/(m)` that is the base-`p` evaluation of the residues. Integers
/// `0..p` are therefore the prime subfield at every tower level.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn index(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Half of the partition `GF(q)* = GF(q)^+ ∪ GF(q)^-` with `a ∈ GF(q)^+ ⇔ -a ∈ GF(q)^-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

struct Tables {
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<u32>,
    /// `log[g^i] = i`; `log[0]` is unused.
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    order: u64,
    ground_order: u64,
    degree: usize,
    ground: Option<GaloisField>,
    /// Monic modulus over the ground field, constant term first.
    modulus: Vec<Fe>,
    tables: Option<Tables>,
    chi: Option<Vec<i8>>,
    descriptor: String,
}

/// A finite field of odd characteristic, either `GF(p)[x]/(m)` or an
/// extension `K[θ]/(m)` of another `GaloisField` `K`.
///
/// Cloning is cheap. Elements are plain [`Fe`] indices; all arithmetic goes
/// through the field, which makes mixing fields the caller's responsibility.
/// [`super::FieldElement`] is the checked alternative.
#[derive(Clone)]
pub struct GaloisField(Arc<Inner>);

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField").field("order", &self.0.order).field("descriptor", &self.0.descriptor).finish()
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.descriptor == other.0.descriptor
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    /// The prime field `GF(p)`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if !nt::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        Ok(Self::assemble(p, p, None, vec![Fe(0), Fe(1)], format!("{p}^1/0,1")))
    }

    /// `GF(p^n)` with the canonical (lowest lexicographic) modulus.
    pub fn new(q: u64) -> Result<Self, FieldError> {
        let (p, n) = nt::prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::from_spec(&FieldSpec::canonical(p, n)?)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Self, FieldError> {
        if spec.n() == 1 {
            let prime = Self::prime(spec.p())?;
            if spec.modulus() == [0, 1] {
                return Ok(prime);
            }
            // x + c: same arithmetic as GF(p), different presentation.
            return Ok(Self::assemble(spec.p(), spec.p(), None, vec![Fe(0), Fe(1)], spec.to_string()));
        }
        let ground = Self::prime(spec.p())?;
        let modulus = spec.modulus().iter().map(|&c| Fe(c)).collect();
        Ok(Self::assemble(spec.p(), spec.p(), Some(ground), modulus, spec.to_string()))
    }

    /// The extension `ground[θ]/(modulus)`. The modulus must be monic and
    /// irreducible over `ground`; both are checked.
    pub fn extension(ground: &GaloisField, modulus: Vec<Fe>) -> Result<Self, FieldError> {
        let ring = PolyRing::new(ground);
        let m = ring.trim(modulus);
        let deg = match ring.degree(&m) {
            Some(d) if d >= 1 => d,
            _ => return Err(FieldError::BadModulus("degree must be at least 1".into())),
        };
        if m[deg] != Fe::ONE {
            return Err(FieldError::BadModulus("modulus is not monic".into()));
        }
        if m.iter().any(|c| c.0 >= ground.order()) {
            return Err(FieldError::BadModulus("coefficient out of range".into()));
        }
        if !ring.is_irreducible(&m) {
            return Err(FieldError::NotIrreducible);
        }
        ground_order_pow(ground.order(), deg)?;
        let descriptor =
            format!("{}/{}", ground.descriptor(), m.iter().map(|c| c.0.to_string()).collect::<Vec<_>>().join(","));
        Ok(Self::assemble(ground.p(), ground.order(), Some(ground.clone()), m, descriptor))
    }

    /// Parses a layered descriptor such as `7`, `3^2`, `3^2/1,0,1` or
    /// `7^1/0,1/5,0,0,1`; the inverse of [`GaloisField::descriptor`].
    pub fn from_descriptor(text: &str) -> Result<Self, FieldError> {
        let text = text.trim();
        let mut parts = text.split('/');
        let head = parts.next().unwrap_or_default();
        let rest: Vec<&str> = parts.collect();
        let mut field = match rest.first() {
            None => {
                let spec: FieldSpec = head.parse()?;
                return Self::from_spec(&spec);
            }
            Some(first) => Self::from_spec(&format!("{head}/{first}").parse()?)?,
        };
        for layer in &rest[1..] {
            let coeffs = parse_coeff_list(layer)?;
            field = Self::extension(&field, coeffs.into_iter().map(Fe).collect())?;
        }
        Ok(field)
    }

    fn assemble(p: u64, ground_order: u64, ground: Option<GaloisField>, modulus: Vec<Fe>, descriptor: String) -> Self {
        let degree = modulus.len() - 1;
        let order = ground_order.pow(degree as u32);
        let mut inner = Inner { p, order, ground_order, degree, ground, modulus, tables: None, chi: None, descriptor };
        let bare = GaloisField(Arc::new(Inner { tables: None, chi: None, ..clone_inner(&inner) }));
        if order <= TABLE_LIMIT {
            inner.tables = Some(bare.build_tables());
        }
        if order <= CHI_TABLE_LIMIT {
            let mut chi = vec![-1i8; order as usize];
            chi[0] = 0;
            for x in 1..order {
                let sq = bare.slow_mul(Fe(x), Fe(x));
                chi[sq.0 as usize] = 1;
            }
            inner.chi = Some(chi);
        }
        GaloisField(Arc::new(inner))
    }

    fn build_tables(&self) -> Tables {
        let q = self.order();
        let primes = nt::prime_factors(q - 1);
        let generator = (1..q)
            .map(Fe)
            .find(|&g| primes.iter().all(|&l| self.slow_pow(g, (q - 1) / l) != Fe::ONE))
            .expect("multiplicative group of a finite field is cyclic");
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n];
        let mut log = vec![0u32; q as usize];
        let mut cur = Fe::ONE;
        for i in 0..n {
            exp[i] = cur.0 as u32;
            exp[i + n] = cur.0 as u32;
            log[cur.0 as usize] = i as u32;
            cur = self.slow_mul(cur, generator);
        }
        debug_assert_eq!(cur, Fe::ONE);
        Tables { exp, log }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.0.p
    }

    /// Field order `q`.
    #[inline]
    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Degree over the ground field (the prime field for absolute fields).
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn ground_order(&self) -> u64 {
        self.0.ground_order
    }

    /// The field this one extends; `None` when the ground is the prime field.
    pub fn ground(&self) -> Option<&GaloisField> {
        self.0.ground.as_ref()
    }

    pub fn modulus(&self) -> &[Fe] {
        &self.0.modulus
    }

    pub fn descriptor(&self) -> &str {
        &self.0.descriptor
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order()).map(Fe)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Fe> {
        (1..self.order()).map(Fe)
    }

    /// The image of an integer in the prime subfield.
    #[inline]
    pub fn int(&self, c: i64) -> Fe {
        Fe(c.rem_euclid(self.0.p as i64) as u64)
    }

    /// `2^{-1}`; odd characteristic makes this always defined.
    pub fn half(&self) -> Fe {
        self.int((self.0.p as i64 + 1) / 2)
    }

    #[inline]
    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.0.order
    }

    // ground-coefficient arithmetic

    #[inline]
    fn g_add(&self, a: u64, b: u64) -> u64 {
        match &self.0.ground {
            None => {
                let s = a + b;
                if s >= self.0.p {
                    s - self.0.p
                } else {
                    s
                }
            }
            Some(g) => g.add(Fe(a), Fe(b)).0,
        }
    }

    #[inline]
    fn g_neg(&self, a: u64) -> u64 {
        match &self.0.ground {
            None => {
                if a == 0 {
                    0
                } else {
                    self.0.p - a
                }
            }
            Some(g) => g.neg(Fe(a)).0,
        }
    }

    #[inline]
    fn g_mul(&self, a: u64, b: u64) -> u64 {
        match &self.0.ground {
            None => ((a as u128 * b as u128) % self.0.p as u128) as u64,
            Some(g) => g.mul(Fe(a), Fe(b)).0,
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.0.degree == 1 {
            return Fe(self.g_add(a.0, b.0));
        }
        let q = self.0.ground_order;
        let (mut x, mut y) = (a.0, b.0);
        let (mut r, mut place) = (0u64, 1u64);
        for _ in 0..self.0.degree {
            r += self.g_add(x % q, y % q) * place;
            x /= q;
            y /= q;
            place = place.wrapping_mul(q);
        }
        Fe(r)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.0.degree == 1 {
            return Fe(self.g_neg(a.0));
        }
        let q = self.0.ground_order;
        let mut x = a.0;
        let (mut r, mut place) = (0u64, 1u64);
        for _ in 0..self.0.degree {
            r += self.g_neg(x % q) * place;
            x /= q;
            place = place.wrapping_mul(q);
        }
        Fe(r)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        match &self.0.tables {
            Some(t) => Fe(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize] as u64),
            None => self.slow_mul(a, b),
        }
    }

    #[inline]
    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    /// Multiplies by a small integer constant.
    #[inline]
    pub fn scale(&self, c: i64, a: Fe) -> Fe {
        self.mul(self.int(c), a)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match &self.0.tables {
            Some(t) => {
                let n = (self.0.order - 1) as usize;
                let l = t.log[a.0 as usize] as usize;
                Fe(t.exp[(n - l) % n] as u64)
            }
            None => self.pow(a, self.0.order - 2),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        match &self.0.tables {
            Some(t) => {
                let n = (self.0.order - 1) as u128;
                let l = t.log[a.0 as usize] as u128;
                Fe(t.exp[((l * e as u128) % n) as usize] as u64)
            }
            None => self.slow_pow(a, e),
        }
    }

    fn slow_pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut acc = Fe::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, b);
            }
            b = self.slow_mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Schoolbook multiply and reduce by the modulus; no tables involved.
    fn slow_mul(&self, a: Fe, b: Fe) -> Fe {
        let t = self.0.degree;
        if t == 1 {
            return Fe(self.g_mul(a.0, b.0));
        }
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u64; 2 * t - 1];
        for (i, x) in ca.iter().enumerate() {
            if x.0 == 0 {
                continue;
            }
            for (j, y) in cb.iter().enumerate() {
                prod[i + j] = self.g_add(prod[i + j], self.g_mul(x.0, y.0));
            }
        }
        let m = &self.0.modulus;
        for k in (t..2 * t - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, mi) in m.iter().take(t).enumerate() {
                let d = self.g_mul(c, mi.0);
                prod[k - t + i] = self.g_add(prod[k - t + i], self.g_neg(d));
            }
        }
        self.from_coeffs(&prod[..t].iter().map(|&c| Fe(c)).collect::<Vec<_>>())
    }

    /// Coefficients over the ground field, constant term first.
    pub fn coeffs(&self, a: Fe) -> Vec<Fe> {
        let q = self.0.ground_order;
        let mut x = a.0;
        (0..self.0.degree)
            .map(|_| {
                let c = Fe(x % q);
                x /= q;
                c
            })
            .collect()
    }

    /// Inverse of [`GaloisField::coeffs`]; missing high coefficients are zero.
    pub fn from_coeffs(&self, c: &[Fe]) -> Fe {
        let q = self.0.ground_order;
        let mut idx = 0u64;
        for x in c.iter().rev() {
            idx = idx * q + x.0;
        }
        Fe(idx)
    }

    /// Quadratic character: 0 at 0, +1 on nonzero squares, −1 otherwise.
    pub fn quad_char(&self, a: Fe) -> i8 {
        if a.0 == 0 {
            return 0;
        }
        if let Some(chi) = &self.0.chi {
            return chi[a.0 as usize];
        }
        if self.pow(a, (self.0.order - 1) / 2) == Fe::ONE {
            1
        } else {
            -1
        }
    }

    pub fn is_square(&self, a: Fe) -> bool {
        self.quad_char(a) >= 0
    }

    /// Smallest-index `b` with `b² = a`, by scanning the field.
    pub fn sqrt_scan(&self, a: Fe) -> Option<Fe> {
        self.elements().find(|&b| self.mul(b, b) == a)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Fe) -> Result<u64, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::ZeroElement);
        }
        let mut d = self.0.order - 1;
        for (l, e) in nt::factorize(self.0.order - 1) {
            for _ in 0..e {
                if self.pow(a, d / l) == Fe::ONE {
                    d /= l;
                } else {
                    break;
                }
            }
        }
        Ok(d)
    }

    /// The canonical half of the sign partition: `a ∈ GF(q)^+ ⇔ idx(a) < idx(-a)`.
    /// `None` for zero.
    pub fn sign(&self, a: Fe) -> Option<Sign> {
        if a.0 == 0 {
            None
        } else if a.0 < self.neg(a).0 {
            Some(Sign::Plus)
        } else {
            Some(Sign::Minus)
        }
    }
}

fn clone_inner(inner: &Inner) -> Inner {
    Inner {
        p: inner.p,
        order: inner.order,
        ground_order: inner.ground_order,
        degree: inner.degree,
        ground: inner.ground.clone(),
        modulus: inner.modulus.clone(),
        tables: None,
        chi: None,
        descriptor: inner.descriptor.clone(),
    }
}

fn ground_order_pow(q: u64, deg: usize) -> Result<u64, FieldError> {
    nt::checked_pow(q, deg as u32).filter(|&o| o <= u32::MAX as u64).ok_or(FieldError::TooLarge)
}

pub(crate) fn parse_coeff_list(text: &str) -> Result<Vec<u64>, FieldError> {
    text.split(',')
        .map(|c| c.trim().parse::<u64>().map_err(|_| FieldError::Parse(format!("bad coefficient {c:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn char3_addition() {
        let f = GaloisField::prime(3).unwrap();
        assert_eq!(f.add(Fe(2), Fe(2)), Fe(1));
    }

    #[test]
    fn gf9_x_squared() {
        // GF(3)[x]/(x^2 + 1): x has index 3
        let f = GaloisField::from_descriptor("3^2/1,0,1").unwrap();
        assert_eq!(f.mul(Fe(3), Fe(3)), Fe(2));
    }

    #[test]
    fn gf7_inverse() {
        let f = GaloisField::prime(7).unwrap();
        assert_eq!(f.inv(Fe(3)).unwrap(), Fe(5));
        assert_eq!(f.inv(Fe(0)), Err(FieldError::DivisionByZero));
        assert_eq!(f.div(Fe(1), Fe(0)), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn quad_char_gf7() {
        let f = GaloisField::prime(7).unwrap();
        assert_eq!(f.quad_char(Fe(2)), 1);
        assert_eq!(f.quad_char(Fe(3)), -1);
        assert_eq!(f.quad_char(Fe(0)), 0);
    }

    #[test]
    fn element_orders_gf7() {
        let f = GaloisField::prime(7).unwrap();
        assert_eq!(f.element_order(Fe(3)).unwrap(), 6);
        assert_eq!(f.element_order(Fe(2)).unwrap(), 3);
        assert_eq!(f.element_order(Fe(1)).unwrap(), 1);
        assert_eq!(f.element_order(Fe(0)), Err(FieldError::ZeroElement));
    }

    #[test]
    fn table_and_slow_paths_agree() {
        for q in [9u64, 25, 27, 49, 121, 343] {
            let f = GaloisField::new(q).unwrap();
            for a in f.elements() {
                for b in f.elements().step_by(3) {
                    assert_eq!(f.mul(a, b), f.slow_mul(a, b), "q={q} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_gf25() {
        let f = GaloisField::new(25).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
            }
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                let c = Fe((a.0 * 7 + b.0 * 3) % 25);
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }

    #[test]
    fn quad_char_matches_square_enumeration() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 121, 125, 343, 1331, 1999] {
            let f = GaloisField::new(q).unwrap();
            let mut squares = vec![false; q as usize];
            for b in f.nonzero() {
                squares[f.mul(b, b).0 as usize] = true;
            }
            for a in f.nonzero() {
                assert_eq!(f.quad_char(a) == 1, squares[a.0 as usize], "q={q} a={a}");
            }
        }
    }

    #[test]
    fn quad_char_by_exponentiation_above_table_limit() {
        // 10007 is prime and above the table threshold
        let f = GaloisField::prime(10007).unwrap();
        assert!(f.0.chi.is_none());
        let mut squares = vec![false; 10007];
        for b in f.nonzero() {
            squares[f.mul(b, b).0 as usize] = true;
        }
        for a in f.nonzero() {
            assert_eq!(f.quad_char(a) == 1, squares[a.0 as usize]);
        }
    }

    #[test]
    fn quad_char_is_multiplicative() {
        for q in [5u64, 9, 27, 49, 125, 343, 499] {
            let f = GaloisField::new(q).unwrap();
            for a in f.nonzero() {
                for b in f.nonzero() {
                    assert_eq!(f.quad_char(f.mul(a, b)), f.quad_char(a) * f.quad_char(b));
                }
            }
        }
    }

    #[test]
    fn orders_divide_group_order() {
        for q in [3u64, 9, 13, 27, 81, 169] {
            let f = GaloisField::new(q).unwrap();
            for a in f.nonzero() {
                let d = f.element_order(a).unwrap();
                assert_eq!((q - 1) % d, 0);
                assert_eq!(f.pow(a, d), Fe::ONE);
                for e in 1..d {
                    assert_ne!(f.pow(a, e), Fe::ONE);
                }
            }
        }
    }

    #[test]
    fn sign_partition_respects_negation() {
        let f = GaloisField::new(27).unwrap();
        assert_eq!(f.sign(Fe::ZERO), None);
        for a in f.nonzero() {
            let s = f.sign(a).unwrap();
            let t = f.sign(f.neg(a)).unwrap();
            assert_ne!(s, t);
        }
        assert_eq!(f.sign(Fe::ONE), Some(Sign::Plus));
    }

    #[test]
    fn descriptor_round_trip() {
        for d in ["7^1/0,1", "3^2/1,0,1", "7^1/0,1/5,0,0,1", "3^2/1,0,1/1,0,1"] {
            let f = GaloisField::from_descriptor(d);
            if d == "3^2/1,0,1/1,0,1" {
                // x^2 + 1 splits over GF(9)
                assert_eq!(f.unwrap_err(), FieldError::NotIrreducible);
                continue;
            }
            let f = f.unwrap();
            assert_eq!(f.descriptor(), d);
            assert_eq!(GaloisField::from_descriptor(f.descriptor()).unwrap(), f);
        }
        assert_eq!(GaloisField::from_descriptor("9").unwrap().descriptor(), "3^2/1,0,1");
        assert_eq!(GaloisField::from_descriptor("3^2").unwrap().order(), 9);
    }

    #[test]
    fn slow_path_field_without_tables() {
        // 3^14 = 4_782_969 > TABLE_LIMIT
        let f = GaloisField::new(3u64.pow(14)).unwrap();
        assert!(f.0.tables.is_none());
        let a = Fe(123_456);
        let ai = f.inv(a).unwrap();
        assert_eq!(f.mul(a, ai), Fe::ONE);
        assert_eq!(f.pow(a, f.order() - 1), Fe::ONE);
    }
}
