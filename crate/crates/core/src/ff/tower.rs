//! Tower presentations `GF(q^t) = GF(q)[θ]/(m(θ))` used by the coloring
//! pipelines, and the binomial irreducibility criterion.

use super::element::FieldElement;
use super::field::{Fe, GaloisField};
use super::nt;
use super::poly::PolyRing;
use super::FieldError;

/// Decides whether `x^t − μ` is irreducible over `field` from the order of
/// `μ`: every prime factor of `t` must divide `ord(μ)` and must not divide
/// `(q − 1)/ord(μ)`; when `4 | t` additionally `q ≡ 1 (mod 4)`.
pub fn binomial_irreducible(field: &GaloisField, t: usize, mu: Fe) -> Result<bool, FieldError> {
    if t < 2 {
        return Err(FieldError::BadDegree(t));
    }
    let ord = field.element_order(mu)?;
    let cofactor = (field.order() - 1) / ord;
    let ok = nt::prime_factors(t as u64).into_iter().all(|l| ord % l == 0 && !cofactor.is_multiple_of(l));
    Ok(ok && (!t.is_multiple_of(4) || field.order() % 4 == 1))
}

/// Smallest-index `μ ∈ GF(q)*` with `x^t − μ` irreducible, if any.
pub fn find_binomial_mu(field: &GaloisField, t: usize) -> Result<Option<Fe>, FieldError> {
    for mu in field.nonzero() {
        if binomial_irreducible(field, t, mu)? {
            return Ok(Some(mu));
        }
    }
    Ok(None)
}

/// The defining relation of θ.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TowerKind {
    /// `θ^t = μ`.
    Binomial { mu: Fe },
    /// `θ² = μ₁θ + μ₀`.
    Quadratic { mu1: Fe, mu0: Fe },
}

#[derive(Clone, Debug)]
pub struct TowerSpec {
    base: GaloisField,
    field: GaloisField,
    kind: TowerKind,
}

impl TowerSpec {
    /// `GF(q)[θ]/(θ^t − μ)`. Irreducibility is checked twice: by the order
    /// criterion and by the extension constructor's polynomial test.
    pub fn binomial(base: &GaloisField, t: usize, mu: Fe) -> Result<Self, FieldError> {
        if !binomial_irreducible(base, t, mu)? {
            return Err(FieldError::NotIrreducible);
        }
        let mut modulus = vec![Fe::ZERO; t + 1];
        modulus[0] = base.neg(mu);
        modulus[t] = Fe::ONE;
        let field = GaloisField::extension(base, modulus)?;
        Ok(TowerSpec { base: base.clone(), field, kind: TowerKind::Binomial { mu } })
    }

    /// The binomial tower with the smallest admissible `μ`, or `None`.
    pub fn find_binomial(base: &GaloisField, t: usize) -> Result<Option<Self>, FieldError> {
        match find_binomial_mu(base, t)? {
            Some(mu) => Self::binomial(base, t, mu).map(Some),
            None => Ok(None),
        }
    }

    /// `GF(q)[θ]/(θ² − μ₁θ − μ₀)`.
    pub fn quadratic_with(base: &GaloisField, mu1: Fe, mu0: Fe) -> Result<Self, FieldError> {
        let modulus = vec![base.neg(mu0), base.neg(mu1), Fe::ONE];
        let field = GaloisField::extension(base, modulus)?;
        Ok(TowerSpec { base: base.clone(), field, kind: TowerKind::Quadratic { mu1, mu0 } })
    }

    /// Quadratic tower from the lowest lexicographic monic irreducible
    /// `x² + c₁x + c₀` (constant term most significant).
    pub fn quadratic(base: &GaloisField) -> Result<Self, FieldError> {
        let ring = PolyRing::new(base);
        for c0 in base.nonzero() {
            for c1 in base.elements() {
                if ring.is_irreducible(&[c0, c1, Fe::ONE]) {
                    return Self::quadratic_with(base, base.neg(c1), base.neg(c0));
                }
            }
        }
        unreachable!("irreducible quadratics exist over every finite field")
    }

    pub fn base(&self) -> &GaloisField {
        &self.base
    }

    /// The extension field `GF(q^t)`.
    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn kind(&self) -> TowerKind {
        self.kind
    }

    pub fn theta(&self) -> Fe {
        self.field.from_coeffs(&[Fe::ZERO, Fe::ONE])
    }

    pub fn mu(&self) -> Option<Fe> {
        match self.kind {
            TowerKind::Binomial { mu } => Some(mu),
            TowerKind::Quadratic { .. } => None,
        }
    }

    /// `(μ₁, μ₀)` for quadratic towers.
    pub fn quadratic_params(&self) -> Option<(Fe, Fe)> {
        match self.kind {
            TowerKind::Quadratic { mu1, mu0 } => Some((mu1, mu0)),
            TowerKind::Binomial { .. } => None,
        }
    }

    /// Coordinates of `x` in the basis `1, θ, …, θ^{t−1}`.
    #[inline]
    pub fn coeffs(&self, x: Fe) -> Vec<Fe> {
        self.field.coeffs(x)
    }

    #[inline]
    pub fn assemble(&self, c: &[Fe]) -> Fe {
        self.field.from_coeffs(c)
    }

    /// Checked variant of [`TowerSpec::coeffs`].
    pub fn tower_coeffs(&self, x: &FieldElement) -> Result<Vec<FieldElement>, FieldError> {
        if x.field() != &self.field {
            return Err(FieldError::FieldMismatch);
        }
        Ok(self.coeffs(x.value()).into_iter().map(|c| FieldElement::new(&self.base, c)).collect())
    }

    /// Checked inverse of [`TowerSpec::tower_coeffs`].
    pub fn tower_assemble(&self, c: &[FieldElement]) -> Result<FieldElement, FieldError> {
        if c.len() > self.degree() || c.iter().any(|e| e.field() != &self.base) {
            return Err(FieldError::FieldMismatch);
        }
        let raw: Vec<Fe> = c.iter().map(|e| e.value()).collect();
        Ok(FieldElement::new(&self.field, self.assemble(&raw)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_binomial(field: &GaloisField, t: usize, mu: Fe) -> bool {
        let ring = PolyRing::new(field);
        let mut f = vec![Fe::ZERO; t + 1];
        f[0] = field.neg(mu);
        f[t] = Fe::ONE;
        ring.is_irreducible_brute(&f)
    }

    #[test]
    fn criterion_examples() {
        let f7 = GaloisField::prime(7).unwrap();
        let f3 = GaloisField::prime(3).unwrap();
        assert!(binomial_irreducible(&f7, 3, Fe(2)).unwrap());
        assert!(!binomial_irreducible(&f3, 3, Fe(2)).unwrap());
        assert!(!binomial_irreducible(&f7, 3, Fe(1)).unwrap());
        assert_eq!(binomial_irreducible(&f7, 3, Fe(0)), Err(FieldError::ZeroElement));
        assert_eq!(binomial_irreducible(&f7, 1, Fe(2)), Err(FieldError::BadDegree(1)));
    }

    #[test]
    fn find_mu_examples() {
        let f7 = GaloisField::prime(7).unwrap();
        let f3 = GaloisField::prime(3).unwrap();
        let f13 = GaloisField::prime(13).unwrap();
        assert_eq!(find_binomial_mu(&f7, 3).unwrap(), Some(Fe(2)));
        assert_eq!(find_binomial_mu(&f3, 3).unwrap(), None);
        let mu = find_binomial_mu(&f13, 3).unwrap().unwrap();
        assert!([3, 6, 12].contains(&f13.element_order(mu).unwrap()));
        // exhaustive scan oracle
        let first = f13.nonzero().find(|&m| brute_binomial(&f13, 3, m)).unwrap();
        assert_eq!(mu, first);
    }

    #[test]
    fn criterion_matches_brute_force_including_even_t() {
        for q in [3u64, 5, 7, 9, 13, 25] {
            let f = GaloisField::new(q).unwrap();
            for t in [2usize, 3, 4, 5, 6] {
                for mu in f.nonzero() {
                    assert_eq!(
                        binomial_irreducible(&f, t, mu).unwrap(),
                        brute_binomial(&f, t, mu),
                        "q={q} t={t} mu={mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn tower_reduction_identity() {
        let base = GaloisField::prime(7).unwrap();
        let tower = TowerSpec::find_binomial(&base, 3).unwrap().unwrap();
        let f = tower.field();
        let theta = tower.theta();
        assert_eq!(tower.coeffs(Fe::ZERO), vec![Fe(0); 3]);
        assert_eq!(tower.coeffs(theta), vec![Fe(0), Fe(1), Fe(0)]);
        // θ·θ³ = θ·μ = 2θ
        let t4 = f.pow(theta, 4);
        assert_eq!(tower.coeffs(t4), vec![Fe(0), Fe(2), Fe(0)]);
    }

    #[test]
    fn power_table_for_binomial_towers() {
        for (q, t) in [(7u64, 3usize), (11, 5), (13, 3)] {
            let base = GaloisField::prime(q).unwrap();
            let tower = TowerSpec::find_binomial(&base, t).unwrap().unwrap();
            let (f, mu) = (tower.field(), tower.mu().unwrap());
            let r = (t - 1) / 2;
            for l in (2 * r + 1)..=(6 * r + 2) {
                let expect = if l < 4 * r + 2 {
                    let mut c = vec![Fe::ZERO; t];
                    c[l - 2 * r - 1] = mu;
                    c
                } else {
                    let mut c = vec![Fe::ZERO; t];
                    c[l - 4 * r - 2] = base.mul(mu, mu);
                    c
                };
                assert_eq!(tower.coeffs(f.pow(tower.theta(), l as u64)), expect, "q={q} t={t} l={l}");
            }
        }
    }

    #[test]
    fn quadratic_tower_gf9() {
        let base = GaloisField::prime(3).unwrap();
        let tower = TowerSpec::quadratic(&base).unwrap();
        assert_eq!(tower.quadratic_params(), Some((Fe(0), Fe(2))));
        let th = tower.theta();
        let sq = tower.field().mul(th, th);
        assert_eq!(tower.coeffs(sq), vec![Fe(2), Fe(0)]);
    }

    #[test]
    fn checked_coeffs_round_trip_and_mismatch() {
        let base = GaloisField::prime(7).unwrap();
        let tower = TowerSpec::find_binomial(&base, 3).unwrap().unwrap();
        for v in tower.field().elements().step_by(17) {
            let x = FieldElement::new(tower.field(), v);
            let c = tower.tower_coeffs(&x).unwrap();
            assert_eq!(tower.tower_assemble(&c).unwrap(), x);
        }
        let other = FieldElement::new(&base, Fe(3));
        assert_eq!(tower.tower_coeffs(&other).unwrap_err(), FieldError::FieldMismatch);
    }
}
