use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::field::{parse_coeff_list, Fe, GaloisField};
use super::nt;
use super::poly::PolyRing;
use super::FieldError;

/// Above this order the modulus is checked with the gcd test instead of
/// trial division.
const BRUTE_IRREDUCIBILITY_LIMIT: u64 = 1_000_000;

/// Presentation of `GF(p^n)` as `GF(p)[x]/(modulus)`.
///
/// Textual form: `p^n/c0,c1,...,cn` (constant term first), e.g. `3^2/1,0,1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u64,
    n: u32,
    modulus: Vec<u64>,
}

impl FieldSpec {
    /// Validates characteristic, degree and irreducibility of `modulus`.
    pub fn new(p: u64, n: u32, modulus: Vec<u64>) -> Result<Self, FieldError> {
        if !nt::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if n == 0 {
            return Err(FieldError::BadModulus("degree must be at least 1".into()));
        }
        let order = nt::checked_pow(p, n).filter(|&o| o <= u32::MAX as u64).ok_or(FieldError::TooLarge)?;
        if modulus.len() != n as usize + 1 {
            return Err(FieldError::BadModulus(format!("expected {} coefficients", n + 1)));
        }
        if modulus[n as usize] != 1 {
            return Err(FieldError::BadModulus("modulus is not monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus("coefficient out of range".into()));
        }
        let prime = GaloisField::prime(p)?;
        let ring = PolyRing::new(&prime);
        let m: Vec<Fe> = modulus.iter().map(|&c| Fe(c)).collect();
        let irreducible =
            if order <= BRUTE_IRREDUCIBILITY_LIMIT { ring.is_irreducible_brute(&m) } else { ring.is_irreducible(&m) };
        if !irreducible {
            return Err(FieldError::NotIrreducible);
        }
        Ok(FieldSpec { p, n, modulus })
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1, vec![0, 1])
    }

    /// The monic irreducible of degree `n` whose coefficient list (constant
    /// term first) is lexicographically smallest.
    pub fn canonical(p: u64, n: u32) -> Result<Self, FieldError> {
        if !nt::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if n == 1 {
            return Self::prime(p);
        }
        let order = nt::checked_pow(p, n).filter(|&o| o <= u32::MAX as u64).ok_or(FieldError::TooLarge)?;
        let prime = GaloisField::prime(p)?;
        let ring = PolyRing::new(&prime);
        let width = n as usize;
        let mut digits = vec![0u64; width];
        loop {
            let mut m: Vec<Fe> = digits.iter().map(|&c| Fe(c)).collect();
            m.push(Fe::ONE);
            let irreducible = if order <= BRUTE_IRREDUCIBILITY_LIMIT {
                ring.is_irreducible_brute(&m)
            } else {
                ring.is_irreducible(&m)
            };
            if irreducible {
                let mut modulus = digits.clone();
                modulus.push(1);
                return Ok(FieldSpec { p, n, modulus });
            }
            // lexicographic increment with the constant term most significant
            let mut i = width;
            loop {
                if i == 0 {
                    unreachable!("irreducible polynomials exist in every degree");
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "{}^{}/{}", self.p, self.n, coeffs.join(","))
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Accepts `q`, `p^n` (canonical modulus) or `p^n/c0,...,cn`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (head, tail) = match s.split_once('/') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let bad = || FieldError::Parse(format!("cannot parse field {s:?}"));
        let (p, n) = match head.split_once('^') {
            Some((p, n)) => (p.trim().parse::<u64>().map_err(|_| bad())?, n.trim().parse::<u32>().map_err(|_| bad())?),
            None => {
                let q = head.parse::<u64>().map_err(|_| bad())?;
                nt::prime_power(q).ok_or(FieldError::NotPrimePower(q))?
            }
        };
        match tail {
            None => FieldSpec::canonical(p, n),
            Some(t) if t.contains('/') => Err(bad()),
            Some(t) => FieldSpec::new(p, n, parse_coeff_list(t)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(FieldSpec::canonical(3, 2).unwrap().modulus(), &[1, 0, 1]);
        // lexicographic with constant term first: x^2 + x + 1 beats x^2 + 2
        assert_eq!(FieldSpec::canonical(5, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldSpec::canonical(7, 1).unwrap().modulus(), &[0, 1]);
        let m = FieldSpec::canonical(3, 3).unwrap();
        assert_eq!(m.to_string(), "3^3/1,0,2,1");
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(FieldSpec::new(4, 1, vec![0, 1]), Err(FieldError::NotPrime(4)));
        assert_eq!(FieldSpec::new(2, 2, vec![1, 1, 1]), Err(FieldError::EvenCharacteristic));
        assert_eq!(FieldSpec::new(3, 2, vec![2, 0, 1]), Err(FieldError::NotIrreducible));
        assert!(matches!(FieldSpec::new(3, 2, vec![1, 0, 2]), Err(FieldError::BadModulus(_))));
        assert!(matches!(FieldSpec::new(3, 2, vec![1, 1]), Err(FieldError::BadModulus(_))));
    }

    #[test]
    fn parse_forms() {
        let a: FieldSpec = "9".parse().unwrap();
        let b: FieldSpec = "3^2".parse().unwrap();
        let c: FieldSpec = "3^2/1,0,1".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(c.to_string().parse::<FieldSpec>().unwrap(), c);
        assert_eq!("12".parse::<FieldSpec>(), Err(FieldError::NotPrimePower(12)));
        assert!("3^x".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn large_spec_uses_gcd_test() {
        let s = FieldSpec::canonical(3, 13).unwrap();
        assert!(s.order() > BRUTE_IRREDUCIBILITY_LIMIT);
        assert_eq!(FieldSpec::new(3, 13, s.modulus().to_vec()).unwrap(), s);
    }
}
