use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::Rational;

/// A positive integer stored as `prime -> exponent` (exponents >= 1).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactoredInteger {
    factors: BTreeMap<u64, u32>,
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    /// Factors `n >= 1` by trial division.
    pub fn from_u64(mut n: u64) -> Self {
        assert!(n >= 1, "only positive integers are representable");
        let mut out = Self::one();
        let mut p = 2u64;
        while p * p <= n {
            while n.is_multiple_of(p) {
                out.add_exp(p, 1);
                n /= p;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if n > 1 {
            out.add_exp(n, 1);
        }
        out
    }

    /// Sets the exponent of `p` (removing it when `e = 0`). `p` must be prime.
    pub fn set(&mut self, p: u64, e: u32) {
        if e == 0 {
            self.factors.remove(&p);
        } else {
            self.factors.insert(p, e);
        }
    }

    pub fn add_exp(&mut self, p: u64, e: u32) {
        if e > 0 {
            *self.factors.entry(p).or_insert(0) += e;
        }
    }

    pub fn exponent(&self, p: u64) -> u32 {
        self.factors.get(&p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors.iter().map(|(&p, &e)| (p, e))
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn pow(&self, k: u32) -> Self {
        FactoredInteger {
            factors: self.factors.iter().filter(|_| k > 0).map(|(&p, &e)| (p, e * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, e) in other.iter() {
            out.add_exp(p, e);
        }
        out
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.iter().all(|(p, e)| other.exponent(p) >= e)
    }

    pub fn value(&self) -> BigUint {
        self.iter().fold(BigUint::one(), |acc, (p, e)| acc * BigUint::from(p).pow(e))
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.value()))
    }

    /// Natural logarithm as f64 (for quick diagnostics only).
    pub fn ln_f64(&self) -> f64 {
        self.iter().map(|(p, e)| e as f64 * (p as f64).ln()).sum()
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(x: &BigInt, p: u64) -> u32 {
    assert!(!x.is_zero());
    let p = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&y, &p);
        if !r.is_zero() {
            return v;
        }
        y = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation_rational(x: &Rational, p: u64) -> i64 {
    valuation(x.numer(), p) as i64 - valuation(x.denom(), p) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_and_rebuild() {
        let f = FactoredInteger::from_u64(20449);
        assert_eq!(f.exponent(11), 2);
        assert_eq!(f.exponent(13), 2);
        assert_eq!(f.value(), BigUint::from(20449u32));
        assert_eq!(f.to_string(), "11^2*13^2");
        assert!(FactoredInteger::one().is_one());
        assert_eq!(FactoredInteger::from_u64(97).to_string(), "97");
    }

    #[test]
    fn divisibility() {
        let a = FactoredInteger::from_u64(12);
        let b = FactoredInteger::from_u64(360);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.mul(&a).value(), BigUint::from(144u32));
        assert_eq!(a.pow(3).value(), BigUint::from(1728u32));
    }

    #[test]
    fn valuations() {
        let x = Rational::new(BigInt::from(48), BigInt::from(45));
        assert_eq!(valuation_rational(&x, 2), 4);
        assert_eq!(valuation_rational(&x, 3), -1);
        assert_eq!(valuation_rational(&x, 5), -1);
    }
}
