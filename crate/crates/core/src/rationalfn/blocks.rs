//! Closed forms: the four binomial blocks, the top-order coefficient `a_{s,k}`,
//! reflection symmetry and very-well-poised parameters.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::partial::PartialFractionTable;
use super::product::{binomial, factorial, LinearProductRep};
use crate::rationalfn::profile::{Family, Profile};
use crate::{Error, Rational, Result};

fn int(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

fn half(v: i64) -> Rational {
    Rational::new(BigInt::from(v), BigInt::from(2))
}

fn sign(even: bool) -> BigInt {
    if even {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Residues at `t = −k`, `k = 0..=n`, of one of the four binomial blocks:
///
/// 1. `n! / ∏_{j=0}^n (t+j)` → `(−1)^k C(n,k)`
/// 2. `2^{2n} ∏_{j=1}^n (t−n+j−½) / ∏ (t+j)` → `(−1)^{n+k} C(2n+2k,2n) C(2n,n+k)`
/// 3. `2^{2n} ∏_{j=1}^n (t+j−½) / ∏ (t+j)` → `C(2k,k) C(2n−2k,n−k)`
/// 4. `2^{2n} ∏_{j=1}^n (t+n+j−½) / ∏ (t+j)` → `(−1)^k C(4n−2k,2n) C(2n,k)`
pub fn binomial_block_coefficients(kind: u8, n: u64) -> Result<Vec<Rational>> {
    if !(1..=4).contains(&kind) {
        return Err(Error::InvalidArgument(format!("block kind {kind} outside 1..=4")));
    }
    let n = n as i64;
    Ok((0..=n)
        .map(|k| {
            let v = match kind {
                1 => sign(k % 2 == 0) * binomial(n, k),
                2 => sign((n + k) % 2 == 0) * binomial(2 * n + 2 * k, 2 * n) * binomial(2 * n, n + k),
                3 => binomial(2 * k, k) * binomial(2 * n - 2 * k, n - k),
                _ => sign(k % 2 == 0) * binomial(4 * n - 2 * k, 2 * n) * binomial(2 * n, k),
            };
            int(v)
        })
        .collect())
}

/// The product form of a binomial block.
pub fn binomial_block_rep(kind: u8, n: u64) -> Result<LinearProductRep> {
    let ni = n as i64;
    let den: Vec<_> = (0..=ni).map(|j| (Rational::from_integer(BigInt::from(-j)), 1)).collect();
    let four_n = int(BigInt::one() << (2 * n) as usize);
    let (scalar, num): (Rational, Vec<(Rational, u32)>) = match kind {
        1 => (int(factorial(n)), vec![]),
        2 => (four_n, (1..=ni).map(|j| (half(2 * (ni - j) + 1), 1)).collect()),
        3 => (four_n, (1..=ni).map(|j| (half(-(2 * j - 1)), 1)).collect()),
        4 => (four_n, (1..=ni).map(|j| (half(-(2 * (ni + j) - 1)), 1)).collect()),
        _ => return Err(Error::InvalidArgument(format!("block kind {kind} outside 1..=4"))),
    };
    LinearProductRep::new(scalar, num, den, Rational::zero())
}

/// `a_{s,k} = (2n+2k)!(4n−2k)! / ((n+k)!(2n−k)! k!³ (n−k)!³) · (n−2k) · C(n,k)^{s−3}`.
pub fn uniform_top_coefficient(s: u32, n: u64, k: u64) -> Rational {
    let num = factorial(2 * n + 2 * k) * factorial(4 * n - 2 * k);
    let den = factorial(n + k) * factorial(2 * n - k) * factorial(k).pow(3) * factorial(n - k).pow(3);
    let extra = BigInt::from(n as i64 - 2 * k as i64) * binomial(n as i64, k as i64).pow(s - 3);
    Rational::new(num * extra, den)
}

/// `a_{i,k} = (−1)^i a_{i,L−k}` for all `i` and all poles.
pub fn symmetry_check(table: &PartialFractionTable, reflect: u64) -> bool {
    let l = reflect as i64;
    table.poles().iter().all(|p| {
        let partner = l - p.index;
        (1..=table.max_order()).all(|i| {
            let a = &p.coeffs[i as usize - 1];
            let b = table.coeff(i, partner);
            if i % 2 == 0 {
                *a == b
            } else {
                *a == -b
            }
        })
    })
}

/// Upper and lower parameters and argument of the very-well-poised series
/// `_{s+2}F_{s+1}(h_0, 1+h_0/2, h_1, …, h_s; h_0/2, 1+h_0−h_1, …, 1+h_0−h_s; −1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricParameters {
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
    pub argument: Rational,
}

impl HypergeometricParameters {
    /// Well-poised: `upper[0] + 1 = upper[j] + lower[j − 1]` for `j >= 1`.
    pub fn is_well_poised(&self) -> bool {
        let target = &self.upper[0] + Rational::one();
        self.upper[1..].iter().zip(&self.lower).all(|(a, b)| a + b == target)
    }
}

pub fn hypergeometric_parameters(profile: &Profile) -> Result<HypergeometricParameters> {
    profile.validate()?;
    if profile.family() != Family::General {
        return Err(Error::InvalidArgument("hypergeometric parameters need a general-family profile".into()));
    }
    let h0 = Rational::from_integer(BigInt::from(profile.h0()));
    let one = Rational::one();
    let h0_half = &h0 / Rational::from_integer(BigInt::from(2));
    let mut upper = vec![h0.clone(), &one + &h0_half];
    let mut lower = vec![h0_half];
    for j in 1..=profile.s() as usize {
        let hj = Rational::from_integer(BigInt::from(profile.h_half(j))) + half(1);
        lower.push(&one + &h0 - &hj);
        upper.push(hj);
    }
    Ok(HypergeometricParameters { upper, lower, argument: -one })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rationalfn::partial::partial_fractions;

    #[test]
    fn block_examples() {
        let k1 = binomial_block_coefficients(1, 2).unwrap();
        assert_eq!(k1, vec![int(1.into()), int((-2).into()), int(1.into())]);
        assert_eq!(binomial_block_coefficients(3, 1).unwrap()[0], int(2.into()));
        assert!(binomial_block_coefficients(5, 1).is_err());
    }

    #[test]
    fn blocks_match_partial_fractions() {
        for kind in 1..=4u8 {
            for n in 1..=4 {
                let table = partial_fractions(&binomial_block_rep(kind, n).unwrap()).unwrap();
                let got: Vec<_> = (0..=n as i64).map(|k| table.coeff(1, k)).collect();
                assert_eq!(got, binomial_block_coefficients(kind, n).unwrap(), "kind {kind}, n {n}");
            }
        }
    }

    #[test]
    fn hypergeometric_shape() {
        let p = Profile::general(vec![5, 1, 1, 1, 1, 1], 2).unwrap();
        let h = hypergeometric_parameters(&p).unwrap();
        assert_eq!(h.upper.len(), 7);
        assert_eq!(h.lower.len(), 6);
        assert_eq!(h.upper[1], Rational::new(BigInt::from(13), BigInt::from(2)));
        assert!(h.is_well_poised());
        assert_eq!(h.argument, -Rational::one());
    }
}
