//! Alternating-series acceleration with shifted Chebyshev weights.
//!
//! For `a_k = ∫_0^1 x^k dμ(x)` the sum `S = Σ (−1)^k a_k` satisfies
//! `|S − (1/d) Σ_{k<n} c_k a_k| <= ∫|dμ| / d` with `d = T_n(3)` and integer
//! weights `c_k`. Everything here is exact integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ball::BallReal;
use super::mag::Mag;

/// Weights `c_0..c_{n−1}` and the normalizer `d = T_n(3)`.
#[derive(Debug, Clone)]
pub struct ChebyshevWeights {
    pub c: Vec<BigInt>,
    pub d: BigInt,
}

impl ChebyshevWeights {
    pub fn new(n: usize) -> Self {
        let (mut t0, mut t1) = (BigInt::one(), BigInt::from(3));
        if n == 0 {
            return ChebyshevWeights { c: vec![], d: t0 };
        }
        for _ in 1..n {
            let next = &t1 * 6 - &t0;
            t0 = std::mem::replace(&mut t1, next);
        }
        let d = t1;
        let ni = n as i64;
        let mut b = -BigInt::one();
        let mut c = -d.clone();
        let mut out = Vec::with_capacity(n);
        for k in 0..ni {
            c = &b - &c;
            out.push(c.clone());
            let num = &b * BigInt::from(2 * (k + ni) * (k - ni));
            let den = BigInt::from((2 * k + 1) * (k + 1));
            let (quot, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            b = quot;
        }
        ChebyshevWeights { c: out, d }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// `log2 d`, the number of bits gained per unit of total variation.
    pub fn gain_bits(&self) -> f64 {
        self.d.bits() as f64 - 1.0
    }
}

/// Terms needed so that `d = T_n(3) > 2^bits`.
pub fn terms_for_bits(bits: f64) -> usize {
    // log2(3 + √8) = 2.5431…
    ((bits.max(0.0) + 2.0) / 2.543).ceil() as usize + 1
}

/// `Σ (−1)^k a_k` from the first `weights.len()` terms, with the tail bound
/// `variation / d` folded into the radius.
pub fn accelerated_sum(terms: &[BallReal], weights: &ChebyshevWeights, variation: Mag, prec: u32) -> BallReal {
    assert_eq!(terms.len(), weights.len());
    let wp = prec + 16 + (64 - (terms.len() as u64).leading_zeros());
    let mut acc = BallReal::zero(wp + weights.d.bits() as u32);
    for (a, c) in terms.iter().zip(&weights.c) {
        acc = &acc + &(a * &BallReal::from_int(c.clone(), wp + c.bits() as u32));
    }
    let d = BallReal::from_int(weights.d.clone(), weights.d.bits() as u32 + 8);
    let quotient = acc.checked_div(&d).expect("d >= 1").with_prec(wp);
    let d_lower = Mag::from_biguint_down(weights.d.magnitude());
    quotient.add_error(variation.div_up(d_lower)).with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn weights_small_n() {
        let w = ChebyshevWeights::new(3);
        assert_eq!(w.d, BigInt::from(99));
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn log_two_from_harmonic_terms() {
        // Σ (−1)^k / (k+1) = ln 2, μ = dx
        let n = terms_for_bits(120.0);
        let w = ChebyshevWeights::new(n);
        let terms: Vec<_> = (0..n)
            .map(|k| BallReal::from_rational(&Rational::new(1.into(), BigInt::from(k + 1)), 160))
            .collect();
        let s = accelerated_sum(&terms, &w, Mag::from_u64(1), 128);
        let ln2 = crate::numerics::elementary::ln2(128);
        assert!(s.overlaps(&ln2));
        assert!(s.rad().log2() < -110.0);
    }
}
