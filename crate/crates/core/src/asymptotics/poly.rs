//! Integer polynomials, Sturm sequences and exact bisection.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// `Σ coeffs[i] x^i` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// `c0 + c1·x`.
    pub fn linear(c0: i64, c1: i64) -> Self {
        IntPoly::new(vec![BigInt::from(c0), BigInt::from(c1)])
    }

    pub fn monomial(c: i64, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = BigInt::from(c);
        IntPoly::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_default();
        IntPoly::new((0..len).map(|i| get(&self.coeffs, i) - get(&other.coeffs, i)).collect())
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        self.eval(x).cmp(&Rational::zero())
    }

    fn to_rational(&self) -> Vec<Rational> {
        self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() == 1 {
            return IntPoly::new(vec![BigInt::zero()]);
        }
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        let seq = sturm_sequence(self);
        let va = sign_changes(&seq, a);
        let vb = sign_changes(&seq, b);
        va.saturating_sub(vb)
    }
}

fn trim(v: &mut Vec<Rational>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Remainder of `a` divided by `b`, both dense rational coefficient vectors.
fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let db = b.len() - 1;
    if db == 0 {
        return vec![Rational::zero()];
    }
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db && !is_zero_poly(&r) {
        let dr = r.len() - 1;
        let q = &r[dr] / &b[db];
        for (i, c) in b.iter().enumerate() {
            let v = &q * c;
            r[dr - db + i] -= v;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn is_zero_poly(v: &[Rational]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// The Sturm chain `p, p', −rem(p, p'), …` over the rationals.
pub(crate) fn sturm_sequence(p: &IntPoly) -> Vec<Vec<Rational>> {
    let mut seq = vec![p.to_rational(), p.derivative().to_rational()];
    loop {
        let n = seq.len();
        if is_zero_poly(&seq[n - 1]) || seq[n - 1].len() == 1 {
            break;
        }
        let r: Vec<Rational> = rem(&seq[n - 2], &seq[n - 1]).into_iter().map(|c| -c).collect();
        if is_zero_poly(&r) {
            break;
        }
        seq.push(r);
    }
    if is_zero_poly(seq.last().unwrap()) {
        seq.pop();
    }
    seq
}

fn eval_rat(v: &[Rational], x: &Rational) -> Rational {
    v.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn sign_changes(seq: &[Vec<Rational>], x: &Rational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| eval_rat(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Halves `(lo, hi)` around a sign change of `p` until the width is at most `2^{−bits}`.
/// The endpoints keep opposite nonzero signs unless a dyadic midpoint is an exact root,
/// in which case the interval collapses onto it.
pub fn bisect(p: &IntPoly, lo: &Rational, hi: &Rational, bits: u32) -> (Rational, Rational) {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let s_lo = p.sign_at(&lo);
    let width = Rational::new(BigInt::one(), BigInt::one() << bits as usize);
    let two = Rational::from_integer(BigInt::from(2));
    while &hi - &lo > width {
        let mid = (&lo + &hi) / &two;
        match p.sign_at(&mid) {
            Ordering::Equal => return (mid.clone(), mid),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn counts_roots_of_product() {
        // (2x−1)(3x−1)(x+1) has roots 1/2, 1/3 in (0,1]
        let p = IntPoly::linear(-1, 2).mul(&IntPoly::linear(-1, 3)).mul(&IntPoly::linear(1, 1));
        assert_eq!(p.count_roots(&q(0, 1), &q(1, 1)), 2);
        assert_eq!(p.count_roots(&q(0, 1), &q(2, 5)), 1);
        assert_eq!(p.count_roots(&q(-2, 1), &q(1, 1)), 3);
    }

    #[test]
    fn repeated_root_counted_once() {
        let p = IntPoly::linear(-1, 2).mul(&IntPoly::linear(-1, 2)).mul(&IntPoly::linear(-3, 4));
        assert_eq!(p.count_roots(&q(0, 1), &q(1, 1)), 2);
    }

    #[test]
    fn bisection_brackets_sqrt_half() {
        // 2x² − 1
        let p = IntPoly::new(vec![BigInt::from(-1), BigInt::zero(), BigInt::from(2)]);
        let (lo, hi) = bisect(&p, &q(0, 1), &q(1, 1), 60);
        assert!(p.sign_at(&lo) == Ordering::Less && p.sign_at(&hi) == Ordering::Greater);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let lo_f = lo.numer().to_string().parse::<f64>().unwrap() / lo.denom().to_string().parse::<f64>().unwrap();
        assert!((lo_f - r).abs() < 1e-15);
    }
}
